use serde::{Deserialize, Serialize};

use crate::algebra::{Polynomial, Rational, RationalFunction};

use super::{ClosedForms, InvariantReport, InvariantsError};

/// Flat CSV row. Coefficient lists are space separated, lowest degree
/// first; empty cells mean "not computed".
#[derive(Serialize, Deserialize)]
struct CsvRow {
    scenario: String,
    method: String,
    beta: Rational,
    #[serde(rename = "S")]
    s: Rational,
    #[serde(rename = "A")]
    a: Rational,
    ratio: Rational,
    s_num: String,
    s_den: String,
    a_num: String,
    a_den: String,
    ratio_num: String,
    ratio_den: String,
    expansion: String,
}

fn join(v: &[Rational]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn split(s: &str) -> Result<Vec<Rational>, InvariantsError> {
    s.split_whitespace().map(|t| t.parse().map_err(InvariantsError::from)).collect()
}

fn function(num: &str, den: &str) -> Result<RationalFunction, InvariantsError> {
    Ok(RationalFunction::new(Polynomial::new(split(num)?), Polynomial::new(split(den)?))?)
}

impl From<&InvariantReport> for CsvRow {
    fn from(r: &InvariantReport) -> Self {
        let parts = |f: Option<&RationalFunction>| match f {
            Some(f) => (join(f.numerator().coeffs()), join(f.denominator().coeffs())),
            None => (String::new(), String::new()),
        };
        let cf = r.closed_forms.as_ref();
        let (s_num, s_den) = parts(cf.map(|c| &c.s));
        let (a_num, a_den) = parts(cf.map(|c| &c.a));
        let (ratio_num, ratio_den) = parts(cf.map(|c| &c.ratio));
        CsvRow {
            scenario: r.scenario.clone(),
            method: r.method.clone(),
            beta: r.beta.clone(),
            s: r.s.clone(),
            a: r.a.clone(),
            ratio: r.ratio.clone(),
            s_num,
            s_den,
            a_num,
            a_den,
            ratio_num,
            ratio_den,
            expansion: join(&r.expansion),
        }
    }
}

impl TryFrom<CsvRow> for InvariantReport {
    type Error = InvariantsError;
    fn try_from(row: CsvRow) -> Result<Self, Self::Error> {
        let closed_forms = if row.s_den.is_empty() {
            None
        } else {
            Some(ClosedForms {
                s: function(&row.s_num, &row.s_den)?,
                a: function(&row.a_num, &row.a_den)?,
                ratio: function(&row.ratio_num, &row.ratio_den)?,
            })
        };
        Ok(InvariantReport {
            scenario: row.scenario,
            method: row.method,
            beta: row.beta,
            s: row.s,
            a: row.a,
            ratio: row.ratio,
            closed_forms,
            expansion: split(&row.expansion)?,
        })
    }
}

fn csv_err(e: impl std::fmt::Display) -> InvariantsError {
    InvariantsError::Validation(format!("csv: {e}"))
}

pub fn reports_to_json(reports: &[InvariantReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports always serialize")
}

pub fn reports_from_json(s: &str) -> Result<Vec<InvariantReport>, InvariantsError> {
    serde_json::from_str(s).map_err(|e| InvariantsError::Validation(format!("json: {e}")))
}

pub fn reports_to_csv(reports: &[InvariantReport]) -> Result<String, InvariantsError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(CsvRow::from(r)).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(csv_err)?;
    String::from_utf8(bytes).map_err(csv_err)
}

pub fn reports_from_csv(s: &str) -> Result<Vec<InvariantReport>, InvariantsError> {
    csv::Reader::from_reader(s.as_bytes())
        .deserialize::<CsvRow>()
        .map(|row| InvariantReport::try_from(row.map_err(csv_err)?))
        .collect()
}
