use std::io::Write;

use kstab_core::algebra::Rational;
use serde::Serialize;
use serde_json::Value;

use crate::args::{Format, OutputArgs};
use crate::run::CliError;

/// `"1/7"` becomes `"1/7 (~0.142857)"`; integers and other strings are left alone.
fn approximate(s: &str) -> Option<String> {
    let r: Rational = s.parse().ok()?;
    (!r.is_integer()).then(|| format!("{s} (~{:.6})", r.to_f64()))
}

fn decimalize(v: &mut Value) {
    match v {
        Value::String(s) => {
            if let Some(a) = approximate(s) {
                *s = a;
            }
        }
        Value::Array(xs) => xs.iter_mut().for_each(decimalize),
        Value::Object(m) => m.values_mut().for_each(decimalize),
        _ => {}
    }
}

pub fn json<T: Serialize>(value: &T, decimal: bool) -> Result<String, CliError> {
    let mut v = serde_json::to_value(value).map_err(CliError::internal)?;
    if decimal {
        decimalize(&mut v);
    }
    let mut s = serde_json::to_string_pretty(&v).map_err(CliError::internal)?;
    s.push('\n');
    Ok(s)
}

pub fn csv_rows<T: Serialize>(rows: &[T], decimal: bool) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(CliError::internal)?;
    }
    let text = String::from_utf8(w.into_inner().map_err(CliError::internal)?).map_err(CliError::internal)?;
    Ok(if decimal { decimalize_csv(&text)? } else { text })
}

pub fn decimalize_csv(text: &str) -> Result<String, CliError> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    let mut w = csv::Writer::from_writer(Vec::new());
    for rec in r.records() {
        let rec = rec.map_err(CliError::internal)?;
        let cells: Vec<String> = rec.iter().map(|c| approximate(c).unwrap_or_else(|| c.to_string())).collect();
        w.write_record(&cells).map_err(CliError::internal)?;
    }
    String::from_utf8(w.into_inner().map_err(CliError::internal)?).map_err(CliError::internal)
}

/// Serializes `value` as JSON, or `rows` as CSV, and writes it out.
pub fn emit<T: Serialize, R: Serialize>(out: &OutputArgs, value: &T, rows: &[R]) -> Result<(), CliError> {
    let text = match out.format {
        Format::Json => json(value, out.decimal)?,
        Format::Csv => csv_rows(rows, out.decimal)?,
    };
    write_text(out, &text)
}

pub fn write_text(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::validation(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(CliError::internal)
        }
    }
}
