use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{q, reconstruct_rational_function, Rational, RationalFunction, DEFAULT_DEGREES};
use crate::scenarios::{build_candidate, ScenarioConfig};

use super::{log_discrepancy, log_discrepancy_symbolic, method_registry, InvariantsError, VanishingOrderMethod};

/// Angle at which chamber structure is compared with the sampled angles.
pub const REFERENCE_BETA: (i64, i64) = (1, 1000);

/// `1/10, 1/11, ...`: `count` angles inside `(0, 1/10]`.
pub fn beta_samples(count: usize) -> Vec<Rational> {
    (0..count as i64).map(|k| q(1, 10 + k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForms {
    pub s: RationalFunction,
    pub a: RationalFunction,
    pub ratio: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub scenario: String,
    pub method: String,
    pub beta: Rational,
    #[serde(rename = "S")]
    pub s: Rational,
    #[serde(rename = "A")]
    pub a: Rational,
    pub ratio: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_forms: Option<ClosedForms>,
    /// Power series coefficients of `A/S` at `beta = 0`, when closed forms
    /// were computed.
    #[serde(default)]
    pub expansion: Vec<Rational>,
}

/// `S`, `A` and `A/S` at the configured angle.
pub fn evaluate(cfg: &ScenarioConfig, method: &str) -> Result<InvariantReport, InvariantsError> {
    cfg.validate()?;
    let m = method_registry().get(method)?;
    let s = m.expected_vanishing_order(cfg)?;
    let a = log_discrepancy(&build_candidate(cfg)?.tower, &cfg.beta)?;
    if !s.is_positive() {
        return Err(InvariantsError::Validation(format!("S = {s} is not positive")));
    }
    let ratio = &a / &s;
    Ok(InvariantReport { scenario: cfg.id(), method: method.to_string(), beta: cfg.beta.clone(), s, a, ratio, closed_forms: None, expansion: Vec::new() })
}

/// As [`evaluate`], adding closed forms in the angle and the expansion of
/// `A/S` up to `order`.
pub fn evaluate_with_closed_forms(cfg: &ScenarioConfig, method: &str, order: usize) -> Result<InvariantReport, InvariantsError> {
    let mut report = evaluate(cfg, method)?;
    let (dn, dd) = DEFAULT_DEGREES;
    let m = method_registry().get(method)?;
    let s = s_as_function_of_beta_with(m, cfg, dn, dd, dn + dd + 4)?;
    let a = log_discrepancy_symbolic(&build_candidate(cfg)?.tower)?;
    let ratio = a.div(&s)?;
    if s.eval(&cfg.beta)? != report.s || a.eval(&cfg.beta)? != report.a {
        return Err(InvariantsError::RegimeUnstable { beta: cfg.beta.clone(), reference: q(REFERENCE_BETA.0, REFERENCE_BETA.1) });
    }
    report.expansion = ratio.taylor_prefix(order)?;
    report.closed_forms = Some(ClosedForms { s, a, ratio });
    Ok(report)
}

/// `S` as a rational function of the angle, reconstructed from exact values
/// at `sample_count` small angles by the Zariski sweep.
pub fn s_as_function_of_beta(
    cfg: &ScenarioConfig,
    deg_num: usize,
    deg_den: usize,
    sample_count: usize,
) -> Result<RationalFunction, InvariantsError> {
    s_as_function_of_beta_with(method_registry().get("sweep")?, cfg, deg_num, deg_den, sample_count)
}

pub fn s_as_function_of_beta_with(
    method: &dyn VanishingOrderMethod,
    cfg: &ScenarioConfig,
    deg_num: usize,
    deg_den: usize,
    sample_count: usize,
) -> Result<RationalFunction, InvariantsError> {
    let betas = beta_samples(sample_count);
    let reference = q(REFERENCE_BETA.0, REFERENCE_BETA.1);
    let reference_signature = method.evaluate_with_signature(&cfg.with_beta(reference.clone()))?.1;

    let values: Vec<(Rational, Rational)> = betas
        .par_iter()
        .map(|b| {
            let (value, sig) = method.evaluate_with_signature(&cfg.with_beta(b.clone()))?;
            if reference_signature.is_some() && sig != reference_signature {
                return Err(InvariantsError::RegimeUnstable { beta: b.clone(), reference: reference.clone() });
            }
            Ok((b.clone(), value))
        })
        .collect::<Result<_, _>>()?;
    Ok(reconstruct_rational_function(&values, deg_num, deg_den)?)
}
