use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{solve, Matrix};
use crate::algebra::{q, Rational};
use crate::surface::DivisorClass;

use super::{build_surface, ScenarioConfig, ScenarioError, Site};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaCoefficients {
    pub e: Rational,
    pub f: Rational,
    pub h: Rational,
    pub mult_p0: Rational,
}

/// Solves `e(E0 + Einf) + f(F0 + Finf) + h(H0 + Hinf) + gamma C = -K` on
/// `S_{0,inf}` and returns the coefficients with the multiplicity of the
/// combination at `E0 ∩ C`.
pub fn alpha_invariant_coefficients(gamma: &Rational) -> Result<AlphaCoefficients, ScenarioError> {
    if gamma.is_negative() || gamma > &Rational::from_int(2) {
        return Err(ScenarioError::Validation(format!("gamma = {gamma} is outside [0, 2]")));
    }
    let cfg = ScenarioConfig::new(2, vec![Site::Zero, Site::Inf], "on-S:C", q(1, 2));
    let s = build_surface(&cfg)?;
    let sum = |a: &str, b: &str| -> Result<DivisorClass, ScenarioError> { Ok(s.class_of(a)? + s.class_of(b)?) };
    let columns = [sum("E0", "Einf")?, sum("F0", "Finf")?, sum("H0", "Hinf")?];
    let rhs = &(-s.canonical()) - &s.class_of("C")?.scale(gamma);

    let a: Matrix = (0..s.rank()).map(|i| columns.iter().map(|c| c.coord(i).clone()).collect()).collect();
    let sol = solve(&a, rhs.coords()).map_err(|e| ScenarioError::Validation(format!("coefficient system: {e}")))?;
    let (e, f, h) = (sol[0].clone(), sol[1].clone(), sol[2].clone());

    let p0 = s.point_on(&["E0", "C"])?;
    let coeff_of = |curve: &str| match curve {
        "E0" | "Einf" => e.clone(),
        "F0" | "Finf" => f.clone(),
        "H0" | "Hinf" => h.clone(),
        "C" => gamma.clone(),
        _ => Rational::zero(),
    };
    let mult_p0 = p0.curves().map(coeff_of).sum();
    Ok(AlphaCoefficients { e, f, h, mult_p0 })
}
