use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::surface::{NewPoint, SurfaceModel};

use super::InvariantsError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerStep {
    pub center: String,
    pub exceptional: String,
    pub layout: Vec<(String, Vec<String>)>,
}

impl TowerStep {
    pub fn new_points(&self) -> Vec<NewPoint> {
        self.layout.iter().map(|(n, c)| NewPoint { name: n.clone(), curves: c.clone() }).collect()
    }
}

/// A sequence of point blow-ups over `base`, together with the prime divisor
/// whose log discrepancy is wanted: the last exceptional curve, or a curve
/// on `base` when there are no steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub base: SurfaceModel,
    pub steps: Vec<TowerStep>,
    pub divisor: String,
}

impl TowerSpec {
    /// Surface at the top of the tower.
    pub fn apply(&self) -> Result<SurfaceModel, InvariantsError> {
        let mut s = self.base.clone();
        for st in &self.steps {
            s = s.blow_up(&st.center, &st.exceptional, &st.new_points())?;
        }
        Ok(s)
    }
}

/// `A` of the tower's divisor for the boundary `(1 - b) * (boundary curves)`,
/// as a polynomial in `b`.
///
/// Each blow-up center has multiplicity equal to the sum of the running
/// coefficients of the curves through it; the new exceptional curve gets
/// discrepancy `2 - m` and running coefficient `m - 1`.
pub fn log_discrepancy_polynomial(t: &TowerSpec) -> Result<Polynomial, InvariantsError> {
    let mut coeff: BTreeMap<String, Polynomial> = BTreeMap::new();
    for c in t.base.curves() {
        if c.is_boundary_component {
            coeff.insert(c.name.clone(), Polynomial::from_ints(&[1, -1]));
        }
    }
    let mut s = t.base.clone();
    for st in &t.steps {
        let center = s.point(&st.center)?;
        let m = center.curves().filter_map(|c| coeff.get(c)).fold(Polynomial::zero(), |a, b| &a + b);
        coeff.insert(st.exceptional.clone(), &m - &Polynomial::one());
        s = s.blow_up(&st.center, &st.exceptional, &st.new_points())?;
    }
    s.curve(&t.divisor)?;
    let c = coeff.get(&t.divisor).cloned().unwrap_or_else(Polynomial::zero);
    Ok(&Polynomial::one() - &c)
}

pub fn log_discrepancy_symbolic(t: &TowerSpec) -> Result<RationalFunction, InvariantsError> {
    Ok(RationalFunction::polynomial(log_discrepancy_polynomial(t)?))
}

pub fn log_discrepancy(t: &TowerSpec, beta: &Rational) -> Result<Rational, InvariantsError> {
    if !beta.is_positive() || beta > &Rational::one() {
        return Err(InvariantsError::Validation(format!("boundary parameter {beta} outside (0, 1]")));
    }
    Ok(log_discrepancy_polynomial(t)?.eval(beta))
}
