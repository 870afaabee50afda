//! Zariski decomposition of divisor classes and the volume sweep
//! `x -> vol(L - xZ)`.

mod bauer;
mod sweep;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Rational};
use crate::surface::{DivisorClass, SurfaceError, SurfaceModel};

pub use sweep::{sweep, Chamber, VolumeProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZariskiError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("support {0:?} has a Gram matrix that is not negative definite")]
    NotNegativeDefinite(Vec<String>),
    #[error("negative part coefficient of {0} is negative")]
    NegativeCoefficient(String),
    #[error("class is not big at x = 0")]
    NotBig,
    #[error("wall position is irrational after x = {0}")]
    IrrationalWall(Rational),
    #[error("sweep did not terminate")]
    NoTermination,
    #[error("decomposition check failed: {0}")]
    Verification(String),
}

impl ZariskiError {
    /// Errors that signal a class outside the pseudo-effective cone rather
    /// than a broken configuration.
    fn is_positivity_failure(&self) -> bool {
        matches!(self, ZariskiError::NotNegativeDefinite(_) | ZariskiError::NegativeCoefficient(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZariskiResult {
    pub positive: DivisorClass,
    pub negative: Vec<(String, Rational)>,
}

/// Zariski decomposition `d = P + N` relative to the declared curves.
pub fn decompose(s: &SurfaceModel, d: &DivisorClass) -> Result<ZariskiResult, ZariskiError> {
    let zero = DivisorClass::zero(s.rank());
    let ch = bauer::decompose_affine(s, d, &zero, &Rational::zero())?;
    Ok(ZariskiResult {
        positive: ch.p_base,
        negative: ch.support.into_iter().zip(ch.coeffs).map(|(i, (a, _))| (s.curves()[i].name.clone(), a)).collect(),
    })
}

/// `P^2` of the Zariski decomposition, or 0 for a class that is not big.
pub fn volume(s: &SurfaceModel, d: &DivisorClass) -> Result<Rational, ZariskiError> {
    match decompose(s, d) {
        Ok(z) => {
            let v = s.self_intersection(&z.positive)?;
            Ok(if v.is_negative() { Rational::zero() } else { v })
        }
        Err(e) if e.is_positivity_failure() => Ok(Rational::zero()),
        Err(e) => Err(e),
    }
}
