//! Picard-lattice model of a smooth projective surface: divisor classes,
//! intersection form, named curves with incidence data, and point blow-ups.

mod class;
mod model;

use thiserror::Error;

pub use class::DivisorClass;
pub use model::{
    BoundaryTerm, Contact, CurveRecord, Incidence, NefCertificate, NefVerdict, NewPoint, PointRecord, SurfaceModel,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("dimension mismatch: expected rank {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("unknown curve {0}")]
    UnknownCurve(String),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("invalid blow-up layout: {0}")]
    Layout(String),
    #[error("invalid surface model: {0}")]
    Invalid(String),
}

/// `P^1 x P^1` with fibre class `F`, section class `H` and canonical class
/// `-2F - 2H`. No curves or points are declared.
pub fn p1xp1() -> SurfaceModel {
    let mut s = SurfaceModel::new(vec!["F".into(), "H".into()], vec![vec![0, 1], vec![1, 0]])
        .expect("valid lattice");
    s.set_canonical(DivisorClass::from_ints(&[-2, -2])).expect("rank 2");
    s
}
