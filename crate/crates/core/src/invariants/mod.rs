//! Expected vanishing orders, log discrepancies along blow-up towers and
//! δ-invariant upper bounds.

mod delta;
mod encode;
mod methods;
mod report;
mod tower;
mod vanishing;

use thiserror::Error;

use crate::algebra::{AlgebraError, Rational};
use crate::scenarios::ScenarioError;
use crate::surface::SurfaceError;
use crate::toric::ToricError;
use crate::zariski::ZariskiError;

pub use delta::{delta_upper_bound, product_delta_upper_bound};
pub use encode::{reports_from_csv, reports_from_json, reports_to_csv, reports_to_json};
pub use methods::{method_registry, MethodRegistry, SweepMethod, ToricMethod, VanishingOrderMethod};
pub use report::{
    beta_samples, evaluate, evaluate_with_closed_forms, s_as_function_of_beta, s_as_function_of_beta_with, ClosedForms,
    InvariantReport, REFERENCE_BETA,
};
pub use tower::{log_discrepancy, log_discrepancy_polynomial, log_discrepancy_symbolic, TowerSpec, TowerStep};
pub use vanishing::{expected_vanishing_order, expected_vanishing_order_with_profile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Zariski(#[from] ZariskiError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error("{0}")]
    Validation(String),
    #[error("polarization has non-positive self-intersection")]
    DegeneratePolarization,
    #[error("chamber structure at beta = {beta} differs from the one at beta = {reference}")]
    RegimeUnstable { beta: Rational, reference: Rational },
    #[error("method {method} does not apply: {reason}")]
    Unsupported { method: String, reason: String },
}
