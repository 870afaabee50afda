use crate::algebra::Rational;
use crate::surface::{DivisorClass, SurfaceModel};
use crate::zariski::{sweep, VolumeProfile};

use super::InvariantsError;

/// `S(z) = (1 / l^2) * integral of vol(l - x z)` together with the profile.
pub fn expected_vanishing_order_with_profile(
    s: &SurfaceModel,
    l: &DivisorClass,
    z: &str,
) -> Result<(Rational, VolumeProfile), InvariantsError> {
    let l2 = s.self_intersection(l)?;
    if !l2.is_positive() {
        return Err(InvariantsError::DegeneratePolarization);
    }
    let profile = sweep(s, l, z)?;
    let value = profile.profile.integrate() / l2;
    Ok((value, profile))
}

pub fn expected_vanishing_order(s: &SurfaceModel, l: &DivisorClass, z: &str) -> Result<Rational, InvariantsError> {
    Ok(expected_vanishing_order_with_profile(s, l, z)?.0)
}
