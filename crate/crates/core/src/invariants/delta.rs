use crate::algebra::Rational;

use super::InvariantsError;

/// `min A/S` over the given candidates.
pub fn delta_upper_bound(candidates: &[(Rational, Rational)]) -> Result<Rational, InvariantsError> {
    let mut best: Option<Rational> = None;
    for (a, s) in candidates {
        if !s.is_positive() {
            return Err(InvariantsError::Validation(format!("expected vanishing order {s} is not positive")));
        }
        let r = a / s;
        best = Some(match best {
            Some(b) => b.min(r),
            None => r,
        });
    }
    best.ok_or_else(|| InvariantsError::Validation("no candidate divisors".into()))
}

/// Bound for a product from the bounds of its factors.
pub fn product_delta_upper_bound(d1: &Rational, d2: &Rational) -> Result<Rational, InvariantsError> {
    if !d1.is_positive() || !d2.is_positive() {
        return Err(InvariantsError::Validation("delta bounds must be positive".into()));
    }
    Ok(d1.clone().min(d2.clone()))
}
