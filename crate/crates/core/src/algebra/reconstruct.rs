use super::linalg::nullspace;
use super::{AlgebraError, Polynomial, Rational, RationalFunction};

/// Default degree bounds (numerator, denominator).
pub const DEFAULT_DEGREES: (usize, usize) = (4, 2);

/// Rebuilds `N/D` with `deg N <= deg_num`, `deg D <= deg_den` from exact
/// samples.
///
/// The first `deg_num + deg_den + 1` samples determine the function through a
/// homogeneous linear system; the reduced result is then checked against
/// every sample, and at least one sample must be held out of the solve.
pub fn reconstruct_rational_function(
    samples: &[(Rational, Rational)],
    deg_num: usize,
    deg_den: usize,
) -> Result<RationalFunction, AlgebraError> {
    let fit = deg_num + deg_den + 1;
    if samples.len() < fit + 1 {
        return Err(AlgebraError::TooFewSamples { needed: fit + 1, got: samples.len() });
    }
    for (i, (x, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(y, _)| y == x) {
            return Err(AlgebraError::DuplicateAbscissa(x.clone()));
        }
    }

    // rows: N(x) - f * D(x) = 0
    let ncols = deg_num + deg_den + 2;
    let rows: Vec<Vec<Rational>> = samples[..fit]
        .iter()
        .map(|(x, fx)| {
            let mut row = Vec::with_capacity(ncols);
            let mut p = Rational::one();
            for _ in 0..=deg_num {
                row.push(p.clone());
                p = &p * x;
            }
            let mut p = Rational::one();
            for _ in 0..=deg_den {
                row.push(-(fx * &p));
                p = &p * x;
            }
            row
        })
        .collect();

    let basis = nullspace(&rows, ncols);
    let v = basis.into_iter().next().ok_or(AlgebraError::NoFit)?;
    let num = Polynomial::new(v[..=deg_num].to_vec());
    let den = Polynomial::new(v[deg_num + 1..].to_vec());
    let f = RationalFunction::new(num, den).map_err(|_| AlgebraError::NoFit)?;

    for (x, fx) in samples {
        match f.eval(x) {
            Ok(val) if &val == fx => {}
            _ => {
                return Err(AlgebraError::SampleMismatch { at: x.clone(), expected: fx.clone() });
            }
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn sample(f: impl Fn(&Rational) -> Rational, xs: &[Rational]) -> Vec<(Rational, Rational)> {
        xs.iter().map(|x| (x.clone(), f(x))).collect()
    }

    #[test]
    fn polynomial_case() {
        let xs = [q(1, 2), q(1, 3), q(1, 5), q(1, 7)];
        let s = sample(|b| Rational::one() + b, &xs);
        let f = reconstruct_rational_function(&s, 1, 0).unwrap();
        assert_eq!(f.numerator(), &Polynomial::from_ints(&[1, 1]));
        assert_eq!(f.denominator(), &Polynomial::from_ints(&[1]));
    }

    #[test]
    fn toric_closed_form() {
        let target = |b: &Rational| {
            let one_b = Rational::one() + b;
            q(4, 1) * &one_b * &one_b / (q(4, 1) + q(3, 1) * b)
        };
        let xs = [q(1, 10), q(1, 11), q(1, 12), q(1, 13), q(1, 14)];
        let f = reconstruct_rational_function(&sample(target, &xs), 2, 1).unwrap();
        let expected = RationalFunction::new(Polynomial::from_ints(&[4, 8, 4]), Polynomial::from_ints(&[4, 3])).unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn degree_bound_violation() {
        let xs = [q(1, 2), q(1, 3), q(1, 5), q(1, 7), q(2, 1)];
        let s = sample(|b| b * b * b, &xs);
        let err = reconstruct_rational_function(&s, 1, 1).unwrap_err();
        assert!(matches!(err, AlgebraError::SampleMismatch { .. }), "{err:?}");
    }

    #[test]
    fn requires_held_out_sample() {
        let xs = [q(1, 2), q(1, 3)];
        let s = sample(|b| b.clone(), &xs);
        assert!(matches!(
            reconstruct_rational_function(&s, 1, 0),
            Err(AlgebraError::TooFewSamples { .. })
        ));
    }

    #[test]
    fn default_degrees_recover_lower_degree_function() {
        let xs: Vec<Rational> = (10..20).map(|k| q(1, k)).collect();
        let s = sample(|b| (q(4, 1) + q(3, 1) * b) / (q(4, 1) + q(4, 1) * b), &xs);
        let (dn, dd) = DEFAULT_DEGREES;
        let f = reconstruct_rational_function(&s, dn, dd).unwrap();
        assert_eq!(f, RationalFunction::new(Polynomial::from_ints(&[4, 3]), Polynomial::from_ints(&[4, 4])).unwrap());
    }
}
