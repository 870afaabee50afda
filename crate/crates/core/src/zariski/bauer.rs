use crate::algebra::linalg::{is_negative_definite, solve, Matrix};
use crate::algebra::Rational;
use crate::surface::{DivisorClass, SurfaceModel};

use super::ZariskiError;

/// Zariski chamber of the affine family `base + x * dir`, valid on an
/// interval starting at the evaluation point.
pub(crate) struct AffineDecomposition {
    /// Indices into the declared curve list, ascending.
    pub support: Vec<usize>,
    /// Negative part coefficients as `(constant, slope)` in x.
    pub coeffs: Vec<(Rational, Rational)>,
    pub p_base: DivisorClass,
    pub p_dir: DivisorClass,
}

/// Sign of `c + x*s` just to the right of `at`, as a lexicographic pair.
fn right_sign(c: &Rational, s: &Rational, at: &Rational) -> (Rational, Rational) {
    (c + &(at * s), s.clone())
}

fn is_lex_negative(v: &(Rational, Rational)) -> bool {
    v.0.is_negative() || (v.0.is_zero() && v.1.is_negative())
}

/// Bauer's algorithm on `base + x * dir` for `x` slightly larger than `at`
/// (or exactly `at` when `dir` is zero).
pub(crate) fn decompose_affine(
    s: &SurfaceModel,
    base: &DivisorClass,
    dir: &DivisorClass,
    at: &Rational,
) -> Result<AffineDecomposition, ZariskiError> {
    let curves = s.curves();
    let mut support: Vec<usize> = Vec::new();
    let mut result = None;
    for _ in 0..=curves.len() {
        let names = || support.iter().map(|&i| curves[i].name.clone()).collect::<Vec<_>>();
        let gram: Matrix = support
            .iter()
            .map(|&i| support.iter().map(|&j| s.intersect(&curves[i].class, &curves[j].class)).collect())
            .collect::<Result<_, _>>()?;
        if !support.is_empty() && !is_negative_definite(&gram) {
            return Err(ZariskiError::NotNegativeDefinite(names()));
        }
        let rhs_base: Vec<Rational> =
            support.iter().map(|&i| s.intersect(base, &curves[i].class)).collect::<Result<_, _>>()?;
        let rhs_dir: Vec<Rational> =
            support.iter().map(|&i| s.intersect(dir, &curves[i].class)).collect::<Result<_, _>>()?;
        let (a0, a1) = if support.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            (solve(&gram, &rhs_base)?, solve(&gram, &rhs_dir)?)
        };
        let mut p_base = base.clone();
        let mut p_dir = dir.clone();
        for (k, &i) in support.iter().enumerate() {
            p_base = &p_base - &curves[i].class.scale(&a0[k]);
            p_dir = &p_dir - &curves[i].class.scale(&a1[k]);
        }

        let mut added = Vec::new();
        for (i, c) in curves.iter().enumerate() {
            if support.contains(&i) {
                continue;
            }
            let v = right_sign(&s.intersect(&p_base, &c.class)?, &s.intersect(&p_dir, &c.class)?, at);
            if is_lex_negative(&v) {
                added.push(i);
            }
        }
        if added.is_empty() {
            let coeffs: Vec<(Rational, Rational)> = a0.into_iter().zip(a1).collect();
            for (k, (c0, c1)) in coeffs.iter().enumerate() {
                if is_lex_negative(&right_sign(c0, c1, at)) {
                    return Err(ZariskiError::NegativeCoefficient(curves[support[k]].name.clone()));
                }
            }
            result = Some(AffineDecomposition { support, coeffs, p_base, p_dir });
            break;
        }
        support.extend(added);
        support.sort_unstable();
    }
    let out = result.ok_or(ZariskiError::NoTermination)?;
    for &i in &out.support {
        let c = &curves[i].class;
        if !s.intersect(&out.p_base, c)?.is_zero() || !s.intersect(&out.p_dir, c)?.is_zero() {
            return Err(ZariskiError::Verification(format!("positive part not orthogonal to {}", curves[i].name)));
        }
    }
    Ok(out)
}
