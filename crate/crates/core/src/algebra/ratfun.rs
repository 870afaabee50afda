use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{AlgebraError, Polynomial, Rational};

/// Quotient of two polynomials in the angle parameter.
///
/// Kept in a canonical reduced form: numerator and denominator are coprime,
/// all coefficients are integers with no common factor, and the leading
/// coefficient of the denominator is positive. Two equal functions therefore
/// compare equal field by field.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRationalFunction", into = "RawRationalFunction")]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct RawRationalFunction {
    num: Vec<Rational>,
    den: Vec<Rational>,
}

impl TryFrom<RawRationalFunction> for RationalFunction {
    type Error = AlgebraError;
    fn try_from(raw: RawRationalFunction) -> Result<Self, Self::Error> {
        RationalFunction::new(Polynomial::new(raw.num), Polynomial::new(raw.den))
    }
}

impl From<RationalFunction> for RawRationalFunction {
    fn from(f: RationalFunction) -> Self {
        RawRationalFunction { num: f.num.into(), den: f.den.into() }
    }
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction { num, den: Polynomial::one() });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;

        let mut lcm = BigInt::one();
        for c in num.coeffs().iter().chain(den.coeffs()) {
            lcm = lcm.lcm(c.denom());
        }
        let scale = Rational::from_big(lcm, BigInt::one());
        let (num, den) = (num.scale(&scale), den.scale(&scale));
        let mut content = BigInt::zero();
        for c in num.coeffs().iter().chain(den.coeffs()) {
            content = content.gcd(c.numer());
        }
        let mut divisor = Rational::from_big(content, BigInt::one());
        if den.leading().is_negative() {
            divisor = -divisor;
        }
        let inv = divisor.recip()?;
        Ok(RationalFunction { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        RationalFunction::new(p, Polynomial::one()).expect("unit denominator")
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::polynomial(Polynomial::constant(c))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(AlgebraError::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn mul(&self, other: &RationalFunction) -> Self {
        RationalFunction::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn div(&self, other: &RationalFunction) -> Result<Self, AlgebraError> {
        if other.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        RationalFunction::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn add(&self, other: &RationalFunction) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RationalFunction::new(num, &self.den * &other.den).expect("nonzero denominators")
    }

    /// Coefficients `c_0..=c_order` of the power series at 0.
    pub fn taylor_prefix(&self, order: usize) -> Result<Vec<Rational>, AlgebraError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(AlgebraError::PoleAtZero);
        }
        let inv = d0.recip()?;
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.num.coeff(k);
            for j in 1..=k {
                acc -= &(self.den.coeff(j) * &out[k - j]);
            }
            out.push(acc * &inv);
        }
        Ok(out)
    }
}

/// Power-series prefix of `f` at 0, up to and including `order`.
pub fn taylor_prefix(f: &RationalFunction, order: usize) -> Result<Vec<Rational>, AlgebraError> {
    f.taylor_prefix(order)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(n), Polynomial::from_ints(d)).unwrap()
    }

    #[test]
    fn canonical_form_is_syntactic() {
        // (4 + 6b + 2b^2) / (4 + 2b)  ==  (1 + b)
        let a = rf(&[4, 6, 2], &[4, 2]);
        assert_eq!(a, rf(&[1, 1], &[1]));
        // sign normalisation
        assert_eq!(rf(&[1], &[-2]), rf(&[-1], &[2]));
        // rational coefficients are cleared
        let b = RationalFunction::new(
            Polynomial::new(vec![q(1, 2)]),
            Polynomial::new(vec![q(1, 3), q(1, 4)]),
        )
        .unwrap();
        assert_eq!(b, rf(&[6], &[4, 3]));
    }

    #[test]
    fn taylor_examples() {
        assert_eq!(rf(&[4, 3], &[4, 4]).taylor_prefix(1).unwrap(), vec![q(1, 1), q(-1, 4)]);
        assert_eq!(rf(&[1, 2], &[1]).taylor_prefix(2).unwrap(), vec![q(1, 1), q(2, 1), q(0, 1)]);
        assert_eq!(rf(&[1], &[1, -1]).taylor_prefix(2).unwrap(), vec![q(1, 1); 3]);
    }

    #[test]
    fn pole_at_zero() {
        assert_eq!(rf(&[1], &[0, 1]).taylor_prefix(1), Err(AlgebraError::PoleAtZero));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_err());
    }

    #[test]
    fn serde_shape() {
        let f = rf(&[4, 3], &[4, 4]);
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"{"num":["4","3"],"den":["4","4"]}"#);
        let back: RationalFunction = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }
}
