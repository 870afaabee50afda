use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::algebra::Rational;

/// Rational coordinate vector over a Picard basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass {
    coords: Vec<Rational>,
}

impl DivisorClass {
    pub fn new(coords: Vec<Rational>) -> Self {
        DivisorClass { coords }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass { coords: vec![Rational::zero(); rank] }
    }

    /// The `index`-th basis vector.
    pub fn unit(rank: usize, index: usize) -> Self {
        let mut c = DivisorClass::zero(rank);
        c.coords[index] = Rational::one();
        c
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        DivisorClass { coords: coords.iter().map(|&x| Rational::from_int(x)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// Pullback along blow-ups: the appended exceptional coordinates are zero.
    pub fn extended(&self, rank: usize) -> Self {
        assert!(rank >= self.rank(), "cannot shrink a class");
        let mut coords = self.coords.clone();
        coords.resize(rank, Rational::zero());
        DivisorClass { coords }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DivisorClass { coords: self.coords.iter().map(|x| x * c).collect() }
    }

    fn zip_with(&self, other: &DivisorClass, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(self.rank(), other.rank(), "class rank mismatch");
        DivisorClass { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect() }
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}
