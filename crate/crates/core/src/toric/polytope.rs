use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::algebra::Rational;

use super::{ToricDivisorData, ToricError};

pub type Point = [Rational; 2];

fn cross(a: &Point, b: &Point) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn sub(a: &Point, b: &Point) -> Point {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn pair(u: &Point, v: [i64; 2]) -> Rational {
    &u[0] * &Rational::from_int(v[0]) + &u[1] * &Rational::from_int(v[1])
}

/// Convex polygon with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope2D {
    vertices: Vec<Point>,
}

impl Polytope2D {
    /// Accepts a counterclockwise convex vertex list without repeated or
    /// collinear consecutive vertices.
    pub fn new(vertices: Vec<Point>) -> Result<Self, ToricError> {
        let n = vertices.len();
        if n < 3 {
            return Err(ToricError::Degenerate);
        }
        for i in 0..n {
            let (a, b, c) = (&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
            if !cross(&sub(b, a), &sub(c, b)).is_positive() {
                return Err(ToricError::Degenerate);
            }
        }
        Ok(Polytope2D { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn area(&self) -> Rational {
        let v = &self.vertices;
        let mut twice = Rational::zero();
        for i in 1..v.len() - 1 {
            twice += &cross(&sub(&v[i], &v[0]), &sub(&v[i + 1], &v[0]));
        }
        twice / Rational::from_int(2)
    }

    /// Strict interior test.
    pub fn contains_strictly(&self, u: &Point) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| cross(&sub(&self.vertices[(i + 1) % n], &self.vertices[i]), &sub(u, &self.vertices[i])).is_positive())
    }
}

/// `<u, n> >= c`.
struct HalfPlane {
    n: [i64; 2],
    c: Rational,
}

impl HalfPlane {
    fn value(&self, u: &Point) -> Rational {
        pair(u, self.n) - &self.c
    }

    fn meet(&self, other: &HalfPlane) -> Result<Point, ToricError> {
        let det = Rational::from_int(self.n[0] * other.n[1] - self.n[1] * other.n[0]);
        if det.is_zero() {
            // a complete fan bounds the region, so parallel neighbours mean it is empty
            return Err(ToricError::Empty);
        }
        let x = (&self.c * &Rational::from_int(other.n[1]) - &other.c * &Rational::from_int(self.n[1])) / &det;
        let y = (&other.c * &Rational::from_int(self.n[0]) - &self.c * &Rational::from_int(other.n[0])) / &det;
        Ok([x, y])
    }
}

/// `{u : <u, v_rho> >= -a_rho}` by half-plane intersection over the rays in
/// angular order.
pub fn polytope_from_divisor(d: &ToricDivisorData) -> Result<Polytope2D, ToricError> {
    let planes: Vec<HalfPlane> =
        d.fan().rays().iter().zip(d.coefficients()).map(|(r, a)| HalfPlane { n: *r, c: -a }).collect();
    let outside = |h: &HalfPlane, p: &Point| h.value(p).is_negative();

    let mut dq: VecDeque<&HalfPlane> = VecDeque::new();
    for h in &planes {
        while dq.len() >= 2 && outside(h, &dq[dq.len() - 1].meet(dq[dq.len() - 2])?) {
            dq.pop_back();
        }
        while dq.len() >= 2 && outside(h, &dq[0].meet(dq[1])?) {
            dq.pop_front();
        }
        dq.push_back(h);
    }
    while dq.len() >= 3 && outside(dq[0], &dq[dq.len() - 1].meet(dq[dq.len() - 2])?) {
        dq.pop_back();
    }
    while dq.len() >= 3 && outside(dq[dq.len() - 1], &dq[0].meet(dq[1])?) {
        dq.pop_front();
    }
    if dq.len() < 3 {
        return Err(ToricError::Empty);
    }
    let n = dq.len();
    let mut verts: Vec<Point> = Vec::with_capacity(n);
    for i in 0..n {
        let p = dq[i].meet(dq[(i + 1) % n])?;
        if verts.last() != Some(&p) {
            verts.push(p);
        }
    }
    while verts.len() > 1 && verts.first() == verts.last() {
        verts.pop();
    }
    if planes.iter().any(|h| verts.iter().any(|p| outside(h, p))) {
        return Err(ToricError::Empty);
    }
    // drop vertices in the middle of an edge
    let mut i = 0;
    while verts.len() >= 3 && i < verts.len() {
        let m = verts.len();
        let (a, b, c) = (&verts[(i + m - 1) % m], &verts[i], &verts[(i + 1) % m]);
        if cross(&sub(b, a), &sub(c, b)).is_zero() {
            verts.remove(i);
        } else {
            i += 1;
        }
    }
    Polytope2D::new(verts)
}

/// Area-weighted centroid.
pub fn barycenter(p: &Polytope2D) -> Result<Point, ToricError> {
    let v = p.vertices();
    let mut area = Rational::zero();
    let mut acc = [Rational::zero(), Rational::zero()];
    for i in 1..v.len() - 1 {
        let w = cross(&sub(&v[i], &v[0]), &sub(&v[i + 1], &v[0]));
        for k in 0..2 {
            acc[k] += &(&w * &(&(&v[0][k] + &v[i][k]) + &v[i + 1][k]));
        }
        area += &w;
    }
    if !area.is_positive() {
        return Err(ToricError::Degenerate);
    }
    let scale = Rational::from_int(3) * area;
    Ok([&acc[0] / &scale, &acc[1] / &scale])
}

/// `min <u, v>` over the polytope.
pub fn psi(p: &Polytope2D, v: [i64; 2]) -> Rational {
    p.vertices().iter().map(|u| pair(u, v)).min().expect("polytope has vertices")
}

/// `<bc, v> - psi(v)`.
pub fn toric_expected_vanishing(d: &ToricDivisorData, v: [i64; 2]) -> Result<Rational, ToricError> {
    let p = polytope_from_divisor(d)?;
    let bc = barycenter(&p)?;
    Ok(pair(&bc, v) - psi(&p, v))
}
