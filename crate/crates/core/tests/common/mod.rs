#![allow(dead_code)]

use kstab_core::algebra::{q, Rational};
use kstab_core::scenarios::{case_registry, ScenarioConfig, Site};
use kstab_core::surface::{DivisorClass, SurfaceModel};

/// Gauss-Jordan on a square system; `None` when singular.
pub fn gauss(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let d = &f * &a[c][k];
                    a[r][k] = &a[r][k] - &d;
                }
                let d = &f * &b[c];
                b[r] = &b[r] - &d;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Cofactor expansion, fine for the tiny matrices used here.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut acc = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * &det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

pub fn negative_definite(m: &[Vec<Rational>]) -> bool {
    (1..=m.len()).all(|k| {
        let lead: Vec<Vec<Rational>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = det(&lead);
        if k % 2 == 1 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}

/// Tries every set of negative curves as support, smallest first, and keeps
/// the first one giving positive coefficients and a nef remainder.
pub fn brute_force_volume(s: &SurfaceModel, d: &DivisorClass) -> Rational {
    let curves = s.curves();
    let neg: Vec<usize> =
        (0..curves.len()).filter(|&i| s.self_intersection(&curves[i].class).unwrap().is_negative()).collect();
    let nef = |p: &DivisorClass| curves.iter().all(|c| !s.intersect(p, &c.class).unwrap().is_negative());
    for size in 0..=neg.len() {
        for subset in subsets(&neg, size) {
            let gram: Vec<Vec<Rational>> = subset
                .iter()
                .map(|&i| subset.iter().map(|&j| s.intersect(&curves[i].class, &curves[j].class).unwrap()).collect())
                .collect();
            if !negative_definite(&gram) {
                continue;
            }
            let rhs: Vec<Rational> = subset.iter().map(|&i| s.intersect(d, &curves[i].class).unwrap()).collect();
            let Some(a) = gauss(gram, rhs) else { continue };
            if a.iter().any(|x| !x.is_positive()) {
                continue;
            }
            let mut p = d.clone();
            for (k, &i) in subset.iter().enumerate() {
                p = &p - &curves[i].class.scale(&a[k]);
            }
            if nef(&p) {
                let v = s.self_intersection(&p).unwrap();
                return if v.is_negative() { Rational::zero() } else { v };
            }
        }
    }
    Rational::zero()
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut v| {
            v.insert(0, items[0]);
            v
        })
        .collect();
    out.extend(subsets(&items[1..], k));
    out
}

/// Every valid (r, I, case) combination for a representative set of `I`
/// with `r <= 2`.
pub fn scenario_catalog() -> Vec<ScenarioConfig> {
    use Site::{Finite, Inf, Zero};
    let site_sets: Vec<Vec<Site>> = vec![
        vec![],
        vec![Zero],
        vec![Inf],
        vec![Finite(1)],
        vec![Zero, Inf],
        vec![Zero, Finite(1)],
        vec![Finite(1), Inf],
        vec![Finite(1), Finite(2)],
    ];
    let mut out = Vec::new();
    for sites in site_sets {
        for case in case_registry().names() {
            let cfg = ScenarioConfig::new(sites.len(), sites.clone(), case, q(1, 10));
            if cfg.validate().is_ok() {
                out.push(cfg);
            }
        }
    }
    out
}

pub type Pt = [Rational; 2];

fn cross(o: &Pt, a: &Pt, b: &Pt) -> Rational {
    &(&a[0] - &o[0]) * &(&b[1] - &o[1]) - &(&a[1] - &o[1]) * &(&b[0] - &o[0])
}

/// All pairwise line intersections that satisfy every inequality, then the
/// convex hull (monotone chain, collinear points dropped).
pub fn oracle_vertices(rays: &[[i64; 2]], coeffs: &[Rational]) -> Vec<Pt> {
    let mut pts: Vec<Pt> = Vec::new();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let (a, b) = (rays[i], rays[j]);
            let det = a[0] * b[1] - a[1] * b[0];
            if det == 0 {
                continue;
            }
            let (ci, cj) = (-&coeffs[i], -&coeffs[j]);
            let det = Rational::from_int(det);
            let x = (&ci * &Rational::from_int(b[1]) - &cj * &Rational::from_int(a[1])) / &det;
            let y = (&cj * &Rational::from_int(a[0]) - &ci * &Rational::from_int(b[0])) / &det;
            let p = [x, y];
            let feasible = rays.iter().zip(coeffs).all(|(r, c)| {
                let v = &(&p[0] * &Rational::from_int(r[0])) + &(&p[1] * &Rational::from_int(r[1]));
                v >= -c
            });
            if feasible && !pts.contains(&p) {
                pts.push(p);
            }
        }
    }
    pts.sort();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Pt> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Pt>> = if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2 && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive() {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    hull
}

pub fn same_cycle(a: &[Pt], b: &[Pt]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|s| (0..a.len()).all(|i| a[(i + s) % a.len()] == b[i]))
}

pub fn oracle_fans() -> Vec<Vec<[i64; 2]>> {
    vec![
        vec![[1, 0], [0, 1], [-1, 0], [0, -1]],
        vec![[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]],
        vec![[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        vec![[1, 0], [0, 1], [-1, -1]],
        vec![[1, 0], [2, 1], [1, 1], [0, 1], [-1, 0], [0, -1]],
    ]
}
