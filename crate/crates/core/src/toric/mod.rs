//! Toric surfaces: complete fans, moment polygons of torus-invariant
//! divisors, and expected vanishing orders of toric valuations.

mod polytope;

use std::cmp::Ordering;
use std::path::{Path, PathBuf};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Polynomial, Rational};
use crate::scenarios::{ScenarioConfig, Site};

pub use polytope::{barycenter, polytope_from_divisor, psi, toric_expected_vanishing, Point, Polytope2D};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("invalid fan: {0}")]
    Fan(String),
    #[error("{rays} rays but {coeffs} coefficients")]
    Dimension { rays: usize, coeffs: usize },
    #[error("polytope is empty")]
    Empty,
    #[error("polytope has empty interior")]
    Degenerate,
    #[error("not a toric configuration: {0}")]
    NotToric(String),
    #[error("fan asset: {0}")]
    Asset(String),
}

/// Which half-plane a nonzero vector lies in, for angular sorting.
fn half(v: [i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: [i64; 2], b: [i64; 2]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a[0] * b[1] - a[1] * b[0])))
}

/// Complete fan in the plane, rays in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[i64; 2]>", into = "Vec<[i64; 2]>")]
pub struct Fan2D {
    rays: Vec<[i64; 2]>,
}

impl TryFrom<Vec<[i64; 2]>> for Fan2D {
    type Error = ToricError;
    fn try_from(rays: Vec<[i64; 2]>) -> Result<Self, ToricError> {
        Fan2D::new(rays)
    }
}

impl From<Fan2D> for Vec<[i64; 2]> {
    fn from(f: Fan2D) -> Self {
        f.rays
    }
}

impl Fan2D {
    pub fn new(rays: Vec<[i64; 2]>) -> Result<Self, ToricError> {
        if rays.len() < 3 {
            return Err(ToricError::Fan("a complete fan needs at least three rays".into()));
        }
        for r in &rays {
            if r[0].gcd(&r[1]) != 1 {
                return Err(ToricError::Fan(format!("ray {r:?} is not primitive")));
            }
        }
        let n = rays.len();
        let start = (0..n).min_by(|&i, &j| angle_cmp(rays[i], rays[j])).expect("nonempty");
        for k in 0..n - 1 {
            let (a, b) = (rays[(start + k) % n], rays[(start + k + 1) % n]);
            if angle_cmp(a, b) != Ordering::Less {
                return Err(ToricError::Fan("rays are not in strictly counterclockwise order".into()));
            }
        }
        for i in 0..n {
            let (a, b) = (rays[i], rays[(i + 1) % n]);
            if a[0] * b[1] - a[1] * b[0] <= 0 {
                return Err(ToricError::Fan(format!("cone spanned by {a:?} and {b:?} is not strictly convex")));
            }
        }
        Ok(Fan2D { rays })
    }

    pub fn rays(&self) -> &[[i64; 2]] {
        &self.rays
    }
}

/// `sum a_rho D_rho` on the toric surface of `fan`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDivisor", into = "RawDivisor")]
pub struct ToricDivisorData {
    fan: Fan2D,
    coefficients: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RawDivisor {
    rays: Fan2D,
    coeffs: Vec<Rational>,
}

impl TryFrom<RawDivisor> for ToricDivisorData {
    type Error = ToricError;
    fn try_from(r: RawDivisor) -> Result<Self, ToricError> {
        ToricDivisorData::new(r.rays, r.coeffs)
    }
}

impl From<ToricDivisorData> for RawDivisor {
    fn from(d: ToricDivisorData) -> Self {
        RawDivisor { rays: d.fan, coeffs: d.coefficients }
    }
}

impl ToricDivisorData {
    pub fn new(fan: Fan2D, coefficients: Vec<Rational>) -> Result<Self, ToricError> {
        if fan.rays().len() != coefficients.len() {
            return Err(ToricError::Dimension { rays: fan.rays().len(), coeffs: coefficients.len() });
        }
        Ok(ToricDivisorData { fan, coefficients })
    }

    pub fn fan(&self) -> &Fan2D {
        &self.fan
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }
}

/// A fan with named rays and divisor coefficients given as polynomials in
/// the angle, as stored in the bundled JSON asset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanAsset {
    pub labels: Vec<String>,
    pub rays: Vec<[i64; 2]>,
    pub coeffs: Vec<Polynomial>,
    #[serde(default)]
    pub notes: String,
}

impl FanAsset {
    pub fn at(&self, beta: &Rational) -> Result<ToricDivisorData, ToricError> {
        if self.labels.len() != self.rays.len() {
            return Err(ToricError::Asset("labels and rays differ in length".into()));
        }
        ToricDivisorData::new(Fan2D::new(self.rays.clone())?, self.coeffs.iter().map(|p| p.eval(beta)).collect())
    }

    pub fn ray(&self, label: &str) -> Result<[i64; 2], ToricError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.rays[i])
            .ok_or_else(|| ToricError::Asset(format!("no ray labelled {label}")))
    }
}

pub fn default_fan_asset_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("assets").join("bl2_fan.json")
}

pub fn load_fan_asset(path: &Path) -> Result<FanAsset, ToricError> {
    let text = std::fs::read_to_string(path).map_err(|e| ToricError::Asset(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| ToricError::Asset(format!("{}: {e}", path.display())))
}

/// Fan of `S_I` for `I ⊆ {0, inf}` with `L_beta` written on its rays.
pub fn scenario_fan(sites: &[Site]) -> Result<FanAsset, ToricError> {
    if let Some(s) = sites.iter().find(|s| !s.is_special()) {
        return Err(ToricError::NotToric(format!("point {s} is not torus fixed")));
    }
    let has = |s: Site| sites.contains(&s);
    let p = |c: &[i64]| Polynomial::from_ints(c);
    let mut labels = Vec::new();
    let mut rays = Vec::new();
    let mut coeffs = Vec::new();
    let mut push = |l: &str, r: [i64; 2], c: Polynomial| {
        labels.push(l.to_string());
        rays.push(r);
        coeffs.push(c);
    };
    push("F0", [1, 0], p(&[1, 1]));
    if has(Site::Zero) {
        push("E0", [1, 1], p(&[1, 2]));
    }
    push("H0", [0, 1], p(&[0, 2]));
    push("Finf", [-1, 0], Polynomial::zero());
    if has(Site::Inf) {
        push("Einf", [-1, -1], p(&[0, -1]));
    }
    push("Hinf", [0, -1], Polynomial::zero());
    Ok(FanAsset { labels, rays, coeffs, notes: String::new() })
}

/// Primitive generator of the toric valuation for the configured case.
pub fn scenario_valuation(cfg: &ScenarioConfig) -> Result<[i64; 2], ToricError> {
    let fan = scenario_fan(&cfg.sites)?;
    let target = cfg.target.or_else(|| cfg.sorted_sites().first().copied());
    let label = |prefix: &str| -> Result<[i64; 2], ToricError> {
        let t = target.ok_or_else(|| ToricError::NotToric("I is empty".into()))?;
        fan.ray(&format!("{prefix}{t}"))
    };
    match cfg.case.as_str() {
        "on-S:E_i" => label("E"),
        "on-S:F_i" => label("F"),
        "on-S:fiber" => {
            if !cfg.contains(Site::Zero) {
                fan.ray("F0")
            } else if !cfg.contains(Site::Inf) {
                fan.ray("Finf")
            } else {
                Err(ToricError::NotToric("every invariant fibre meets a blown-up point".into()))
            }
        }
        "over-S:2" | "over-S:4" => Ok([2, 1]),
        other => Err(ToricError::NotToric(format!("case {other} is not a toric valuation"))),
    }
}

/// `S` of the case's divisor computed on the moment polygon.
pub fn scenario_toric_vanishing(cfg: &ScenarioConfig) -> Result<Rational, ToricError> {
    let v = scenario_valuation(cfg)?;
    toric_expected_vanishing(&scenario_fan(&cfg.sites)?.at(&cfg.beta)?, v)
}
