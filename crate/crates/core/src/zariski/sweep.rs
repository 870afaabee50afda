use serde::{Deserialize, Serialize};

use crate::algebra::{PiecewiseProfile, Polynomial, Rational};
use crate::surface::{DivisorClass, SurfaceModel};

use super::bauer::decompose_affine;
use super::ZariskiError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub from: Rational,
    pub to: Rational,
    pub support: Vec<String>,
}

/// `vol(L - xZ)` on `[0, tau]` with the Zariski chamber of each segment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeProfile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Rational>,
    #[serde(flatten)]
    pub profile: PiecewiseProfile,
    pub tau: Rational,
    pub chambers: Vec<Chamber>,
}

impl VolumeProfile {
    /// Sequence of negative supports, used to compare chamber structure
    /// between parameter values.
    pub fn signature(&self) -> Vec<Vec<String>> {
        self.chambers.iter().map(|c| c.support.clone()).collect()
    }

    pub fn with_beta(mut self, beta: Rational) -> Self {
        self.beta = Some(beta);
        self
    }
}

fn pair(s: &SurfaceModel, a: &DivisorClass, b: &DivisorClass) -> Result<Rational, ZariskiError> {
    Ok(s.intersect(a, b)?)
}

/// Smallest `x > after` with `c + x*s = 0`, when `s < 0`.
fn falling_root(c: &Rational, slope: &Rational, after: &Rational) -> Option<Rational> {
    if !slope.is_negative() {
        return None;
    }
    let r = -(c / slope);
    (&r > after).then_some(r)
}

fn double_root(p: &Polynomial) -> Option<Rational> {
    if p.degree() != Some(2) {
        return None;
    }
    let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
    let disc = &b * &b - Rational::from_int(4) * &a * &c;
    disc.is_zero().then(|| -(b / (Rational::from_int(2) * a)))
}

/// Sweeps `l - x z` from `x = 0` until the volume vanishes.
pub fn sweep(s: &SurfaceModel, l: &DivisorClass, z: &str) -> Result<VolumeProfile, ZariskiError> {
    let zc = s.class_of(z)?.clone();
    let dir = -&zc;
    let curves = s.curves();
    let mut x = Rational::zero();
    let mut breakpoints = vec![x.clone()];
    let mut segments = Vec::new();
    let mut chambers = Vec::new();
    let guard = 4 * curves.len() + 8;

    for _ in 0..guard {
        let ch = decompose_affine(s, l, &dir, &x)?;
        let pp = pair(s, &ch.p_base, &ch.p_base)?;
        let pd = pair(s, &ch.p_base, &ch.p_dir)?;
        let dd = pair(s, &ch.p_dir, &ch.p_dir)?;
        let vol = Polynomial::new(vec![pp, Rational::from_int(2) * pd, dd]);
        if x.is_zero() && !vol.eval(&x).is_positive() {
            return Err(ZariskiError::NotBig);
        }

        let mut wall: Option<Rational> = None;
        let mut consider = |r: Option<Rational>| {
            if let Some(r) = r {
                wall = Some(match wall.take() {
                    Some(w) => w.min(r),
                    None => r,
                });
            }
        };
        for (i, c) in curves.iter().enumerate() {
            if ch.support.contains(&i) {
                continue;
            }
            consider(falling_root(&pair(s, &ch.p_base, &c.class)?, &pair(s, &ch.p_dir, &c.class)?, &x));
        }
        for (c0, c1) in &ch.coeffs {
            consider(falling_root(c0, c1, &x));
        }

        // P is nef on the whole chamber, so P^2 >= 0 there and it can only
        // vanish before a wall w with P^2(w) > 0 at a double root
        let end_of_volume = match &wall {
            Some(w) if vol.eval(w).is_positive() => double_root(&vol).filter(|r| r > &x && r < w),
            _ => {
                let roots = vol.rational_roots_upto_quadratic().ok_or_else(|| ZariskiError::IrrationalWall(x.clone()))?;
                roots.into_iter().find(|r| r > &x)
            }
        };

        let (end, last) = match (end_of_volume, wall) {
            (Some(t), Some(w)) if t <= w => (t, true),
            (Some(t), None) => (t, true),
            (_, Some(w)) => (w, false),
            (None, None) => return Err(ZariskiError::NoTermination),
        };
        chambers.push(Chamber {
            from: x.clone(),
            to: end.clone(),
            support: ch.support.iter().map(|&i| curves[i].name.clone()).collect(),
        });
        segments.push(vol);
        breakpoints.push(end.clone());
        x = end;
        if last {
            let profile = PiecewiseProfile::new(breakpoints, segments)?;
            profile.check_continuity()?;
            if !profile.is_non_increasing() {
                return Err(ZariskiError::Verification("volume profile increases".into()));
            }
            return Ok(VolumeProfile { beta: None, profile, tau: x, chambers });
        }
    }
    Err(ZariskiError::NoTermination)
}
