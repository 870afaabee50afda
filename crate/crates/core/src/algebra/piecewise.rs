use serde::{Deserialize, Serialize};

use super::{AlgebraError, Polynomial, Rational};

/// Piecewise polynomial on `[breakpoints[0], breakpoints[last]]`, one
/// segment per interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseProfile {
    breakpoints: Vec<Rational>,
    segments: Vec<Polynomial>,
}

impl PiecewiseProfile {
    /// Validates interval structure. Continuity is checked separately by
    /// [`PiecewiseProfile::check_continuity`] so that malformed data can
    /// still be inspected.
    pub fn new(breakpoints: Vec<Rational>, segments: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        if breakpoints.len() < 2 {
            return Err(AlgebraError::MalformedProfile("need at least two breakpoints".into()));
        }
        if segments.len() + 1 != breakpoints.len() {
            return Err(AlgebraError::MalformedProfile(format!(
                "{} breakpoints but {} segments",
                breakpoints.len(),
                segments.len()
            )));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[0] >= w[1]) {
            return Err(AlgebraError::MalformedProfile(format!(
                "breakpoints not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        Ok(PiecewiseProfile { breakpoints, segments })
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[Polynomial] {
        &self.segments
    }

    pub fn start(&self) -> &Rational {
        &self.breakpoints[0]
    }

    pub fn end(&self) -> &Rational {
        self.breakpoints.last().unwrap()
    }

    /// Evaluates at `x`; outside the support the value is zero. At an interior
    /// breakpoint the left segment is used (continuity makes the choice moot).
    pub fn eval(&self, x: &Rational) -> Rational {
        if x < self.start() || x > self.end() {
            return Rational::zero();
        }
        let idx = self
            .breakpoints
            .windows(2)
            .position(|w| x <= &w[1])
            .unwrap_or(self.segments.len() - 1);
        self.segments[idx].eval(x)
    }

    pub fn integrate(&self) -> Rational {
        self.segments
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(p, w)| p.integrate(&w[0], &w[1]))
            .sum()
    }

    /// Returns the first breakpoint where adjacent segments disagree.
    pub fn check_continuity(&self) -> Result<(), AlgebraError> {
        for (i, pair) in self.segments.windows(2).enumerate() {
            let x = &self.breakpoints[i + 1];
            if pair[0].eval(x) != pair[1].eval(x) {
                return Err(AlgebraError::Discontinuous(x.clone()));
            }
        }
        Ok(())
    }

    /// True when every segment is non-increasing on its interval. A segment of
    /// degree at most 2 has affine derivative, so the endpoints decide.
    pub fn is_non_increasing(&self) -> bool {
        self.segments.iter().zip(self.breakpoints.windows(2)).all(|(p, w)| {
            let d = p.derivative();
            match d.degree() {
                None => true,
                Some(0) | Some(1) => !d.eval(&w[0]).is_positive() && !d.eval(&w[1]).is_positive(),
                Some(_) => {
                    // higher degree: sample critical points of the derivative too
                    let dd = d.derivative();
                    let mut pts = vec![w[0].clone(), w[1].clone()];
                    if let Some(roots) = dd.rational_roots_upto_quadratic() {
                        pts.extend(roots.into_iter().filter(|r| r > &w[0] && r < &w[1]));
                    }
                    pts.iter().all(|x| !d.eval(x).is_positive())
                }
            }
        })
    }
}

/// Integral of a piecewise profile over its whole support.
pub fn integrate_piecewise(profile: &PiecewiseProfile) -> Rational {
    profile.integrate()
}
