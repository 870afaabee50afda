//! The surfaces `S_I`, the candidate divisors over them, the α-invariant
//! coefficient system and the GIT classifier for the special points.

mod alpha;
mod cases;
mod git;
mod site;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Rational;
use crate::invariants::{TowerSpec, TowerStep};
use crate::surface::{p1xp1, BoundaryTerm, DivisorClass, PointRecord, SurfaceError, SurfaceModel};

pub use alpha::{alpha_invariant_coefficients, AlphaCoefficients};
pub use cases::{case_registry, CandidateCase, CaseRegistry, TowerPlan};
pub use git::{
    concordance, git_multiplicities, git_stability, kstab_table, table_row_for, Concordance, GitConfig, GitVerdict, KStability,
    TableRow,
};
pub use site::{parse_sites, Site};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("invalid scenario: {0}")]
    Validation(String),
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Surface `S_I` with `|I| = r`, a candidate divisor and the angle parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub r: usize,
    #[serde(rename = "I")]
    pub sites: Vec<Site>,
    pub case: String,
    pub beta: Rational,
    /// Which element of `I` the on-S:E_i, on-S:F_i and over-S:3 cases use.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Site>,
}

impl ScenarioConfig {
    pub fn new(r: usize, sites: Vec<Site>, case: &str, beta: Rational) -> Self {
        ScenarioConfig { r, sites, case: case.to_string(), beta, target: None }
    }

    pub fn with_beta(&self, beta: Rational) -> Self {
        ScenarioConfig { beta, ..self.clone() }
    }

    pub fn contains(&self, site: Site) -> bool {
        self.sites.contains(&site)
    }

    /// Human-readable identifier, e.g. `over-S:2 r=2 I={0,inf}`.
    pub fn id(&self) -> String {
        let labels: Vec<String> = self.sorted_sites().iter().map(|s| s.label()).collect();
        let mut id = format!("{} r={} I={{{}}}", self.case, self.r, labels.join(","));
        if let Some(t) = self.target {
            id.push_str(&format!(" target={t}"));
        }
        id
    }

    pub fn sorted_sites(&self) -> Vec<Site> {
        let set: BTreeSet<Site> = self.sites.iter().copied().collect();
        set.into_iter().collect()
    }

    /// Checks the parts of the configuration that do not depend on the case.
    fn validate_surface(&self) -> Result<(), ScenarioError> {
        let distinct: BTreeSet<Site> = self.sites.iter().copied().collect();
        if distinct.len() != self.sites.len() {
            return Err(ScenarioError::Validation("I has repeated points".into()));
        }
        if self.sites.len() != self.r {
            return Err(ScenarioError::Validation(format!("|I| = {} but r = {}", self.sites.len(), self.r)));
        }
        for s in &self.sites {
            if let Site::Finite(i) = s {
                if *i as usize > self.r {
                    return Err(ScenarioError::Validation(format!("point label {i} exceeds r = {}", self.r)));
                }
            }
        }
        if !self.beta.is_positive() || self.beta > Rational::one() {
            return Err(ScenarioError::Validation(format!("beta = {} is outside (0, 1]", self.beta)));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.validate_surface()?;
        case_registry().get(&self.case)?.check(self)
    }
}

/// Curves and points declared on `P^1 x P^1` before any blow-up.
#[derive(Default)]
pub struct Ambient {
    curves: Vec<(String, [i64; 2], bool)>,
    points: Vec<PointRecord>,
}

impl Ambient {
    pub fn curve(&mut self, name: &str, f: i64, h: i64) {
        self.curves.push((name.to_string(), [f, h], false));
    }

    pub fn point(&mut self, name: &str, curves: &[&str]) {
        self.points.push(PointRecord::transverse(name, curves));
    }

    fn record(&mut self, point: &str) -> Result<&mut PointRecord, ScenarioError> {
        self.points
            .iter_mut()
            .find(|p| p.name == point)
            .ok_or_else(|| ScenarioError::Validation(format!("no point {point} on the quadric")))
    }

    /// Adds `curve` through `point`, transversally.
    pub fn through(&mut self, point: &str, curve: &str) -> Result<(), ScenarioError> {
        let p = self.record(point)?;
        *p = p.clone().with_curve(curve);
        Ok(())
    }

    /// Adds `curve` through `point`, tangent to `to` with the given order.
    pub fn tangent(&mut self, point: &str, curve: &str, to: &str, order: u32) -> Result<(), ScenarioError> {
        let p = self.record(point)?;
        *p = p.clone().with_curve(curve).with_contact(to, curve, order);
        Ok(())
    }

    fn into_model(self) -> Result<SurfaceModel, ScenarioError> {
        let mut s = p1xp1();
        for (name, [f, h], boundary) in self.curves {
            s.add_curve(&name, DivisorClass::from_ints(&[f, h]), boundary)?;
        }
        for p in self.points {
            s.add_point(p)?;
        }
        Ok(s)
    }
}

pub fn point_name(site: Site) -> String {
    format!("p{site}")
}

fn new_point_name(exceptional: &str, curves: &[String]) -> String {
    format!("{exceptional}.{}", curves.join("+"))
}

/// Blows up `point` with one new point per tangency class.
fn blow_up_generic(s: &SurfaceModel, point: &str, exceptional: &str) -> Result<(SurfaceModel, TowerStep), ScenarioError> {
    let layout = s.layout_by_tangency(point, |c| new_point_name(exceptional, c))?;
    let out = s.blow_up(point, exceptional, &layout)?;
    let step = TowerStep {
        center: point.to_string(),
        exceptional: exceptional.to_string(),
        layout: layout.into_iter().map(|p| (p.name, p.curves)).collect(),
    };
    Ok((out, step))
}

/// `S_I` with boundary `(1 - beta) C` and the curves used by the configured case.
pub fn build_surface(cfg: &ScenarioConfig) -> Result<SurfaceModel, ScenarioError> {
    cfg.validate()?;
    let case = case_registry().get(&cfg.case)?;

    let mut amb = Ambient::default();
    amb.curve("Fgen", 1, 0);
    amb.curve("Hgen", 0, 1);
    amb.curves.push(("C".to_string(), [1, 2], true));
    let mut special: BTreeSet<Site> = cfg.sites.iter().copied().collect();
    special.insert(Site::Zero);
    special.insert(Site::Inf);
    for j in &special {
        amb.curve(&format!("F{j}"), 1, 0);
        amb.curve(&format!("H{j}"), 0, 1);
    }
    for j in &special {
        let (f, h) = (format!("F{j}"), format!("H{j}"));
        amb.point(&point_name(*j), &[&f, &h, "C"]);
        if j.is_special() {
            let p = amb.record(&point_name(*j))?;
            *p = p.clone().with_contact("C", &f, 2);
        }
    }
    case.decorate(cfg, &mut amb)?;

    let mut s = amb.into_model()?;
    for j in cfg.sorted_sites() {
        s = blow_up_generic(&s, &point_name(j), &format!("E{j}"))?.0;
    }
    let one_minus_beta = Rational::one() - &cfg.beta;
    s.set_boundary(vec![BoundaryTerm { curve: "C".into(), coeff: one_minus_beta }])?;
    s.set_curves_complete(cfg.r <= 2);
    s.validate()?;
    Ok(s)
}

/// The surface carrying the candidate divisor, ready for the volume sweep.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub config: ScenarioConfig,
    /// `S_I` itself.
    pub base: SurfaceModel,
    /// Top of the blow-up tower (equal to `base` for divisors on `S_I`).
    pub surface: SurfaceModel,
    pub z: String,
    pub tower: TowerSpec,
    /// Pullback of `L_beta = -K - (1 - beta) C` to `surface`.
    pub l: DivisorClass,
}

pub fn build_candidate(cfg: &ScenarioConfig) -> Result<Candidate, ScenarioError> {
    let base = build_surface(cfg)?;
    let plan = case_registry().get(&cfg.case)?.plan(cfg)?;
    let mut s = base.clone();
    let mut steps = Vec::new();
    for (curves, exceptional) in &plan.centers {
        let names: Vec<&str> = curves.iter().map(String::as_str).collect();
        let center = s.point_on(&names)?.name.clone();
        let (next, step) = blow_up_generic(&s, &center, exceptional)?;
        s = next;
        steps.push(step);
    }
    s.curve(&plan.divisor)?;
    let l = base.log_anticanonical()?.extended(s.rank());
    Ok(Candidate {
        config: cfg.clone(),
        tower: TowerSpec { base: base.clone(), steps, divisor: plan.divisor.clone() },
        base,
        surface: s,
        z: plan.divisor,
        l,
    })
}
