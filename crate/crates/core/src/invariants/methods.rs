use std::sync::OnceLock;

use crate::algebra::Rational;
use crate::scenarios::{build_candidate, ScenarioConfig};
use crate::toric::scenario_toric_vanishing;
use crate::zariski::VolumeProfile;

use super::{expected_vanishing_order_with_profile, InvariantsError};

/// A way of computing `S(Z)` for a scenario at a fixed angle.
pub trait VanishingOrderMethod: Send + Sync {
    fn name(&self) -> &'static str;

    fn expected_vanishing_order(&self, cfg: &ScenarioConfig) -> Result<Rational, InvariantsError>;

    /// The value with the chamber data used by the small-angle guard, when
    /// the method has any.
    fn evaluate_with_signature(&self, cfg: &ScenarioConfig) -> Result<(Rational, Option<Vec<Vec<String>>>), InvariantsError> {
        Ok((self.expected_vanishing_order(cfg)?, None))
    }
}

/// Zariski decomposition sweep on the blown-up surface.
pub struct SweepMethod;

impl SweepMethod {
    pub fn profile(cfg: &ScenarioConfig) -> Result<(Rational, VolumeProfile), InvariantsError> {
        let c = build_candidate(cfg)?;
        let (s, p) = expected_vanishing_order_with_profile(&c.surface, &c.l, &c.z)?;
        Ok((s, p.with_beta(cfg.beta.clone())))
    }
}

impl VanishingOrderMethod for SweepMethod {
    fn name(&self) -> &'static str {
        "sweep"
    }

    fn expected_vanishing_order(&self, cfg: &ScenarioConfig) -> Result<Rational, InvariantsError> {
        Ok(SweepMethod::profile(cfg)?.0)
    }

    fn evaluate_with_signature(&self, cfg: &ScenarioConfig) -> Result<(Rational, Option<Vec<Vec<String>>>), InvariantsError> {
        let (s, p) = SweepMethod::profile(cfg)?;
        Ok((s, Some(p.signature())))
    }
}

/// Moment polytope barycenter, for toric surfaces and toric divisors.
pub struct ToricMethod;

impl VanishingOrderMethod for ToricMethod {
    fn name(&self) -> &'static str {
        "toric"
    }

    fn expected_vanishing_order(&self, cfg: &ScenarioConfig) -> Result<Rational, InvariantsError> {
        scenario_toric_vanishing(cfg).map_err(|e| match e {
            crate::toric::ToricError::NotToric(reason) => {
                InvariantsError::Unsupported { method: self.name().to_string(), reason }
            }
            other => other.into(),
        })
    }
}

pub struct MethodRegistry {
    methods: Vec<Box<dyn VanishingOrderMethod>>,
}

impl MethodRegistry {
    pub fn empty() -> Self {
        MethodRegistry { methods: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut r = MethodRegistry::empty();
        r.register(Box::new(SweepMethod));
        r.register(Box::new(ToricMethod));
        r
    }

    pub fn register(&mut self, m: Box<dyn VanishingOrderMethod>) {
        self.methods.retain(|x| x.name() != m.name());
        self.methods.push(m);
    }

    pub fn get(&self, name: &str) -> Result<&dyn VanishingOrderMethod, InvariantsError> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .map(|m| m.as_ref())
            .ok_or_else(|| InvariantsError::Validation(format!("unknown method {name:?}")))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }
}

pub fn method_registry() -> &'static MethodRegistry {
    static REGISTRY: OnceLock<MethodRegistry> = OnceLock::new();
    REGISTRY.get_or_init(MethodRegistry::builtin)
}
