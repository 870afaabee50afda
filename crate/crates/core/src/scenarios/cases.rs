use std::sync::OnceLock;

use super::{point_name, Ambient, ScenarioConfig, ScenarioError, Site};

/// Blow-up centers (each located as the unique point on the listed curves)
/// and the divisor to evaluate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerPlan {
    pub centers: Vec<(Vec<String>, String)>,
    pub divisor: String,
}

impl TowerPlan {
    fn on_surface(divisor: &str) -> Self {
        TowerPlan { centers: Vec::new(), divisor: divisor.to_string() }
    }

    fn then(mut self, curves: &[&str], exceptional: &str) -> Self {
        self.centers.push((curves.iter().map(|c| c.to_string()).collect(), exceptional.to_string()));
        self.divisor = exceptional.to_string();
        self
    }
}

/// A family of candidate divisors over `S_I`.
pub trait CandidateCase: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Case-specific preconditions on the configuration.
    fn check(&self, _cfg: &ScenarioConfig) -> Result<(), ScenarioError> {
        Ok(())
    }

    /// Extra curves and points on the quadric needed for this case.
    fn decorate(&self, _cfg: &ScenarioConfig, _amb: &mut Ambient) -> Result<(), ScenarioError> {
        Ok(())
    }

    fn plan(&self, cfg: &ScenarioConfig) -> Result<TowerPlan, ScenarioError>;
}

fn invalid(msg: String) -> ScenarioError {
    ScenarioError::Validation(msg)
}

/// The element of `I` used by cases attached to a single blown-up point.
fn chosen_site(cfg: &ScenarioConfig, case: &str, allowed: impl Fn(Site) -> bool) -> Result<Site, ScenarioError> {
    match cfg.target {
        Some(t) if cfg.contains(t) && allowed(t) => Ok(t),
        Some(t) => Err(invalid(format!("{case}: target {t} is not an eligible point of I"))),
        None => cfg
            .sorted_sites()
            .into_iter()
            .find(|s| allowed(*s))
            .ok_or_else(|| invalid(format!("{case}: I has no eligible point"))),
    }
}

fn pairs(sites: &[Site]) -> Vec<(Site, Site)> {
    let mut out = Vec::new();
    for (i, a) in sites.iter().enumerate() {
        for b in &sites[i + 1..] {
            out.push((*a, *b));
        }
    }
    out
}

fn d_name(a: Site, b: Site) -> String {
    format!("D_{a}_{b}")
}

struct OnExceptional;
struct OnFibre;
struct OnBoundary;
struct GeneralFibre;
struct OverGeneralPoint;
struct OverSpecialPoint;
struct OverBlownUpPoint;
struct OverUnblownSpecialPoint;

impl CandidateCase for OnExceptional {
    fn name(&self) -> &'static str {
        "on-S:E_i"
    }
    fn summary(&self) -> &'static str {
        "exceptional curve E_i over a blown-up point"
    }
    fn check(&self, cfg: &ScenarioConfig) -> Result<(), ScenarioError> {
        chosen_site(cfg, self.name(), |_| true).map(|_| ())
    }
    fn plan(&self, cfg: &ScenarioConfig) -> Result<TowerPlan, ScenarioError> {
        Ok(TowerPlan::on_surface(&format!("E{}", chosen_site(cfg, self.name(), |_| true)?)))
    }
}

impl CandidateCase for OnFibre {
    fn name(&self) -> &'static str {
        "on-S:F_i"
    }
    fn summary(&self) -> &'static str {
        "strict transform of the fibre through a blown-up point"
    }
    fn check(&self, cfg: &ScenarioConfig) -> Result<(), ScenarioError> {
        chosen_site(cfg, self.name(), |_| true).map(|_| ())
    }
    fn plan(&self, cfg: &ScenarioConfig) -> Result<TowerPlan, ScenarioError> {
        Ok(TowerPlan::on_surface(&format!("F{}", chosen_site(cfg, self.name(), |_| true)?)))
    }
}

impl CandidateCase for OnBoundary {
    fn name(&self) -> &'static str {
        "on-S:C"
    }
    fn summary(&self) -> &'static str {
        "the boundary curve C"
    }
    fn plan(&self, _cfg: &ScenarioConfig) -> Result<TowerPlan, ScenarioError> {
        Ok(TowerPlan::on_surface("C"))
    }
}

impl CandidateCase for GeneralFibre {
    fn name(&self) -> &'static str {
        "on-S:fiber"
    }
    fn summary(&self) -> &'static str {
        "a general fibre"
    }
    fn plan(&self, _cfg: &ScenarioConfig) -> Result<TowerPlan, ScenarioError> {
        Ok(TowerPlan::on_surface("Fgen"))
    }
}

impl CandidateCase for OverGeneralPoint {
    fn name(&self) -> &'static str {
        "over-S:1"
    }
    fn summary(&self) -> &'static str {
        "exceptional divisor over a general point of C"
    }
    fn decorate(&self, cfg: &ScenarioConfig, amb: &mut Ambient) -> Result<(), ScenarioError> {
        amb.curve("Fp", 1, 0);
        amb.curve("Hp", 0, 1);
        amb.point("pgen", &["C", "Fp", "Hp"]);
        for (a, b) in pairs(&cfg.sorted_sites()) {
            let d = d_name(a, b);
            amb.curve(&d, 1, 1);
            amb.through("pgen", &d)?;
            amb.through(&point_name(a), &d)?;
            amb.through(&point_name(b), &d)?;
        }
        Ok(())
    }
    fn plan(&self, _cfg: &ScenarioConfig) -> Result<TowerPlan, ScenarioError> {
        Ok(TowerPlan::on_surface("C").then(&["C", "Fp"], "Z"))
    }
}

impl CandidateCase for OverSpecialPoint {
    fn name(&self) -> &'static str {
        "over-S:2"
    }
    fn summary(&self) -> &'static str {
        "exceptional divisor over E_0 ∩ C, with 0 in I"
    }
    fn check(&self, cfg: &ScenarioConfig) -> Result<(), ScenarioError> {
        if cfg.contains(Site::Zero) {
            Ok(())
        } else {
            Err(invalid(format!("{} requires 0 in I", self.name())))
        }
    }
    fn plan(&self, _cfg: &ScenarioConfig) -> Result<TowerPlan, ScenarioError> {
        Ok(TowerPlan::on_surface("C").then(&["E0", "C"], "Z"))
    }
}

impl CandidateCase for OverBlownUpPoint {
    fn name(&self) -> &'static str {
        "over-S:3"
    }
    fn summary(&self) -> &'static str {
        "exceptional divisor over E_i ∩ C, with i in I not 0 or inf"
    }
    fn check(&self, cfg: &ScenarioConfig) -> Result<(), ScenarioError> {
        chosen_site(cfg, self.name(), |s| !s.is_special()).map(|_| ())
    }
    fn decorate(&self, cfg: &ScenarioConfig, amb: &mut Ambient) -> Result<(), ScenarioError> {
        let i = chosen_site(cfg, self.name(), |s| !s.is_special())?;
        for b in cfg.sorted_sites().into_iter().filter(|b| *b != i) {
            let d = d_name(i, b);
            amb.curve(&d, 1, 1);
            amb.tangent(&point_name(i), &d, "C", 2)?;
            amb.through(&point_name(b), &d)?;
        }
        Ok(())
    }
    fn plan(&self, cfg: &ScenarioConfig) -> Result<TowerPlan, ScenarioError> {
        let i = chosen_site(cfg, self.name(), |s| !s.is_special())?;
        Ok(TowerPlan::on_surface("C").then(&[&format!("E{i}"), "C"], "Z"))
    }
}

impl CandidateCase for OverUnblownSpecialPoint {
    fn name(&self) -> &'static str {
        "over-S:4"
    }
    fn summary(&self) -> &'static str {
        "divisor over the second infinitely near point of C at p_0, with 0 not in I"
    }
    fn check(&self, cfg: &ScenarioConfig) -> Result<(), ScenarioError> {
        if cfg.contains(Site::Zero) {
            Err(invalid(format!("{} requires 0 not in I", self.name())))
        } else {
            Ok(())
        }
    }
    fn decorate(&self, cfg: &ScenarioConfig, amb: &mut Ambient) -> Result<(), ScenarioError> {
        for (a, b) in pairs(&cfg.sorted_sites()) {
            let d = d_name(a, b);
            amb.curve(&d, 1, 1);
            amb.through(&point_name(Site::Zero), &d)?;
            amb.through(&point_name(a), &d)?;
            amb.through(&point_name(b), &d)?;
        }
        Ok(())
    }
    fn plan(&self, _cfg: &ScenarioConfig) -> Result<TowerPlan, ScenarioError> {
        Ok(TowerPlan::on_surface("C").then(&["F0", "H0", "C"], "G").then(&["G", "C"], "Z"))
    }
}

/// Candidate cases selectable by name.
pub struct CaseRegistry {
    cases: Vec<Box<dyn CandidateCase>>,
}

impl CaseRegistry {
    pub fn empty() -> Self {
        CaseRegistry { cases: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut r = CaseRegistry::empty();
        r.register(Box::new(OnExceptional));
        r.register(Box::new(OnFibre));
        r.register(Box::new(OnBoundary));
        r.register(Box::new(GeneralFibre));
        r.register(Box::new(OverGeneralPoint));
        r.register(Box::new(OverSpecialPoint));
        r.register(Box::new(OverBlownUpPoint));
        r.register(Box::new(OverUnblownSpecialPoint));
        r
    }

    /// Adds a case, replacing any case of the same name.
    pub fn register(&mut self, case: Box<dyn CandidateCase>) {
        self.cases.retain(|c| c.name() != case.name());
        self.cases.push(case);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CandidateCase, ScenarioError> {
        self.cases
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
            .ok_or_else(|| ScenarioError::UnknownCase(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.cases.iter().map(|c| c.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn CandidateCase> {
        self.cases.iter().map(|c| c.as_ref())
    }
}

pub fn case_registry() -> &'static CaseRegistry {
    static REGISTRY: OnceLock<CaseRegistry> = OnceLock::new();
    REGISTRY.get_or_init(CaseRegistry::builtin)
}
