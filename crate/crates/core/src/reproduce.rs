//! Catalog of reference checks against known closed forms, run by
//! `kstab reproduce`.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{q, Polynomial, Rational, RationalFunction, DEFAULT_DEGREES};
use crate::invariants::{log_discrepancy_symbolic, s_as_function_of_beta, SweepMethod};
use crate::scenarios::{alpha_invariant_coefficients, build_candidate, build_surface, concordance, ScenarioConfig, Site};
use crate::toric::{barycenter, default_fan_asset_path, load_fan_asset, polytope_from_divisor, psi, toric_expected_vanishing};

/// Angles used for the fixed-angle checks.
pub const CHECK_BETAS: [(i64, i64); 5] = [(1, 5), (1, 7), (1, 10), (1, 100), (3, 50)];

#[derive(Clone, Debug)]
pub struct ReproduceOptions {
    /// Group names or check ids to run; empty runs everything.
    pub only: Vec<String>,
    pub fan_asset: PathBuf,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        ReproduceOptions { only: Vec::new(), fan_asset: default_fan_asset_path() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub group: String,
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

type Runner = Box<dyn Fn(&Path) -> Result<(String, String, bool), String> + Send + Sync>;

struct Check {
    group: &'static str,
    id: String,
    note: Option<&'static str>,
    run: Runner,
}

fn check<F>(group: &'static str, id: impl Into<String>, run: F) -> Check
where
    F: Fn(&Path) -> Result<(String, String, bool), String> + Send + Sync + 'static,
{
    Check { group, id: id.into(), note: None, run: Box::new(run) }
}

fn compare<T: PartialEq + std::fmt::Debug>(expected: T, computed: T) -> (String, String, bool) {
    let ok = expected == computed;
    (format!("{expected:?}"), format!("{computed:?}"), ok)
}

fn err(e: impl Display) -> String {
    e.to_string()
}

fn cfg(r: usize, sites: &[Site], case: &str, beta: Rational) -> ScenarioConfig {
    ScenarioConfig::new(r, sites.to_vec(), case, beta)
}

fn s_closed(c: &ScenarioConfig) -> Result<RationalFunction, String> {
    let (dn, dd) = DEFAULT_DEGREES;
    s_as_function_of_beta(c, dn, dd, dn + dd + 4).map_err(err)
}

fn ratio_closed(c: &ScenarioConfig) -> Result<RationalFunction, String> {
    let a = log_discrepancy_symbolic(&build_candidate(c).map_err(err)?.tower).map_err(err)?;
    a.div(&s_closed(c)?).map_err(err)
}

fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(Polynomial::from_ints(num), Polynomial::from_ints(den)).expect("nonzero denominator")
}

fn betas() -> Vec<Rational> {
    CHECK_BETAS.iter().map(|&(n, d)| q(n, d)).collect()
}

fn sites_for(r: usize) -> Vec<Site> {
    match r {
        0 => vec![],
        1 => vec![Site::Zero],
        _ => vec![Site::Zero, Site::Finite(1)],
    }
}

fn expansion_check(group: &'static str, id: String, c: ScenarioConfig, want: Vec<Rational>, ratio: bool) -> Check {
    check(group, id, move |_| {
        let f = if ratio { ratio_closed(&c)? } else { s_closed(&c)? };
        let got = f.taylor_prefix(want.len() - 1).map_err(err)?;
        Ok(compare(want.clone(), got))
    })
}

fn catalog() -> Vec<Check> {
    let mut out = Vec::new();
    let one = Rational::one();
    let two = Rational::from_int(2);

    for b in betas() {
        for sites in [vec![Site::Zero, Site::Finite(1)], vec![Site::Zero, Site::Inf]] {
            let c = cfg(2, &sites, "over-S:2", b.clone());
            let (one, two) = (one.clone(), two.clone());
            out.push(check("sweep", format!("sweep/{}", c.id()), move |_| {
                let (s, p) = SweepMethod::profile(&c).map_err(err)?;
                let b = &c.beta;
                let want = (&one + b, vec![Rational::zero(), b.clone(), &two + b, &two + &(&two * b)]);
                Ok(compare(want, (s, p.profile.breakpoints().to_vec())))
            }));
        }
    }

    for b in betas() {
        let c = cfg(0, &[], "over-S:4", b.clone());
        out.push(check("case4", format!("case4/{}", c.id()), move |_| {
            let r = crate::invariants::evaluate(&c, "sweep").map_err(err)?;
            let v = Rational::one() + Rational::from_int(2) * &c.beta;
            Ok(compare((v.clone(), v, Rational::one()), (r.s, r.a, r.ratio)))
        }));
    }

    for r in [1usize, 2] {
        let ri = r as i64;
        let sites = if r == 1 { vec![Site::Finite(1)] } else { vec![Site::Zero, Site::Finite(1)] };
        let on = |case: &str| cfg(r, &sites, case, q(1, 10));
        for (case, want) in [
            ("on-S:E_i", vec![q(1, 2), q(6 - ri, 8)]),
            ("on-S:F_i", vec![q(1, 2), q(6 - ri, 8)]),
            ("on-S:C", vec![q(0, 1), q(1, 2), q(ri - 4, 24)]),
            ("on-S:fiber", vec![q(1, 2), q(4 - ri, 8)]),
        ] {
            out.push(expansion_check("on-S", format!("on-S/{case}/r={r}"), on(case), want, false));
        }
    }

    for r in [1usize, 2] {
        let ri = r as i64;
        let with_zero = sites_for(r);
        let without_zero = if r == 1 { vec![Site::Inf] } else { vec![Site::Finite(1), Site::Finite(2)] };
        let finite = if r == 1 { vec![Site::Finite(1)] } else { vec![Site::Zero, Site::Finite(1)] };
        for (case, sites, want) in [
            ("over-S:1", with_zero.clone(), vec![q(1, 2), q(12 - ri, 8)]),
            ("over-S:2", with_zero.clone(), vec![q(1, 1), q(6 - ri, 4)]),
            ("over-S:3", finite, vec![q(1, 2), q(14 - ri, 8)]),
            ("over-S:4", without_zero, vec![q(1, 1), q(8 - ri, 4)]),
        ] {
            let c = cfg(r, &sites, case, q(1, 10));
            out.push(expansion_check("over-S", format!("over-S/{case}/r={r}"), c, want, false));
        }
    }

    for r in [1usize, 2] {
        let ri = r as i64;
        let c = cfg(r, &sites_for(r), "over-S:2", q(1, 10));
        out.push(expansion_check("ratio", format!("ratio/over-S:2/r={r}"), c, vec![q(1, 1), q(ri - 2, 4)], true));
    }
    for r in [0usize, 1, 2] {
        let ri = r as i64;
        let sites: Vec<Site> = match r {
            0 => vec![],
            1 => vec![Site::Inf],
            _ => vec![Site::Finite(1), Site::Inf],
        };
        let c = cfg(r, &sites, "over-S:4", q(1, 10));
        let mut ch = expansion_check("ratio", format!("ratio/over-S:4/r={r}"), c, vec![q(1, 1), q(ri, 4)], true);
        ch.note = Some("linear coefficient r/4 follows from A = 1+2b and S = 1+(8-r)b/4");
        out.push(ch);
    }
    {
        let c = cfg(1, &[Site::Zero], "over-S:2", q(1, 10));
        out.push(check("ratio", "ratio/over-S:2/r=1/closed-form", move |_| {
            let f = ratio_closed(&c)?;
            let below_one = betas().iter().all(|b| f.eval(b).map(|v| v < Rational::one()).unwrap_or(false));
            Ok(compare((rf(&[4, 3], &[4, 4]), true), (f, below_one)))
        }));
    }

    for b in betas() {
        let id = format!("toric/beta={b}");
        out.push(check("toric", id, move |asset| {
            let fan = load_fan_asset(asset).map_err(err)?;
            let d = fan.at(&b).map_err(err)?;
            let p = polytope_from_divisor(&d).map_err(err)?;
            let toric = toric_expected_vanishing(&d, [2, 1]).map_err(err)?;
            let sweep = SweepMethod::profile(&cfg(1, &[Site::Zero], "over-S:2", b.clone())).map_err(err)?.0;
            let i = Rational::from_int;
            let closed = rf(&[4, 8, 4], &[4, 3]).eval(&b).map_err(err)?;
            let den = i(3) * (i(4) + i(3) * &b);
            let bc = [
                -(i(4) * &b * &b + i(9) * &b + i(6)) / &den,
                -(i(7) * &b * &b + i(12) * &b) / &den,
            ];
            let want = (closed.clone(), closed, bc, -(i(2) + i(3) * &b));
            Ok(compare(want, (toric, sweep, barycenter(&p).map_err(err)?, psi(&p, [2, 1]))))
        }));
    }

    {
        let c = cfg(1, &[Site::Zero], "over-S:2", q(1, 10));
        out.push(check("tower", "tower/depth-1", move |_| {
            let a = log_discrepancy_symbolic(&build_candidate(&c).map_err(err)?.tower).map_err(err)?;
            Ok(compare(rf(&[1, 1], &[1]), a))
        }));
        let c = cfg(0, &[], "over-S:4", q(1, 10));
        out.push(check("tower", "tower/depth-2", move |_| {
            let cand = build_candidate(&c).map_err(err)?;
            let a = log_discrepancy_symbolic(&cand.tower).map_err(err)?;
            Ok(compare((2usize, rf(&[1, 2], &[1])), (cand.tower.steps.len(), a)))
        }));
    }

    for k in 0..10 {
        let g = q(k, 5);
        out.push(check("alpha", format!("alpha/gamma={g}"), move |_| {
            let a = alpha_invariant_coefficients(&g).map_err(err)?;
            let s = build_surface(&cfg(2, &[Site::Zero, Site::Inf], "on-S:C", q(1, 2))).map_err(err)?;
            let class = |n: &str| s.class_of(n).cloned().map_err(err);
            let lhs = (&class("E0")? + &class("Einf")?).scale(&a.e)
                + (&class("F0")? + &class("Finf")?).scale(&a.f)
                + (&class("H0")? + &class("Hinf")?).scale(&a.h)
                + class("C")?.scale(&g);
            let identity = lhs == -s.canonical();
            let half = &g / &Rational::from_int(2);
            let want = (Rational::one() - &half, Rational::one() - &half, Rational::one() - &g, Rational::from_int(2), true);
            Ok(compare(want, (a.e, a.f, a.h, a.mult_p0, identity)))
        }));
    }

    for row in concordance() {
        let id = format!("git/{}", row.sites.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","));
        out.push(check("git", id, move |_| {
            Ok((format!("{:?}", row.k_stability), format!("{:?} polystable={}", row.git, row.git_polystable), row.agrees))
        }));
    }
    out
}

/// `(group, id)` of every check, in run order.
pub fn check_catalog() -> Vec<(String, String)> {
    catalog().into_iter().map(|c| (c.group.to_string(), c.id)).collect()
}

fn selected(only: &[String], group: &str, id: &str) -> bool {
    only.is_empty() || only.iter().any(|o| o == group || o == id || id.starts_with(&format!("{o}/")))
}

/// Runs the selected checks in parallel; results come back in catalog order.
pub fn reproduce(opts: &ReproduceOptions) -> Vec<CheckOutcome> {
    let checks: Vec<Check> = catalog().into_iter().filter(|c| selected(&opts.only, c.group, &c.id)).collect();
    checks
        .par_iter()
        .map(|c| {
            let (expected, computed, passed) = match (c.run)(&opts.fan_asset) {
                Ok(t) => t,
                Err(e) => ("(value)".to_string(), format!("error: {e}"), false),
            };
            CheckOutcome {
                group: c.group.to_string(),
                id: c.id.clone(),
                expected,
                computed,
                passed,
                note: c.note.map(str::to_string),
            }
        })
        .collect()
}
