use std::fmt::Display;
use std::process::ExitCode;

use kstab_core::algebra::Rational;
use kstab_core::invariants::{
    evaluate, evaluate_with_closed_forms, reports_to_csv, InvariantReport, InvariantsError, SweepMethod,
};
use kstab_core::reproduce::{reproduce, ReproduceOptions};
use kstab_core::scenarios::{
    concordance, git_multiplicities, git_stability, kstab_table, parse_sites, GitConfig, ScenarioConfig, ScenarioError,
};
use kstab_core::toric::{barycenter, polytope_from_divisor, psi, scenario_fan, toric_expected_vanishing, ToricError};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Cli, Command, Format, GitArgs, OutputArgs, ReproduceArgs, ScenarioArgs, ToricArgs};
use crate::output::{csv_rows, decimalize_csv, emit, json, write_text};

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn validation(m: impl Display) -> Self {
        CliError { code: EXIT_VALIDATION, message: m.to_string() }
    }

    pub fn internal(m: impl Display) -> Self {
        CliError { code: EXIT_INTERNAL, message: m.to_string() }
    }
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Surface(_) => CliError::internal(e),
            _ => CliError::validation(e),
        }
    }
}

impl From<ToricError> for CliError {
    fn from(e: ToricError) -> Self {
        match e {
            ToricError::NotToric(_) | ToricError::Dimension { .. } => CliError::validation(e),
            _ => CliError::internal(e),
        }
    }
}

impl From<InvariantsError> for CliError {
    fn from(e: InvariantsError) -> Self {
        match e {
            InvariantsError::Scenario(s) => s.into(),
            InvariantsError::Toric(t) => t.into(),
            InvariantsError::Validation(_)
            | InvariantsError::Unsupported { .. }
            | InvariantsError::RegimeUnstable { .. } => CliError::validation(e),
            _ => CliError::internal(e),
        }
    }
}

pub fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Compute(a) => compute(&a, false).map(|_| ExitCode::SUCCESS),
        Command::Expand(a) => compute(&a, true).map(|_| ExitCode::SUCCESS),
        Command::Profile(a) => profile(&a).map(|_| ExitCode::SUCCESS),
        Command::Table(o) => table(&o).map(|_| ExitCode::SUCCESS),
        Command::Toric(a) => toric(&a).map(|_| ExitCode::SUCCESS),
        Command::Git(a) => git(&a).map(|_| ExitCode::SUCCESS),
        Command::Reproduce(a) => run_reproduce(&a),
    }
}

fn parse_beta(s: &str) -> Result<Rational, CliError> {
    s.parse().map_err(|_| CliError::validation(format!("bad angle {s:?}, expected p/q")))
}

/// One configuration per requested angle, in the order given.
fn scenarios(a: &ScenarioArgs) -> Result<Vec<ScenarioConfig>, CliError> {
    let mut base = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<ScenarioConfig>(&text)
                .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?
        }
        None => {
            let case = a.case.clone().ok_or_else(|| CliError::validation("--case is required"))?;
            let sites = parse_sites(a.sites.as_deref().unwrap_or(""))?;
            ScenarioConfig::new(a.r.unwrap_or(sites.len()), sites, &case, Rational::one())
        }
    };
    if let Some(c) = &a.case {
        base.case = c.clone();
    }
    if let Some(s) = &a.sites {
        base.sites = parse_sites(s)?;
        base.r = a.r.unwrap_or(base.sites.len());
    }
    if let Some(r) = a.r {
        base.r = r;
    }
    if let Some(t) = &a.target {
        base.target = Some(t.parse()?);
    }
    let betas: Vec<Rational> = if a.beta.is_empty() {
        if a.config.is_none() {
            return Err(CliError::validation("--beta is required"));
        }
        vec![base.beta.clone()]
    } else {
        a.beta.iter().map(|b| parse_beta(b)).collect::<Result<_, _>>()?
    };
    let out: Vec<ScenarioConfig> = betas.into_iter().map(|b| base.with_beta(b)).collect();
    for c in &out {
        c.validate()?;
    }
    Ok(out)
}

fn compute(a: &ScenarioArgs, expand: bool) -> Result<(), CliError> {
    let cfgs = scenarios(a)?;
    let order = match (a.order, expand) {
        (Some(o), _) if o > 6 => return Err(CliError::validation("--order is at most 6")),
        (Some(o), _) => Some(o),
        (None, true) => Some(2),
        (None, false) => None,
    };
    let reports: Vec<InvariantReport> = cfgs
        .par_iter()
        .map(|c| match order {
            Some(o) => evaluate_with_closed_forms(c, &a.method, o),
            None => evaluate(c, &a.method),
        })
        .collect::<Result<_, _>>()?;
    let text = match a.output.format {
        Format::Json => json(&reports, a.output.decimal)?,
        Format::Csv => {
            let t = reports_to_csv(&reports)?;
            if a.output.decimal {
                decimalize_csv(&t)?
            } else {
                t
            }
        }
    };
    write_text(&a.output, &text)
}

#[derive(Serialize)]
struct ProfileRow {
    scenario: String,
    beta: Rational,
    from: Rational,
    to: Rational,
    support: String,
    c0: Rational,
    c1: Rational,
    c2: Rational,
}

#[derive(Serialize)]
struct ProfileReport {
    scenario: String,
    #[serde(rename = "S")]
    s: Rational,
    #[serde(flatten)]
    profile: kstab_core::zariski::VolumeProfile,
}

fn profile(a: &ScenarioArgs) -> Result<(), CliError> {
    if a.method != "sweep" {
        return Err(CliError::validation("profile is only available for the sweep method"));
    }
    let cfgs = scenarios(a)?;
    let reports: Vec<ProfileReport> = cfgs
        .par_iter()
        .map(|c| SweepMethod::profile(c).map(|(s, profile)| ProfileReport { scenario: c.id(), s, profile }))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for r in &reports {
        let segs = r.profile.profile.segments();
        for (ch, p) in r.profile.chambers.iter().zip(segs) {
            rows.push(ProfileRow {
                scenario: r.scenario.clone(),
                beta: r.profile.beta.clone().unwrap_or_default(),
                from: ch.from.clone(),
                to: ch.to.clone(),
                support: ch.support.join(" "),
                c0: p.coeff(0),
                c1: p.coeff(1),
                c2: p.coeff(2),
            });
        }
    }
    emit(&a.output, &reports, &rows)
}

#[derive(Serialize)]
struct ConcordanceRow {
    pattern: String,
    k_stability: String,
    #[serde(rename = "I")]
    sites: String,
    git: String,
    git_polystable: bool,
    agrees: bool,
}

fn snake<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn table(out: &OutputArgs) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct Table {
        rows: Vec<kstab_core::scenarios::TableRow>,
        concordance: Vec<kstab_core::scenarios::Concordance>,
    }
    let c = concordance();
    let rows: Vec<ConcordanceRow> = c
        .iter()
        .map(|r| ConcordanceRow {
            pattern: r.pattern.clone(),
            k_stability: snake(&r.k_stability),
            sites: r.sites.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
            git: snake(&r.git),
            git_polystable: r.git_polystable,
            agrees: r.agrees,
        })
        .collect();
    emit(out, &Table { rows: kstab_table(), concordance: c }, &rows)
}

#[derive(Serialize)]
struct ToricReport {
    beta: Rational,
    valuation: [i64; 2],
    vertices: Vec<[Rational; 2]>,
    area: Rational,
    barycenter: [Rational; 2],
    psi: Rational,
    #[serde(rename = "S")]
    s: Rational,
}

#[derive(Serialize)]
struct ToricRow {
    beta: Rational,
    valuation: String,
    area: Rational,
    barycenter_x: Rational,
    barycenter_y: Rational,
    psi: Rational,
    #[serde(rename = "S")]
    s: Rational,
}

fn toric(a: &ToricArgs) -> Result<(), CliError> {
    let sites = parse_sites(&a.sites)?;
    let v: Vec<i64> = a
        .valuation
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::validation(format!("bad valuation {:?}", a.valuation))))
        .collect::<Result<_, _>>()?;
    let v: [i64; 2] = v.try_into().map_err(|_| CliError::validation("valuation needs two integers"))?;
    let fan = scenario_fan(&sites)?;
    let mut reports = Vec::new();
    for b in &a.beta {
        let beta = parse_beta(b)?;
        if !beta.is_positive() || beta > Rational::one() {
            return Err(CliError::validation(format!("beta = {beta} is outside (0, 1]")));
        }
        let d = fan.at(&beta)?;
        let p = polytope_from_divisor(&d)?;
        reports.push(ToricReport {
            valuation: v,
            vertices: p.vertices().to_vec(),
            area: p.area(),
            barycenter: barycenter(&p)?,
            psi: psi(&p, v),
            s: toric_expected_vanishing(&d, v)?,
            beta,
        });
    }
    let rows: Vec<ToricRow> = reports
        .iter()
        .map(|r| ToricRow {
            beta: r.beta.clone(),
            valuation: format!("{},{}", v[0], v[1]),
            area: r.area.clone(),
            barycenter_x: r.barycenter[0].clone(),
            barycenter_y: r.barycenter[1].clone(),
            psi: r.psi.clone(),
            s: r.s.clone(),
        })
        .collect();
    emit(&a.output, &reports, &rows)
}

fn git(a: &GitArgs) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct GitReport {
        multiplicities: Vec<u32>,
        n: u32,
        verdict: String,
        polystable: bool,
    }
    #[derive(Serialize)]
    struct GitRow {
        multiplicities: String,
        n: u32,
        verdict: String,
        polystable: bool,
    }
    let cfg = match (&a.multiplicities, &a.sites) {
        (Some(m), _) => {
            let m: Vec<u32> = m
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| CliError::validation(format!("bad multiplicity {t:?}"))))
                .collect::<Result<_, _>>()?;
            GitConfig::new(m)?
        }
        (None, Some(s)) => git_multiplicities(&parse_sites(s)?),
        (None, None) => return Err(CliError::validation("give --multiplicities or --I")),
    };
    let r = GitReport { n: cfg.n(), verdict: snake(&git_stability(&cfg)), polystable: cfg.is_polystable(), multiplicities: cfg.multiplicities.clone() };
    let row = GitRow {
        multiplicities: r.multiplicities.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "),
        n: r.n,
        verdict: r.verdict.clone(),
        polystable: r.polystable,
    };
    emit(&a.output, &r, &[row])
}

fn run_reproduce(a: &ReproduceArgs) -> Result<ExitCode, CliError> {
    let mut opts = ReproduceOptions { only: a.only.clone(), ..Default::default() };
    if let Some(p) = &a.fan_asset {
        opts.fan_asset = p.clone();
    }
    let known: Vec<(String, String)> = kstab_core::reproduce::check_catalog();
    if let Some(bad) = opts.only.iter().find(|o| !known.iter().any(|(g, id)| g == *o || id == *o || id.starts_with(&format!("{o}/")))) {
        return Err(CliError::validation(format!("--only {bad:?} matches no check")));
    }
    let results = reproduce(&opts);
    let failed = results.iter().filter(|r| !r.passed).count();
    let mut text = String::new();
    for r in &results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{tag} {}  expected {}  computed {}\n", r.id, r.expected, r.computed));
    }
    text.push_str(&format!("{} checks, {} passed, {} failed\n", results.len(), results.len() - failed, failed));
    if a.output.out.is_some() {
        let body = match a.output.format {
            Format::Json => json(&results, a.output.decimal)?,
            Format::Csv => csv_rows(&results, a.output.decimal)?,
        };
        write_text(&a.output, &body)?;
    }
    print!("{text}");
    if failed > 0 {
        let names: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect();
        eprintln!("mismatch: {}", names.join(", "));
        Ok(ExitCode::from(EXIT_MISMATCH as u8))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
