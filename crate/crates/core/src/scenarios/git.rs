use serde::{Deserialize, Serialize};

use super::{ScenarioError, Site};

/// Points on the line with multiplicities, `n` = total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitConfig {
    pub multiplicities: Vec<u32>,
}

impl GitConfig {
    pub fn new(multiplicities: Vec<u32>) -> Result<Self, ScenarioError> {
        if multiplicities.is_empty() || multiplicities.contains(&0) {
            return Err(ScenarioError::Validation("multiplicities must be positive and nonempty".into()));
        }
        Ok(GitConfig { multiplicities })
    }

    pub fn n(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    /// Strictly semistable with closed orbit: two points of weight `n/2`.
    pub fn is_polystable(&self) -> bool {
        match git_stability(self) {
            GitVerdict::Stable => true,
            GitVerdict::StrictlySemistable => self.multiplicities.len() == 2,
            GitVerdict::Unstable => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GitVerdict {
    Stable,
    StrictlySemistable,
    Unstable,
}

/// Hilbert-Mumford criterion for the symmetric linearisation.
pub fn git_stability(cfg: &GitConfig) -> GitVerdict {
    let n = cfg.n();
    let max = cfg.multiplicities.iter().copied().max().unwrap_or(0);
    match (2 * max).cmp(&n) {
        std::cmp::Ordering::Greater => GitVerdict::Unstable,
        std::cmp::Ordering::Equal => GitVerdict::StrictlySemistable,
        std::cmp::Ordering::Less => GitVerdict::Stable,
    }
}

/// Configuration `(p_0, p_inf, (p_i) for i in I)` on `C`, with coincident
/// points merged.
pub fn git_multiplicities(sites: &[Site]) -> GitConfig {
    let mut m = vec![1 + sites.contains(&Site::Zero) as u32, 1 + sites.contains(&Site::Inf) as u32];
    m.extend(sites.iter().filter(|s| !s.is_special()).map(|_| 1));
    GitConfig { multiplicities: m }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KStability {
    KUnstable,
    StrictlyKSemistable,
    StrictlyKPolystable,
    KStable,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub pattern: String,
    pub verdict: KStability,
}

/// Known K-stability of `(S_I, C)` by the shape of `I`.
pub fn kstab_table() -> Vec<TableRow> {
    let row = |p: &str, v| TableRow { pattern: p.to_string(), verdict: v };
    vec![
        row("{i1} ⊂ {0,inf}", KStability::KUnstable),
        row("{i1} ⊄ {0,inf}", KStability::Unknown),
        row("{i1,i2} = {0,inf}", KStability::StrictlyKPolystable),
        row("{i1,i2} meets {0,inf} in one point", KStability::StrictlyKSemistable),
        row("{i1,i2} ∩ {0,inf} = ∅", KStability::Unknown),
        row("3 <= #I <= 6", KStability::Unknown),
        row("#I >= 7", KStability::KStable),
    ]
}

/// Index into [`kstab_table`] of the row covering `sites`.
pub fn table_row_for(sites: &[Site]) -> Option<usize> {
    let special = sites.iter().filter(|s| s.is_special()).count();
    match sites.len() {
        0 => None,
        1 => Some(if special == 1 { 0 } else { 1 }),
        2 => Some(match special {
            2 => 2,
            1 => 3,
            _ => 4,
        }),
        3..=6 => Some(5),
        _ => Some(6),
    }
}

fn expected_git(v: KStability) -> Option<GitVerdict> {
    match v {
        KStability::KUnstable => Some(GitVerdict::Unstable),
        KStability::StrictlyKSemistable | KStability::StrictlyKPolystable => Some(GitVerdict::StrictlySemistable),
        KStability::KStable => Some(GitVerdict::Stable),
        KStability::Unknown => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Concordance {
    pub pattern: String,
    pub k_stability: KStability,
    pub sites: Vec<Site>,
    pub git: GitVerdict,
    pub git_polystable: bool,
    pub agrees: bool,
}

/// Representative configurations for every verdict-bearing table row,
/// compared with the GIT verdict of their point configuration.
pub fn concordance() -> Vec<Concordance> {
    use Site::{Finite, Inf, Zero};
    let mut reps: Vec<Vec<Site>> = vec![vec![Zero], vec![Inf], vec![Zero, Inf], vec![Zero, Finite(1)], vec![Finite(2), Inf]];
    for n in [7u32, 8] {
        let finite = |k: u32| (1..=k).map(Finite).collect::<Vec<_>>();
        reps.push(finite(n));
        reps.push([vec![Zero], finite(n - 1)].concat());
        reps.push([vec![Zero, Inf], finite(n - 2)].concat());
    }
    let table = kstab_table();
    reps.into_iter()
        .filter_map(|sites| {
            let row = &table[table_row_for(&sites)?];
            let want = expected_git(row.verdict)?;
            let g = git_multiplicities(&sites);
            let git = git_stability(&g);
            let polystable = g.is_polystable();
            let agrees = git == want
                && match row.verdict {
                    KStability::StrictlyKPolystable => polystable,
                    KStability::StrictlyKSemistable => !polystable,
                    _ => true,
                };
            Some(Concordance {
                pattern: row.pattern.clone(),
                k_stability: row.verdict,
                sites,
                git,
                git_polystable: polystable,
                agrees,
            })
        })
        .collect()
}
