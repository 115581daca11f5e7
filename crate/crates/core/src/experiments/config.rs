use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::spectral::PointFamily;
use crate::{Error, Result};

/// Largest dimension accepted by experiment runs.
pub const MAX_EXPERIMENT_DIM: usize = 3;
/// Largest level `n` accepted by experiment runs.
pub const MAX_EXPERIMENT_LEVEL: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExperimentKind {
    /// Fooling-function witnesses against `H^r_q`, target `L_p`.
    #[serde(rename = "qpT1")]
    QpT1,
    /// Integration fooler against `H^r_∞`, target `L_1`.
    #[serde(rename = "q1P2")]
    Q1P2,
    /// Fooling-function witnesses against `H^{a,b}_{A_β}`.
    #[serde(rename = "ST1")]
    St1,
    /// Single-box witnesses for `T(2N)_q`.
    #[serde(rename = "qpL1")]
    QpL1,
    /// Randomized inequality audits.
    #[serde(rename = "inequalities")]
    Inequalities,
}

impl ExperimentKind {
    pub fn label(self) -> &'static str {
        match self {
            ExperimentKind::QpT1 => "qpT1",
            ExperimentKind::Q1P2 => "q1P2",
            ExperimentKind::St1 => "ST1",
            ExperimentKind::QpL1 => "qpL1",
            ExperimentKind::Inequalities => "inequalities",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qpT1" => Ok(ExperimentKind::QpT1),
            "q1P2" => Ok(ExperimentKind::Q1P2),
            "ST1" => Ok(ExperimentKind::St1),
            "qpL1" => Ok(ExperimentKind::QpL1),
            "inequalities" => Ok(ExperimentKind::Inequalities),
            other => Err(Error::InvalidArgument(format!("unknown experiment `{other}`"))),
        }
    }
}

/// Inequality families run by the audit experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditFamily {
    Sp1,
    S4,
    Homogeneity,
    TheoremA,
    Inp1,
    In4,
    Sc1,
    Emb,
}

impl AuditFamily {
    pub const ALL: [AuditFamily; 8] = [
        AuditFamily::Sp1,
        AuditFamily::S4,
        AuditFamily::Homogeneity,
        AuditFamily::TheoremA,
        AuditFamily::Inp1,
        AuditFamily::In4,
        AuditFamily::Sc1,
        AuditFamily::Emb,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AuditFamily::Sp1 => "sp1",
            AuditFamily::S4 => "s4",
            AuditFamily::Homogeneity => "homogeneity",
            AuditFamily::TheoremA => "theorem_a",
            AuditFamily::Inp1 => "inp1",
            AuditFamily::In4 => "in4",
            AuditFamily::Sc1 => "sc1",
            AuditFamily::Emb => "emb",
        }
    }

    /// Whether the audited inequality holds with constant 1, so that any
    /// ratio above 1 counts as a violation.
    pub fn constant_free(self) -> bool {
        matches!(
            self,
            AuditFamily::Sp1 | AuditFamily::S4 | AuditFamily::Homogeneity | AuditFamily::Sc1 | AuditFamily::Emb
        )
    }
}

impl FromStr for AuditFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AuditFamily::ALL
            .into_iter()
            .find(|f| f.label() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown audit family `{s}`")))
    }
}

fn default_d() -> usize {
    2
}
fn default_oversample() -> usize {
    crate::decomposition::DEFAULT_OVERSAMPLE
}
fn default_trials() -> usize {
    1000
}
fn default_r() -> f64 {
    1.5
}
fn default_q() -> f64 {
    2.0
}
fn default_p() -> f64 {
    2.0
}
fn default_a() -> f64 {
    1.0
}
fn default_beta() -> f64 {
    1.0
}

/// Flat key-value description of one experiment run.
///
/// ```toml
/// experiment = "qpT1"
/// d = 2
/// n = [6, 9, 12]
/// q = 1.0
/// p = 2.0
/// r = 1.5
/// family = "uniform-random"
/// seed = 0
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default = "default_d")]
    pub d: usize,
    /// Levels `n` (or, for `qpL1`, isotropic box sizes `N`).
    #[serde(default)]
    pub n: Vec<u32>,
    /// Point counts per level; empty means the default for the experiment.
    #[serde(default)]
    pub m: Vec<usize>,
    #[serde(default = "default_r")]
    pub r: f64,
    #[serde(default = "default_q")]
    pub q: f64,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default = "default_a")]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default)]
    pub family: PointFamily,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_oversample")]
    pub oversample: usize,
    #[serde(default = "default_trials")]
    pub trials: usize,
    /// Audit families; empty means all.
    #[serde(default)]
    pub families: Vec<AuditFamily>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Emit a `# generated` comment line at the top of the CSV.
    #[serde(default)]
    pub timestamp: bool,
}

impl ExperimentConfig {
    /// Defaults for `kind`, with the level range each runner expects.
    pub fn new(kind: ExperimentKind) -> Self {
        let n = match kind {
            ExperimentKind::QpT1 | ExperimentKind::St1 => vec![6, 9, 12],
            ExperimentKind::Q1P2 => vec![4, 5, 6, 7, 8],
            ExperimentKind::QpL1 => vec![1, 2, 4, 8],
            ExperimentKind::Inequalities => Vec::new(),
        };
        ExperimentConfig {
            experiment: kind,
            d: default_d(),
            n,
            m: Vec::new(),
            r: default_r(),
            q: default_q(),
            p: default_p(),
            a: default_a(),
            b: 0.0,
            beta: default_beta(),
            family: PointFamily::default(),
            seed: 0,
            oversample: default_oversample(),
            trials: default_trials(),
            families: Vec::new(),
            output: None,
            timestamp: false,
        }
    }

    /// Parses and validates; errors carry the line of the offending key.
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Parse {
            line: e.span().map(|s| line_of_offset(text, s.start)).unwrap_or(1),
            message: e.message().to_string(),
        })?;
        cfg.validate().map_err(|e| match e {
            Error::InvalidArgument(msg) | Error::UnsupportedRange(msg) => {
                let key = msg.split('`').nth(1).unwrap_or("");
                Error::Parse {
                    line: line_of_key(text, key).unwrap_or(1),
                    message: msg,
                }
            }
            other => other,
        })?;
        Ok(cfg)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Checks ranges against each experiment's hypotheses and the desk-scale
    /// caps. Messages name the offending key in backticks.
    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, msg: String| Err(Error::InvalidArgument(format!("`{key}`: {msg}")));
        if self.d == 0 || self.d > MAX_EXPERIMENT_DIM {
            return bad("d", format!("must lie in 1..={MAX_EXPERIMENT_DIM}, got {}", self.d));
        }
        if self.oversample < 2 {
            return bad("oversample", format!("must be at least 2, got {}", self.oversample));
        }
        if !self.m.is_empty() && self.m.len() != self.n.len() {
            return bad("m", format!("has {} entries but `n` has {}", self.m.len(), self.n.len()));
        }
        let level_cap = |n: &u32| *n > MAX_EXPERIMENT_LEVEL;
        match self.experiment {
            ExperimentKind::QpT1 | ExperimentKind::St1 | ExperimentKind::Q1P2 => {
                if let Some(n) = self.n.iter().find(|n| level_cap(n)) {
                    return bad("n", format!("level {n} exceeds the desk-scale cap {MAX_EXPERIMENT_LEVEL}"));
                }
            }
            _ => {}
        }
        match self.experiment {
            ExperimentKind::QpT1 => {
                if !(self.q >= 1.0) {
                    return bad("q", format!("needs 1 ≤ q ≤ p, got q = {}", self.q));
                }
                if !(self.p >= self.q) || !(self.p > 1.0) || self.p.is_infinite() {
                    return bad("p", format!("needs q ≤ p < ∞ and p > 1, got p = {}", self.p));
                }
                if !(self.r > 1.0 / self.q) {
                    return bad("r", format!("needs r > 1/q = {}, got r = {}", 1.0 / self.q, self.r));
                }
            }
            ExperimentKind::St1 => {
                if !(self.beta > 0.0 && self.beta <= 1.0) {
                    return bad("beta", format!("needs 0 < beta ≤ 1, got {}", self.beta));
                }
                if !(self.p >= 2.0) || self.p.is_infinite() {
                    return bad("p", format!("needs 2 ≤ p < ∞, got {}", self.p));
                }
                if !(self.a > 0.0) {
                    return bad("a", format!("needs a > 0, got {}", self.a));
                }
            }
            ExperimentKind::QpL1 => {
                if !(self.q >= 1.0) || !(self.p >= 1.0) || self.p.is_infinite() {
                    return bad("p", format!("needs q ≥ 1 and 1 ≤ p < ∞, got q = {}, p = {}", self.q, self.p));
                }
            }
            ExperimentKind::Q1P2 => {
                if !(self.r > 0.0) {
                    return bad("r", format!("needs r > 0, got {}", self.r));
                }
                if self.n.contains(&0) {
                    return bad("n", "levels must be positive".into());
                }
            }
            ExperimentKind::Inequalities => {
                if self.trials == 0 {
                    return bad("trials", "must be positive".into());
                }
                if !(self.q >= 1.0) || self.q.is_infinite() {
                    return bad("q", format!("needs 1 ≤ q < ∞, got {}", self.q));
                }
            }
        }
        Ok(())
    }

    pub fn audit_families(&self) -> Vec<AuditFamily> {
        if self.families.is_empty() {
            AuditFamily::ALL.to_vec()
        } else {
            self.families.clone()
        }
    }
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn line_of_key(text: &str, key: &str) -> Option<usize> {
    if key.is_empty() {
        return None;
    }
    text.lines().position(|l| {
        let l = l.trim_start();
        l.strip_prefix(key)
            .is_some_and(|rest| rest.trim_start().starts_with('='))
    })
    .map(|i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_config() {
        let cfg = ExperimentConfig::from_toml("experiment = \"qpT1\"\nn = [6, 9]\nq = 1.0\n").unwrap();
        assert_eq!(cfg.experiment, ExperimentKind::QpT1);
        assert_eq!(cfg.n, vec![6, 9]);
        assert_eq!(cfg.d, 2);
        assert_eq!(cfg.family, PointFamily::UniformRandom);
    }

    #[test]
    fn round_trips_through_toml() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::Inequalities);
        cfg.families = vec![AuditFamily::Sp1, AuditFamily::TheoremA];
        let back = ExperimentConfig::from_toml(&cfg.to_toml()).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn syntax_errors_are_line_numbered() {
        let err = ExperimentConfig::from_toml("experiment = \"qpT1\"\nd = 2\nn = [6, 9\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line, .. } if line >= 3), "{err}");
        let err = ExperimentConfig::from_toml("experiment = \"qpT1\"\ncolour = 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn hypothesis_violations_name_the_key_line() {
        let err = ExperimentConfig::from_toml("experiment = \"qpT1\"\nq = 1.0\nr = 0.5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = ExperimentConfig::from_toml("experiment = \"ST1\"\n\np = 1.5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = ExperimentConfig::from_toml("experiment = \"qpT1\"\nd = 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = ExperimentConfig::from_toml("experiment = \"qpT1\"\nn = [15]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }
}
