//! Experiment configuration and the `key = value` config file format.
//!
//! ```text
//! # comments start with '#'
//! kind = le-bounds
//! n = 256, 1024
//! p = 0.5
//! trials = 10
//! seed = 2024
//! margin = 0.02
//! out = runs/le.csv
//! ```
//!
//! Command-line flags override file values.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{LabError, Result};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_TRIALS: usize = 10;
/// Statistical margin added on top of every rigorous Ky Fan slack.
pub const DEFAULT_MARGIN: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    EnergyConvergence,
    LeBounds,
    Conjecture,
    EsdKs,
    Drift,
    Moment2,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::EnergyConvergence,
        ExperimentKind::LeBounds,
        ExperimentKind::Conjecture,
        ExperimentKind::EsdKs,
        ExperimentKind::Drift,
        ExperimentKind::Moment2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::EnergyConvergence => "energy-convergence",
            ExperimentKind::LeBounds => "le-bounds",
            ExperimentKind::Conjecture => "conjecture",
            ExperimentKind::EsdKs => "esd-ks",
            ExperimentKind::Drift => "drift",
            ExperimentKind::Moment2 => "moment2",
        }
    }

    /// Kinds that scale by `σ⁻¹` and so need `0 < p < 1`.
    pub fn needs_open_p(self) -> bool {
        !matches!(
            self,
            ExperimentKind::EnergyConvergence | ExperimentKind::Conjecture
        )
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| LabError::Config(format!("unknown experiment kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n_list: Vec<usize>,
    pub p_list: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(
        kind: ExperimentKind,
        n_list: Vec<usize>,
        p_list: Vec<f64>,
        trials: usize,
        seed: u64,
    ) -> Self {
        ExperimentConfig {
            kind,
            n_list,
            p_list,
            trials,
            seed,
            margin: DEFAULT_MARGIN,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(LabError::Config(msg));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n_list.is_empty() || self.p_list.is_empty() {
            return bad("need at least one n and one p".into());
        }
        if let Some(n) = self.n_list.iter().find(|&&n| n < 2) {
            return bad(format!("n = {n} is below 2"));
        }
        for &p in &self.p_list {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("p = {p} is outside [0, 1]"));
            }
            if self.kind.needs_open_p() && (p == 0.0 || p == 1.0) {
                return bad(format!("{} needs 0 < p < 1 (got {p})", self.kind));
            }
        }
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return bad(format!(
                "margin {} must be a finite nonnegative number",
                self.margin
            ));
        }
        Ok(())
    }

    /// `(n, p)` cells in output order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.n_list
            .iter()
            .flat_map(move |&n| self.p_list.iter().map(move |&p| (n, p)))
    }
}

/// Values read from a config file; every field is optional.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub kind: Option<ExperimentKind>,
    pub n_list: Option<Vec<usize>>,
    pub p_list: Option<Vec<f64>>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub margin: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

pub fn parse_list<T: FromStr>(value: &str, key: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| LabError::Config(format!("bad value `{s}` for `{key}`")))
        })
        .collect()
}

fn parse_one<T: FromStr>(value: &str, key: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| LabError::Config(format!("bad value `{value}` for `{key}`")))
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ConfigFile::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                LabError::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "kind" => cfg.kind = Some(value.parse()?),
                "n" => cfg.n_list = Some(parse_list(value, key)?),
                "p" => cfg.p_list = Some(parse_list(value, key)?),
                "trials" => cfg.trials = Some(parse_one(value, key)?),
                "seed" => cfg.seed = Some(parse_one(value, key)?),
                "margin" => cfg.margin = Some(parse_one(value, key)?),
                "out" => cfg.out = Some(PathBuf::from(value)),
                "format" => cfg.format = Some(value.to_string()),
                other => {
                    return Err(LabError::Config(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        Self::parse(&text)
    }
}
