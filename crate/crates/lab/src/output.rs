//! Trial CSV files and JSON campaign summaries.
//!
//! The CSV has one row per trial. Columns are `schema_version, kind, n, p,
//! trial, seed`, then the kind's statistics, then its verdicts, always in the
//! order given by [`columns`]. Floats are written in shortest round-trip form
//! so a reloaded file reproduces every value bit for bit.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{LabError, Result};
use crate::experiment::{chernoff_tails, TailCheck, TAIL_MULTIPLES};
use crate::record::TrialRecord;

pub const SCHEMA_VERSION: u32 = 1;
const LEADING: [&str; 6] = ["schema_version", "kind", "n", "p", "trial", "seed"];

/// Statistic and verdict columns of each experiment kind.
pub fn columns(kind: ExperimentKind) -> (&'static [&'static str], &'static [&'static str]) {
    match kind {
        ExperimentKind::EnergyConvergence => (
            &[
                "energy",
                "energy_normalized",
                "centered_energy",
                "target",
                "deviation",
                "band",
            ],
            &["within_band", "kyfan_contained"],
        ),
        ExperimentKind::LeBounds => (
            &[
                "le",
                "le_sigma_normalized",
                "l1_energy",
                "l1_sigma_normalized",
                "slack",
            ],
            &["in_interval", "kyfan_contained"],
        ),
        ExperimentKind::Conjecture => (
            &[
                "energy",
                "le",
                "energy_normalized",
                "le_normalized",
                "gap",
                "strict",
                "boundary",
            ],
            &["energy_below_le"],
        ),
        ExperimentKind::EsdKs => (
            &["ks", "ks_control", "abs_mean", "abs_mean_target"],
            &["ks_within", "control_rejected"],
        ),
        ExperimentKind::Drift => (
            &[
                "delta_n",
                "abs_delta_n",
                "threshold",
                "edge_count",
                "edge_deviation",
                "chernoff_bound",
            ],
            &["drift_within"],
        ),
        ExperimentKind::Moment2 => (
            &[
                "delta_n",
                "m2_l1",
                "m2_l2",
                "m4_l1",
                "m4_l2",
                "abs_mean_l1",
                "abs_mean_l2",
                "m2_shift_residual",
                "eigen_shift_residual",
                "m2_gap_bound",
            ],
            &[
                "m2_in_band",
                "m4_in_band",
                "abs_mean_close",
                "shift_exact",
                "m2_gap_bounded",
            ],
        ),
    }
}

fn check_shape(r: &TrialRecord) -> Result<()> {
    let (stats, verdicts) = columns(r.kind);
    let same_stats =
        r.measured.len() == stats.len() && r.measured.iter().zip(stats).all(|((a, _), b)| a == b);
    let same_verdicts = r.verdicts.len() == verdicts.len()
        && r.verdicts.iter().zip(verdicts).all(|((a, _), b)| a == b);
    if same_stats && same_verdicts {
        Ok(())
    } else {
        Err(LabError::Schema(format!(
            "trial {} does not match the {} column layout",
            r.trial, r.kind
        )))
    }
}

pub fn write_csv<W: Write>(kind: ExperimentKind, records: &[TrialRecord], writer: W) -> Result<()> {
    let path = PathBuf::from("<csv>");
    let mut w = csv::Writer::from_writer(writer);
    let (stats, verdicts) = columns(kind);
    let header: Vec<&str> = LEADING
        .iter()
        .chain(stats)
        .chain(verdicts)
        .copied()
        .collect();
    w.write_record(&header)
        .map_err(|e| LabError::csv(&path, e))?;
    for r in records {
        if r.kind != kind {
            return Err(LabError::Schema(format!(
                "mixed kinds: {} in a {kind} file",
                r.kind
            )));
        }
        check_shape(r)?;
        let mut row = vec![
            SCHEMA_VERSION.to_string(),
            kind.to_string(),
            r.n.to_string(),
            r.p.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
        ];
        row.extend(r.measured.iter().map(|(_, v)| v.to_string()));
        row.extend(r.verdicts.iter().map(|(_, v)| v.to_string()));
        w.write_record(&row).map_err(|e| LabError::csv(&path, e))?;
    }
    w.flush().map_err(|e| LabError::io(&path, e))?;
    Ok(())
}

/// Parses a trial CSV. Files without rows yield `kind = None`.
pub fn read_csv<R: Read>(reader: R) -> Result<(Option<ExperimentKind>, Vec<TrialRecord>)> {
    let path = PathBuf::from("<csv>");
    let mut rdr = csv::Reader::from_reader(reader);
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| LabError::csv(&path, e))?
        .iter()
        .map(String::from)
        .collect();
    if header.len() < LEADING.len() || header.iter().zip(LEADING).any(|(a, b)| a != b) {
        return Err(LabError::Schema("missing leading columns".into()));
    }
    let mut kind = None;
    let mut records = Vec::new();
    let bad = |what: &str, v: &str| LabError::Schema(format!("bad {what} `{v}`"));
    for row in rdr.records() {
        let row = row.map_err(|e| LabError::csv(&path, e))?;
        let version: u32 = row[0].parse().map_err(|_| bad("schema version", &row[0]))?;
        if version != SCHEMA_VERSION {
            return Err(LabError::Schema(format!(
                "version {version} (this build reads {SCHEMA_VERSION})"
            )));
        }
        let k: ExperimentKind = row[1].parse().map_err(|_| bad("kind", &row[1]))?;
        if *kind.get_or_insert(k) != k {
            return Err(LabError::Schema("mixed experiment kinds".into()));
        }
        let (stats, verdicts) = columns(k);
        if header.len() != LEADING.len() + stats.len() + verdicts.len() {
            return Err(LabError::Schema(format!(
                "column count does not match kind {k}"
            )));
        }
        let mut rec = TrialRecord::new(
            k,
            row[2].parse().map_err(|_| bad("n", &row[2]))?,
            row[3].parse().map_err(|_| bad("p", &row[3]))?,
            row[4].parse().map_err(|_| bad("trial", &row[4]))?,
            row[5].parse().map_err(|_| bad("seed", &row[5]))?,
        );
        for (i, name) in stats.iter().enumerate() {
            let col = LEADING.len() + i;
            if header[col] != *name {
                return Err(LabError::Schema(format!(
                    "expected column `{name}`, found `{}`",
                    header[col]
                )));
            }
            rec.measure(name, row[col].parse().map_err(|_| bad(name, &row[col]))?)?;
        }
        for (i, name) in verdicts.iter().enumerate() {
            let col = LEADING.len() + stats.len() + i;
            if header[col] != *name {
                return Err(LabError::Schema(format!(
                    "expected column `{name}`, found `{}`",
                    header[col]
                )));
            }
            rec.verdict(name, row[col].parse().map_err(|_| bad(name, &row[col]))?);
        }
        records.push(rec);
    }
    Ok((kind, records))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatSummary {
    pub name: String,
    pub mean: f64,
    /// Standard error of the mean; absent with fewer than two trials.
    pub stderr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub name: String,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub statistics: Vec<StatSummary>,
    pub verdicts: Vec<VerdictSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tail_checks: Vec<TailCheckSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailCheckSummary {
    pub epsilon: f64,
    pub empirical: f64,
    pub bound: f64,
    pub dominated: bool,
}

impl From<TailCheck> for TailCheckSummary {
    fn from(t: TailCheck) -> Self {
        TailCheckSummary {
            epsilon: t.epsilon,
            empirical: t.empirical,
            bound: t.bound,
            dominated: t.dominated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub artifact: String,
    pub version: String,
    pub schema_version: u32,
    pub kind: String,
    pub master_seed: u64,
    pub config: serde_json::Value,
    pub cells: Vec<CellSummary>,
    pub all_passed: bool,
}

impl CellSummary {
    pub fn statistic(&self, name: &str) -> Option<&StatSummary> {
        self.statistics.iter().find(|s| s.name == name)
    }

    pub fn verdict_fraction(&self, name: &str) -> Option<f64> {
        self.verdicts
            .iter()
            .find(|s| s.name == name)
            .map(|v| v.fraction)
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.fraction == 1.0)
            && self.tail_checks.iter().all(|t| t.dominated)
    }
}

fn mean_and_stderr(values: &[f64]) -> (f64, Option<f64>) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    if values.len() < 2 {
        return (mean, None);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1.0);
    (mean, Some((var / k).sqrt()))
}

/// Per-cell means, standard errors and verdict fractions, in `cfg` cell order.
pub fn summarize(records: &[TrialRecord], cfg: &ExperimentConfig) -> Result<Summary> {
    let (stats, verdicts) = columns(cfg.kind);
    let mut cells = Vec::new();
    for (n, p) in cfg.cells() {
        let cell: Vec<&TrialRecord> = records.iter().filter(|r| r.n == n && r.p == p).collect();
        if cell.is_empty() {
            continue;
        }
        let statistics = stats
            .iter()
            .map(|name| {
                let values: Vec<f64> = cell.iter().filter_map(|r| r.get(name)).collect();
                let (mean, stderr) = mean_and_stderr(&values);
                StatSummary {
                    name: name.to_string(),
                    mean,
                    stderr,
                }
            })
            .collect();
        let verdict_fractions = verdicts
            .iter()
            .map(|name| {
                let hits = cell
                    .iter()
                    .filter(|r| r.verdict_of(name) == Some(true))
                    .count();
                VerdictSummary {
                    name: name.to_string(),
                    fraction: hits as f64 / cell.len() as f64,
                }
            })
            .collect();
        let tail_checks = if cfg.kind == ExperimentKind::Drift {
            chernoff_tails(records, n, p, &TAIL_MULTIPLES)?
                .into_iter()
                .map(Into::into)
                .collect()
        } else {
            Vec::new()
        };
        cells.push(CellSummary {
            n,
            p,
            trials: cell.len(),
            statistics,
            verdicts: verdict_fractions,
            tail_checks,
        });
    }
    let all_passed = cells.iter().all(CellSummary::passed);
    Ok(Summary {
        artifact: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        schema_version: SCHEMA_VERSION,
        kind: cfg.kind.to_string(),
        master_seed: cfg.seed,
        config: serde_json::to_value(cfg)?,
        cells,
        all_passed,
    })
}

/// Paths written by [`write_results`].
#[derive(Debug, Clone, PartialEq)]
pub struct Written {
    pub csv: PathBuf,
    pub summary: PathBuf,
}

/// `runs/x.csv` → `runs/x.summary.json`.
pub fn summary_path(csv: &Path) -> PathBuf {
    csv.with_extension("summary.json")
}

/// Writes the trial CSV to `cfg.out` and the JSON summary next to it.
pub fn write_results(records: &[TrialRecord], cfg: &ExperimentConfig) -> Result<Written> {
    let csv_path = cfg
        .out
        .clone()
        .ok_or_else(|| LabError::Config("no output path given".into()))?;
    if let Some(dir) = csv_path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    }
    let mut buf = Vec::new();
    write_csv(cfg.kind, records, &mut buf)?;
    fs::write(&csv_path, &buf).map_err(|e| LabError::io(&csv_path, e))?;

    let summary = summarize(records, cfg)?;
    let json_path = summary_path(&csv_path);
    let mut text = serde_json::to_string_pretty(&summary)?;
    text.push('\n');
    fs::write(&json_path, text).map_err(|e| LabError::io(&json_path, e))?;
    Ok(Written {
        csv: csv_path,
        summary: json_path,
    })
}

/// Loads a trial CSV from disk.
pub fn load_csv(path: &Path) -> Result<(Option<ExperimentKind>, Vec<TrialRecord>)> {
    let file = fs::File::open(path).map_err(|e| LabError::io(path, e))?;
    read_csv(file).map_err(|e| match e {
        LabError::Csv { source, .. } => LabError::csv(path, source),
        other => other,
    })
}
