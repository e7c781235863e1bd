//! Monte Carlo campaigns.
//!
//! Every campaign walks its `(n, p)` cells in [`ExperimentConfig::cells`]
//! order. Trial `t` of every cell samples its graph with seed
//! `substream_seed(master, t)`, so different experiment kinds run on the same
//! master seed see the same graphs. Trials run in parallel and are merged in
//! trial-index order.
//!
//! Verdict bands are always a rigorous Ky Fan slack (where one exists) plus
//! an explicit statistical margin; thresholds without a rigorous part are the
//! constants below.

use std::f64::consts::PI;

use rayon::prelude::*;
use rgspectra_core::energy::{energy_of, off_diagonal_shift_energy};
use rgspectra_core::rgraph::{self, substream_seed, GraphSample};
use rgspectra_core::specdist::{abs_mean, dist_moment, esd, ks_distance, SemicircleLaw};
use rgspectra_core::{eigenvalues, energy_sandwich, graph_energy, laplacian_energy};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{LabError, Result};
use crate::record::TrialRecord;

/// Absolute tolerance for Ky Fan containments and exact shift identities.
pub const EXACT_TOL: f64 = 1e-9;
/// `2√2/3`, lower end of the Laplacian-energy interval.
pub const LE_LOWER: f64 = 0.942_809_041_582_063_4;
/// `√2`, upper end of the Laplacian-energy interval.
pub const LE_UPPER: f64 = std::f64::consts::SQRT_2;
/// KS distance accepted between the centered-adjacency ESD and the semicircle.
pub const KS_THRESHOLD: f64 = 0.05;
/// KS distance a semicircle of twice the true scale must exceed.
pub const KS_CONTROL_MIN: f64 = 0.1;
/// Second moment of `semicircle ⊞ normal` and its accepted band.
pub const MOMENT2_TARGET: f64 = 2.0;
pub const MOMENT2_BAND: f64 = 0.2;
/// Fourth moment of `semicircle ⊞ normal` and its accepted band.
pub const MOMENT4_TARGET: f64 = 9.0;
pub const MOMENT4_BAND: f64 = 1.0;
/// Largest accepted gap between the `L₁` and `L₂` mean absolute values.
pub const ABS_MEAN_PAIR_TOL: f64 = 0.05;
/// `|Δₙ|` must stay below `DRIFT_SCALE / √n`.
pub const DRIFT_SCALE: f64 = 4.0;

/// `exp{−ε² / (2(mean + ε/3))}`, clamped to `≤ 1`.
///
/// Bernstein–Chernoff tail bound for `P(|X − E X| ≥ ε)` of a binomial count
/// with the given mean.
pub fn chernoff_bound(mean: f64, epsilon: f64) -> Result<f64> {
    if mean.is_nan() || mean <= 0.0 || epsilon.is_nan() || epsilon <= 0.0 {
        return Err(LabError::Config(format!(
            "chernoff bound needs positive mean and epsilon (got {mean}, {epsilon})"
        )));
    }
    Ok((-epsilon * epsilon / (2.0 * (mean + epsilon / 3.0)))
        .exp()
        .min(1.0))
}

/// `8σ/(3π)`, the limit of `E(G)/n^{3/2}`.
pub fn energy_target(p: f64) -> f64 {
    8.0 * rgraph::sigma(p) / (3.0 * PI)
}

fn n32(n: usize) -> f64 {
    (n as f64).powf(1.5)
}

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    match cfg.kind {
        ExperimentKind::EnergyConvergence => run_energy_convergence(cfg),
        ExperimentKind::LeBounds => run_le_bounds(cfg),
        ExperimentKind::Conjecture => run_conjecture(cfg),
        ExperimentKind::EsdKs => run_esd_ks(cfg),
        ExperimentKind::Drift => run_drift(cfg),
        ExperimentKind::Moment2 => run_moment2(cfg),
    }
}

fn run_cells<F>(
    cfg: &ExperimentConfig,
    expected: ExperimentKind,
    trial_fn: F,
) -> Result<Vec<TrialRecord>>
where
    F: Fn(&GraphSample, TrialRecord) -> Result<TrialRecord> + Sync,
{
    if cfg.kind != expected {
        return Err(LabError::Config(format!(
            "expected a {expected} config, got {}",
            cfg.kind
        )));
    }
    cfg.validate()?;
    let mut out = Vec::with_capacity(cfg.n_list.len() * cfg.p_list.len() * cfg.trials);
    for (n, p) in cfg.cells() {
        let cell: Vec<TrialRecord> = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| {
                let seed = substream_seed(cfg.seed, trial as u64);
                let provenance = |source| LabError::Trial {
                    n,
                    p,
                    trial,
                    seed,
                    source,
                };
                let g = GraphSample::sample(n, p, seed).map_err(provenance)?;
                trial_fn(&g, TrialRecord::new(cfg.kind, n, p, trial, seed)).map_err(|e| match e {
                    LabError::Core(source) => provenance(source),
                    other => other,
                })
            })
            .collect::<Result<_>>()?;
        out.extend(cell);
    }
    Ok(out)
}

/// `E(G)/n^{3/2}` against `8σ/(3π)`, with `E(G)` checked inside the Ky Fan
/// sandwich around `E(Ā)`.
pub fn run_energy_convergence(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    let margin = cfg.margin;
    run_cells(cfg, ExperimentKind::EnergyConvergence, |g, mut rec| {
        let (n, p) = (g.n(), g.p());
        let energy = graph_energy(g)?;
        let centered = energy_of(&rgraph::centered_adjacency(g, p))?;
        let shift = off_diagonal_shift_energy(n, p);
        let sandwich = energy_sandwich(&centered, shift)?;
        let target = energy_target(p);
        let deviation = energy.normalized - target;
        let band = shift / n32(n) + margin;
        rec.measure("energy", energy.raw)?
            .measure("energy_normalized", energy.normalized)?
            .measure("centered_energy", centered.raw)?
            .measure("target", target)?
            .measure("deviation", deviation)?
            .measure("band", band)?;
        rec.verdict("within_band", deviation.abs() <= band).verdict(
            "kyfan_contained",
            sandwich.contains_within(energy.raw, EXACT_TOL),
        );
        Ok(rec)
    })
}

/// `LE/(σ n^{3/2})` against `[2√2/3, √2]` widened by the Ky Fan slack plus
/// margin.
pub fn run_le_bounds(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    let margin = cfg.margin;
    run_cells(cfg, ExperimentKind::LeBounds, |g, mut rec| {
        let (n, p) = (g.n(), g.p());
        let sigma = rgraph::sigma(p);
        let le = laplacian_energy(g)?;
        let l1 = energy_of(&rgraph::l1_matrix(g, p))?;
        let shift = off_diagonal_shift_energy(n, p);
        let sandwich = energy_sandwich(&l1, shift)?;
        let value = le.raw / (sigma * n32(n));
        let slack = shift / (sigma * n32(n)) + margin;
        rec.measure("le", le.raw)?
            .measure("le_sigma_normalized", value)?
            .measure("l1_energy", l1.raw)?
            .measure("l1_sigma_normalized", l1.raw / (sigma * n32(n)))?
            .measure("slack", slack)?;
        rec.verdict(
            "in_interval",
            value >= LE_LOWER - slack && value <= LE_UPPER + slack,
        )
        .verdict(
            "kyfan_contained",
            sandwich.contains_within(le.raw, EXACT_TOL),
        );
        Ok(rec)
    })
}

/// `E(G) < LE(G)` per trial. Equality within tolerance (empty or complete
/// graphs) is recorded as a boundary observation and does not fail.
pub fn run_conjecture(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    run_cells(cfg, ExperimentKind::Conjecture, |g, mut rec| {
        let energy = graph_energy(g)?;
        let le = laplacian_energy(g)?;
        let gap = le.raw - energy.raw;
        let boundary = gap.abs() <= EXACT_TOL * le.raw.max(1.0);
        let strict = gap > 0.0 && !boundary;
        rec.measure("energy", energy.raw)?
            .measure("le", le.raw)?
            .measure("energy_normalized", energy.normalized)?
            .measure("le_normalized", le.normalized)?
            .measure("gap", gap)?
            .measure("strict", f64::from(u8::from(strict)))?
            .measure("boundary", f64::from(u8::from(boundary)))?;
        rec.verdict("energy_below_le", strict || boundary);
        Ok(rec)
    })
}

/// KS distance between the ESD of `n^{−1/2} Ā` and the semicircle of scale
/// `σ`, plus a negative control at scale `2σ`.
pub fn run_esd_ks(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    run_cells(cfg, ExperimentKind::EsdKs, |g, mut rec| {
        let (n, p) = (g.n(), g.p());
        let sigma = rgraph::sigma(p);
        let spectrum = eigenvalues(&rgraph::centered_adjacency(g, p))?;
        let dist = esd(&spectrum, 1.0 / (n as f64).sqrt())?;
        let ks = ks_distance(&dist, &SemicircleLaw::new(sigma)?);
        let control = ks_distance(&dist, &SemicircleLaw::new(2.0 * sigma)?);
        rec.measure("ks", ks)?
            .measure("ks_control", control)?
            .measure("abs_mean", abs_mean(&dist))?
            .measure("abs_mean_target", energy_target(p))?;
        rec.verdict("ks_within", ks <= KS_THRESHOLD)
            .verdict("control_rejected", control > KS_CONTROL_MIN);
        Ok(rec)
    })
}

/// `Δₙ` per trial, with the Chernoff bound evaluated at the observed
/// edge-count deviation.
pub fn run_drift(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    run_cells(cfg, ExperimentKind::Drift, |g, mut rec| {
        let (n, p) = (g.n(), g.p());
        let drift = rgraph::centering_drift(g, p)?;
        let mean = edge_mean(n, p);
        let deviation = (g.edge_count() as f64 - mean).abs();
        let bound = if deviation > 0.0 {
            chernoff_bound(mean, deviation)?
        } else {
            1.0
        };
        let threshold = DRIFT_SCALE / (n as f64).sqrt();
        rec.measure("delta_n", drift)?
            .measure("abs_delta_n", drift.abs())?
            .measure("threshold", threshold)?
            .measure("edge_count", g.edge_count() as f64)?
            .measure("edge_deviation", deviation)?
            .measure("chernoff_bound", bound)?;
        rec.verdict("drift_within", drift.abs() <= threshold);
        Ok(rec)
    })
}

/// `n(n−1)p/2`.
pub fn edge_mean(n: usize, p: f64) -> f64 {
    (n * (n - 1)) as f64 / 2.0 * p
}

/// Standard deviation of the edge count, `√(n(n−1)/2 · p(1−p))`.
pub fn edge_sd(n: usize, p: f64) -> f64 {
    ((n * (n - 1)) as f64 / 2.0 * p * (1.0 - p)).sqrt()
}

/// Moments of the ESDs of `(σ√n)⁻¹ L₁` and `(σ√n)⁻¹ L₂`, and the exact
/// `Δₙ` shift relating them.
pub fn run_moment2(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    run_cells(cfg, ExperimentKind::Moment2, |g, mut rec| {
        let (n, p) = (g.n(), g.p());
        let scale = 1.0 / (rgraph::sigma(p) * (n as f64).sqrt());
        let drift = rgraph::centering_drift(g, p)?;
        let l1 = esd(&eigenvalues(&rgraph::l1_matrix(g, p))?, scale)?;
        let l2 = esd(&eigenvalues(&rgraph::l2_matrix(g, p))?, scale)?;

        let m1_l1 = dist_moment(&l1, 1)?;
        let m2_l1 = dist_moment(&l1, 2)?;
        let m2_l2 = dist_moment(&l2, 2)?;
        let m4_l1 = dist_moment(&l1, 4)?;
        let m4_l2 = dist_moment(&l2, 4)?;
        let abs_l1 = abs_mean(&l1);
        let abs_l2 = abs_mean(&l2);
        // (sigma sqrt n)^-1 L2 = (sigma sqrt n)^-1 L1 + delta I, eigenvalue by eigenvalue
        let m2_residual = (m2_l2 - (m2_l1 + 2.0 * drift * m1_l1 + drift * drift)).abs();
        let shift_residual = l1
            .samples()
            .iter()
            .zip(l2.samples())
            .map(|(a, b)| (a + drift - b).abs())
            .fold(0.0, f64::max);
        let m2_gap_bound = 2.0 * drift.abs() * m2_l1.sqrt() + drift * drift;

        rec.measure("delta_n", drift)?
            .measure("m2_l1", m2_l1)?
            .measure("m2_l2", m2_l2)?
            .measure("m4_l1", m4_l1)?
            .measure("m4_l2", m4_l2)?
            .measure("abs_mean_l1", abs_l1)?
            .measure("abs_mean_l2", abs_l2)?
            .measure("m2_shift_residual", m2_residual)?
            .measure("eigen_shift_residual", shift_residual)?
            .measure("m2_gap_bound", m2_gap_bound)?;
        let in_band = |m: f64| (m - MOMENT2_TARGET).abs() <= MOMENT2_BAND;
        rec.verdict("m2_in_band", in_band(m2_l1) && in_band(m2_l2))
            .verdict("m4_in_band", (m4_l2 - MOMENT4_TARGET).abs() <= MOMENT4_BAND)
            .verdict(
                "abs_mean_close",
                (abs_l1 - abs_l2).abs() <= ABS_MEAN_PAIR_TOL,
            )
            .verdict(
                "shift_exact",
                m2_residual <= EXACT_TOL && shift_residual <= EXACT_TOL,
            )
            .verdict(
                "m2_gap_bounded",
                (m2_l2 - m2_l1).abs() <= m2_gap_bound + EXACT_TOL,
            );
        Ok(rec)
    })
}

/// Empirical tail frequency of the edge-count deviation against the
/// Chernoff bound at one `ε`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TailCheck {
    pub epsilon: f64,
    pub empirical: f64,
    pub bound: f64,
    pub dominated: bool,
}

/// Standard-deviation multiples at which drift tails are checked.
pub const TAIL_MULTIPLES: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 2.5];

/// Compares the empirical tail `P(|X − E X| ≥ ε)` over drift records of one
/// cell with [`chernoff_bound`], at `ε = k·sd` for each multiple `k`.
pub fn chernoff_tails(
    records: &[TrialRecord],
    n: usize,
    p: f64,
    multiples: &[f64],
) -> Result<Vec<TailCheck>> {
    let deviations: Vec<f64> = records
        .iter()
        .filter(|r| r.n == n && r.p == p)
        .filter_map(|r| r.get("edge_deviation"))
        .collect();
    if deviations.is_empty() {
        return Ok(Vec::new());
    }
    let (mean, sd) = (edge_mean(n, p), edge_sd(n, p));
    multiples
        .iter()
        .map(|&k| {
            let epsilon = k * sd;
            let hits = deviations.iter().filter(|&&d| d >= epsilon).count();
            let empirical = hits as f64 / deviations.len() as f64;
            let bound = chernoff_bound(mean, epsilon)?;
            Ok(TailCheck {
                epsilon,
                empirical,
                bound,
                dominated: empirical <= bound,
            })
        })
        .collect()
}
