//! Matrix, graph and Laplacian energies, and the Ky Fan inequality
//! `E(X) + E(Y) ≥ E(X + Y)` behind every energy sandwich.

use crate::eigensym::{eigenvalues, Spectrum};
use crate::error::{Error, Result};
use crate::rgraph::{self, GraphSample, SymMatrix};

/// Absolute slack allowed when checking the Ky Fan inequality numerically.
pub const KY_FAN_TOLERANCE: f64 = 1e-9;

/// `Σ|λᵢ|` together with its `n^{3/2}` normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    pub raw: f64,
    /// `raw / n^{3/2}`.
    pub normalized: f64,
    /// `√(p(1−p))` when the matrix came from a `G(n, p)` sample.
    pub sigma: Option<f64>,
    pub order: usize,
}

impl EnergyReport {
    fn new(raw: f64, order: usize, sigma: Option<f64>) -> Self {
        let n = order as f64;
        EnergyReport {
            raw,
            normalized: raw / (n * libm::sqrt(n)),
            sigma,
            order,
        }
    }

    /// `raw / (σ n^{3/2})`, when `σ` is known and nonzero.
    pub fn sigma_normalized(&self) -> Option<f64> {
        self.sigma.filter(|s| *s > 0.0).map(|s| self.normalized / s)
    }
}

pub fn matrix_energy(s: &Spectrum) -> EnergyReport {
    let raw = s.values().iter().map(|v| v.abs()).sum();
    EnergyReport::new(raw, s.order(), None)
}

/// Energy of an arbitrary symmetric matrix.
pub fn energy_of(m: &SymMatrix) -> Result<EnergyReport> {
    eigenvalues(m).map(|s| matrix_energy(&s))
}

/// `E(G)`: energy of the adjacency matrix.
pub fn graph_energy(g: &GraphSample) -> Result<EnergyReport> {
    let mut r = energy_of(&rgraph::adjacency(g))?;
    r.sigma = Some(rgraph::sigma(g.p()));
    Ok(r)
}

/// `LE(G)`: energy of `L − (2|E|/n)·I`.
pub fn laplacian_energy(g: &GraphSample) -> Result<EnergyReport> {
    let mut r = energy_of(&rgraph::gutman_matrix(g))?;
    r.sigma = Some(rgraph::sigma(g.p()));
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KyFanCheck {
    /// `E(X) + E(Y)`.
    pub lhs: f64,
    /// `E(X + Y)`.
    pub rhs: f64,
    pub holds: bool,
}

pub fn kyfan_check(x: &SymMatrix, y: &SymMatrix) -> Result<KyFanCheck> {
    let z = x.add(y)?;
    let lhs = energy_of(x)?.raw + energy_of(y)?.raw;
    let rhs = energy_of(&z)?.raw;
    Ok(KyFanCheck {
        lhs,
        rhs,
        holds: lhs >= rhs - KY_FAN_TOLERANCE,
    })
}

/// Closed interval `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl Bracket {
    /// Membership with absolute slack `tol` on both ends.
    pub fn contains_within(&self, x: f64, tol: f64) -> bool {
        x >= self.lower - tol && x <= self.upper + tol
    }

    pub fn contains(&self, x: f64) -> bool {
        self.contains_within(x, 0.0)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Interval that must hold `E(M + S)` when `E(S) = shift_energy`.
///
/// Ky Fan applied to `M + S` and to `(M + S) − S` gives
/// `|E(M + S) − E(M)| ≤ E(S)`.
pub fn energy_sandwich(center: &EnergyReport, shift_energy: f64) -> Result<Bracket> {
    if shift_energy.is_nan() || shift_energy < 0.0 {
        return Err(Error::NotPositive("shift energy"));
    }
    Ok(Bracket {
        lower: center.raw - shift_energy,
        upper: center.raw + shift_energy,
    })
}

/// `E(p(J − I)) = 2p(n − 1)`.
pub fn off_diagonal_shift_energy(n: usize, p: f64) -> f64 {
    2.0 * p.abs() * (n as f64 - 1.0)
}
