//! Empirical spectral distributions and the semicircle law.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::eigensym::Spectrum;
use crate::error::{Error, Result};

/// Sorted sample of scaled eigenvalues; its CDF puts mass `1/n` on each.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDist {
    samples: Vec<f64>,
}

impl EmpiricalDist {
    pub fn from_samples(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyOrder);
        }
        if samples.iter().any(|x| x.is_nan()) {
            return Err(Error::NonFinite);
        }
        samples.sort_by(|a, b| a.total_cmp(b));
        Ok(EmpiricalDist { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Right-continuous ECDF: `#{xᵢ ≤ x} / n`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s <= x) as f64 / self.samples.len() as f64
    }

    /// Left limit `#{xᵢ < x} / n`.
    pub fn cdf_left(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s < x) as f64 / self.samples.len() as f64
    }
}

/// ESD of `scale · M`, given the spectrum of `M`.
pub fn esd(s: &Spectrum, scale: f64) -> Result<EmpiricalDist> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidScale(scale));
    }
    // a positive scale keeps the ascending order
    Ok(EmpiricalDist {
        samples: s.values().iter().map(|v| v * scale).collect(),
    })
}

/// Semicircle law with density `√(4σ₂² − x²) / (2πσ₂²)` on `[−2σ₂, 2σ₂]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemicircleLaw {
    sigma2: f64,
}

impl SemicircleLaw {
    pub fn new(sigma2: f64) -> Result<Self> {
        if sigma2 > 0.0 && sigma2.is_finite() {
            Ok(SemicircleLaw { sigma2 })
        } else {
            Err(Error::NotPositive("semicircle scale"))
        }
    }

    /// Zero mean, unit variance.
    pub fn standard() -> Self {
        SemicircleLaw { sigma2: 1.0 }
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// Half-width of the support, `2σ₂`.
    pub fn radius(&self) -> f64 {
        2.0 * self.sigma2
    }

    pub fn density(&self, x: f64) -> f64 {
        let r = self.radius();
        if x.abs() >= r {
            return 0.0;
        }
        libm::sqrt(r * r - x * x) / (2.0 * PI * self.sigma2 * self.sigma2)
    }
}

pub fn semicircle_cdf(law: &SemicircleLaw, x: f64) -> f64 {
    let r = law.radius();
    if x <= -r {
        return 0.0;
    }
    if x >= r {
        return 1.0;
    }
    let s2 = law.sigma2 * law.sigma2;
    let f = 0.5 + x * libm::sqrt(r * r - x * x) / (4.0 * PI * s2) + libm::asin(x / r) / PI;
    f.clamp(0.0, 1.0)
}

/// `∫|x| dΦ = 8σ₂ / (3π)`.
pub fn semicircle_abs_moment(law: &SemicircleLaw) -> f64 {
    8.0 * law.sigma2 / (3.0 * PI)
}

/// Kolmogorov–Smirnov distance `sup |Fₙ − F|`, checking both one-sided
/// limits of the ECDF at each sample point.
pub fn ks_distance(e: &EmpiricalDist, law: &SemicircleLaw) -> f64 {
    let n = e.samples.len();
    let nf = n as f64;
    let mut sup: f64 = 0.0;
    let mut i = 0;
    while i < n {
        let x = e.samples[i];
        let mut j = i;
        while j < n && e.samples[j] == x {
            j += 1;
        }
        let f = semicircle_cdf(law, x);
        let below = i as f64 / nf;
        let at = j as f64 / nf;
        sup = sup.max((at - f).abs()).max((below - f).abs());
        i = j;
    }
    sup
}

/// `(1/n) Σ xᵢᵏ`.
pub fn dist_moment(e: &EmpiricalDist, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::NotPositive("moment order"));
    }
    let power = |x: f64| (1..k).fold(x, |acc, _| acc * x);
    Ok(e.samples.iter().map(|&x| power(x)).sum::<f64>() / e.samples.len() as f64)
}

/// `(1/n) Σ |xᵢ|`.
pub fn abs_mean(e: &EmpiricalDist) -> f64 {
    e.samples.iter().map(|x| x.abs()).sum::<f64>() / e.samples.len() as f64
}
