//! Exact combinatorial free convolution.
//!
//! A measure with all moments is encoded by its moment series
//! `M(z) = 1 + Σ m_k z^k`. Its free cumulants `c_k` are the coefficients of
//! `T(z) = Σ c_k z^{k−1}`, tied to `M` by
//!
//! ```text
//! M(z) = 1 + z M(z) T(z M(z))
//! ```
//!
//! and free convolution adds `T` series. Everything here is exact over
//! arbitrary-precision rationals; truncation degrees up to about 20 stay
//! cheap.

mod series;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use series::TruncatedSeries;

use crate::energy::Bracket;
use crate::error::{Error, Result};

/// Default truncation used for `semicircle ⊞ normal`.
pub const DEFAULT_DEGREE: usize = 8;

/// Moments `m₁ … m_N` of a probability measure (`m₀ = 1` implicitly).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSequence {
    moments: Vec<BigRational>,
}

impl MomentSequence {
    pub fn new(moments: Vec<BigRational>) -> Result<Self> {
        if moments.is_empty() {
            return Err(Error::InvalidDegree(0));
        }
        Ok(MomentSequence { moments })
    }

    pub fn from_integers(moments: &[i64]) -> Result<Self> {
        Self::new(moments.iter().map(|&m| int(m)).collect())
    }

    /// Moments of the point mass at zero.
    pub fn point_mass_zero(degree: usize) -> Result<Self> {
        Self::new(alloc::vec![BigRational::zero(); degree])
    }

    pub fn degree(&self) -> usize {
        self.moments.len()
    }

    /// `m_k`; `m₀ = 1`. Panics past the degree.
    pub fn moment(&self, k: usize) -> BigRational {
        if k == 0 {
            BigRational::one()
        } else {
            self.moments[k - 1].clone()
        }
    }

    /// `m₁ … m_N`.
    pub fn as_slice(&self) -> &[BigRational] {
        &self.moments
    }

    /// All odd moments vanish.
    pub fn is_even(&self) -> bool {
        self.moments.iter().step_by(2).all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.moments
            .iter()
            .map(|m| m.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// `M(z) = 1 + Σ m_k z^k` truncated at the sequence degree.
    pub fn generating_series(&self) -> TruncatedSeries {
        let mut coeffs = Vec::with_capacity(self.moments.len() + 1);
        coeffs.push(BigRational::one());
        coeffs.extend(self.moments.iter().cloned());
        let degree = self.moments.len();
        TruncatedSeries::from_coeffs(coeffs, degree)
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn check_degree(degree: usize) -> Result<()> {
    if degree == 0 {
        Err(Error::InvalidDegree(0))
    } else {
        Ok(())
    }
}

/// Standard semicircle: `m_{2k} = Catalan(k)`, odd moments zero.
pub fn semicircle_moments(degree: usize) -> Result<MomentSequence> {
    check_degree(degree)?;
    let mut moments = Vec::with_capacity(degree);
    let mut catalan = BigInt::one();
    for k in 1..=degree {
        if k % 2 == 1 {
            moments.push(BigRational::zero());
        } else {
            // C_j = C_{j-1} * 2(2j-1) / (j+1)
            let j = BigInt::from(k / 2);
            catalan = catalan * BigInt::from(2) * (&j * 2 - 1) / (&j + 1);
            moments.push(BigRational::from_integer(catalan.clone()));
        }
    }
    MomentSequence::new(moments)
}

/// Standard normal: `m_{2k} = (2k − 1)!!`, odd moments zero.
pub fn normal_moments(degree: usize) -> Result<MomentSequence> {
    check_degree(degree)?;
    let mut moments = Vec::with_capacity(degree);
    let mut double_factorial = BigInt::one();
    for k in 1..=degree {
        if k % 2 == 1 {
            moments.push(BigRational::zero());
        } else {
            double_factorial *= BigInt::from(k - 1);
            moments.push(BigRational::from_integer(double_factorial.clone()));
        }
    }
    MomentSequence::new(moments)
}

/// Free cumulants as the series `T(z) = Σ_{k=1}^{N} c_k z^{k−1}` (degree
/// `N − 1`).
///
/// `c₁ = m₁`, and for `k ≥ 2`
/// `c_k = −1/(k−1) · (1/k!) dᵏ/dzᵏ M(z)^{−(k−1)} |₀`, evaluated as
/// `−[zᵏ] M^{−(k−1)} / (k−1)` on the truncated moment series.
pub fn moments_to_t(m: &MomentSequence) -> TruncatedSeries {
    let n = m.degree();
    let full = m.generating_series();
    let mut cumulants = Vec::with_capacity(n);
    cumulants.push(m.moment(1));
    for k in 2..=n {
        let power = full
            .truncate(k)
            .powi(-(k as i64 - 1))
            .expect("moment series starts with 1");
        cumulants.push(-power.coeff(k) / int(k as i64 - 1));
    }
    TruncatedSeries::from_coeffs(cumulants, n - 1)
}

/// Moments `m₁ … m_N` generated by a cumulant series `T`.
///
/// Solves `M = 1 + z M T(z M)` degree by degree: starting from `M₀ = 1`,
/// `M_k ≡ 1 + z M_{k−1} T(z M_{k−1}) (mod z^{k+1})`. Cumulants of `T` beyond
/// its own degree are taken as zero.
pub fn t_to_moments(t: &TruncatedSeries, degree: usize) -> Result<MomentSequence> {
    check_degree(degree)?;
    let t = t.truncate(degree);
    let one = TruncatedSeries::one(degree);
    let mut m = one.clone();
    for _ in 0..degree {
        let inner = t.compose(&m.shift_up())?;
        m = one.try_add(&m.try_mul(&inner)?.shift_up())?;
    }
    MomentSequence::new(m.coeffs()[1..].to_vec())
}

/// `μ ⊞ ν`: moments of the measure whose cumulant series is `T_μ + T_ν`.
pub fn free_convolve(a: &MomentSequence, b: &MomentSequence) -> Result<MomentSequence> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    let t = moments_to_t(a).try_add(&moments_to_t(b))?;
    t_to_moments(&t, a.degree())
}

/// `semicircle ⊞ normal` up to `degree`.
pub fn psi_moments(degree: usize) -> Result<MomentSequence> {
    free_convolve(&semicircle_moments(degree)?, &normal_moments(degree)?)
}

/// Cauchy–Schwarz bracket on `E|X|` from `m₂ = E X²` and `m₄ = E X⁴`:
/// `m₂² / √(m₂ m₄) ≤ E|X| ≤ √m₂`.
pub fn abs_moment_bounds(m2: &BigRational, m4: &BigRational) -> Result<Bracket> {
    if !m2.is_positive() || !m4.is_positive() || m4 < &(m2 * m2) {
        return Err(Error::InconsistentMoments);
    }
    let m2f = m2.to_f64().ok_or(Error::InconsistentMoments)?;
    let m4f = m4.to_f64().ok_or(Error::InconsistentMoments)?;
    Ok(Bracket {
        lower: m2f * m2f / libm::sqrt(m2f * m4f),
        upper: libm::sqrt(m2f),
    })
}
