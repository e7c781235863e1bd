//! Eigenvalues of dense real symmetric matrices.
//!
//! Householder reflections reduce the matrix to tridiagonal form, then the
//! implicit QL algorithm with Wilkinson shifts diagonalizes the tridiagonal
//! matrix. No eigenvectors are accumulated.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rgraph::SymMatrix;

/// Per-eigenvalue budget of QL sweeps.
pub const MAX_SWEEPS: usize = 50;

/// Eigenvalues sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts `values` ascending (stable; NaN is rejected).
    pub fn from_values(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyOrder);
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::NonFinite);
        }
        values.sort_by(|a, b| a.total_cmp(b));
        Ok(Spectrum { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_sq(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Multiplies every eigenvalue by `c > 0`; order is preserved.
pub fn scaled_spectrum(s: &Spectrum, c: f64) -> Result<Spectrum> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidScale(c));
    }
    Ok(Spectrum {
        values: s.values.iter().map(|v| v * c).collect(),
    })
}

/// Full spectrum of `m`.
pub fn eigenvalues(m: &SymMatrix) -> Result<Spectrum> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = m.order();
    let mut work = m.as_slice().to_vec();
    let (mut diag, mut off) = tridiagonalize(n, &mut work);
    tridiagonal_ql(&mut diag, &mut off)?;
    Spectrum::from_values(diag)
}

/// Reduces the row-major symmetric `a` in place and returns the diagonal
/// `d` and subdiagonal `e` (`e[k]` couples `d[k]` and `d[k+1]`; the last
/// slot is zero). Only the lower triangle is read or updated.
fn tridiagonalize(n: usize, a: &mut [f64]) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];

    for k in 0..n.saturating_sub(1) {
        d[k] = a[k * n + k];
        let lo = k + 1;
        let m = n - lo;
        // column k below the diagonal
        let mut scale = 0.0;
        for i in 0..m {
            v[i] = a[(lo + i) * n + k];
            scale += v[i].abs();
        }
        if m == 1 || scale == 0.0 {
            e[k] = v[0];
            continue;
        }
        // Scaling guards the norm against over/underflow.
        let mut norm_sq = 0.0;
        for vi in &mut v[..m] {
            *vi /= scale;
            norm_sq += *vi * *vi;
        }
        let norm = libm::sqrt(norm_sq);
        let alpha = if v[0] >= 0.0 { -norm } else { norm };
        e[k] = alpha * scale;
        // H = I - beta v v^T maps x onto alpha * e_1.
        v[0] -= alpha;
        let vtv: f64 = v[..m].iter().map(|t| t * t).sum();
        let beta = 2.0 / vtv;

        // p = beta * A22 v, from the lower triangle
        w[..m].fill(0.0);
        for i in 0..m {
            let base = (lo + i) * n + lo;
            let row = &a[base..base + i];
            let vi = v[i];
            let mut dot = a[base + i] * vi;
            for ((r, &vj), wj) in row.iter().zip(&v[..i]).zip(&mut w[..i]) {
                dot += r * vj;
                *wj += r * vi;
            }
            w[i] += dot;
        }
        for wi in &mut w[..m] {
            *wi *= beta;
        }
        // w = p - (beta/2)(p^T v) v
        let ptv: f64 = w[..m].iter().zip(&v[..m]).map(|(p, vv)| p * vv).sum();
        let kappa = 0.5 * beta * ptv;
        for i in 0..m {
            w[i] -= kappa * v[i];
        }
        // A22 -= v w^T + w v^T
        for i in 0..m {
            let (vi, wi) = (v[i], w[i]);
            let base = (lo + i) * n + lo;
            let row = &mut a[base..=base + i];
            for ((r, &vj), &wj) in row.iter_mut().zip(&v[..=i]).zip(&w[..=i]) {
                *r -= vi * wj + wi * vj;
            }
        }
    }
    if n > 0 {
        d[n - 1] = a[(n - 1) * n + n - 1];
    }
    (d, e)
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
/// On success `d` holds the (unsorted) eigenvalues.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            // find a negligible subdiagonal element e[m], m >= l
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    index: l,
                    iterations: MAX_SWEEPS,
                });
            }
            // Wilkinson shift from the leading 2x2 block
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    // underflow: split the matrix here and restart
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
