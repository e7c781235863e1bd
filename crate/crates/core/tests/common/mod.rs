#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rgspectra_core::SymMatrix;

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    // Fixed initial panels keep the first error estimate from vanishing by symmetry.
    const PANELS: usize = 16;
    let h = (b - a) / PANELS as f64;
    (0..PANELS)
        .map(|i| {
            let (lo, hi) = (
                a + i as f64 * h,
                if i + 1 == PANELS {
                    b
                } else {
                    a + (i + 1) as f64 * h
                },
            );
            let (fa, fb, fm) = (f(lo), f(hi), f(0.5 * (lo + hi)));
            let whole = simpson(fa, fm, fb, lo, hi);
            recurse(f, lo, hi, fa, fm, fb, whole, tol / PANELS as f64, 50)
        })
        .sum()
}

/// `∫ g dΦ` for the semicircle of scale `sigma2`, via `x = 2σ₂ sin θ` which
/// turns the density into `(2/π) cos² θ dθ` on `[−π/2, π/2]`. Split at zero so
/// integrands with a kink there (like `|x|`) stay smooth on each piece.
pub fn semicircle_integral(g: &dyn Fn(f64) -> f64, sigma2: f64, upper_theta: f64) -> f64 {
    use std::f64::consts::{FRAC_PI_2, PI};
    let h = |t: f64| g(2.0 * sigma2 * t.sin()) * 2.0 / PI * t.cos() * t.cos();
    if upper_theta <= 0.0 {
        return adaptive_simpson(&h, -FRAC_PI_2, upper_theta, 1e-14);
    }
    adaptive_simpson(&h, -FRAC_PI_2, 0.0, 1e-14) + adaptive_simpson(&h, 0.0, upper_theta, 1e-14)
}

pub fn random_symmetric(rng: &mut StdRng, n: usize, spread: f64) -> SymMatrix {
    SymMatrix::from_fn(n, |_, _| rng.gen_range(-spread..spread)).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
