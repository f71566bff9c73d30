//! Zero modes for `α < −1/4`: `−φ″ + (α/x²)φ + (sk₀)²φ = 0` has no positive
//! solution, every real solution oscillates like
//! `√x·cos(σ ln(sk₀x) + phase)` with infinitely many zeros accumulating
//! geometrically at the origin.

use crate::error::{Error, Result};
use crate::factorization::CouplingParams;
use crate::roots::brent;
use crate::scalar::Real;

use super::{classify, regime_error, Regime};

/// Largest admissible relative size of the `O(x²)` correction to the
/// leading oscillation inside the zero window.
pub const ZERO_WINDOW_TOL: f64 = 1e-6;

/// Zeros of an oscillating zero mode inside a window near the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSequence<T> {
    /// strictly decreasing, in units of `1/k₀`
    pub zeros: Vec<T>,
    /// geometric mean of consecutive ratios `x_{n+1}/x_n`; NaN for fewer
    /// than two zeros
    pub ratio_estimate: T,
    /// `e^{−π/σ}`
    pub ratio_predicted: T,
    /// bound on the relative `O(x²)` correction over the window
    pub correction_bound: T,
}

fn sigma_of<T: Real>(coupling: &CouplingParams<T>) -> Result<T> {
    match classify(coupling) {
        Regime::NoFactorization => Ok(coupling.sigma().expect("over-critical coupling has sigma")),
        r => Err(regime_error(coupling, r, "alpha < -1/4")),
    }
}

/// Reduced zero mode `Re[e^{i(σ ln ξ + phase)} Σ_m a_m ξ^{2m}]` with
/// `ξ = sk₀x`, `a_0 = 1`, `a_m = a_{m−1}/(4m(m + iσ))`. The full solution is
/// `√ξ` times this; the series is exact (entire in `ξ²`).
fn reduced_mode<T: Real>(sigma: T, phase: T, xi: T) -> T {
    let q = xi * xi;
    let (mut ar, mut ai) = (T::one(), T::zero());
    let (mut sr, mut si) = (T::one(), T::zero());
    let mut m = T::zero();
    for _ in 0..200 {
        m = m + T::one();
        // divide (ar + i ai)·q by 4m(m + iσ)
        let (dr, di) = (T::c(4.0) * m * m, T::c(4.0) * m * sigma);
        let den = dr * dr + di * di;
        let (nr, ni) = (ar * q, ai * q);
        ar = (nr * dr + ni * di) / den;
        ai = (ni * dr - nr * di) / den;
        sr = sr + ar;
        si = si + ai;
        if ar.abs() + ai.abs() <= T::epsilon() * (sr.abs() + si.abs()) {
            break;
        }
    }
    let (sn, cs) = (sigma * xi.ln() + phase).sin_cos();
    cs * sr - sn * si
}

/// The oscillating zero mode `φ(x) = √(sk₀x)·Re[…]` for `α < −1/4`
/// (dimensionless normalization). Fails with a regime error for `α ≥ −1/4`.
pub fn oscillating_zero_mode<T: Real>(coupling: &CouplingParams<T>, s: T, phase: T, x: T) -> Result<T> {
    let sigma = sigma_of(coupling)?;
    let xi = s * coupling.k0() * x;
    Ok(xi.sqrt() * reduced_mode(sigma, phase, xi))
}

/// Zeros of the oscillating zero mode in `window = (x_lo, x_hi)`, located by
/// bracketing on a logarithmic grid and refined with Brent's method.
///
/// The window must lie in the asymptotic region where the relative
/// correction `(sk₀x_hi)²/(4√(1+σ²))` stays below [`ZERO_WINDOW_TOL`];
/// consecutive zeros then approach the ratio `e^{−π/σ}` of the leading
/// phase `cos(σ ln(sk₀x) + phase)`.
pub fn oscillation_zeros<T: Real>(
    coupling: &CouplingParams<T>,
    s: T,
    phase: T,
    window: (T, T),
) -> Result<ZeroSequence<T>> {
    let sigma = sigma_of(coupling)?;
    let (lo, hi) = window;
    if !(s > T::zero()) || !s.is_finite() || !phase.is_finite() {
        return Err(Error::InvalidParams(format!("need s > 0 and a finite phase, got s = {s}")));
    }
    if !(lo > T::zero()) || !(hi > lo) || !hi.is_finite() {
        return Err(Error::InvalidParams(format!("zero window must satisfy 0 < x_lo < x_hi, got ({lo}, {hi})")));
    }
    let sk0 = s * coupling.k0();
    let xi_hi = sk0 * hi;
    let bound = xi_hi * xi_hi / (T::c(4.0) * (T::one() + sigma * sigma).sqrt());
    if bound > T::c(ZERO_WINDOW_TOL) {
        return Err(Error::WindowTooLarge {
            bound: bound.to_f64_lossy(),
            tolerance: ZERO_WINDOW_TOL,
        });
    }
    // work in t = ln ξ; the leading phase advances by σ·dt
    let f = |t: T| reduced_mode(sigma, phase, t.exp());
    let (t_lo, t_hi) = ((sk0 * lo).ln(), xi_hi.ln());
    let dt = T::PI() / (T::c(16.0) * sigma);
    let steps = ((t_hi - t_lo) / dt).ceil().to_f64_lossy() as usize;
    let dt = (t_hi - t_lo) / T::from_usize_lossy(steps.max(1));
    let mut zeros = Vec::new();
    let mut b = t_hi;
    let mut fb = f(b);
    for i in 1..=steps.max(1) {
        let a = t_hi - dt * T::from_usize_lossy(i);
        let fa = f(a);
        if fa == T::zero() {
            zeros.push(a.exp() / sk0);
        } else if fa.signum() != fb.signum() && fb != T::zero() {
            let (t, _) = brent(&f, a, b, T::epsilon() * T::c(4.0) * a.abs().max(T::one()), 200)?;
            zeros.push(t.exp() / sk0);
        }
        b = a;
        fb = fa;
    }
    let n = zeros.len();
    let ratio_estimate = if n >= 2 {
        ((zeros[n - 1] / zeros[0]).ln() / T::from_usize_lossy(n - 1)).exp()
    } else {
        T::nan()
    };
    Ok(ZeroSequence {
        zeros,
        ratio_estimate,
        ratio_predicted: (-T::PI() / sigma).exp(),
        correction_bound: bound,
    })
}
