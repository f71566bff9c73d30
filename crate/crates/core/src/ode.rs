//! Adaptive Dormand–Prince 5(4) integrator for small first-order systems.
//!
//! Intended for linear problems: the error norm is taken relative to the
//! size of the whole state vector, and the state can be renormalized on the
//! fly (the accumulated log-scale is reported), so exponentially growing
//! solutions never overflow.

use crate::error::{Error, Result};
use crate::scalar::Real;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Step-size control settings.
#[derive(Clone, Copy, Debug)]
pub struct OdeConfig<T> {
    pub rtol: T,
    /// Initial step (signed direction is taken from the interval).
    pub h0: T,
    pub max_steps: usize,
    /// Renormalize once the state norm exceeds this value (or drops below
    /// its reciprocal).
    pub renorm_at: T,
}

impl<T: Real> Default for OdeConfig<T> {
    fn default() -> Self {
        Self {
            rtol: T::c(1e-11),
            h0: T::c(1e-3),
            max_steps: 200_000,
            renorm_at: T::c(1e100),
        }
    }
}

/// Final state of an integration.
#[derive(Clone, Copy, Debug)]
pub struct OdeOutcome<T, const N: usize> {
    pub y: [T; N],
    /// Natural log of the factor removed by renormalization: the true
    /// solution is `y · exp(log_scale)`.
    pub log_scale: T,
    pub steps: usize,
    pub rejected: usize,
}

fn norm<T: Real, const N: usize>(y: &[T; N]) -> T {
    y.iter().fold(T::zero(), |m, v| m.max(v.abs()))
}

fn axpy<T: Real, const N: usize>(y: &[T; N], h: T, terms: &[(f64, &[T; N])]) -> [T; N] {
    let mut out = *y;
    for i in 0..N {
        let mut acc = T::zero();
        for (c, k) in terms {
            acc = acc + T::c(*c) * k[i];
        }
        out[i] = out[i] + h * acc;
    }
    out
}

/// Integrates `y' = f(t, y)` from `t0` to `t1`, calling `observe(t, y,
/// log_scale)` after every accepted step.
pub fn integrate_observed<T, const N: usize, F, O>(
    mut f: F,
    t0: T,
    y0: [T; N],
    t1: T,
    cfg: OdeConfig<T>,
    mut observe: O,
) -> Result<OdeOutcome<T, N>>
where
    T: Real,
    F: FnMut(T, &[T; N]) -> [T; N],
    O: FnMut(T, &[T; N], T),
{
    let dir = if t1 >= t0 { T::one() } else { -T::one() };
    let span = (t1 - t0).abs();
    let mut t = t0;
    let mut y = y0;
    let mut log_scale = T::zero();
    let mut h = cfg.h0.abs().min(span).max(T::epsilon() * span);
    let mut k1 = f(t, &y);
    let mut steps = 0;
    let mut rejected = 0;
    let safety = T::c(0.9);
    let min_factor = T::c(0.2);
    let max_factor = T::c(5.0);
    while (t1 - t) * dir > T::zero() {
        if steps + rejected >= cfg.max_steps {
            return Err(Error::Integration {
                at: t.to_f64_lossy(),
                reason: format!("step budget of {} exhausted", cfg.max_steps),
            });
        }
        let remaining = (t1 - t).abs();
        let last = h >= remaining;
        if last {
            h = remaining;
        }
        let hs = h * dir;
        let k2 = f(t + T::c(C2) * hs, &axpy(&y, hs, &[(A21, &k1)]));
        let k3 = f(t + T::c(C3) * hs, &axpy(&y, hs, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(
            t + T::c(C4) * hs,
            &axpy(&y, hs, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
        );
        let k5 = f(
            t + T::c(C5) * hs,
            &axpy(&y, hs, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + hs,
            &axpy(
                &y,
                hs,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y_new = axpy(
            &y,
            hs,
            &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
        );
        let t_new = if last { t1 } else { t + hs };
        let k7 = f(t_new, &y_new);
        let err_vec = axpy(
            &[T::zero(); N],
            hs,
            &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
        );
        let scale = cfg.rtol * norm(&y).max(norm(&y_new)) + T::min_positive_value();
        let err = norm(&err_vec) / scale;
        if !err.is_finite() || !norm(&y_new).is_finite() {
            rejected += 1;
            h = h * min_factor;
            if h <= T::epsilon() * t.abs().max(T::one()) {
                return Err(Error::Integration {
                    at: t.to_f64_lossy(),
                    reason: "non-finite state".into(),
                });
            }
            continue;
        }
        if err <= T::one() {
            t = t_new;
            y = y_new;
            k1 = k7;
            steps += 1;
            let n = norm(&y);
            if n > cfg.renorm_at || (n < cfg.renorm_at.recip() && n > T::zero()) {
                let inv = n.recip();
                for v in y.iter_mut() {
                    *v = *v * inv;
                }
                for v in k1.iter_mut() {
                    *v = *v * inv;
                }
                log_scale = log_scale + n.ln();
            }
            observe(t, &y, log_scale);
            let factor = if err == T::zero() {
                max_factor
            } else {
                (safety * err.powf(T::c(-0.2))).min(max_factor).max(min_factor)
            };
            h = h * factor;
        } else {
            rejected += 1;
            let factor = (safety * err.powf(T::c(-0.2))).max(min_factor);
            h = h * factor;
            if h <= T::epsilon() * t.abs().max(T::one()) {
                return Err(Error::Integration {
                    at: t.to_f64_lossy(),
                    reason: "step size underflow".into(),
                });
            }
        }
    }
    Ok(OdeOutcome {
        y,
        log_scale,
        steps,
        rejected,
    })
}

/// [`integrate_observed`] without an observer.
pub fn integrate<T, const N: usize, F>(
    f: F,
    t0: T,
    y0: [T; N],
    t1: T,
    cfg: OdeConfig<T>,
) -> Result<OdeOutcome<T, N>>
where
    T: Real,
    F: FnMut(T, &[T; N]) -> [T; N],
{
    integrate_observed(f, t0, y0, t1, cfg, |_, _, _| {})
}
