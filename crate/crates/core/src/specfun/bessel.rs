//! Modified Bessel functions `I_ν` and `K_ν` of real order and positive
//! real argument.
//!
//! `I_ν` uses the ascending series (all terms positive) for moderate
//! arguments and the Hankel asymptotic expansion beyond. `K_ν` uses Temme's
//! series (`z <= 2`) or Steed's continued fraction (`z > 2`) at the reduced
//! order `μ = ν − round(ν) ∈ [−1/2, 1/2]`, followed by upward recurrence,
//! which is stable for `K`. Temme's series is uniform in `μ`, so integer and
//! near-integer orders need no special branch.
//!
//! Everything is computed in exponentially scaled form
//! (`e^{−z} I_ν`, `e^{z} K_ν`) so large arguments never overflow.

use crate::error::{domain, Error, Result};
use crate::scalar::{CompensatedSum, Real};
use crate::specfun::gamma::{ln_gamma, temme_gammas};

/// Largest order accepted by the public entry points.
pub const MAX_ORDER: f64 = 30.0;

const MAX_ITER: usize = 20_000;

/// Order `ϰ` of a modified Bessel function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselOrder<T>(T);

impl<T: Real> BesselOrder<T> {
    /// Accepts any finite order with `|ϰ| <= MAX_ORDER`. Negative orders are
    /// only meaningful for `K` (which is even in the order).
    pub fn new(kappa: T) -> Result<Self> {
        if !kappa.is_finite() || kappa.abs() > T::c(MAX_ORDER) {
            return Err(Error::UnsupportedOrder {
                order: kappa.to_f64_lossy(),
                max: MAX_ORDER,
            });
        }
        Ok(Self(kappa))
    }

    pub fn kappa(self) -> T {
        self.0
    }
}

/// A function value together with a conservative absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult<T> {
    pub value: T,
    pub est_abs_error: T,
}

/// Scaled values at two consecutive orders `ν` and `ν + 1`.
#[derive(Clone, Copy, Debug)]
pub struct ScaledIK<T> {
    pub nu: T,
    pub z: T,
    /// `e^{−z} I_ν(z)`, `e^{−z} I_{ν+1}(z)`
    pub i: [T; 2],
    /// `e^{z} K_ν(z)`, `e^{z} K_{ν+1}(z)`
    pub k: [T; 2],
    /// relative error estimates for `i[0]` and `k[0]`
    pub rel_err_i: T,
    pub rel_err_k: T,
}

impl<T: Real> ScaledIK<T> {
    /// Computes the scaled pair for order `nu >= 0` at `z > 0`.
    pub fn compute(nu: T, z: T) -> Result<Self> {
        check_argument("bessel_ik", z)?;
        if !(nu >= T::zero()) || nu > T::c(MAX_ORDER + 2.0) {
            return Err(Error::UnsupportedOrder {
                order: nu.to_f64_lossy(),
                max: MAX_ORDER,
            });
        }
        let (i0, ei0) = scaled_i(nu, z);
        let (i1, _) = scaled_i(nu + T::one(), z);
        let (k, ek) = scaled_k_pair(nu, z);
        Ok(Self {
            nu,
            z,
            i: [i0, i1],
            k,
            rel_err_i: ei0,
            rel_err_k: ek,
        })
    }

    /// `e^{−z} I'_ν(z)` via `I'_ν = I_{ν+1} + (ν/z) I_ν`.
    pub fn i_prime(&self) -> T {
        self.i[1] + self.nu / self.z * self.i[0]
    }

    /// `e^{z} K'_ν(z)` via `K'_ν = −K_{ν+1} + (ν/z) K_ν`.
    pub fn k_prime(&self) -> T {
        -self.k[1] + self.nu / self.z * self.k[0]
    }
}

fn check_argument<T: Real>(func: &'static str, z: T) -> Result<()> {
    if z.is_nan() {
        return Err(domain(func, "argument is NaN"));
    }
    if !(z > T::zero()) || !z.is_finite() {
        return Err(domain(func, format!("argument must be positive and finite, got {z}")));
    }
    Ok(())
}

fn check_i_order<T: Real>(order: BesselOrder<T>) -> Result<T> {
    let nu = order.kappa();
    if nu < T::zero() {
        return Err(Error::UnsupportedOrder {
            order: nu.to_f64_lossy(),
            max: MAX_ORDER,
        });
    }
    Ok(nu)
}

/// Threshold above which the Hankel expansion is used for `I_ν`.
fn asymptotic_threshold<T: Real>(nu: T) -> T {
    T::c(30.0).max(nu * nu)
}

/// `(e^{−z} I_ν(z), relative error estimate)` for `ν >= 0`.
pub(crate) fn scaled_i<T: Real>(nu: T, z: T) -> (T, T) {
    let eps = T::epsilon();
    if z > asymptotic_threshold(nu) {
        // e^{−z} I_ν(z) ~ (2πz)^{−1/2} Σ (−1)^k a_k(ν) / z^k
        let mu4 = T::c(4.0) * nu * nu;
        let mut term = T::one();
        let mut acc = CompensatedSum::new();
        acc.add(term);
        let mut last = term.abs();
        let mut k = 1usize;
        loop {
            let kf = T::from_usize_lossy(k);
            let odd = T::c(2.0) * kf - T::one();
            term = -term * (mu4 - odd * odd) / (T::c(8.0) * kf * z);
            if term.abs() > last || k > 200 {
                break;
            }
            acc.add(term);
            last = term.abs();
            if last <= eps * acc.value().abs() {
                break;
            }
            k += 1;
        }
        let sum = acc.value();
        let pref = (T::c(2.0) * T::PI() * z).sqrt().recip();
        let rel = last / sum.abs() + T::c(4.0) * eps;
        return (pref * sum, rel);
    }
    // ascending series, every term positive for ν >= 0
    let q = z * z * T::c(0.25);
    let mut term = T::one();
    let mut acc = CompensatedSum::new();
    acc.add(term);
    let mut n = 0usize;
    for k in 1..MAX_ITER {
        let kf = T::from_usize_lossy(k);
        term = term * q / (kf * (kf + nu));
        acc.add(term);
        n = k;
        if term <= eps * T::c(0.25) * acc.value() {
            break;
        }
    }
    let sum = acc.value();
    let log_pref = nu * (z * T::c(0.5)).ln() - z - ln_gamma(nu + T::one());
    let rel = (T::from_usize_lossy(n) * T::c(0.5) + T::c(8.0) + nu) * eps;
    (log_pref.exp() * sum, rel)
}

/// Scaled `K_ν` and `K_{ν+1}` with a relative error estimate.
pub(crate) fn scaled_k_pair<T: Real>(nu: T, z: T) -> ([T; 2], T) {
    let nu = nu.abs();
    let nl = (nu + T::c(0.5)).floor();
    let mu = nu - nl;
    let (mut k0, mut k1, iters) = if z <= T::c(2.0) {
        temme_k(mu, z)
    } else {
        steed_k(mu, z)
    };
    let steps = nl.to_usize().unwrap_or(0);
    let two_over_z = T::c(2.0) / z;
    for i in 1..=steps {
        let next = (mu + T::from_usize_lossy(i)) * two_over_z * k1 + k0;
        k0 = k1;
        k1 = next;
    }
    let rel = T::from_usize_lossy(iters / 4 + steps + 16) * T::epsilon();
    ([k0, k1], rel)
}

/// Temme's series for `|μ| <= 1/2`, `z <= 2`; returns scaled `K_μ`, `K_{μ+1}`.
fn temme_k<T: Real>(mu: T, z: T) -> (T, T, usize) {
    let eps = T::epsilon();
    let half_z = z * T::c(0.5);
    let pimu = T::PI() * mu;
    let fact = if pimu.abs() < eps { T::one() } else { pimu / pimu.sin() };
    let d = -half_z.ln();
    let e = mu * d;
    let fact2 = if e.abs() < eps { T::one() } else { e.sinh() / e };
    let (g1, g2) = temme_gammas(mu);
    // 1/Γ(1+μ) and 1/Γ(1−μ)
    let g_plus = g2 - mu * g1;
    let g_minus = g2 + mu * g1;
    let mut ff = fact * (g1 * e.cosh() + g2 * fact2 * d);
    let ee = e.exp();
    let mut p = T::c(0.5) * ee / g_plus;
    let mut q = T::c(0.5) / (ee * g_minus);
    let mut c = T::one();
    let dd = half_z * half_z;
    let mut sum = CompensatedSum::new();
    sum.add(ff);
    let mut sum1 = CompensatedSum::new();
    sum1.add(p);
    let mut iters = 0;
    for i in 1..MAX_ITER {
        let fi = T::from_usize_lossy(i);
        ff = (fi * ff + p + q) / (fi * fi - mu * mu);
        c = c * dd / fi;
        p = p / (fi - mu);
        q = q / (fi + mu);
        let del = c * ff;
        sum.add(del);
        sum1.add(c * (p - fi * ff));
        iters = i;
        if del.abs() < sum.value().abs() * eps {
            break;
        }
    }
    let scale = z.exp();
    (
        sum.value() * scale,
        sum1.value() * T::c(2.0) / z * scale,
        iters,
    )
}

/// Steed's continued fraction (CF2) for `z > 2`; returns scaled values.
fn steed_k<T: Real>(mu: T, z: T) -> (T, T, usize) {
    let eps = T::epsilon();
    let mut b = T::c(2.0) * (T::one() + z);
    let mut d = b.recip();
    let mut delh = d;
    let mut h = d;
    let mut q1 = T::zero();
    let mut q2 = T::one();
    let a1 = T::c(0.25) - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = T::one() + q * delh;
    let mut iters = 0;
    for i in 2..MAX_ITER {
        let fi = T::from_usize_lossy(i);
        a = a - T::c(2.0) * (fi - T::one());
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + c * qnew;
        b = b + T::c(2.0);
        d = (b + a * d).recip();
        delh = (b * d - T::one()) * delh;
        h = h + delh;
        let dels = q * delh;
        s = s + dels;
        iters = i;
        if (dels / s).abs() < eps {
            break;
        }
    }
    h = a1 * h;
    let kmu = (T::PI() / (T::c(2.0) * z)).sqrt() / s;
    let kmu1 = kmu * (mu + z + T::c(0.5) - h) / z;
    (kmu, kmu1, iters)
}

fn eval_result<T: Real>(value: T, rel: T) -> EvalResult<T> {
    EvalResult {
        value,
        est_abs_error: (value * rel).abs(),
    }
}

/// `I_ϰ(z)`. Overflows to `+∞` once `z` exceeds the exponent range.
pub fn bessel_i<T: Real>(order: BesselOrder<T>, z: T) -> Result<EvalResult<T>> {
    check_argument("bessel_i", z)?;
    let nu = check_i_order(order)?;
    let (v, rel) = scaled_i(nu, z);
    Ok(eval_result(v * z.exp(), rel))
}

/// `K_ϰ(z)`; `K_{−ϰ} = K_ϰ`.
pub fn bessel_k<T: Real>(order: BesselOrder<T>, z: T) -> Result<EvalResult<T>> {
    check_argument("bessel_k", z)?;
    let ([k0, _], rel) = scaled_k_pair(order.kappa(), z);
    Ok(eval_result(k0 * (-z).exp(), rel))
}

/// `I'_ϰ(z) = I_{ϰ+1}(z) + (ϰ/z) I_ϰ(z)`.
pub fn bessel_i_prime<T: Real>(order: BesselOrder<T>, z: T) -> Result<EvalResult<T>> {
    check_argument("bessel_i_prime", z)?;
    let nu = check_i_order(order)?;
    let (a, ra) = scaled_i(nu, z);
    let (b, rb) = scaled_i(nu + T::one(), z);
    let v = b + nu / z * a;
    let err = (b * rb).abs() + (nu / z * a * ra).abs();
    let scale = z.exp();
    Ok(EvalResult {
        value: v * scale,
        est_abs_error: err * scale,
    })
}

/// `K'_ϰ(z) = −K_{ϰ+1}(z) + (ϰ/z) K_ϰ(z)`.
pub fn bessel_k_prime<T: Real>(order: BesselOrder<T>, z: T) -> Result<EvalResult<T>> {
    check_argument("bessel_k_prime", z)?;
    let nu = order.kappa().abs();
    let ([k0, k1], rel) = scaled_k_pair(nu, z);
    let v = -k1 + nu / z * k0;
    let scale = (-z).exp();
    Ok(EvalResult {
        value: v * scale,
        est_abs_error: ((k1.abs() + (nu / z * k0).abs()) * rel) * scale,
    })
}

/// `K''_ϰ(z) = K_{ϰ+2} − ((2ϰ+1)/z) K_{ϰ+1} + ((ϰ²−ϰ)/z²) K_ϰ`.
pub fn bessel_k_second<T: Real>(order: BesselOrder<T>, z: T) -> Result<EvalResult<T>> {
    check_argument("bessel_k_second", z)?;
    let nu = order.kappa().abs();
    let ([k0, k1], rel) = scaled_k_pair(nu, z);
    let k2 = k0 + T::c(2.0) * (nu + T::one()) / z * k1;
    let t1 = (T::c(2.0) * nu + T::one()) / z * k1;
    let t2 = (nu * nu - nu) / (z * z) * k0;
    let v = k2 - t1 + t2;
    let scale = (-z).exp();
    Ok(EvalResult {
        value: v * scale,
        est_abs_error: (k2.abs() + t1.abs() + t2.abs()) * rel * T::c(2.0) * scale,
    })
}
