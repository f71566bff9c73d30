//! Convergent power series solutions of `−u″ + (α/ξ²)u = εu` about the
//! origin, in the dimensionless variable `ξ = k₀x` with `α = ϰ² − 1/4`.
//!
//! For `ϰ > 0` the two branches are `ξ^{1/2±ϰ} Σ c_m^± ξ^{2m}` with
//! `c_m^± = −ε c_{m−1}^± / (4m(m ± ϰ))`. At `ϰ = 0` the second branch is
//! `A(ξ) ln ξ + √ξ Σ b_m ξ^{2m}` with `b_m = (−ε b_{m−1} − 4m a_m)/(4m²)`.
//! Both series are entire in `ξ²`.

use crate::scalar::Real;

const MAX_TERMS: usize = 400;

/// Value and `ξ·d/dξ` of a solution at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct LogData<T> {
    pub u: T,
    pub w: T,
}

/// `Σ c_m ξ^{2m}` and `Σ 2m c_m ξ^{2m}` for `c_m = −ε c_{m−1}/(4m(m + d))`.
fn power_sum<T: Real>(eps: T, d: T, xi: T) -> (T, T) {
    let q = xi * xi;
    let mut term = T::one();
    let (mut s, mut sd) = (T::one(), T::zero());
    for m in 1..=MAX_TERMS {
        let m = T::from_usize_lossy(m);
        term = -term * eps * q / (T::c(4.0) * m * (m + d));
        s = s + term;
        sd = sd + T::c(2.0) * m * term;
        if term.abs() <= T::epsilon() * T::c(0.25) * s.abs() && m > T::one() {
            break;
        }
    }
    (s, sd)
}

/// Branch `ξ^{1/2+d}(1 + …)` for `d = ±ϰ`, `d ∉ {−1, −2, …}`.
pub(crate) fn power_branch<T: Real>(eps: T, d: T, xi: T) -> LogData<T> {
    let p = T::c(0.5) + d;
    let lead = xi.powf(p);
    let (s, sd) = power_sum(eps, d, xi);
    LogData {
        u: lead * s,
        w: lead * (p * s + sd),
    }
}

/// Logarithmic branch `√ξ ln ξ (1 + …) + √ξ Σ b_m ξ^{2m}` at `ϰ = 0`.
pub(crate) fn log_branch<T: Real>(eps: T, xi: T) -> LogData<T> {
    let q = xi * xi;
    let half = T::c(0.5);
    let (mut a, mut b) = (T::one(), T::zero());
    // Σ a, Σ (2m+½) a, Σ b, Σ (2m+½) b, without the √ξ factor
    let (mut sa, mut swa, mut sb, mut swb) = (T::one(), half, T::zero(), T::zero());
    for m in 1..=MAX_TERMS {
        let mf = T::from_usize_lossy(m);
        let four_m2 = T::c(4.0) * mf * mf;
        let a_new = -eps * a * q / four_m2;
        b = (-eps * b * q - T::c(4.0) * mf * a_new) / four_m2;
        a = a_new;
        let p = T::c(2.0) * mf + half;
        sa = sa + a;
        swa = swa + p * a;
        sb = sb + b;
        swb = swb + p * b;
        if a.abs() + b.abs() <= T::epsilon() * T::c(0.25) * (sa.abs() + sb.abs()) && m > 1 {
            break;
        }
    }
    let lead = xi.sqrt();
    let l = xi.ln();
    LogData {
        u: lead * (sa * l + sb),
        w: lead * (swa * l + sa + swb),
    }
}

/// `sin ν · (small branch) + cos ν · (singular branch)`.
pub(crate) fn combined<T: Real>(kappa: T, sin_nu: T, cos_nu: T, eps: T, xi: T) -> LogData<T> {
    let mut out = LogData {
        u: T::zero(),
        w: T::zero(),
    };
    if kappa == T::zero() {
        if sin_nu != T::zero() {
            let a = power_branch(eps, T::zero(), xi);
            out.u = out.u + sin_nu * a.u;
            out.w = out.w + sin_nu * a.w;
        }
        if cos_nu != T::zero() {
            let b = log_branch(eps, xi);
            out.u = out.u + cos_nu * b.u;
            out.w = out.w + cos_nu * b.w;
        }
        return out;
    }
    if sin_nu != T::zero() {
        let a = power_branch(eps, kappa, xi);
        out.u = out.u + sin_nu * a.u;
        out.w = out.w + sin_nu * a.w;
    }
    if cos_nu != T::zero() {
        let b = power_branch(eps, -kappa, xi);
        out.u = out.u + cos_nu * b.u;
        out.w = out.w + cos_nu * b.w;
    }
    out
}
