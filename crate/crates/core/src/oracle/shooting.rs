//! Outward and inward integrations meeting at a matching point.

use crate::error::Result;
use crate::ode::{integrate, OdeConfig};
use crate::scalar::Real;

use super::frobenius::{combined, LogData};

/// Boundary-condition branch weights and order, in dimensionless form.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Problem<T> {
    pub kappa: T,
    pub sin_nu: T,
    pub cos_nu: T,
}

impl<T: Real> Problem<T> {
    fn alpha(&self) -> T {
        self.kappa * self.kappa - T::c(0.25)
    }

    /// Solution satisfying the boundary condition, integrated in `t = ln ξ`
    /// from `xi0` to `xi1`; returns `(u, ξu′)` up to a positive factor.
    pub fn outward(&self, eps: T, xi0: T, xi1: T, rtol: T) -> Result<LogData<T>> {
        let start = combined(self.kappa, self.sin_nu, self.cos_nu, eps, xi0);
        if xi1 == xi0 {
            return Ok(start);
        }
        let alpha = self.alpha();
        let cfg = OdeConfig {
            rtol,
            h0: T::c(1e-2),
            ..OdeConfig::default()
        };
        let out = integrate(
            |t: T, y: &[T; 2]| {
                let x = t.exp();
                [y[1], y[1] + (alpha - eps * x * x) * y[0]]
            },
            xi0.ln(),
            [start.u, start.w],
            xi1.ln(),
            cfg,
        )?;
        Ok(LogData {
            u: out.y[0],
            w: out.y[1],
        })
    }

    /// Decaying solution integrated inward from `xi_far` to `xi1`, started
    /// from the two-term large-ξ log-derivative `−q − (4ϰ²−1)/(8qξ²)`.
    /// Returns `(u, u′)` up to a positive factor.
    pub fn inward(&self, eps: T, xi_far: T, xi1: T, rtol: T) -> Result<[T; 2]> {
        let q = (-eps).sqrt();
        let k2 = self.kappa * self.kappa;
        let slope = -q - (T::c(4.0) * k2 - T::one()) / (T::c(8.0) * q * xi_far * xi_far);
        let alpha = self.alpha();
        let cfg = OdeConfig {
            rtol,
            h0: T::c(0.01) / q,
            ..OdeConfig::default()
        };
        let out = integrate(
            |x: T, y: &[T; 2]| [y[1], (alpha / (x * x) - eps) * y[0]],
            xi_far,
            [T::one(), slope],
            xi1,
            cfg,
        )?;
        Ok(out.y)
    }

    /// Matching point and outer truncation for energy `eps < 0`.
    pub fn layout(eps: T, tail: T) -> (T, T) {
        let q = (-eps).sqrt();
        let xm = q.recip();
        (xm, xm + tail / q)
    }

    /// Normalized Wronskian of the boundary-condition solution and the
    /// decaying solution at the matching point; in `[−1, 1]`, zero exactly at
    /// eigenvalues.
    ///
    /// Forward integration over `[ξ₀, ξ_m]` amplifies relative errors by
    /// `(ξ_m/ξ₀)^{2ϰ}` through the subdominant branch, so the outward leg
    /// starts from the (exact) series data no earlier than `ξ_m/16`.
    pub fn mismatch(&self, eps: T, xi0: T, tail: T, rtol: T) -> Result<T> {
        let q = (-eps).sqrt();
        let (xm, far) = Self::layout(eps, tail);
        let o = self.outward(eps, xi0.max(xm / T::c(16.0)), xm, rtol)?;
        let [ui, dui] = self.inward(eps, far, xm, rtol)?;
        let (uo, duo) = (o.u, o.w / xm);
        let w = uo * dui - duo * ui;
        let no = uo.hypot(duo / q);
        let ni = ui.hypot(dui / q);
        Ok(w / (q * no * ni))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_order_mismatch_vanishes_at_exact_level() {
        // ϰ = 1/2, ν = −π/4: √x K_{1/2} ∝ e^{−x} at E = −1
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = Problem {
            kappa: 0.5,
            sin_nu: -s,
            cos_nu: s,
        };
        assert!(p.mismatch(-1.0, 1e-4, 40.0, 1e-11).unwrap().abs() < 1e-8);
        assert!(p.mismatch(-4.0, 1e-4, 40.0, 1e-11).unwrap().abs() > 0.1);
    }
}
