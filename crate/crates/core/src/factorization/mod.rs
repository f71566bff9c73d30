//! Positive zero modes `φ(μ,s;x)`, their logarithmic derivatives `h`, the
//! first-order operations `ǎ = d/dx − h` and `b̌ = −d/dx − h`, and the
//! factorization `Ȟ = b̌ǎ − (sk₀)²` of `Ȟ = −d²/dx² + α/x²`.

mod family;
mod inhomogeneous;
mod testfn;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use family::{PhiFamily, PhiPoint, RiccatiReport};
pub use inhomogeneous::{
    b_equation_residual, a_equation_residual, origin_exponent, origin_log_fit,
    solve_inhomogeneous_a, solve_inhomogeneous_b, InhomSolution,
};
pub use testfn::{standard_bumps, Bump, TestFunction};

/// Tolerance used to snap `μ` onto the endpoints `0` and `π/2`.
pub const MU_SNAP: f64 = 1e-12;

/// Coupling constant `α` together with the derived order and scale `k₀`.
///
/// Exactly one of `kappa = √(α + 1/4)` (for `α ≥ −1/4`) and
/// `sigma = √(−α − 1/4)` (for `α < −1/4`) is defined.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingParams<T> {
    alpha: T,
    kappa: Option<T>,
    sigma: Option<T>,
    k0: T,
}

fn check_k0<T: Real>(k0: T) -> Result<()> {
    if !(k0 > T::zero()) || !k0.is_finite() {
        return Err(Error::InvalidParams(format!("k0 must be positive and finite, got {k0}")));
    }
    Ok(())
}

impl<T: Real> CouplingParams<T> {
    pub fn new(alpha: T, k0: T) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidParams(format!("alpha must be finite, got {alpha}")));
        }
        check_k0(k0)?;
        let d = alpha + T::c(0.25);
        let (kappa, sigma) = if d >= T::zero() {
            (Some(d.sqrt()), None)
        } else {
            (None, Some((-d).sqrt()))
        };
        Ok(Self {
            alpha,
            kappa,
            sigma,
            k0,
        })
    }

    /// Builds the coupling from `ϰ >= 0`, so that `α = ϰ² − 1/4` exactly.
    pub fn from_kappa(kappa: T, k0: T) -> Result<Self> {
        if !(kappa >= T::zero()) || !kappa.is_finite() {
            return Err(Error::InvalidParams(format!("kappa must be >= 0, got {kappa}")));
        }
        check_k0(k0)?;
        Ok(Self {
            alpha: kappa * kappa - T::c(0.25),
            kappa: Some(kappa),
            sigma: None,
            k0,
        })
    }

    /// Builds an over-critical coupling `α = −σ² − 1/4` from `σ > 0`.
    pub fn from_sigma(sigma: T, k0: T) -> Result<Self> {
        if !(sigma > T::zero()) || !sigma.is_finite() {
            return Err(Error::InvalidParams(format!("sigma must be > 0, got {sigma}")));
        }
        check_k0(k0)?;
        Ok(Self {
            alpha: -sigma * sigma - T::c(0.25),
            kappa: None,
            sigma: Some(sigma),
            k0,
        })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn kappa(&self) -> Option<T> {
        self.kappa
    }

    pub fn sigma(&self) -> Option<T> {
        self.sigma
    }

    pub fn k0(&self) -> T {
        self.k0
    }

    /// `ϰ`, or a [`Error::NoRepresentation`] for `α < −1/4`.
    pub fn require_kappa(&self) -> Result<T> {
        self.kappa.ok_or(Error::NoRepresentation {
            alpha: self.alpha.to_f64_lossy(),
        })
    }
}

/// The pair `(μ, s)` selecting one member of the factorization family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorizationParams<T> {
    mu: T,
    s: T,
}

impl<T: Real> FactorizationParams<T> {
    /// `μ ∈ [0, π/2]` (values within `MU_SNAP` of an endpoint are snapped
    /// onto it) and `s ∈ [0, ∞)`.
    pub fn new(mu: T, s: T) -> Result<Self> {
        let snap = T::c(MU_SNAP);
        let half_pi = T::FRAC_PI_2();
        if !mu.is_finite() || mu < -snap || mu > half_pi + snap {
            return Err(Error::InvalidParams(format!("mu must lie in [0, pi/2], got {mu}")));
        }
        if !(s >= T::zero()) || !s.is_finite() {
            return Err(Error::InvalidParams(format!("s must be >= 0 and finite, got {s}")));
        }
        let mu = if (mu - half_pi).abs() <= snap {
            half_pi
        } else if mu.abs() <= snap {
            T::zero()
        } else {
            mu
        };
        Ok(Self { mu, s })
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn s(&self) -> T {
        self.s
    }

    pub fn is_half_pi(&self) -> bool {
        self.mu == T::FRAC_PI_2()
    }

    /// `(sin μ, cos μ)` with exact values at the endpoints.
    pub fn sin_cos(&self) -> (T, T) {
        if self.is_half_pi() {
            (T::one(), T::zero())
        } else if self.mu == T::zero() {
            (T::zero(), T::one())
        } else {
            self.mu.sin_cos()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coupling_branches() {
        let c = CouplingParams::new(0.0f64, 1.0).unwrap();
        assert_eq!(c.kappa(), Some(0.5));
        assert!(c.sigma().is_none());
        let c = CouplingParams::new(-0.25f64, 2.0).unwrap();
        assert_eq!(c.kappa(), Some(0.0));
        let c = CouplingParams::new(-1.25f64, 1.0).unwrap();
        assert_eq!(c.sigma(), Some(1.0));
        assert!(matches!(c.require_kappa(), Err(Error::NoRepresentation { .. })));
        let c = CouplingParams::from_kappa(0.3f64, 1.0).unwrap();
        assert!((c.kappa().unwrap().powi(2) - 0.25 - c.alpha()).abs() < 1e-16);
        let c = CouplingParams::from_sigma(2.0f64, 1.0).unwrap();
        assert!((c.sigma().unwrap().powi(2) + 0.25 + c.alpha()).abs() < 1e-15);
        assert!(CouplingParams::new(0.0f64, 0.0).is_err());
        assert!(CouplingParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn factorization_params_snap_and_validate() {
        let p = FactorizationParams::new(std::f64::consts::FRAC_PI_2 + 1e-13, 0.0).unwrap();
        assert!(p.is_half_pi());
        assert_eq!(p.sin_cos(), (1.0, 0.0));
        assert_eq!(FactorizationParams::new(0.0f64, 1.0).unwrap().sin_cos(), (0.0, 1.0));
        assert!(FactorizationParams::new(-0.1f64, 1.0).is_err());
        assert!(FactorizationParams::new(1.0f64, -1.0).is_err());
        assert!(FactorizationParams::new(1.6f64, 1.0).is_err());
    }
}
