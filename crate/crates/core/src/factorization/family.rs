use crate::error::{domain, Error, Result};
use crate::grid::SampledFunction;
use crate::scalar::Real;
use crate::specfun::{digamma_one, ln_gamma, ScaledIK};

use super::testfn::TestFunction;
use super::{CouplingParams, FactorizationParams};

/// `φ`, `ln φ`, `h = φ′/φ` and `h′` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiPoint<T> {
    pub phi: T,
    pub ln_phi: T,
    pub h: T,
    pub h_prime: T,
}

/// Riccati residual `h′ + h² − α/x² − (sk₀)²` over a grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiccatiReport<T> {
    /// largest absolute residual
    pub max_abs: T,
    /// largest residual divided by the local scale
    /// `max(1, (sk₀)², |α|/x², h²)` (in units of `k₀²`)
    pub max_scaled: T,
    /// abscissa of the largest scaled residual
    pub worst_x: T,
}

/// Representation of `F` in `φ = √ξ·F`, with `ξ = k₀x`.
#[derive(Clone, Copy, Debug)]
enum Kind<T> {
    /// `F = a·I_ϰ(sξ) + b·K_ϰ(sξ)`; log-coefficients are `None` when the
    /// term is absent.
    Bessel { ln_a: Option<T>, ln_b: Option<T> },
    /// `s = 0`: `F = sin μ·ξ^ϰ + cos μ·ξ^{−ϰ}`.
    Power {
        ln_sin: Option<T>,
        ln_cos: Option<T>,
    },
}

/// One member `φ(μ,s;x)` of the family of positive zero modes of
/// `Ȟ + (sk₀)²`, with `Ȟ = −d²/dx² + α/x²` and `α = ϰ² − 1/4 ≥ −1/4`.
///
/// For `s > 0`
/// `φ = √(k₀x)[sin μ·Γ(1+ϰ)(s/2)^{−ϰ} I_ϰ(sk₀x) + cos μ·(2/Γ(ϰ))(s/2)^ϰ K_ϰ(sk₀x)]`
/// (for `ϰ = 0` the coefficients reduce to `sin μ` and `cos μ`); for `s = 0`
/// it is the power law `sin μ (k₀x)^{1/2+ϰ} + cos μ (k₀x)^{1/2−ϰ}`.
#[derive(Clone, Copy, Debug)]
pub struct PhiFamily<T> {
    coupling: CouplingParams<T>,
    params: FactorizationParams<T>,
    kappa: T,
    amp_tilde: Option<T>,
    kind: Kind<T>,
}

fn ln_opt<T: Real>(v: T) -> Option<T> {
    (v > T::zero()).then(|| v.ln())
}

fn check_x<T: Real>(x: T) -> Result<()> {
    if x.is_nan() || !(x > T::zero()) || !x.is_finite() {
        return Err(domain("phi", format!("x must be positive and finite, got {x}")));
    }
    Ok(())
}

/// Log-sum of two optional log-magnitudes: returns `(M, w_a, w_b)` with
/// `exp(la) = w_a·e^M`, `exp(lb) = w_b·e^M`.
fn log_weights<T: Real>(la: Option<T>, lb: Option<T>) -> (T, T, T) {
    match (la, lb) {
        (Some(a), Some(b)) => {
            let m = a.max(b);
            (m, (a - m).exp(), (b - m).exp())
        }
        (Some(a), None) => (a, T::one(), T::zero()),
        (None, Some(b)) => (b, T::zero(), T::one()),
        (None, None) => unreachable!("sin μ and cos μ cannot both vanish"),
    }
}

impl<T: Real> PhiFamily<T> {
    /// Fails for `α < −1/4` (no positive zero mode exists) and for the
    /// corner `ϰ = 0, s = 0, μ < π/2`, which has no positive solution.
    pub fn new(coupling: CouplingParams<T>, params: FactorizationParams<T>) -> Result<Self> {
        let kappa = coupling.require_kappa()?;
        let (sin_mu, cos_mu) = params.sin_cos();
        let s = params.s();
        if kappa == T::zero() && s == T::zero() && !params.is_half_pi() {
            return Err(Error::InvalidParams(
                "at kappa = 0 the shift s = 0 is only admissible for mu = pi/2".into(),
            ));
        }
        if kappa > T::c(crate::specfun::MAX_ORDER) {
            return Err(Error::UnsupportedOrder {
                order: kappa.to_f64_lossy(),
                max: crate::specfun::MAX_ORDER,
            });
        }
        let half_s = s * T::c(0.5);
        let kind = if s == T::zero() {
            Kind::Power {
                ln_sin: ln_opt(sin_mu),
                ln_cos: ln_opt(cos_mu),
            }
        } else if kappa == T::zero() {
            Kind::Bessel {
                ln_a: ln_opt(sin_mu),
                ln_b: ln_opt(cos_mu),
            }
        } else {
            let l = kappa * half_s.ln();
            Kind::Bessel {
                ln_a: ln_opt(sin_mu).map(|v| v + ln_gamma(T::one() + kappa) - l),
                ln_b: ln_opt(cos_mu).map(|v| v + T::LN_2() - ln_gamma(kappa) + l),
            }
        };
        let amp_tilde = if kappa >= T::one() {
            None
        } else if s == T::zero() {
            Some(sin_mu)
        } else if kappa == T::zero() {
            Some(sin_mu + cos_mu * (digamma_one::<T>() - half_s.ln()))
        } else {
            let ratio = (ln_gamma(T::one() - kappa) - ln_gamma(T::one() + kappa)
                + T::c(2.0) * kappa * half_s.ln())
            .exp();
            Some(sin_mu - ratio * cos_mu)
        };
        Ok(Self {
            coupling,
            params,
            kappa,
            amp_tilde,
            kind,
        })
    }

    pub fn coupling(&self) -> &CouplingParams<T> {
        &self.coupling
    }

    pub fn params(&self) -> &FactorizationParams<T> {
        &self.params
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    /// Coefficient `Ã(μ,s)` of the `(k₀x)^{1/2+ϰ}` (or `√(k₀x)` at `ϰ = 0`)
    /// term of the small-`x` expansion; defined for `0 ≤ ϰ < 1`.
    pub fn amp_tilde(&self) -> Option<T> {
        self.amp_tilde
    }

    /// Lower bound `−(sk₀)²` of the spectrum implied by the factorization.
    pub fn lower_bound(&self) -> T {
        let sk = self.params.s() * self.coupling.k0();
        -sk * sk
    }

    /// Evaluates `φ`, `ln φ`, `h` and `h′` at `x > 0` (units of `1/k₀`).
    ///
    /// `h` and `h′` come from Bessel recurrences, never from numerical
    /// differentiation. `phi` overflows to `+∞` for very large `sk₀x`;
    /// `ln_phi` stays finite.
    pub fn eval(&self, x: T) -> Result<PhiPoint<T>> {
        check_x(x)?;
        let k0 = self.coupling.k0();
        let xi = k0 * x;
        let half = T::c(0.5);
        let kappa = self.kappa;
        let (ln_f, h, hp) = match self.kind {
            Kind::Power { ln_sin, ln_cos } => {
                let lx = xi.ln();
                let (m, wa, wb) =
                    log_weights(ln_sin.map(|v| v + kappa * lx), ln_cos.map(|v| v - kappa * lx));
                let p = wa / (wa + wb);
                let c = half - kappa + T::c(2.0) * kappa * p;
                let hp = (-c + T::c(4.0) * kappa * kappa * p * (T::one() - p)) / (xi * xi);
                (m + (wa + wb).ln(), c / xi, hp)
            }
            Kind::Bessel { ln_a, ln_b } => {
                let s = self.params.s();
                let z = s * xi;
                let b = ScaledIK::compute(kappa, z)?;
                let (i2, _) = crate::specfun::scaled_i(kappa + T::c(2.0), z);
                let k2 = b.k[0] + T::c(2.0) * (kappa + T::one()) / z * b.k[1];
                let c1 = (T::c(2.0) * kappa + T::one()) / z;
                let c2 = (kappa * kappa - kappa) / (z * z);
                let ri1 = b.i_prime() / b.i[0];
                let ri2 = (i2 + c1 * b.i[1] + c2 * b.i[0]) / b.i[0];
                let rk1 = b.k_prime() / b.k[0];
                let rk2 = (k2 - c1 * b.k[1] + c2 * b.k[0]) / b.k[0];
                let (m, wa, wb) = log_weights(
                    ln_a.map(|v| v + z + b.i[0].ln()),
                    ln_b.map(|v| v - z + b.k[0].ln()),
                );
                let w = wa + wb;
                let r1 = (wa * ri1 + wb * rk1) / w;
                let r2 = (wa * ri2 + wb * rk2) / w;
                let h = half / xi + s * r1;
                let hp = -half / (xi * xi) + s * s * (r2 - r1 * r1);
                (m + w.ln(), h, hp)
            }
        };
        let ln_phi = half * xi.ln() + ln_f;
        Ok(PhiPoint {
            phi: ln_phi.exp(),
            ln_phi,
            h: h * k0,
            h_prime: hp * k0 * k0,
        })
    }

    pub fn phi(&self, x: T) -> Result<T> {
        Ok(self.eval(x)?.phi)
    }

    pub fn ln_phi(&self, x: T) -> Result<T> {
        Ok(self.eval(x)?.ln_phi)
    }

    pub fn h(&self, x: T) -> Result<T> {
        Ok(self.eval(x)?.h)
    }

    pub fn h_prime(&self, x: T) -> Result<T> {
        Ok(self.eval(x)?.h_prime)
    }

    /// `Ȟf = −f″ + (α/x²) f`.
    pub fn hamiltonian(&self, x: T, f: T, f2: T) -> T {
        -f2 + self.coupling.alpha() / (x * x) * f
    }

    /// Max over `grid` of `|h′ + h² − α/x² − (sk₀)²|`, also scaled by
    /// `max(1, (sk₀)², |α|/x², h²)·k₀²`.
    pub fn riccati_residual(&self, grid: &[T]) -> Result<RiccatiReport<T>> {
        let k0 = self.coupling.k0();
        let alpha = self.coupling.alpha();
        let sk2 = (self.params.s() * k0).powi(2);
        let mut rep = RiccatiReport {
            max_abs: T::zero(),
            max_scaled: T::zero(),
            worst_x: T::nan(),
        };
        for &x in grid {
            let p = self.eval(x)?;
            let pot = alpha / (x * x);
            let r = (p.h_prime + p.h * p.h - pot - sk2).abs();
            let scale = (k0 * k0).max(sk2).max(pot.abs()).max(p.h * p.h);
            rep.max_abs = rep.max_abs.max(r);
            if r / scale > rep.max_scaled || rep.worst_x.is_nan() {
                rep.max_scaled = r / scale;
                rep.worst_x = x;
            }
        }
        Ok(rep)
    }

    /// `ǎf = f′ − h f`; needs the derivative channel of `f`.
    pub fn apply_a(&self, f: &SampledFunction<T>) -> Result<SampledFunction<T>> {
        let d = f.derivatives()?;
        let vals = f
            .iter()
            .zip(d)
            .map(|((x, v), &dv)| Ok(dv - self.h(x)? * v))
            .collect::<Result<Vec<_>>>()?;
        SampledFunction::new(f.grid().to_vec(), vals)
    }

    /// `b̌f = −f′ − h f`; needs the derivative channel of `f`.
    pub fn apply_b(&self, f: &SampledFunction<T>) -> Result<SampledFunction<T>> {
        let d = f.derivatives()?;
        let vals = f
            .iter()
            .zip(d)
            .map(|((x, v), &dv)| Ok(-dv - self.h(x)? * v))
            .collect::<Result<Vec<_>>>()?;
        SampledFunction::new(f.grid().to_vec(), vals)
    }

    /// `max |b̌ǎf − (sk₀)²f − Ȟf| / max |Ȟf|` per test function, maximized
    /// over the test set. Each function is sampled at `points` interior
    /// points of its support; `b̌ǎf` is composed from `ǎf` and its exact
    /// derivative `f″ − h′f − hf′`.
    pub fn factorization_residual<F: TestFunction<T>>(
        &self,
        testset: &[F],
        points: usize,
    ) -> Result<T> {
        let sk2 = (self.params.s() * self.coupling.k0()).powi(2);
        let mut worst = T::zero();
        for f in testset {
            let (a, b) = f.support();
            let mut max_diff = T::zero();
            let mut max_h = T::zero();
            for i in 1..=points {
                let x = a + (b - a) * T::from_usize_lossy(i) / T::from_usize_lossy(points + 1);
                let [v, d1, d2] = f.eval(x);
                let p = self.eval(x)?;
                let af = d1 - p.h * v;
                let af_prime = d2 - p.h_prime * v - p.h * d1;
                let baf = -af_prime - p.h * af;
                let hf = self.hamiltonian(x, v, d2);
                max_diff = max_diff.max((baf - sk2 * v - hf).abs());
                max_h = max_h.max(hf.abs());
            }
            if max_h > T::zero() {
                worst = worst.max(max_diff / max_h);
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{standard_bumps, Bump};
    use crate::grid::log_grid;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn fam(kappa: f64, mu: f64, s: f64) -> PhiFamily<f64> {
        PhiFamily::new(
            CouplingParams::from_kappa(kappa, 1.0).unwrap(),
            FactorizationParams::new(mu, s).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn half_order_closed_forms() {
        // pure I branch: √x·Γ(3/2)·2^{1/2}·I_{1/2}(x) = sinh x
        let f = fam(0.5, FRAC_PI_2, 1.0);
        assert_relative_eq!(f.phi(1.0).unwrap(), 1f64.sinh(), max_relative = 1e-13);
        assert_relative_eq!(f.phi(1.0).unwrap(), 1.175_201_193_643_801_4, max_relative = 1e-13);
        assert_relative_eq!(f.h(1.0).unwrap(), 1.0 / 1f64.tanh(), max_relative = 1e-13);
        // pure K branch: e^{−x}, h = −1
        let f = fam(0.5, 0.0, 1.0);
        for &x in &[1e-3, 0.5, 1.0, 7.0, 300.0] {
            assert_relative_eq!(f.phi(x).unwrap(), (-x).exp(), max_relative = 1e-12);
            assert!((f.h(x).unwrap() + 1.0).abs() < 1e-10);
            assert!(f.h_prime(x).unwrap().abs() < 1e-8 * (1.0 + 1.0 / (x * x)));
        }
    }

    #[test]
    fn power_law_branch() {
        let f = fam(0.5, FRAC_PI_2, 0.0);
        assert_relative_eq!(f.phi(3.0).unwrap(), 3.0, max_relative = 1e-15);
        let f = fam(0.3, FRAC_PI_2, 0.0);
        assert_relative_eq!(f.h(2.0).unwrap(), 0.8 / 2.0, max_relative = 1e-15);
        let f = fam(0.3, 0.7, 0.0);
        let x: f64 = 0.37;
        let phi = 0.7f64.sin() * x.powf(0.8) + 0.7f64.cos() * x.powf(0.2);
        let dphi = 0.8 * 0.7f64.sin() * x.powf(-0.2) + 0.2 * 0.7f64.cos() * x.powf(-0.8);
        assert_relative_eq!(f.phi(x).unwrap(), phi, max_relative = 1e-14);
        assert_relative_eq!(f.h(x).unwrap(), dphi / phi, max_relative = 1e-14);
        let r = f.riccati_residual(&log_grid(1e-8, 1e3, 50).unwrap()).unwrap();
        assert!(r.max_scaled < 1e-13);
    }

    #[test]
    fn kappa_zero_corner() {
        let c = CouplingParams::from_kappa(0.0f64, 1.0).unwrap();
        assert!(PhiFamily::new(c, FactorizationParams::new(0.3, 0.0).unwrap()).is_err());
        let f = PhiFamily::new(c, FactorizationParams::new(FRAC_PI_2, 0.0).unwrap()).unwrap();
        assert_relative_eq!(f.phi(4.0).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(f.h(4.0).unwrap(), 0.125, max_relative = 1e-15);
        assert_eq!(f.amp_tilde(), Some(1.0));
    }

    #[test]
    fn dimensionful_scaling() {
        let c = CouplingParams::from_kappa(0.3f64, 2.5).unwrap();
        let p = FactorizationParams::new(0.4, 1.3).unwrap();
        let f = PhiFamily::new(c, p).unwrap();
        let g = fam(0.3, 0.4, 1.3);
        let x = 0.7;
        assert_relative_eq!(f.phi(x).unwrap(), g.phi(2.5 * x).unwrap(), max_relative = 1e-14);
        assert_relative_eq!(f.h(x).unwrap(), 2.5 * g.h(2.5 * x).unwrap(), max_relative = 1e-14);
        assert_relative_eq!(f.lower_bound(), -(1.3f64 * 2.5).powi(2), max_relative = 1e-15);
    }

    #[test]
    fn riccati_residual_small() {
        let grid = log_grid(1e-4, 1e2, 100).unwrap();
        for &(k, mu, s) in &[
            (0.3, 1.0, 0.7),
            (0.0, 0.0, 1.0),
            (0.0, 0.9, 3.0),
            (1.0, 0.0, 1.0),
            (1.7, FRAC_PI_4, 4.0),
            (2.0, 0.2, 0.01),
            (0.5, FRAC_PI_4, 2.0),
        ] {
            let r = fam(k, mu, s).riccati_residual(&grid).unwrap();
            assert!(r.max_scaled < 5e-8, "({k},{mu},{s}): {r:?}");
        }
    }

    #[test]
    fn amp_tilde_values() {
        let f = fam(0.5, 0.0, 1.0);
        // sin 0 − Γ(1/2)/Γ(3/2)·(1/2) = −1
        assert_relative_eq!(f.amp_tilde().unwrap(), -1.0, max_relative = 1e-14);
        let f = fam(0.0, FRAC_PI_4, 2.0);
        let expected = FRAC_PI_4.sin() + FRAC_PI_4.cos() * (-crate::specfun::EULER_GAMMA);
        assert_relative_eq!(f.amp_tilde().unwrap(), expected, max_relative = 1e-14);
        assert!(fam(1.2, 0.3, 1.0).amp_tilde().is_none());
    }

    #[test]
    fn small_x_leading_terms() {
        // 0 < ϰ < 1: φ ≈ Ã ξ^{1/2+ϰ} + cos μ ξ^{1/2−ϰ}
        let f = fam(0.3, 0.6, 1.5);
        let x: f64 = 1e-5;
        let lead = f.amp_tilde().unwrap() * x.powf(0.8) + 0.6f64.cos() * x.powf(0.2);
        assert_relative_eq!(f.phi(x).unwrap(), lead, max_relative = 1e-8);
        // ϰ = 0: φ ≈ Ã √ξ − cos μ √ξ ln ξ
        let f = fam(0.0, 0.6, 1.5);
        let lead = (f.amp_tilde().unwrap() - 0.6f64.cos() * x.ln()) * x.sqrt();
        assert_relative_eq!(f.phi(x).unwrap(), lead, max_relative = 1e-8);
    }

    #[test]
    fn kernel_of_a_and_b() {
        let f = fam(0.3, 0.8, 1.1);
        let grid = log_grid(1e-3, 10.0, 20).unwrap();
        let phi = SampledFunction::from_fn(grid.clone(), |x| {
            let p = f.eval(x).unwrap();
            (p.phi, p.h * p.phi)
        })
        .unwrap();
        let a = f.apply_a(&phi).unwrap();
        for (i, v) in a.values().iter().enumerate() {
            assert!(v.abs() <= 1e-14 * phi.values()[i].abs() * (1.0 + f.h(grid[i]).unwrap().abs()));
        }
        let inv = SampledFunction::from_fn(grid, |x| {
            let p = f.eval(x).unwrap();
            (1.0 / p.phi, -p.h / p.phi)
        })
        .unwrap();
        assert!(f.apply_b(&inv).unwrap().max_abs() < 1e-12);
        let bare = SampledFunction::new(vec![1.0], vec![1.0]).unwrap();
        assert!(matches!(f.apply_a(&bare), Err(Error::MissingDerivative)));
    }

    #[test]
    fn factorization_identity_on_bumps() {
        let bumps: Vec<Bump<f64>> = standard_bumps(1.0);
        for &(k, mu, s) in &[(0.0, FRAC_PI_2, 0.0), (1.0, 0.0, 1.0), (0.3, 1.0, 0.7), (0.0, 0.2, 2.0)] {
            let r = fam(k, mu, s).factorization_residual(&bumps, 200).unwrap();
            assert!(r < 1e-9, "({k},{mu},{s}) -> {r}");
        }
    }

    #[test]
    fn positivity_over_wide_grid() {
        let grid = log_grid(1e-8, 1e3, 20).unwrap();
        for &(k, mu, s) in &[(0.3, 0.0, 5.0), (1.7, 1.2, 0.1), (0.0, 0.0, 0.5), (0.9, PI / 3.0, 0.0)] {
            let f = fam(k, mu, s);
            for &x in &grid {
                let p = f.eval(x).unwrap();
                // positivity is checked in the log domain: φ itself may
                // under- or overflow at the ends of the grid
                assert!(p.ln_phi.is_finite() && p.phi >= 0.0);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = fam(0.3, 0.2, 1.0);
        assert!(f.phi(0.0).is_err());
        assert!(f.phi(-1.0).is_err());
        assert!(f.phi(f64::NAN).is_err());
        let c = CouplingParams::new(-1.0f64, 1.0).unwrap();
        assert!(matches!(
            PhiFamily::new(c, FactorizationParams::new(0.2, 1.0).unwrap()),
            Err(Error::NoRepresentation { .. })
        ));
    }
}
