//! Independent eigenvalue solver for `−χ″ + (α/x²)χ = Eχ` on the half-line
//! with the self-adjoint boundary condition of an extension `ν` at the
//! origin. Uses only power series and Runge–Kutta integration, never the
//! Bessel routines, so it can validate the closed-form energies.
//!
//! The boundary condition is `χ ≈ sin ν·(k₀x)^{1/2+ϰ} + cos ν·(k₀x)^{1/2−ϰ}`
//! (`ϰ > 0`) or `χ ≈ sin ν·(k₀x)^{1/2} + cos ν·(k₀x)^{1/2} ln(k₀x)` (`ϰ = 0`);
//! `ν = ±π/2` and the region `ϰ ≥ 1` keep only the regular branch.

mod frobenius;
mod shooting;

use crate::error::{Error, Result};
use crate::extensions::{ExtensionParam, Regime};
use crate::factorization::CouplingParams;
use crate::roots::brent;
use crate::scalar::Real;

use shooting::Problem;

/// Settings of the shooting solver. Lengths are in units of `1/k₀`,
/// energies in units of `k₀²`.
#[derive(Clone, Copy, Debug)]
pub struct ShootingConfig<T> {
    /// Point where the series data seed the outward integration.
    pub x0: T,
    /// Outer truncation beyond the matching point, in units of `1/√|E|`.
    pub tail: T,
    /// Relative tolerance of the Runge–Kutta integrator.
    pub rtol: T,
    /// Energy search interval `(E_lo, E_hi)` with `E_lo < E_hi < 0`.
    pub e_bracket: (T, T),
    /// Points of the geometric energy scan.
    pub scan_points: usize,
    pub max_iter: usize,
}

impl<T: Real> Default for ShootingConfig<T> {
    fn default() -> Self {
        Self {
            x0: T::c(1e-4),
            tail: T::c(40.0),
            rtol: T::c(1e-11),
            e_bracket: (T::c(-1e3), T::c(-1e-6)),
            scan_points: 60,
            max_iter: 100,
        }
    }
}

impl<T: Real> ShootingConfig<T> {
    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.e_bracket;
        if !(lo < hi && hi < T::zero()) {
            return Err(Error::InvalidParams(format!(
                "energy bracket must satisfy E_lo < E_hi < 0, got ({lo}, {hi})"
            )));
        }
        if !(self.x0 > T::zero()) || !(self.tail > T::zero()) || !(self.rtol > T::zero()) {
            return Err(Error::InvalidParams("x0, tail and rtol must be positive".into()));
        }
        if self.scan_points < 2 {
            return Err(Error::InvalidParams("scan needs at least two points".into()));
        }
        Ok(())
    }
}

/// Outcome of a bound-state search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralResult<T> {
    /// `false` when the mismatch has no sign change in the bracket
    pub found: bool,
    /// in units of `k₀²`; NaN when not found
    pub energy: T,
    /// `|mismatch|` at the returned energy
    pub bc_residual: T,
    /// relative energy change when the outer truncation grows by half
    pub decay_residual: T,
    /// sign changes seen by the scan
    pub sign_changes: usize,
    pub n_iterations: usize,
}

fn problem<T: Real>(nu: &ExtensionParam<T>, coupling: &CouplingParams<T>) -> Result<Problem<T>> {
    let kappa = coupling.require_kappa()?;
    let regime = crate::extensions::classify(coupling);
    if regime != nu.regime() {
        return Err(Error::InvalidParams(
            "extension parameter belongs to a different coupling region".into(),
        ));
    }
    let (sin_nu, cos_nu) = match nu.nu() {
        _ if regime == Regime::H1 || nu.is_half_pi() => (T::one(), T::zero()),
        Some(v) => v.sin_cos(),
        None => (T::one(), T::zero()),
    };
    Ok(Problem {
        kappa,
        sin_nu,
        cos_nu,
    })
}

fn check_origin<T: Real>(eps: T, xi0: T) -> Result<()> {
    let ratio = -eps * xi0 * xi0;
    if !(ratio < T::one()) {
        return Err(Error::OriginTooFar {
            x0: xi0.to_f64_lossy(),
            ratio: ratio.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Cauchy data `(χ(x0), χ′(x0))` of the solution at energy `energy` obeying
/// the boundary condition of `nu` (amplitude `C = 1`). The series is exact;
/// `x0` must still satisfy `|E|x0² < 1` so that the matching point lies
/// beyond it.
pub fn origin_data<T: Real>(
    nu: &ExtensionParam<T>,
    coupling: &CouplingParams<T>,
    energy: T,
    x0: T,
) -> Result<(T, T)> {
    let p = problem(nu, coupling)?;
    let k0 = coupling.k0();
    let (eps, xi0) = (energy / (k0 * k0), k0 * x0);
    check_origin(eps, xi0)?;
    let d = frobenius::combined(p.kappa, p.sin_nu, p.cos_nu, eps, xi0);
    Ok((d.u, k0 * d.w / xi0))
}

fn check_energy<T: Real>(energy: T) -> Result<()> {
    if !(energy < T::zero()) || !energy.is_finite() {
        return Err(Error::InvalidParams(format!("energy must be negative, got {energy}")));
    }
    Ok(())
}

fn mismatch_eps<T: Real>(p: &Problem<T>, eps: T, cfg: &ShootingConfig<T>, xi0: T, tail: T) -> Result<T> {
    check_origin(eps, xi0)?;
    p.mismatch(eps, xi0, tail, cfg.rtol)
}

/// Normalized Wronskian between the solution obeying the boundary condition
/// and the solution decaying at infinity, taken at `x = 1/√|E|`. It lies in
/// `[−1, 1]`, depends continuously on `E` and vanishes exactly at bound
/// states.
pub fn shoot<T: Real>(
    nu: &ExtensionParam<T>,
    coupling: &CouplingParams<T>,
    energy: T,
    cfg: &ShootingConfig<T>,
) -> Result<T> {
    check_energy(energy)?;
    let p = problem(nu, coupling)?;
    let k0 = coupling.k0();
    mismatch_eps(&p, energy / (k0 * k0), cfg, k0 * cfg.x0, cfg.tail)
}

/// Mismatch on the geometric energy scan of `cfg.e_bracket`, ordered from
/// the deepest energy upwards.
pub fn mismatch_scan<T: Real>(
    nu: &ExtensionParam<T>,
    coupling: &CouplingParams<T>,
    cfg: &ShootingConfig<T>,
) -> Result<Vec<(T, T)>> {
    cfg.validate()?;
    let p = problem(nu, coupling)?;
    let k0 = coupling.k0();
    let k02 = k0 * k0;
    let (lo, hi) = cfg.e_bracket;
    let (l0, l1) = ((-lo).ln(), (-hi).ln());
    let n = cfg.scan_points;
    (0..n)
        .map(|i| {
            let f = T::from_usize_lossy(i) / T::from_usize_lossy(n - 1);
            let e = -(l0 + (l1 - l0) * f).exp();
            mismatch_eps(&p, e / k02, cfg, k0 * cfg.x0, cfg.tail).map(|m| (e, m))
        })
        .collect()
}

fn sign_changes<T: Real>(scan: &[(T, T)]) -> Vec<usize> {
    (1..scan.len())
        .filter(|&i| scan[i - 1].1.signum() != scan[i].1.signum() || scan[i].1 == T::zero())
        .collect()
}

/// Solves for `E` in `ln|E|` between two scan energies.
fn polish<T: Real>(
    p: &Problem<T>,
    k0: T,
    cfg: &ShootingConfig<T>,
    (e_a, e_b): (T, T),
    tail: T,
) -> Result<(T, usize)> {
    let k02 = k0 * k0;
    let xi0 = k0 * cfg.x0;
    let mut err = None;
    let f = |l: T| match mismatch_eps(p, -l.exp() / k02, cfg, xi0, tail) {
        Ok(v) => v,
        Err(e) => {
            err.get_or_insert(e);
            T::nan()
        }
    };
    let res = brent(f, (-e_a).ln(), (-e_b).ln(), T::c(1e-14), cfg.max_iter);
    if let Some(e) = err {
        return Err(e);
    }
    let (l, it) = res?;
    Ok((-l.exp(), it))
}

/// Scans `cfg.e_bracket` for sign changes of the mismatch and refines the
/// deepest one with Brent's method in `ln|E|`. A bracket without a sign
/// change is a regular outcome (`found = false`).
pub fn find_bound_state<T: Real>(
    nu: &ExtensionParam<T>,
    coupling: &CouplingParams<T>,
    cfg: &ShootingConfig<T>,
) -> Result<SpectralResult<T>> {
    let scan = mismatch_scan(nu, coupling, cfg)?;
    let changes = sign_changes(&scan);
    let Some(&first) = changes.first() else {
        return Ok(SpectralResult {
            found: false,
            energy: T::nan(),
            bc_residual: T::nan(),
            decay_residual: T::nan(),
            sign_changes: 0,
            n_iterations: 0,
        });
    };
    let p = problem(nu, coupling)?;
    let k0 = coupling.k0();
    let bracket = (scan[first - 1].0, scan[first].0);
    let (energy, n_iterations) = polish(&p, k0, cfg, bracket, cfg.tail)?;
    let bc_residual = shoot(nu, coupling, energy, cfg)?.abs();
    let (longer, _) = polish(&p, k0, cfg, bracket, cfg.tail * T::c(1.5))?;
    Ok(SpectralResult {
        found: true,
        energy,
        bc_residual,
        decay_residual: ((longer - energy) / energy).abs(),
        sign_changes: changes.len(),
        n_iterations,
    })
}

/// Values of the boundary-condition solution (amplitude `C = 1`) at the
/// ascending points `xs ≥ cfg.x0`, integrated outward from the series data
/// at `cfg.x0`.
pub fn solution_profile<T: Real>(
    nu: &ExtensionParam<T>,
    coupling: &CouplingParams<T>,
    energy: T,
    cfg: &ShootingConfig<T>,
    xs: &[T],
) -> Result<Vec<T>> {
    check_energy(energy)?;
    let p = problem(nu, coupling)?;
    let k0 = coupling.k0();
    let eps = energy / (k0 * k0);
    let xi0 = k0 * cfg.x0;
    check_origin(eps, xi0)?;
    if xs.first().is_some_and(|&x| x < cfg.x0) || xs.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::BadGrid);
    }
    xs.iter()
        .map(|&x| p.outward(eps, xi0, k0 * x, cfg.rtol).map(|d| d.u))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn coupling(kappa: f64) -> CouplingParams<f64> {
        CouplingParams::from_kappa(kappa, 1.0).unwrap()
    }

    #[test]
    fn worked_case() {
        let c = coupling(0.5);
        let nu = ExtensionParam::new(-FRAC_PI_4, &c).unwrap();
        let cfg = ShootingConfig::default();
        assert!(shoot(&nu, &c, -1.0, &cfg).unwrap().abs() < 1e-8);
        assert!(shoot(&nu, &c, -4.0, &cfg).unwrap().abs() > 0.1);
        let r = find_bound_state(&nu, &c, &cfg).unwrap();
        assert!(r.found);
        assert_eq!(r.sign_changes, 1);
        assert!((r.energy + 1.0).abs() < 1e-9, "{}", r.energy);
        assert!(r.decay_residual < 1e-10);
    }

    #[test]
    fn log_case_without_special_functions() {
        // −4e^{2ψ(1)} = −4e^{−2γ}
        let c = coupling(0.0);
        let nu = ExtensionParam::new(0.0, &c).unwrap();
        let r = find_bound_state(&nu, &c, &ShootingConfig::default()).unwrap();
        let exact = -4.0 * (-2.0 * 0.577_215_664_901_532_9f64).exp();
        assert!(((r.energy - exact) / exact).abs() < 1e-8, "{}", r.energy);
    }

    #[test]
    fn no_bound_states() {
        let cfg = ShootingConfig {
            e_bracket: (-10.0, -1e-6),
            ..ShootingConfig::default()
        };
        let c = coupling(0.75);
        let r = find_bound_state(&ExtensionParam::new(0.3, &c).unwrap(), &c, &cfg).unwrap();
        assert!(!r.found);
        let r = find_bound_state(&ExtensionParam::new(FRAC_PI_2, &c).unwrap(), &c, &cfg).unwrap();
        assert!(!r.found);
        let c = coupling(1.5);
        let r = find_bound_state(&ExtensionParam::unique(&c).unwrap(), &c, &cfg).unwrap();
        assert!(!r.found);
    }

    #[test]
    fn origin_data_branches() {
        let c = coupling(0.3);
        let nu = ExtensionParam::new(FRAC_PI_2, &c).unwrap();
        let x0 = 1e-6;
        let (v, d) = origin_data(&nu, &c, -1.0, x0).unwrap();
        assert!((v / x0.powf(0.8) - 1.0).abs() < 1e-11);
        assert!((d / (0.8 * x0.powf(-0.2)) - 1.0).abs() < 1e-11);
        let c = coupling(0.5);
        let (v, _) = origin_data(&ExtensionParam::new(0.0, &c).unwrap(), &c, -1.0, x0).unwrap();
        assert!((v - 1.0).abs() < 1e-11);
        let c = coupling(0.0);
        let (v, _) = origin_data(&ExtensionParam::new(0.0, &c).unwrap(), &c, -1.0, x0).unwrap();
        assert!((v / (x0.sqrt() * x0.ln()) - 1.0).abs() < 1e-11);
        assert!(matches!(
            origin_data(&ExtensionParam::new(0.0, &c).unwrap(), &c, -100.0, 0.5),
            Err(Error::OriginTooFar { .. })
        ));
    }

    #[test]
    fn config_validation() {
        let c = coupling(0.5);
        let nu = ExtensionParam::new(-0.3, &c).unwrap();
        let cfg = ShootingConfig {
            e_bracket: (-1.0, 1.0),
            ..ShootingConfig::default()
        };
        assert!(find_bound_state(&nu, &c, &cfg).is_err());
        assert!(shoot(&nu, &c, 1.0, &ShootingConfig::default()).is_err());
    }
}
