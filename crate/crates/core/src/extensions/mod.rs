//! Identification of factorizations with self-adjoint Calogero Hamiltonians:
//! the unique `Ĥ₁` for `ϰ ≥ 1`, the families `Ĥ₂,ν` (`0 < ϰ < 1`) and `Ĥ₃,ν`
//! (`ϰ = 0`), their ground states, and the oscillation of zero modes for
//! `α < −1/4`.

mod oscillation;

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::factorization::{CouplingParams, FactorizationParams, MU_SNAP};
use crate::quadrature::{integrate_from_origin, integrate_log, QuadConfig};
use crate::scalar::Real;
use crate::specfun::{bessel_k, bessel_k_prime, bessel_k_second, digamma_one, ln_gamma, BesselOrder};

pub use oscillation::{oscillating_zero_mode, oscillation_zeros, ZeroSequence, ZERO_WINDOW_TOL};

/// Below this order, `Ĥ₂,ν` computations are flagged as ill-conditioned.
pub const SMALL_KAPPA: f64 = 1e-3;

/// Coupling regions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `α < −1/4`: no positive zero mode, no factorization.
    NoFactorization,
    /// `α ≥ 3/4` (`ϰ ≥ 1`): a unique self-adjoint Hamiltonian `Ĥ₁`.
    H1,
    /// `−1/4 < α < 3/4` (`0 < ϰ < 1`): the family `Ĥ₂,ν`.
    H2,
    /// `α = −1/4` (`ϰ = 0`): the family `Ĥ₃,ν`.
    H3,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::NoFactorization => "no factorization",
            Regime::H1 => "H1",
            Regime::H2 => "H2",
            Regime::H3 => "H3",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify<T: Real>(coupling: &CouplingParams<T>) -> Regime {
    match coupling.kappa() {
        None => Regime::NoFactorization,
        Some(k) if k == T::zero() => Regime::H3,
        Some(k) if k < T::one() => Regime::H2,
        Some(_) => Regime::H1,
    }
}

fn regime_error<T: Real>(coupling: &CouplingParams<T>, found: Regime, expected: &'static str) -> Error {
    match found {
        Regime::NoFactorization => Error::NoRepresentation {
            alpha: coupling.alpha().to_f64_lossy(),
        },
        _ => Error::Regime {
            alpha: coupling.alpha().to_f64_lossy(),
            found: found.name(),
            expected,
        },
    }
}

fn warn_small_kappa<T: Real>(kappa: T) {
    if kappa < T::c(SMALL_KAPPA) {
        log::warn!(
            "kappa = {kappa} is below {SMALL_KAPPA}: the H2 formulas are exponentially stiff in 1/kappa"
        );
    }
}

/// Self-adjoint extension angle `ν ∈ [−π/2, π/2]` with its regime. The
/// endpoints `±π/2` denote one and the same extension; `H1` carries no angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtensionParam<T> {
    nu: Option<T>,
    regime: Regime,
}

impl<T: Real> ExtensionParam<T> {
    /// Extension `ν` of `Ĥ₂,ν` or `Ĥ₃,ν`. Angles within `1e-12` of `±π/2`
    /// are stored as `π/2`.
    pub fn new(nu: T, coupling: &CouplingParams<T>) -> Result<Self> {
        let regime = classify(coupling);
        if !matches!(regime, Regime::H2 | Regime::H3) {
            return Err(regime_error(coupling, regime, "H2 or H3"));
        }
        let half_pi = T::FRAC_PI_2();
        let snap = T::c(MU_SNAP);
        if !nu.is_finite() || nu.abs() > half_pi + snap {
            return Err(Error::InvalidParams(format!("nu must lie in [-pi/2, pi/2], got {nu}")));
        }
        let nu = if (nu.abs() - half_pi).abs() <= snap {
            half_pi
        } else {
            nu
        };
        Ok(Self {
            nu: Some(nu),
            regime,
        })
    }

    /// The unique Hamiltonian `Ĥ₁` of the region `ϰ ≥ 1`.
    pub fn unique(coupling: &CouplingParams<T>) -> Result<Self> {
        let regime = classify(coupling);
        if regime != Regime::H1 {
            return Err(regime_error(coupling, regime, "H1"));
        }
        Ok(Self { nu: None, regime })
    }

    /// Extension for any regime with a factorization: `nu` is ignored in
    /// `H1` and required otherwise.
    pub fn for_coupling(nu: Option<T>, coupling: &CouplingParams<T>) -> Result<Self> {
        match (classify(coupling), nu) {
            (Regime::H1, _) => Self::unique(coupling),
            (Regime::H2 | Regime::H3, Some(nu)) => Self::new(nu, coupling),
            (Regime::H2 | Regime::H3, None) => Err(Error::InvalidParams(
                "an extension angle nu is required for 0 <= kappa < 1".into(),
            )),
            (r, _) => Err(regime_error(coupling, r, "alpha >= -1/4")),
        }
    }

    pub fn nu(&self) -> Option<T> {
        self.nu
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `ν = ±π/2`.
    pub fn is_half_pi(&self) -> bool {
        self.nu == Some(T::FRAC_PI_2())
    }
}

fn require_h2_h3<T: Real>(coupling: &CouplingParams<T>) -> Result<(Regime, T)> {
    let regime = classify(coupling);
    match regime {
        Regime::H2 | Regime::H3 => Ok((regime, coupling.require_kappa()?)),
        r => Err(regime_error(coupling, r, "H2 or H3")),
    }
}

/// `ln(Γ(1+ϰ)/Γ(1−ϰ))`.
fn ln_gamma_ratio<T: Real>(kappa: T) -> T {
    ln_gamma(T::one() + kappa) - ln_gamma(T::one() - kappa)
}

/// Boundary-condition angle `θ(μ,s) ∈ (−π/2, π/2)` of the extension
/// realized by the factorization `(μ, s)`:
/// `tan θ = tan μ − (Γ(1−ϰ)/Γ(1+ϰ))(s/2)^{2ϰ}` for `0 < ϰ < 1` and
/// `tan θ = ln(s/2) − tan μ − ψ(1)` for `ϰ = 0`. Undefined at `μ = π/2`,
/// which realizes `ν = ±π/2`.
pub fn theta_of<T: Real>(params: &FactorizationParams<T>, coupling: &CouplingParams<T>) -> Result<T> {
    let (regime, kappa) = require_h2_h3(coupling)?;
    if params.is_half_pi() {
        return Err(domain(
            "theta_of",
            "theta is undefined at mu = pi/2 (it realizes nu = +-pi/2)",
        ));
    }
    let tan_mu = params.mu().tan();
    let half_s = params.s() * T::c(0.5);
    let tan_theta = match regime {
        Regime::H2 => {
            warn_small_kappa(kappa);
            if params.s() == T::zero() {
                tan_mu
            } else {
                tan_mu - (T::c(2.0) * kappa * half_s.ln() - ln_gamma_ratio(kappa)).exp()
            }
        }
        _ => {
            if params.s() == T::zero() {
                return Err(domain("theta_of", "s must be positive at kappa = 0"));
            }
            half_s.ln() - tan_mu - digamma_one::<T>()
        }
    };
    Ok(tan_theta.atan())
}

/// Shift `s(μ,ν) ≥ 0` of the factorization with angle `μ` that realizes the
/// extension `ν`, evaluated in log space:
/// `s = 2[(tan μ − tan ν)Γ(1+ϰ)/Γ(1−ϰ)]^{1/(2ϰ)}` (`0 < ϰ < 1`, needs
/// `tan μ ≥ tan ν`) or `s = 2e^{tan ν + tan μ + ψ(1)}` (`ϰ = 0`).
///
/// For `ν = ±π/2` only `μ = π/2` is admissible, with every `s ≥ 0`; the
/// minimal value 0 is returned.
pub fn s_of<T: Real>(mu: T, nu: &ExtensionParam<T>, coupling: &CouplingParams<T>) -> Result<T> {
    let (regime, kappa) = require_h2_h3(coupling)?;
    if nu.regime() != regime {
        return Err(Error::InvalidParams(
            "extension parameter belongs to a different coupling region".into(),
        ));
    }
    let params = FactorizationParams::new(mu, T::zero())?;
    if nu.is_half_pi() {
        return if params.is_half_pi() {
            Ok(T::zero())
        } else {
            Err(domain("s_of", "nu = +-pi/2 is realized only by mu = pi/2"))
        };
    }
    if params.is_half_pi() {
        return Err(domain("s_of", "mu = pi/2 realizes only nu = +-pi/2"));
    }
    let nu = nu.nu().expect("H2/H3 extension carries an angle");
    let tan_mu = params.mu().tan();
    match regime {
        Regime::H2 => {
            warn_small_kappa(kappa);
            let diff = tan_mu - nu.tan();
            if diff < T::zero() {
                return Err(domain(
                    "s_of",
                    format!("tan(mu) < tan(nu) (mu = {}, nu = {nu}): s would be complex", params.mu()),
                ));
            }
            if diff == T::zero() {
                return Ok(T::zero());
            }
            Ok(T::c(2.0) * ((diff.ln() + ln_gamma_ratio(kappa)) / (T::c(2.0) * kappa)).exp())
        }
        _ => Ok(T::c(2.0) * (nu.tan() + tan_mu + digamma_one::<T>()).exp()),
    }
}

/// Smallest admissible `μ` for the extension `ν`: `max(ν, 0)` in `H2`, 0 in
/// `H3`, and `π/2` for `ν = ±π/2`.
pub fn mu_min<T: Real>(nu: &ExtensionParam<T>) -> T {
    if nu.is_half_pi() {
        return T::FRAC_PI_2();
    }
    match (nu.regime(), nu.nu()) {
        (Regime::H2, Some(v)) => v.max(T::zero()),
        _ => T::zero(),
    }
}

/// Ground state of a self-adjoint extension. Energies are in units of
/// `k₀²`, `U` in units of `length^{−1/2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroundState<T> {
    /// Negative ground level, or 0 (the lower boundary of the spectrum)
    /// when no bound state exists.
    pub energy: T,
    pub exists: bool,
    kappa: T,
    alpha: T,
    norm: T,
}

impl<T: Real> GroundState<T> {
    fn q(&self) -> T {
        (-self.energy).sqrt()
    }

    /// `U(x) = N √x K_ϰ(√|E| x)`; zero when no bound state exists.
    pub fn wavefunction(&self, x: T) -> Result<T> {
        if !self.exists {
            return Ok(T::zero());
        }
        let order = BesselOrder::new(self.kappa)?;
        Ok(self.norm * x.sqrt() * bessel_k(order, self.q() * x)?.value)
    }

    /// `(U, U′, U″)` from analytic Bessel derivatives.
    pub fn wavefunction_derivs(&self, x: T) -> Result<[T; 3]> {
        if !self.exists {
            return Ok([T::zero(); 3]);
        }
        let order = BesselOrder::new(self.kappa)?;
        let q = self.q();
        let z = q * x;
        let k = bessel_k(order, z)?.value;
        let k1 = bessel_k_prime(order, z)?.value;
        let k2 = bessel_k_second(order, z)?.value;
        let sx = x.sqrt();
        let n = self.norm;
        let half = T::c(0.5);
        let u = n * sx * k;
        let du = n * (half / sx * k + sx * q * k1);
        let d2u = n * (T::c(-0.25) / (x * sx) * k + q / sx * k1 + sx * q * q * k2);
        Ok([u, du, d2u])
    }

    /// `∫_0^{40/√|E|} U² dx` by adaptive quadrature.
    pub fn normalization(&self) -> Result<T> {
        if !self.exists {
            return Ok(T::zero());
        }
        let cfg = QuadConfig {
            abs_tol: T::zero(),
            rel_tol: T::c(1e-13),
            max_intervals: 500,
        };
        let q = self.q();
        let mut err = None;
        let mut u2 = |x: T| match self.wavefunction(x) {
            Ok(u) => u * u,
            Err(e) => {
                err.get_or_insert(e);
                T::nan()
            }
        };
        // below 1e-3/q the integrand is a clean power law in x
        let split = T::c(1e-3) / q;
        let near = integrate_from_origin(&mut u2, split, cfg);
        let far = integrate_log(&mut u2, split, T::c(40.0) / q, cfg);
        if let Some(e) = err {
            return Err(e);
        }
        Ok(near?.value + far?.value)
    }

    /// `max |−U″ + (α/x²)U − E·U| / (|E|·max|U|)` over `grid`.
    pub fn eigen_residual(&self, grid: &[T]) -> Result<T> {
        if !self.exists {
            return Ok(T::zero());
        }
        let mut worst = T::zero();
        let mut umax = T::zero();
        for &x in grid {
            let [u, _, d2u] = self.wavefunction_derivs(x)?;
            let r = (-d2u + self.alpha / (x * x) * u - self.energy * u).abs();
            worst = worst.max(r);
            umax = umax.max(u.abs());
        }
        Ok(worst / (self.energy.abs() * umax))
    }
}

/// Closed-form ground state of the extension `ν`.
///
/// `Ĥ₂,ν` with `ν < 0`: `E₂ = −4k₀²|tan ν·Γ(1+ϰ)/Γ(1−ϰ)|^{1/ϰ}`,
/// `U₂ = √(2 sin(πϰ)|E|/(πϰ)) x^{1/2} K_ϰ(√|E| x)`.
/// `Ĥ₃,ν` with `|ν| < π/2`: `E₃ = −4k₀²e^{2(tan ν + ψ(1))}`,
/// `U₃ = √(2|E|) x^{1/2} K₀(√|E| x)`.
/// `Ĥ₁`, `Ĥ₂,ν` with `ν ≥ 0` and `ν = ±π/2` have no bound state; the energy
/// is then the lower boundary 0 of the spectrum.
pub fn ground_state<T: Real>(nu: &ExtensionParam<T>, coupling: &CouplingParams<T>) -> Result<GroundState<T>> {
    let regime = classify(coupling);
    if regime != nu.regime() {
        return Err(Error::InvalidParams(
            "extension parameter belongs to a different coupling region".into(),
        ));
    }
    let kappa = coupling.require_kappa()?;
    let none = GroundState {
        energy: T::zero(),
        exists: false,
        kappa,
        alpha: coupling.alpha(),
        norm: T::zero(),
    };
    if nu.is_half_pi() {
        return Ok(none);
    }
    let k0 = coupling.k0();
    let four_k02 = T::c(4.0) * k0 * k0;
    match (regime, nu.nu()) {
        (Regime::H2, Some(v)) if v < T::zero() => {
            warn_small_kappa(kappa);
            let ln_e = ((-v).tan().ln() + ln_gamma_ratio(kappa)) / kappa;
            let energy = -four_k02 * ln_e.exp();
            let pk = T::PI() * kappa;
            let norm = (T::c(2.0) * pk.sin() * energy.abs() / pk).sqrt();
            Ok(GroundState {
                energy,
                exists: true,
                norm,
                ..none
            })
        }
        (Regime::H3, Some(v)) => {
            let energy = -four_k02 * (T::c(2.0) * (v.tan() + digamma_one::<T>())).exp();
            Ok(GroundState {
                energy,
                exists: true,
                norm: (T::c(2.0) * energy.abs()).sqrt(),
                ..none
            })
        }
        _ => Ok(none),
    }
}

/// One generalized oscillator representation of a given Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepresentationRow<T> {
    pub mu: T,
    pub s: T,
    /// `−(sk₀)²`, in units of `k₀²`
    pub lower_bound: T,
    /// maximal lower bound (minimal `s`) within the family
    pub optimum: bool,
}

/// Enumerates representations `(μ, s)` of the Hamiltonian labelled by `nu`
/// with their lower bounds `−(sk₀)²`. The analytic optimum comes first and
/// is flagged.
///
/// * `H1`: every pair of `mu_samples × s_samples`; optimum `(π/2, 0)`.
/// * `ν = ±π/2`: `μ = π/2` with every `s` of `s_samples`; optimum `s = 0`.
/// * otherwise: `s = s(μ,ν)` for every `μ` of `mu_samples`, which must be
///   admissible (`μ ≥ μ_min(ν)`, `μ < π/2`); optimum `(μ_min, s(μ_min,ν))`.
pub fn representation_table<T: Real>(
    nu: &ExtensionParam<T>,
    coupling: &CouplingParams<T>,
    mu_samples: &[T],
    s_samples: &[T],
) -> Result<Vec<RepresentationRow<T>>> {
    let k0 = coupling.k0();
    let row = |mu: T, s: T, optimum: bool| RepresentationRow {
        mu,
        s,
        lower_bound: -(s * k0) * (s * k0),
        optimum,
    };
    let half_pi = T::FRAC_PI_2();
    let mut rows = Vec::new();
    if nu.regime() == Regime::H1 || nu.is_half_pi() {
        rows.push(row(half_pi, T::zero(), true));
        let mus: Vec<T> = if nu.regime() == Regime::H1 {
            mu_samples.to_vec()
        } else {
            vec![half_pi]
        };
        for &mu in &mus {
            for &s in s_samples {
                let p = FactorizationParams::new(mu, s)?;
                rows.push(row(p.mu(), s, s == T::zero()));
            }
        }
        return Ok(rows);
    }
    let lo = mu_min(nu);
    rows.push(row(lo, s_of(lo, nu, coupling)?, true));
    for &mu in mu_samples {
        let s = s_of(mu, nu, coupling)?;
        rows.push(row(mu, s, mu == lo));
    }
    Ok(rows)
}
