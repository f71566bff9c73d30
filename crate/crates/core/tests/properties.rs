use std::f64::consts::FRAC_PI_2;

use calogero::extensions::{
    classify, ground_state, mu_min, oscillating_zero_mode, s_of, theta_of, ExtensionParam, Regime,
};
use calogero::factorization::{CouplingParams, FactorizationParams, PhiFamily};
use calogero::grid::log_grid;
use calogero::specfun::{bessel_i, bessel_k, digamma, gamma, ln_gamma, BesselOrder, ScaledIK};
use proptest::prelude::*;

fn family(kappa: f64, mu: f64, s: f64, k0: f64) -> PhiFamily<f64> {
    PhiFamily::new(
        CouplingParams::from_kappa(kappa, k0).unwrap(),
        FactorizationParams::new(mu, s).unwrap(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recurrence_and_reflection(x in 0.05f64..20.0) {
        let g = gamma(x);
        prop_assert!((gamma(x + 1.0) / (x * g) - 1.0).abs() < 1e-13);
        prop_assert!((ln_gamma(x) - g.ln()).abs() < 1e-13 * g.ln().abs().max(1.0));
        prop_assert!((digamma(x + 1.0) - digamma(x) - 1.0 / x).abs() < 1e-13 * digamma(x).abs().max(1.0));
        if x < 1.0 {
            let refl = gamma(x) * gamma(1.0 - x) * (std::f64::consts::PI * x).sin();
            prop_assert!((refl / std::f64::consts::PI - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn bessel_wronskian_and_monotonicity(nu in 0.0f64..5.0, z in 1e-6f64..50.0) {
        let ik = ScaledIK::compute(nu, z).unwrap();
        let w = z * (ik.i[0] * ik.k[1] + ik.i[1] * ik.k[0]);
        prop_assert!((w - 1.0).abs() < 1e-12);
        let o = BesselOrder::new(nu).unwrap();
        let dz = z * 1e-3;
        prop_assert!(bessel_i(o, z + dz).unwrap().value > bessel_i(o, z).unwrap().value || nu == 0.0 && z < 1e-5);
        prop_assert!(bessel_k(o, z + dz).unwrap().value < bessel_k(o, z).unwrap().value);
    }

    #[test]
    fn riccati_and_kernel(kappa in 0.0f64..2.0, mu in 0.0f64..FRAC_PI_2, s in 1e-3f64..5.0, k0 in 0.2f64..5.0) {
        let fam = family(kappa, mu, s, k0);
        let grid = log_grid(1e-4 / k0, 1e2 / k0, 10).unwrap();
        prop_assert!(fam.riccati_residual(&grid).unwrap().max_scaled < 1e-7);
        // ǎφ = φ′ − hφ vanishes identically in the log domain: (ln φ)′ = h
        for &x in grid.iter().step_by(7) {
            let h = 1e-5 * x;
            let d = (fam.ln_phi(x + h).unwrap() - fam.ln_phi(x - h).unwrap()) / (2.0 * h);
            let hx = fam.h(x).unwrap();
            prop_assert!((d - hx).abs() < 1e-6 * hx.abs().max(1.0 / x), "{} vs {}", d, hx);
            prop_assert!(fam.phi(x).unwrap() >= 0.0 && fam.ln_phi(x).unwrap().is_finite());
        }
    }

    #[test]
    fn extension_round_trip(kappa in 0.01f64..0.99, nu in -1.5f64..1.5, f in 0.0f64..1.0) {
        let c = CouplingParams::from_kappa(kappa, 1.0).unwrap();
        let ext = ExtensionParam::new(nu, &c).unwrap();
        let lo = mu_min(&ext);
        let mu = lo + f * (FRAC_PI_2 - 1e-3 - lo);
        let s = s_of(mu, &ext, &c).unwrap();
        let theta = theta_of(&FactorizationParams::new(mu, s).unwrap(), &c).unwrap();
        prop_assert!((theta - nu).abs() < 1e-10);
        let s2 = s_of(mu + 1e-4, &ext, &c).unwrap();
        prop_assert!(s2 > s);
    }

    #[test]
    fn log_point_round_trip(nu in -1.5f64..1.5, f in 0.0f64..1.0) {
        let c = CouplingParams::from_kappa(0.0, 2.0).unwrap();
        let ext = ExtensionParam::new(nu, &c).unwrap();
        let mu = f * (FRAC_PI_2 - 1e-3);
        let s = s_of(mu, &ext, &c).unwrap();
        let theta = theta_of(&FactorizationParams::new(mu, s).unwrap(), &c).unwrap();
        prop_assert!((theta - nu).abs() < 1e-10);
        // the optimum bound reproduces the ground level
        let smin = s_of(0.0, &ext, &c).unwrap();
        let e = ground_state(&ext, &c).unwrap().energy;
        prop_assert!(((smin * 2.0).powi(2) + e).abs() < 1e-12 * e.abs());
    }

    #[test]
    fn small_shift_converges_to_power_law(kappa in 0.3f64..2.0, mu in 0.0f64..FRAC_PI_2) {
        // the gap decays like s^{2ϰ} (s^2 ln s at ϰ = 1)
        let gap = |s: f64| {
            let a = family(kappa, mu, s, 1.0);
            let b = family(kappa, mu, 0.0, 1.0);
            [1e-3, 0.1, 1.0].iter().map(|&x| {
                let (p, q) = (a.phi(x).unwrap(), b.phi(x).unwrap());
                ((p - q) / q).abs()
            }).fold(0.0f64, f64::max)
        };
        let (g1, g2) = (gap(1e-2), gap(1e-4));
        prop_assert!(g2 < g1 || g2 < 1e-12);
        prop_assert!(g2 < 1e-4f64.powf((2.0 * kappa).min(1.9)) * 50.0 + 1e-12);
    }
}

#[test]
fn classification_is_exhaustive() {
    for (alpha, regime) in [
        (-1.0, Regime::NoFactorization),
        (-0.25, Regime::H3),
        (-0.2, Regime::H2),
        (0.0, Regime::H2),
        (0.7499, Regime::H2),
        (0.75, Regime::H1),
        (1.0, Regime::H1),
    ] {
        assert_eq!(classify(&CouplingParams::new(alpha, 1.0).unwrap()), regime, "{alpha}");
    }
}

#[test]
fn over_critical_zero_mode_changes_sign() {
    // no positive zero mode exists: the family constructor refuses, and the
    // oscillating solution has sign changes exactly where oscillation_zeros
    // puts them
    let c = CouplingParams::from_sigma(1.0, 1.0).unwrap();
    let fam = PhiFamily::new(c, FactorizationParams::new(0.3, 1.0).unwrap());
    assert!(matches!(fam, Err(calogero::Error::NoRepresentation { .. })));
    let zs = calogero::extensions::oscillation_zeros(&c, 1.0, 0.2, (1e-9, 1e-3)).unwrap();
    assert!(zs.zeros.len() >= 4);
    for &z in &zs.zeros {
        let a = oscillating_zero_mode(&c, 1.0, 0.2, z * (1.0 - 1e-6)).unwrap();
        let b = oscillating_zero_mode(&c, 1.0, 0.2, z * (1.0 + 1e-6)).unwrap();
        assert!(a * b < 0.0, "no sign change at {z}");
    }
    let grid = log_grid(1e-9f64, 1e-3, 200).unwrap();
    let changes = grid
        .windows(2)
        .filter(|w| {
            oscillating_zero_mode(&c, 1.0, 0.2, w[0]).unwrap() * oscillating_zero_mode(&c, 1.0, 0.2, w[1]).unwrap() < 0.0
        })
        .count();
    assert_eq!(changes, zs.zeros.len());
}

#[test]
fn large_x_limit_of_h() {
    // h → +sk₀ whenever the I branch is present, −sk₀ for the pure K branch
    for &(mu, sign) in &[(0.0, -1.0), (0.4, 1.0), (FRAC_PI_2, 1.0)] {
        for &kappa in &[0.0, 0.5, 1.3] {
            let fam = family(kappa, mu, 2.0, 1.5);
            let sk0 = 3.0;
            let h = fam.h(100.0 / sk0).unwrap();
            assert!((h - sign * sk0).abs() < 2e-2 * sk0, "mu={mu} kappa={kappa}: {h}");
        }
    }
}

/// `I_ν(z)·√(2πz)e^{−z}` from the large-argument series, independent of the
/// library's Bessel code.
fn scaled_i_asymptotic(nu: f64, z: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let (mut term, mut sum) = (1.0f64, 1.0f64);
    for k in 1..30 {
        let odd = (2 * k - 1) as f64;
        term *= -(mu - odd * odd) / (k as f64 * 8.0 * z);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

#[test]
fn h_approaches_sk0_from_below_at_fifty_over_sk0() {
    // μ = π/4, s = 2, ϰ = 0.3: the K branch is e^{−100} smaller, so
    // h = 1/(2x) + sk₀ I′_ϰ/I_ϰ with I′ = (I_{ϰ−1} + I_{ϰ+1})/2
    let (kappa, s, k0) = (0.3, 2.0, 1.0);
    let fam = family(kappa, std::f64::consts::FRAC_PI_4, s, k0);
    let sk0 = s * k0;
    let x = 50.0 / sk0;
    let z = sk0 * x;
    let ratio = 0.5 * (scaled_i_asymptotic(kappa - 1.0, z) + scaled_i_asymptotic(kappa + 1.0, z))
        / scaled_i_asymptotic(kappa, z);
    let expect = 1.0 / (2.0 * x) + sk0 * ratio;
    let h = fam.h(x).unwrap();
    assert!((h - expect).abs() < 1e-12, "{h} vs {expect}");
    // the O(x⁻²) correction keeps h about 6.5e−5 below sk₀ here
    assert!((h - sk0 + 6.53e-5).abs() < 1e-7, "h - sk0 = {}", h - sk0);
}
