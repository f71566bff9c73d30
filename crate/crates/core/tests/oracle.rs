use calogero::extensions::{ground_state, ExtensionParam};
use calogero::factorization::CouplingParams;
use calogero::fit::{fit_two_basis, power_exponent};
use calogero::grid::log_grid;
use calogero::oracle::{find_bound_state, mismatch_scan, solution_profile, ShootingConfig};

fn setup(kappa: f64, nu: f64) -> (CouplingParams<f64>, ExtensionParam<f64>) {
    let c = CouplingParams::from_kappa(kappa, 1.0).unwrap();
    let e = ExtensionParam::new(nu, &c).unwrap();
    (c, e)
}

#[test]
fn refinement_leaves_energies_unchanged() {
    for &(kappa, nu) in &[(0.25, -0.9), (0.5, -0.2), (0.75, -1.3), (0.0, 0.4)] {
        let (c, e) = setup(kappa, nu);
        let base = ShootingConfig::default();
        let fine = ShootingConfig {
            x0: base.x0 / 2.0,
            rtol: base.rtol / 2.0,
            ..base
        };
        let a = find_bound_state(&e, &c, &base).unwrap().energy;
        let b = find_bound_state(&e, &c, &fine).unwrap().energy;
        assert!(((a - b) / a).abs() < 1e-8, "{kappa} {nu}: {a} vs {b}");
    }
}

#[test]
fn single_sign_change_below_the_ground_level() {
    for &(kappa, nu) in &[(0.25, -0.5), (0.5, -1.3), (0.75, -0.05), (0.0, -1.0), (0.0, 1.0)] {
        let (c, e) = setup(kappa, nu);
        let exact = ground_state(&e, &c).unwrap().energy;
        let cfg = ShootingConfig {
            e_bracket: (2.0 * exact, -1e-8),
            scan_points: 120,
            ..ShootingConfig::default()
        };
        let scan = mismatch_scan(&e, &c, &cfg).unwrap();
        let changes = scan.windows(2).filter(|w| w[0].1 * w[1].1 <= 0.0).count();
        assert_eq!(changes, 1, "{kappa} {nu}");
    }
}

#[test]
fn nonnegative_angles_have_no_bound_state() {
    let cfg = ShootingConfig {
        e_bracket: (-10.0, -1e-6),
        ..ShootingConfig::default()
    };
    for &kappa in &[0.1, 0.5, 0.9] {
        for &nu in &[0.0, 0.7, 1.5] {
            let (c, e) = setup(kappa, nu);
            let r = find_bound_state(&e, &c, &cfg).unwrap();
            assert!(!r.found && !ground_state(&e, &c).unwrap().exists);
        }
    }
}

#[test]
fn integrated_solution_keeps_the_boundary_condition() {
    let cfg = ShootingConfig {
        x0: 1e-8,
        ..ShootingConfig::default()
    };
    let xs = log_grid(1e-8, 1e-7, 20).unwrap();
    for &(kappa, nu) in &[(0.25, -0.9), (0.5, 0.0), (0.75, -0.3)] {
        let (c, e) = setup(kappa, nu);
        let energy = ground_state(&e, &c).unwrap().energy.min(-0.5);
        let ys = solution_profile(&e, &c, energy, &cfg, &xs).unwrap();
        let p = power_exponent(&xs, &ys).unwrap();
        let expect = 0.5 - kappa;
        assert!((p - expect).abs() <= 0.02 * expect.abs().max(0.25), "{kappa}: {p}");
    }
    // regular branch only at ν = π/2
    let (c, e) = setup(0.3, std::f64::consts::FRAC_PI_2);
    let ys = solution_profile(&e, &c, -1.0, &cfg, &xs).unwrap();
    assert!((power_exponent(&xs, &ys).unwrap() - 0.8).abs() < 0.016);
    // ϰ = 0: χ/√x = sin ν + cos ν ln x
    let nu = 0.6f64;
    let (c, e) = setup(0.0, nu);
    let ys = solution_profile(&e, &c, -1.0, &cfg, &xs).unwrap();
    let scaled: Vec<f64> = xs.iter().zip(&ys).map(|(x, y)| y / x.sqrt()).collect();
    let (c0, c1) = fit_two_basis(&xs, &scaled, |_| 1.0, |x| x.ln()).unwrap();
    assert!(((c0 / c1) / nu.tan() - 1.0).abs() < 0.02);
}

#[test]
fn dimensionful_scale() {
    // energies scale with k₀²
    let c = CouplingParams::from_kappa(0.5, 3.0).unwrap();
    let e = ExtensionParam::new(-std::f64::consts::FRAC_PI_4, &c).unwrap();
    let r = find_bound_state(&e, &c, &ShootingConfig::default()).unwrap();
    assert!((r.energy + 9.0).abs() < 1e-8);
}
