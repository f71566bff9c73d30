use std::f64::consts::FRAC_PI_2;

use calogero::extensions::{
    classify, ground_state as closed_ground_state, mu_min, oscillation_zeros, representation_table, theta_of,
    ExtensionParam, Regime,
};
use calogero::factorization::{standard_bumps, CouplingParams, FactorizationParams, PhiFamily};
use calogero::grid::log_grid;
use calogero::oracle::{find_bound_state, ShootingConfig};
use calogero::Result;

use crate::report::Report;

pub const RICCATI_PER_DECADE: usize = 40;
pub const BUMP_POINTS: usize = 400;
pub const NORM_TOL: f64 = 1e-8;
pub const EIGEN_TOL: f64 = 1e-6;

fn fmt_angle(v: f64) -> String {
    format!("{v:.15}")
}

fn hamiltonian_label(regime: Regime, nu: Option<f64>) -> String {
    match (regime, nu) {
        (Regime::H1, _) => "H1 (unique)".into(),
        (r, Some(v)) if (v.abs() - FRAC_PI_2).abs() < 1e-12 => format!("{r} with nu = +-pi/2"),
        (r, Some(v)) => format!("{r} with nu = {v:.12}"),
        (r, None) => r.to_string(),
    }
}

pub fn factorize(k0: f64, alpha: f64, mu: f64, s: f64, riccati_tol: f64, factorization_tol: f64) -> Result<Report> {
    let c = CouplingParams::new(alpha, k0)?;
    let params = FactorizationParams::new(mu, s)?;
    let fam = PhiFamily::new(c, params)?;
    let regime = classify(&c);

    let mut r = Report::new("factorize");
    r.input("alpha", alpha).input("mu", fmt_angle(mu)).input("s", s).input("k0", k0);
    r.info("coupling", "kappa", fam.kappa(), "1");
    for x in [1e-2, 1e-1, 1.0, 1e1].map(|x| x / k0) {
        let p = fam.eval(x)?;
        r.info("zero mode", &format!("phi(x={x:e})"), p.phi, "1");
        r.info("zero mode", &format!("h(x={x:e})"), p.h, "k0");
    }

    let grid = log_grid(1e-4 / k0, 1e2 / k0, RICCATI_PER_DECADE)?;
    let ric = fam.riccati_residual(&grid)?;
    r.info("riccati", "max |h' + h^2 - alpha/x^2 - (s k0)^2|", ric.max_abs, "k0^2");
    r.info("riccati", "worst x", ric.worst_x, "1/k0");
    r.check("riccati", "max scaled residual", ric.max_scaled, riccati_tol, "1");

    let fres = fam.factorization_residual(&standard_bumps(k0), BUMP_POINTS)?;
    r.check("factorization", "max relative residual on bumps", fres, factorization_tol, "1");
    r.info("spectrum", "lower bound -(s k0)^2", fam.lower_bound(), "k0^2");

    let nu = match regime {
        Regime::H1 => None,
        _ if params.is_half_pi() => Some(FRAC_PI_2),
        _ => Some(theta_of(&params, &c)?),
    };
    if let Some(v) = nu {
        r.info("extension", "nu", v, "rad");
    }
    r.note(format!("Hamiltonian: {}", hamiltonian_label(regime, nu)));
    Ok(r)
}

/// Oracle settings for a level near `energy`: a bracket of two decades on
/// either side and a start point well inside `|E| x0^2 < 1`.
fn oracle_config(energy: f64, k0: f64) -> ShootingConfig<f64> {
    let base = ShootingConfig::<f64>::default();
    let deep = 4.0 * energy.abs().max(k0 * k0);
    ShootingConfig {
        x0: base.x0.min(0.05 / deep.sqrt()),
        e_bracket: (-100.0 * deep, -1e-6 * k0 * k0),
        scan_points: 90,
        ..base
    }
}

pub fn ground_state(k0: f64, alpha: f64, nu: Option<f64>, tol: f64) -> Result<Report> {
    let c = CouplingParams::new(alpha, k0)?;
    let ext = ExtensionParam::for_coupling(nu, &c)?;
    let gs = closed_ground_state(&ext, &c)?;

    let mut r = Report::new("ground-state");
    r.input("alpha", alpha).input("k0", k0);
    if let Some(v) = ext.nu() {
        r.input("nu", fmt_angle(v));
    }
    r.note(format!("Hamiltonian: {}", hamiltonian_label(ext.regime(), ext.nu())));

    let cfg = oracle_config(gs.energy, k0);
    let oracle = find_bound_state(&ext, &c, &cfg)?;
    if !gs.exists {
        r.note("no bound state; spectrum lower boundary 0");
        r.info("closed form", "energy", 0.0, "k0^2");
        r.push_checked(
            "oracle",
            "mismatch sign changes",
            oracle.sign_changes as f64,
            0.0,
            "1",
            !oracle.found,
        );
        return Ok(r);
    }
    r.info("closed form", "energy", gs.energy, "k0^2");
    r.info("oracle", "energy", oracle.energy, "k0^2");
    r.info("oracle", "boundary mismatch", oracle.bc_residual, "1");
    r.info("oracle", "decay residual", oracle.decay_residual, "1");
    let diff = if oracle.found {
        ((oracle.energy - gs.energy) / gs.energy).abs()
    } else {
        f64::INFINITY
    };
    r.check("agreement", "relative energy difference", diff, tol, "1");
    r.check("wavefunction", "|norm - 1|", (gs.normalization()? - 1.0).abs(), NORM_TOL, "1");
    let q = (-gs.energy).sqrt();
    let grid = log_grid(1e-4 / q, 40.0 / q, 50)?;
    r.check("wavefunction", "eigen-residual", gs.eigen_residual(&grid)?, EIGEN_TOL, "1");
    Ok(r)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

pub fn sweep(k0: f64, alpha: f64, nu: Option<f64>, mu_points: usize, s_points: usize, s_max: f64) -> Result<Report> {
    let c = CouplingParams::new(alpha, k0)?;
    let ext = ExtensionParam::for_coupling(nu, &c)?;
    let s_samples: Vec<f64> = (1..=s_points).map(|k| s_max * k as f64 / s_points as f64).collect();
    let table = if ext.regime() == Regime::H1 {
        representation_table(&ext, &c, &linspace(0.0, FRAC_PI_2, mu_points), &s_samples)?
    } else if ext.is_half_pi() {
        representation_table(&ext, &c, &[], &s_samples)?
    } else {
        // the optimum row supplies μ_min itself
        let mus = linspace(mu_min(&ext), FRAC_PI_2 - 1e-3, mu_points);
        representation_table(&ext, &c, mus.get(1..).unwrap_or(&[]), &[])?
    };

    let mut r = Report::new("sweep");
    r.input("alpha", alpha).input("k0", k0);
    if let Some(v) = ext.nu() {
        r.input("nu", fmt_angle(v));
    }
    r.note(format!("Hamiltonian: {}", hamiltonian_label(ext.regime(), ext.nu())));
    for (k, row) in table.iter().enumerate() {
        let group = if row.optimum {
            format!("rep{k:02} optimum")
        } else {
            format!("rep{k:02}")
        };
        r.info(&group, "mu", row.mu, "rad");
        r.info(&group, "s", row.s, "1");
        r.info(&group, "lower bound", row.lower_bound, "k0^2");
    }
    if ext.regime() != Regime::H1 && !ext.is_half_pi() {
        let increasing = table.windows(2).all(|w| w[1].s > w[0].s);
        r.push_checked("table", "s increasing in mu", increasing as u8 as f64, 1.0, "1", increasing);
    }
    let gs = closed_ground_state(&ext, &c)?;
    let best = table[0].lower_bound;
    let gap = if gs.exists {
        ((best - gs.energy) / gs.energy).abs()
    } else {
        best.abs()
    };
    r.check("table", "optimum bound vs ground level", gap, 1e-12, "1");
    Ok(r)
}

pub fn zeros(k0: f64, alpha: f64, s: f64, phase: f64, x_hi: Option<f64>, decades: f64, tol: f64) -> Result<Report> {
    let c = CouplingParams::new(alpha, k0)?;
    if decades.is_nan() || decades <= 0.0 || !decades.is_finite() {
        return Err(calogero::Error::InvalidParams(format!("decades must be positive, got {decades}")));
    }
    let hi = x_hi.unwrap_or(1e-4 / (s * k0));
    let lo = hi * 10f64.powf(-decades);
    let zs = oscillation_zeros(&c, s, phase, (lo, hi))?;
    let sigma = c.sigma().unwrap_or(f64::NAN);

    let mut r = Report::new("zeros");
    r.input("alpha", alpha)
        .input("s", s)
        .input("phase", fmt_angle(phase))
        .input("k0", k0)
        .input("window", format!("[{lo:e}, {hi:e}]"));
    r.info("coupling", "sigma", sigma, "1");
    for (n, z) in zs.zeros.iter().enumerate() {
        r.info("zeros", &format!("x_{n}"), *z, "1/k0");
    }
    r.info("ratio", "estimated", zs.ratio_estimate, "1");
    r.info("ratio", "predicted e^(-pi/sigma)", zs.ratio_predicted, "1");
    r.info("ratio", "window correction bound", zs.correction_bound, "1");
    let worst = zs
        .zeros
        .windows(2)
        .map(|w| ((w[1] / w[0] - zs.ratio_predicted) / zs.ratio_predicted).abs())
        .fold(0.0f64, f64::max);
    r.check("ratio", "max relative deviation", worst, tol, "1");
    let expected = (decades * std::f64::consts::LN_10 * sigma / std::f64::consts::PI).floor();
    let count = zs.zeros.len() as f64;
    r.push_checked("zeros", "count (minimum)", count, expected, "1", count >= expected);
    Ok(r)
}
