//! Seeded invariant suites behind `calogero verify`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use calogero::extensions::{
    ground_state, mu_min, oscillation_zeros, representation_table, s_of, theta_of, ExtensionParam,
};
use calogero::factorization::{standard_bumps, CouplingParams, FactorizationParams, PhiFamily};
use calogero::grid::log_grid;
use calogero::oracle::{find_bound_state, ShootingConfig};
use calogero::specfun::{bessel_i, bessel_k, gamma, BesselOrder, ScaledIK};
use calogero::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::Suite;
use crate::commands::{BUMP_POINTS, EIGEN_TOL, NORM_TOL, RICCATI_PER_DECADE};
use crate::report::Report;

pub fn run(suite: Suite, seed: u64, cases: usize) -> Result<Report> {
    let mut r = Report::new("verify");
    r.seed = Some(seed);
    r.input("suite", format!("{suite:?}").to_lowercase()).input("cases", cases);
    let all = suite == Suite::All;
    if all || suite == Suite::Specfun {
        r.merge(specfun()?);
    }
    if all || suite == Suite::Riccati || suite == Suite::Factorization {
        let fams = random_families(seed, cases);
        if all || suite == Suite::Riccati {
            r.merge(riccati(&fams)?);
        }
        if all || suite == Suite::Factorization {
            r.merge(factorization(&fams)?);
        }
    }
    if all || suite == Suite::Extensions {
        r.merge(extensions(seed, cases)?);
    }
    if all || suite == Suite::Oracle {
        r.merge(oracle()?);
    }
    if all || suite == Suite::Zeros {
        r.merge(zeros()?);
    }
    Ok(r)
}

fn fold_max(it: impl ParallelIterator<Item = Result<f64>>) -> Result<f64> {
    it.try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

fn specfun() -> Result<Report> {
    let mut r = Report::new("specfun");
    let zs = log_grid::<f64>(1e-6, 50.0, 20)?;
    let orders = [0.0, 0.25, 0.5, 1.0, 1.7, 2.5, 7.3];
    let wr = fold_max(orders.par_iter().flat_map_iter(|&nu| {
        zs.iter().map(move |&z| {
            let ik = ScaledIK::compute(nu, z)?;
            Ok((z * (ik.i[0] * ik.k[1] + ik.i[1] * ik.k[0]) - 1.0).abs())
        })
    }))?;
    r.check("specfun", "Bessel |z W - 1|", wr, 1e-9, "1");

    let half = BesselOrder::new(0.5)?;
    let mut closed = 0.0f64;
    for &z in &zs {
        let i_exact = (2.0 / (PI * z)).sqrt() * z.sinh();
        let k_exact = (PI / (2.0 * z)).sqrt() * (-z).exp();
        closed = closed
            .max((bessel_i(half, z)?.value / i_exact - 1.0).abs())
            .max((bessel_k(half, z)?.value / k_exact - 1.0).abs());
    }
    r.check("specfun", "half-order closed forms", closed, 1e-10, "1");

    let refl = (1..100)
        .map(|k| {
            let x = k as f64 / 100.0;
            (gamma(x) * gamma(1.0 - x) * (PI * x).sin() / PI - 1.0).abs()
        })
        .fold(0.0f64, f64::max);
    r.check("specfun", "Gamma reflection", refl, 1e-12, "1");
    Ok(r)
}

/// `cases` families with `ϰ ∈ [0, 2]`, one in six at `ϰ = 0`, and
/// `k0 ∈ {1, 0.5, 3}`.
fn random_families(seed: u64, cases: usize) -> Vec<PhiFamily<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases)
        .map(|i| {
            let kappa = if i % 6 == 5 { 0.0 } else { 2.0 - rng.gen_range(0.0..2.0) };
            let mu = match rng.gen_range(0..10) {
                0 => 0.0,
                1 => FRAC_PI_2,
                _ => rng.gen_range(0.0..FRAC_PI_2),
            };
            let s = if kappa > 0.0 && rng.gen_range(0..8) == 0 {
                0.0
            } else {
                rng.gen_range(1e-3..5.0)
            };
            let k0 = [1.0, 0.5, 3.0][i % 3];
            PhiFamily::new(
                CouplingParams::from_kappa(kappa, k0).expect("kappa >= 0"),
                FactorizationParams::new(mu, s).expect("mu in range"),
            )
            .expect("admissible family")
        })
        .collect()
}

fn riccati(fams: &[PhiFamily<f64>]) -> Result<Report> {
    let mut r = Report::new("riccati");
    let worst = fold_max(fams.par_iter().map(|f| {
        let k0 = f.coupling().k0();
        let grid = log_grid(1e-4 / k0, 1e2 / k0, RICCATI_PER_DECADE)?;
        Ok(f.riccati_residual(&grid)?.max_scaled)
    }))?;
    r.check("riccati", "max scaled residual", worst, 1e-7, "1");
    Ok(r)
}

fn factorization(fams: &[PhiFamily<f64>]) -> Result<Report> {
    let mut r = Report::new("factorization");
    let worst = fold_max(
        fams.par_iter()
            .map(|f| f.factorization_residual(&standard_bumps(f.coupling().k0()), BUMP_POINTS)),
    )?;
    r.check("factorization", "max relative residual on bumps", worst, 1e-8, "1");
    Ok(r)
}

struct ExtCase {
    kappa: f64,
    nu: f64,
    frac: f64,
}

fn extensions(seed: u64, cases: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let draws: Vec<ExtCase> = (0..cases)
        .map(|i| ExtCase {
            kappa: if i % 4 == 3 { 0.0 } else { rng.gen_range(0.02..0.98) },
            nu: rng.gen_range(-1.5..1.5),
            frac: rng.gen_range(0.0..1.0),
        })
        .collect();
    let results: Vec<[f64; 5]> = draws
        .par_iter()
        .map(|d| {
            let c = CouplingParams::from_kappa(d.kappa, 1.0)?;
            let ext = ExtensionParam::new(d.nu, &c)?;
            let lo = mu_min(&ext);
            let top = FRAC_PI_2 - 1e-3;
            let mu = lo + d.frac * (top - lo);
            let s = s_of(mu, &ext, &c)?;
            let round_trip = (theta_of(&FactorizationParams::new(mu, s)?, &c)? - d.nu).abs();
            let s2 = s_of(mu + 1e-3 * (top - mu).max(1e-9), &ext, &c)?;
            let monotone = if s2 > s || top - mu < 1e-9 { 0.0 } else { 1.0 };
            let gs = ground_state(&ext, &c)?;
            let best = representation_table(&ext, &c, &[], &[])?[0].lower_bound;
            let (opt, norm, eig) = if gs.exists {
                let q = (-gs.energy).sqrt();
                let grid = log_grid(1e-4 / q, 40.0 / q, 30)?;
                (
                    ((best - gs.energy) / gs.energy).abs(),
                    (gs.normalization()? - 1.0).abs(),
                    gs.eigen_residual(&grid)?,
                )
            } else {
                (best.abs(), 0.0, 0.0)
            };
            Ok([round_trip, monotone, opt, norm, eig])
        })
        .collect::<Result<_>>()?;
    let max = |k: usize| results.iter().map(|v| v[k]).fold(0.0f64, f64::max);
    let mut r = Report::new("extensions");
    r.check("extensions", "|theta(mu, s(mu, nu)) - nu|", max(0), 1e-10, "rad");
    r.check("extensions", "non-increasing s(mu) cases", max(1), 0.0, "1");
    r.check("extensions", "optimum bound vs ground level", max(2), 1e-12, "1");
    r.check("extensions", "ground state |norm - 1|", max(3), NORM_TOL, "1");
    r.check("extensions", "ground state eigen-residual", max(4), EIGEN_TOL, "1");
    Ok(r)
}

fn oracle() -> Result<Report> {
    let cfg = ShootingConfig::default();
    let mut jobs: Vec<(f64, f64)> = Vec::new();
    for &kappa in &[0.25, 0.5, 0.75] {
        for &nu in &[-1.3, -0.9, -0.5, -0.2, -0.05] {
            jobs.push((kappa, nu));
        }
    }
    for &nu in &[-1.0, -0.5, 0.0, 0.5, 1.0] {
        jobs.push((0.0, nu));
    }
    let diffs: Vec<(f64, f64)> = jobs
        .par_iter()
        .map(|&(kappa, nu)| {
            let c = CouplingParams::from_kappa(kappa, 1.0)?;
            let ext = ExtensionParam::new(nu, &c)?;
            let closed = ground_state(&ext, &c)?.energy;
            let found = find_bound_state(&ext, &c, &cfg)?;
            let d = if found.found {
                ((found.energy - closed) / closed).abs()
            } else {
                f64::INFINITY
            };
            Ok((kappa, d))
        })
        .collect::<Result<_>>()?;
    let h2 = diffs.iter().filter(|d| d.0 > 0.0).map(|d| d.1).fold(0.0f64, f64::max);
    let h3 = diffs.iter().filter(|d| d.0 == 0.0).map(|d| d.1).fold(0.0f64, f64::max);

    let quiet = ShootingConfig {
        e_bracket: (-10.0, -1e-6),
        ..cfg
    };
    let mut spurious = 0usize;
    for &(alpha, nu) in &[(2.0, None), (0.0, Some(0.0)), (0.0, Some(1.2)), (-0.25, Some(FRAC_PI_2))] {
        let c = CouplingParams::new(alpha, 1.0)?;
        let ext = ExtensionParam::for_coupling(nu, &c)?;
        spurious += find_bound_state(&ext, &c, &quiet)?.found as usize;
    }
    let c = CouplingParams::from_kappa(0.5, 1.0)?;
    let worked = find_bound_state(&ExtensionParam::new(-FRAC_PI_4, &c)?, &c, &cfg)?.energy;

    let mut r = Report::new("oracle");
    r.check("oracle", "H2 closed vs shooting (relative)", h2, 1e-6, "1");
    r.check("oracle", "H3 closed vs shooting (relative)", h3, 1e-5, "1");
    r.check("oracle", "|E + 1| at kappa = 1/2, nu = -pi/4", (worked + 1.0).abs(), 1e-6, "k0^2");
    r.check("oracle", "spurious bound states", spurious as f64, 0.0, "1");
    Ok(r)
}

fn zeros() -> Result<Report> {
    let mut r = Report::new("zeros");
    let mut worst = 0.0f64;
    for &sigma in &[0.5, 1.0, 2.0] {
        let c = CouplingParams::from_sigma(sigma, 1.0)?;
        let hi = 1e-5;
        let z = oscillation_zeros(&c, 1.0, 0.37, (hi * (-8.0 * PI / sigma).exp(), hi))?;
        for w in z.zeros.windows(2) {
            worst = worst.max(((w[1] / w[0] - z.ratio_predicted) / z.ratio_predicted).abs());
        }
    }
    r.check("zeros", "max zero-ratio deviation from e^(-pi/sigma)", worst, 1e-8, "1");
    Ok(r)
}
