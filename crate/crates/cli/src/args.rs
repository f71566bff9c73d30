use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Factorized representations of -d²/dx² + α/x² on the half-line.
///
/// Lengths are reported in units of 1/k0 and energies in units of k0².
/// Angles accept plain numbers or expressions such as `-pi/4` or `2pi/3`.
#[derive(Debug, Parser)]
#[command(name = "calogero", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format
    #[arg(long, short = 'o', value_enum, default_value_t = Format::Table, global = true)]
    pub output: Format,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Length scale k0 (inverse length)
    #[arg(long, default_value_t = 1.0, global = true)]
    pub k0: f64,

    /// Seed of the randomized verification suites
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the invariant suites and summarize pass/fail
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Number of randomized cases for the sweep suites
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Closed-form ground state of an extension, cross-checked by the oracle
    GroundState {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
        alpha: f64,
        /// Extension angle in [-pi/2, pi/2]; ignored for alpha >= 3/4
        #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
        nu: Option<f64>,
        /// Required agreement between closed form and oracle (relative)
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Zero mode, Riccati and factorization checks for one (mu, s)
    Factorize {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
        mu: f64,
        #[arg(long)]
        s: f64,
        /// Riccati residual tolerance (scaled)
        #[arg(long, default_value_t = 1e-7)]
        riccati_tol: f64,
        /// Factorization residual tolerance (relative)
        #[arg(long, default_value_t = 1e-8)]
        factorization_tol: f64,
    },
    /// Enumerate the representations of one Hamiltonian
    Sweep {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
        nu: Option<f64>,
        /// Number of mu samples
        #[arg(long, default_value_t = 16)]
        mu_points: usize,
        /// Number of s samples (region alpha >= 3/4 and nu = ±pi/2)
        #[arg(long, default_value_t = 4)]
        s_points: usize,
        #[arg(long, default_value_t = 3.0)]
        s_max: f64,
    },
    /// Zeros of the oscillating zero mode for alpha < -1/4
    Zeros {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_angle, default_value = "0")]
        phase: f64,
        /// Upper end of the window (units 1/k0); defaults to 1e-4/s
        #[arg(long)]
        x_hi: Option<f64>,
        /// Decades spanned by the window
        #[arg(long, default_value_t = 3.0)]
        decades: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Specfun,
    Riccati,
    Factorization,
    Extensions,
    Oracle,
    Zeros,
}

pub fn parse_real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if t.contains("pi") {
        return parse_angle(t);
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: f64 = n.trim().parse().map_err(|_| format!("not a number: {s}"))?;
        let d: f64 = d.trim().parse().map_err(|_| format!("not a number: {s}"))?;
        return Ok(n / d);
    }
    t.parse().map_err(|_| format!("not a number: {s}"))
}

/// Parses `x`, `pi`, `-pi/4`, `2pi/3`, `3*pi/8`, `±pi/2` (taken as `pi/2`).
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().replace(' ', "");
    let (sign, body) = if let Some(r) = t.strip_prefix('-') {
        (-1.0, r.to_string())
    } else if let Some(r) = t.strip_prefix('±').or_else(|| t.strip_prefix('+')) {
        (1.0, r.to_string())
    } else {
        (1.0, t.clone())
    };
    let Some(idx) = body.find("pi") else {
        return body
            .parse::<f64>()
            .map(|v| sign * v)
            .map_err(|_| format!("not an angle: {s}"));
    };
    let coef = body[..idx].trim_end_matches('*');
    let coef: f64 = if coef.is_empty() {
        1.0
    } else {
        coef.parse().map_err(|_| format!("not an angle: {s}"))?
    };
    let rest = &body[idx + 2..];
    let div: f64 = match rest.strip_prefix('/') {
        Some(d) => d.parse().map_err(|_| format!("not an angle: {s}"))?,
        None if rest.is_empty() => 1.0,
        None => return Err(format!("not an angle: {s}")),
    };
    Ok(sign * coef * std::f64::consts::PI / div)
}
