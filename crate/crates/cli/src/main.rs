mod args;
mod commands;
mod report;
mod suites;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use report::Report;

fn run(cli: &Cli) -> calogero::Result<Report> {
    let k0 = cli.common.k0;
    let mut report = match cli.command {
        Command::Verify { suite, cases } => suites::run(suite, cli.common.seed, cases)?,
        Command::GroundState { alpha, nu, tol } => commands::ground_state(k0, alpha, nu, tol)?,
        Command::Factorize {
            alpha,
            mu,
            s,
            riccati_tol,
            factorization_tol,
        } => commands::factorize(k0, alpha, mu, s, riccati_tol, factorization_tol)?,
        Command::Sweep {
            alpha,
            nu,
            mu_points,
            s_points,
            s_max,
        } => commands::sweep(k0, alpha, nu, mu_points, s_points, s_max)?,
        Command::Zeros {
            alpha,
            s,
            phase,
            x_hi,
            decades,
            tol,
        } => commands::zeros(k0, alpha, s, phase, x_hi, decades, tol)?,
    };
    if report.seed.is_none() && matches!(cli.command, Command::Verify { .. }) {
        report.seed = Some(cli.common.seed);
    }
    Ok(report)
}

/// Parameter and region errors are the caller's fault (exit 2); everything
/// else is a numerical failure (exit 1).
fn exit_code(err: &calogero::Error) -> u8 {
    use calogero::Error::*;
    match err {
        Regime { .. } | NoRepresentation { .. } | InvalidParams(_) | Domain { .. } | WindowTooLarge { .. } => 2,
        _ => 1,
    }
}

fn emit(cli: &Cli, report: &Report) -> anyhow::Result<()> {
    let text = report.render(cli.common.output)?;
    match &cli.common.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Err(e) = emit(&cli, &report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
