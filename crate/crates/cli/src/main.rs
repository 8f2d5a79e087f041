use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser};
use gwm_cli::{parse_beta, parse_grid, render, run, CliError, Command, Format, Route, Subcommand, DEFAULT_TOL};
use gwm_core::mc::Horizon;

/// Maximum of the Gaussian random walk with negative drift -β.
#[derive(Parser)]
#[command(name = "gwm", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Sub,
}

#[derive(clap::Subcommand)]
enum Sub {
    /// P(M=0), E M and Var M
    Stats(StatsArgs),
    /// Zeta vs Spitzer terms, values and decay ratios over a grid
    Compare(PointArgs),
    /// Drift at which both series decay equally fast
    Crossover(FormatArgs),
    /// J_k(β) = Σ E((S_n^+)^k)/n
    Jk(JkArgs),
    /// Monte Carlo estimates
    Mc(McArgs),
}

#[derive(Args)]
struct FormatArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, allow_negative_numbers = true, conflicts_with = "beta_grid")]
    beta: Option<f64>,
    /// start:stop:step
    #[arg(long, allow_hyphen_values = true)]
    beta_grid: Option<String>,
    #[arg(long, default_value_t = DEFAULT_TOL, allow_negative_numbers = true)]
    tol: f64,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, value_enum, default_value_t = Route::Auto)]
    method: Route,
}

#[derive(Args)]
struct JkArgs {
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, value_enum, default_value_t = Route::Auto)]
    method: Route,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct McArgs {
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    paths: usize,
    /// steps per path, or "auto"
    #[arg(long, default_value = "auto")]
    horizon: String,
}

fn fill_point(cmd: &mut Command, p: &PointArgs) -> Result<(), CliError> {
    cmd.betas = match (&p.beta, &p.beta_grid) {
        (Some(b), _) => vec![parse_beta(*b)?],
        (None, Some(g)) => parse_grid(g)?,
        (None, None) => Vec::new(),
    };
    if !(p.tol.is_finite() && p.tol > 0.0) {
        return Err(CliError::usage("tol must be positive"));
    }
    cmd.tol = p.tol;
    cmd.format = p.format.format;
    Ok(())
}

fn build(cli: Cli) -> Result<Command, CliError> {
    Ok(match cli.cmd {
        Sub::Stats(a) => {
            let mut c = Command::new(Subcommand::Stats);
            fill_point(&mut c, &a.point)?;
            c.route = a.method;
            c
        }
        Sub::Compare(a) => {
            let mut c = Command::new(Subcommand::Compare);
            fill_point(&mut c, &a)?;
            c
        }
        Sub::Crossover(a) => {
            let mut c = Command::new(Subcommand::Crossover);
            c.format = a.format;
            c
        }
        Sub::Jk(a) => {
            let mut c = Command::new(Subcommand::Jk);
            fill_point(&mut c, &a.point)?;
            c.route = a.method;
            c.k = a.k;
            c
        }
        Sub::Mc(a) => {
            let mut c = Command::new(Subcommand::Mc);
            fill_point(&mut c, &a.point)?;
            c.seed = a.seed;
            c.paths = a.paths;
            c.horizon = match a.horizon.as_str() {
                "auto" => Horizon::Auto,
                h => Horizon::Fixed(
                    h.parse()
                        .map_err(|_| CliError::usage("horizon must be a positive integer or auto"))?,
                ),
            };
            c
        }
    })
}

fn main() -> ExitCode {
    let outcome = build(Cli::parse()).and_then(|cmd| run(&cmd).map(|r| (cmd.format, r)));
    match outcome {
        Ok((format, report)) => {
            let _ = std::io::stdout().write_all(render(&report, format).as_bytes());
            for f in &report.failures {
                eprintln!("error: {f}");
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
