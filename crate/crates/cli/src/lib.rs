//! Front end for `gwm`: turns a parsed [`Command`] into result rows and
//! renders them as a table, CSV or JSON.

use std::fmt::Write as _;

use gwm_core::mc::{simulate_max, Horizon, McConfig};
use gwm_core::walk::{
    auto_method, crossover, j0_zeta, jk_spitzer, jk_zeta, stats_with, Drift, Method, MomentOrder,
    WalkStats,
};
use gwm_core::{Error, Precision, SeriesEval};
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_TERMS: usize = 100_000;
const MAX_GRID_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Route {
    Zeta,
    Spitzer,
    Extended,
    Asymptotic,
    Auto,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Stats,
    Compare,
    Crossover,
    Jk,
    Mc,
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct Command {
    pub subcommand: Subcommand,
    pub betas: Vec<f64>,
    pub route: Route,
    pub k: usize,
    pub tol: f64,
    pub format: Format,
    pub seed: u64,
    pub paths: usize,
    pub horizon: Horizon,
}

impl Command {
    pub fn new(subcommand: Subcommand) -> Self {
        Command {
            subcommand,
            betas: Vec::new(),
            route: Route::Auto,
            k: 0,
            tol: DEFAULT_TOL,
            format: Format::Table,
            seed: 1,
            paths: 1_000_000,
            horizon: Horizon::Auto,
        }
    }

    fn precision(&self) -> Result<Precision<f64>, CliError> {
        Precision::new(self.tol, MAX_TERMS).map_err(|_| CliError::usage("tol must be positive"))
    }
}

/// Error carrying the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    fn from_core(route: &str, beta: f64, e: &Error) -> Self {
        CliError {
            code: exit_code(e),
            message: format!("{route} route at beta={beta}: {e}"),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

/// 2 for domain/usage errors, 3 for unmet tolerances, 4 for anything internal.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::PoleAtOne | Error::Branch(_) => 2,
        Error::ToleranceNotMet { .. }
        | Error::RemainderUnbounded(_)
        | Error::BatemanInvalid(_)
        | Error::HorizonTooSmall(_) => 3,
        Error::ConvergenceFailure(_) | Error::Overflow(_) => 4,
    }
}

pub fn parse_beta(beta: f64) -> Result<f64, CliError> {
    if beta.is_finite() && beta > 0.0 {
        Ok(beta)
    } else {
        Err(CliError::usage("beta must be positive"))
    }
}

/// `start:stop:step`, inclusive of `stop` up to rounding.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::usage(format!("beta-grid must be start:stop:step, got {spec:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (parse_beta(nums[0])?, nums[1], nums[2]);
    if !(step.is_finite() && step > 0.0) {
        return Err(CliError::usage("beta-grid step must be positive"));
    }
    if !(stop.is_finite() && stop >= start) {
        return Err(CliError::usage("beta-grid stop must be >= start"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > MAX_GRID_POINTS {
        return Err(CliError::usage(format!("beta-grid has more than {MAX_GRID_POINTS} points")));
    }
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

/// One emitted value. Every value carries its tail bound (or standard error).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub beta: f64,
    pub statistic: String,
    pub value: f64,
    pub method: String,
    pub terms: usize,
    pub tail_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decay_ratio: Option<f64>,
}

impl Row {
    fn from_eval(beta: f64, statistic: &str, method: &str, e: &SeriesEval<f64>) -> Self {
        Row {
            beta,
            statistic: statistic.into(),
            value: e.value,
            method: method.into(),
            terms: e.terms_used,
            tail_bound: e.tail_bound,
            decay_ratio: None,
        }
    }

    fn failed(beta: f64, statistic: &str, method: &str) -> Self {
        Row {
            beta,
            statistic: statistic.into(),
            value: f64::NAN,
            method: method.into(),
            terms: 0,
            tail_bound: f64::NAN,
            decay_ratio: None,
        }
    }

    fn discrepancy(a: &Row, b: &Row) -> Row {
        Row {
            beta: a.beta,
            statistic: a.statistic.clone(),
            value: (a.value - b.value).abs(),
            method: "discrepancy".into(),
            terms: 0,
            tail_bound: a.tail_bound + b.tail_bound,
            decay_ratio: None,
        }
    }
}

/// Rows plus per-row failures; a report with failures still renders its rows.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub rows: Vec<Row>,
    pub failures: Vec<CliError>,
    pub notes: Vec<String>,
}

impl Report {
    /// Exit code of the worst failure, 0 when clean.
    pub fn exit_code(&self) -> i32 {
        self.failures.iter().map(|f| f.code).max().unwrap_or(0)
    }

    fn merge(&mut self, other: Report) {
        self.rows.extend(other.rows);
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

pub fn run(cmd: &Command) -> Result<Report, CliError> {
    match cmd.subcommand {
        Subcommand::Stats => run_stats(cmd),
        Subcommand::Compare => run_compare(cmd),
        Subcommand::Crossover => run_crossover(cmd),
        Subcommand::Jk => run_jk(cmd),
        Subcommand::Mc => run_mc(cmd),
    }
}

fn drift(beta: f64) -> Result<Drift<f64>, CliError> {
    Drift::new(beta).map_err(|_| CliError::usage("beta must be positive"))
}

fn need_betas(cmd: &Command) -> Result<(), CliError> {
    if cmd.betas.is_empty() {
        return Err(CliError::usage("one of --beta or --beta-grid is required"));
    }
    cmd.betas.iter().try_for_each(|&b| parse_beta(b).map(|_| ()))?;
    if cmd.betas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::usage("beta values must be strictly increasing"));
    }
    Ok(())
}

fn stats_rows(s: &WalkStats<f64>, beta: f64) -> Vec<Row> {
    let m = s.method.tag();
    vec![
        Row::from_eval(beta, "p_zero", m, &s.diagnostics.p_zero),
        Row::from_eval(beta, "mean", m, &s.diagnostics.mean),
        Row::from_eval(beta, "variance", m, &s.diagnostics.variance),
    ]
}

fn methods_for(route: Route, d: Drift<f64>) -> Vec<Method> {
    match route {
        Route::Zeta => vec![Method::ZetaSeries],
        Route::Spitzer => vec![Method::Spitzer],
        Route::Extended => vec![Method::Extended],
        Route::Asymptotic => vec![Method::Asymptotic],
        Route::Auto => vec![auto_method(d)],
        Route::Both => vec![Method::ZetaSeries, Method::Spitzer],
    }
}

fn with_discrepancies(mut rows: Vec<Row>, n: usize) -> Vec<Row> {
    // rows = [route A block of n, route B block of n]
    if rows.len() == 2 * n {
        let extra: Vec<Row> = (0..n).map(|i| Row::discrepancy(&rows[i], &rows[n + i])).collect();
        rows.extend(extra);
    }
    rows
}

fn stats_point(beta: f64, route: Route, prec: Precision<f64>) -> Report {
    let d = match drift(beta) {
        Ok(d) => d,
        Err(e) => return Report { failures: vec![e], ..Report::default() },
    };
    let mut report = Report::default();
    for m in methods_for(route, d) {
        match stats_with(m, d, prec) {
            Ok(s) => report.rows.extend(stats_rows(&s, beta)),
            Err(e) => report.failures.push(CliError::from_core(m.tag(), beta, &e)),
        }
    }
    if route == Route::Both {
        report.rows = with_discrepancies(std::mem::take(&mut report.rows), 3);
    }
    report
}

/// P(M=0), E M, Var M for each β.
pub fn run_stats(cmd: &Command) -> Result<Report, CliError> {
    need_betas(cmd)?;
    let prec = cmd.precision()?;
    Ok(collect_grid(&cmd.betas, |b| stats_point(b, cmd.route, prec)))
}

fn collect_grid(betas: &[f64], f: impl Fn(f64) -> Report + Sync) -> Report {
    let parts: Vec<Report> = betas.par_iter().map(|&b| f(b)).collect();
    let mut out = Report::default();
    for p in parts {
        out.merge(p);
    }
    out
}

fn compare_point(beta: f64, prec: Precision<f64>) -> Report {
    let d = match drift(beta) {
        Ok(d) => d,
        Err(e) => return Report { failures: vec![e], ..Report::default() },
    };
    let ratios = [
        (Method::ZetaSeries, beta * beta / (4.0 * std::f64::consts::PI)),
        (Method::Spitzer, (-0.5 * beta * beta).exp()),
    ];
    let mut report = Report::default();
    for (m, ratio) in ratios {
        let mut rows = match stats_with(m, d, prec) {
            Ok(s) => stats_rows(&s, beta),
            Err(e) => {
                report.failures.push(CliError::from_core(m.tag(), beta, &e));
                ["p_zero", "mean", "variance"]
                    .iter()
                    .map(|s| Row::failed(beta, s, m.tag()))
                    .collect()
            }
        };
        for r in &mut rows {
            r.decay_ratio = Some(ratio);
        }
        report.rows.extend(rows);
    }
    report
}

/// Terms and values of the zeta and Spitzer routes side by side, with the
/// per-term decay ratios β²/(4π) and e^{-β²/2}. Failed routes yield NaN rows.
pub fn run_compare(cmd: &Command) -> Result<Report, CliError> {
    need_betas(cmd)?;
    let prec = cmd.precision()?;
    Ok(collect_grid(&cmd.betas, |b| compare_point(b, prec)))
}

/// Root of x e^x = 2π, the drift where both series decay at the same rate.
pub fn run_crossover(_cmd: &Command) -> Result<Report, CliError> {
    let c = crossover().map_err(|e| CliError::from_core("crossover", f64::NAN, &e))?;
    let terms = c.bisection_steps + 2;
    // bisection width 1e-12 before polishing; propagated through β₀ and e^{-x₀}
    let dx = 1e-12;
    let row = |statistic: &str, value: f64, bound: f64| Row {
        beta: c.beta0,
        statistic: statistic.into(),
        value,
        method: "bisection_newton".into(),
        terms,
        tail_bound: bound,
        decay_ratio: None,
    };
    Ok(Report {
        rows: vec![
            row("x0", c.x0, dx),
            row("beta0", c.beta0, dx / c.beta0),
            row("common_ratio", c.common_ratio, dx * c.common_ratio),
        ],
        ..Report::default()
    })
}

fn jk_route(k: MomentOrder, d: Drift<f64>, m: Method, prec: Precision<f64>) -> gwm_core::Result<SeriesEval<f64>> {
    match m {
        Method::ZetaSeries if k.get() == 0 => j0_zeta(d, prec),
        Method::ZetaSeries => jk_zeta(k, d, prec),
        _ => jk_spitzer(k, d, prec),
    }
}

fn jk_point(beta: f64, k: MomentOrder, route: Route, prec: Precision<f64>) -> Report {
    let d = match drift(beta) {
        Ok(d) => d,
        Err(e) => return Report { failures: vec![e], ..Report::default() },
    };
    let stat = format!("J_{}", k.get());
    let mut report = Report::default();
    for m in methods_for(route, d) {
        match jk_route(k, d, m, prec) {
            Ok(e) => report.rows.push(Row::from_eval(beta, &stat, m.tag(), &e)),
            Err(e) => report.failures.push(CliError::from_core(m.tag(), beta, &e)),
        }
    }
    if route == Route::Both {
        report.rows = with_discrepancies(std::mem::take(&mut report.rows), 1);
    }
    report
}

/// J_k(β) by the zeta or Spitzer route; `both` adds the discrepancy.
pub fn run_jk(cmd: &Command) -> Result<Report, CliError> {
    need_betas(cmd)?;
    let k = MomentOrder::new(cmd.k).map_err(|_| CliError::usage("k must be between 0 and 10"))?;
    if matches!(cmd.route, Route::Extended | Route::Asymptotic) {
        return Err(CliError::usage("jk supports --method zeta, spitzer, auto or both"));
    }
    let prec = cmd.precision()?;
    Ok(collect_grid(&cmd.betas, |b| jk_point(b, k, cmd.route, prec)))
}

/// Monte Carlo estimates; `tail_bound` carries the standard error.
pub fn run_mc(cmd: &Command) -> Result<Report, CliError> {
    need_betas(cmd)?;
    let mut report = Report::default();
    // paths within a run are already parallel, so the grid is walked in order
    for &beta in &cmd.betas {
        let d = drift(beta)?;
        let est = McConfig::new(d, cmd.paths, cmd.seed)
            .and_then(|c| c.with_horizon(cmd.horizon))
            .and_then(|c| simulate_max(&c));
        let est = match est {
            Ok(e) => e,
            Err(e) => {
                report.failures.push(CliError::from_core("monte_carlo", beta, &e));
                continue;
            }
        };
        let row = |statistic: &str, value: f64, se: f64| Row {
            beta,
            statistic: statistic.into(),
            value,
            method: "monte_carlo".into(),
            terms: est.paths,
            tail_bound: se,
            decay_ratio: None,
        };
        report.rows.push(row("p_zero", est.p_zero_hat, est.se_pzero));
        report.rows.push(row("mean", est.mean_hat, est.se_mean));
        report.rows.push(row("variance", est.var_hat, est.se_var));
        report.notes.push(format!(
            "beta={beta}: seed {}, horizon {}, truncation bound {:.3e}",
            est.seed, est.horizon_used, est.truncation_bound
        ));
    }
    Ok(report)
}

fn sci(x: f64) -> String {
    format!("{x:.11e}")
}

/// 12 significant digits, fixed notation where that stays readable.
fn human(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-3..1e6).contains(&a) {
        let exp10 = if x == 0.0 { 0 } else { a.log10().floor() as i64 };
        format!("{x:.*}", (11 - exp10).max(0) as usize)
    } else {
        sci(x)
    }
}

pub fn render(report: &Report, format: Format) -> String {
    let with_ratio = report.rows.iter().any(|r| r.decay_ratio.is_some());
    match format {
        Format::Csv => render_csv(&report.rows, with_ratio),
        Format::Json => render_json(&report.rows),
        Format::Table => render_table(report, with_ratio),
    }
}

fn render_csv(rows: &[Row], with_ratio: bool) -> String {
    let mut out = String::from("beta,stat,method,value,terms,tail_bound");
    if with_ratio {
        out.push_str(",decay_ratio");
    }
    out.push('\n');
    for r in rows {
        let _ = write!(
            out,
            "{},{},{},{},{},{}",
            sci(r.beta),
            r.statistic,
            r.method,
            sci(r.value),
            r.terms,
            sci(r.tail_bound)
        );
        if with_ratio {
            let _ = write!(out, ",{}", r.decay_ratio.map_or_else(String::new, sci));
        }
        out.push('\n');
    }
    out
}

// serde_json turns NaN into null, which is what failed rows should read as
fn render_json(rows: &[Row]) -> String {
    let text = if rows.len() == 1 {
        serde_json::to_string_pretty(&rows[0])
    } else {
        serde_json::to_string_pretty(rows)
    };
    text.expect("rows serialize") + "\n"
}

fn render_table(report: &Report, with_ratio: bool) -> String {
    let mut header = vec!["beta", "statistic", "method", "value", "terms", "tail_bound"];
    if with_ratio {
        header.push("decay_ratio");
    }
    let body: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            let mut cells = vec![
                human(r.beta),
                r.statistic.clone(),
                r.method.clone(),
                human(r.value),
                r.terms.to_string(),
                format!("{:.3e}", r.tail_bound),
            ];
            if with_ratio {
                cells.push(r.decay_ratio.map_or_else(String::new, |x| format!("{x:.6}")));
            }
            cells
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| body.iter().map(|c| c[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.clone(), &mut out);
    for cells in &body {
        line(cells.iter().map(String::as_str).collect(), &mut out);
    }
    for note in &report.notes {
        let _ = writeln!(out, "# {note}");
    }
    out
}
