//! The `metriq` command line: `eval`, `verify`, `search` and `figure`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 I/O error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use crate::analysis::{
    figure1_grid, inequality_sweep, metric_check_with, quasi_constant, quotient_search, special_case_extremum,
    Inequality, Quotient, QuotientSearch, TripleSearch,
};
use crate::error::{invalid, Error, Result};
use crate::geometry::{Domain, Point};
use crate::metrics::{self, MetricId, MetricKind, Strategy};
use crate::report::{self, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Evaluate metrics at a pair of points.
    Eval,
    /// Check an inequality chain or the triangle inequality.
    Verify,
    /// Search for extremal constants.
    Search,
    /// Write the s/w quotient grid for fixed x.
    Figure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn parse_strategy(s: &str) -> Result<Strategy> {
    s.parse()
}

/// Parsed command line.
#[derive(Clone, Debug, PartialEq, Parser)]
#[command(name = "metriq", version, about = "Intrinsic metrics of planar and higher dimensional domains")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Domain literal such as `ball:n=2`, `halfspace:n=2`,
    /// `sector:theta=1.5707963`, `polygon:(-1,0);(1,0);(1,1);(-1,1)` or
    /// `punctured:(0,0);(1,0)`.
    #[arg(long, default_value = "ball:n=2")]
    pub domain: Domain,

    /// Comma separated metric names: jstar, pp, s, w, low, rho, th2, th4.
    #[arg(long = "metric", value_delimiter = ',', default_value = "s")]
    pub metrics: Vec<MetricKind>,

    /// First point (`a,b[,...]`); the fixed real part for `figure`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,

    /// Second point.
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,

    /// Inequality selector (L23a, C48, T510, ...) or `<metric>-metric`.
    #[arg(long)]
    pub chain: Option<String>,

    /// Search target: p-quasi, w-quasi, quasi, sw-sup, pw-sup, wj-sup or
    /// sw-special.
    #[arg(long)]
    pub target: Option<String>,

    /// Force the evaluation strategy for `s`: closed or oracle.
    #[arg(long, value_parser = parse_strategy)]
    pub strategy: Option<Strategy>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Number of samples.
    #[arg(long = "n", default_value_t = 100_000)]
    pub n_samples: usize,

    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,

    /// Grid size for `figure`.
    #[arg(long, default_value_t = 200)]
    pub resolution: usize,

    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format; `figure` defaults to csv, everything else to json.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Record wall time in reports.
    #[arg(long)]
    pub timing: bool,
}

impl RunConfig {
    /// Command-line arguments (without the program name) that parse back
    /// into `self`.
    pub fn to_args(&self) -> Vec<String> {
        let name = |v: &dyn ValueEnumName| v.value_name();
        let mut a = vec![name(&self.command)];
        a.extend(["--domain".into(), self.domain.to_string()]);
        let metrics: Vec<&str> = self.metrics.iter().map(|m| m.name()).collect();
        a.extend(["--metric".into(), metrics.join(",")]);
        for (flag, v) in [("--x", &self.x), ("--y", &self.y), ("--chain", &self.chain), ("--target", &self.target)] {
            if let Some(v) = v {
                a.push(format!("{flag}={v}"));
            }
        }
        if let Some(s) = self.strategy {
            a.extend(["--strategy".into(), s.name().into()]);
        }
        a.extend(["--seed".into(), self.seed.to_string()]);
        a.extend(["--n".into(), self.n_samples.to_string()]);
        a.extend(["--tol".into(), self.tol.to_string()]);
        a.extend(["--resolution".into(), self.resolution.to_string()]);
        if let Some(p) = &self.out {
            a.extend(["--out".into(), p.display().to_string()]);
        }
        if let Some(f) = self.format {
            a.extend(["--format".into(), name(&f)]);
        }
        if self.timing {
            a.push("--timing".into());
        }
        a
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

trait ValueEnumName {
    fn value_name(&self) -> String;
}

impl<T: ValueEnum> ValueEnumName for T {
    fn value_name(&self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

/// Whether a command succeeded or found a violation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| invalid(format!("missing --{flag}")))
}

/// Runs one command, writing its output to `out`.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<Status> {
    let start = Instant::now();
    let elapsed = || cfg.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    match cfg.command {
        Command::Eval => cmd_eval(cfg, out),
        Command::Verify => cmd_verify(cfg, out, elapsed),
        Command::Search => cmd_search(cfg, out, elapsed),
        Command::Figure => cmd_figure(cfg, out),
    }
}

fn write_report(cfg: &RunConfig, out: &mut dyn Write, r: &Report) -> Result<()> {
    match cfg.format_or(Format::Json) {
        Format::Json => report::write_json(out, r),
        Format::Csv => report::write_report_csv(out, r),
    }
}

fn cmd_eval(cfg: &RunConfig, out: &mut dyn Write) -> Result<Status> {
    let x: Point = required(&cfg.x, "x")?.parse()?;
    let y: Point = required(&cfg.y, "y")?.parse()?;
    let records = cfg
        .metrics
        .iter()
        .map(|&kind| {
            let mut id = MetricId::for_domain(kind, &cfg.domain);
            if let Some(s) = cfg.strategy {
                id.strategy = s;
            }
            metrics::evaluate(&cfg.domain, id, &x, &y, cfg.tol)
        })
        .collect::<Result<Vec<_>>>()?;
    match cfg.format_or(Format::Json) {
        Format::Json => report::write_json(out, &records)?,
        Format::Csv => report::write_records_csv(out, &records)?,
    }
    Ok(Status::Pass)
}

fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write, elapsed: impl Fn() -> Option<f64>) -> Result<Status> {
    let chain = required(&cfg.chain, "chain")?;
    let sweep = if let Some(kind) = chain.strip_suffix("-metric") {
        let kind: MetricKind = kind.parse()?;
        let opts = TripleSearch { tol: cfg.tol, ..TripleSearch::new(cfg.n_samples, cfg.seed) };
        metric_check_with(&cfg.domain, MetricId::for_domain(kind, &cfg.domain), &opts)?
    } else {
        let sel: Inequality = chain.parse()?;
        inequality_sweep(&cfg.domain, sel, cfg.n_samples, cfg.seed, cfg.tol)?
    };
    let mut r = Report::from_sweep("verify", &sweep);
    r.runtime_ms = elapsed();
    write_report(cfg, out, &r)?;
    Ok(if sweep.pass { Status::Pass } else { Status::Fail })
}

fn cmd_search(cfg: &RunConfig, out: &mut dyn Write, elapsed: impl Fn() -> Option<f64>) -> Result<Status> {
    let target = required(&cfg.target, "target")?;
    let d = &cfg.domain;
    let triple = |kind: MetricKind| -> Result<Report> {
        let w = quasi_constant(d, MetricId::for_domain(kind, d), cfg.n_samples, cfg.seed)?;
        Ok(Report::from_triple("search", &w))
    };
    let quotient = |q: Quotient| -> Result<Report> {
        let e = quotient_search(d, &QuotientSearch::new(q, cfg.n_samples, cfg.seed))?;
        Ok(Report::from_extremum("search", &e))
    };
    let mut r = match target {
        "p-quasi" => triple(MetricKind::PointPair)?,
        "w-quasi" => triple(MetricKind::W)?,
        "quasi" => triple(*cfg.metrics.first().ok_or_else(|| invalid("missing --metric"))?)?,
        "sw-sup" => quotient(Quotient::SOverW)?,
        "pw-sup" => quotient(Quotient::POverW)?,
        "wj-sup" => quotient(Quotient::WOverJStar)?,
        "sw-special" => Report::from_extremum("search", &special_case_extremum()?),
        other => return Err(Error::Parse(format!("unknown search target `{other}`"))),
    };
    r.runtime_ms = elapsed();
    write_report(cfg, out, &r)?;
    Ok(Status::Pass)
}

fn cmd_figure(cfg: &RunConfig, out: &mut dyn Write) -> Result<Status> {
    let x: f64 = match &cfg.x {
        Some(s) => s.trim().parse().map_err(|_| Error::Parse(format!("bad value `{s}` for --x")))?,
        None => 0.6,
    };
    let rows = figure1_grid(x, cfg.resolution)?;
    match cfg.format_or(Format::Csv) {
        Format::Csv => report::write_figure_csv(out, &rows)?,
        Format::Json => report::write_json(out, &rows)?,
    }
    Ok(Status::Pass)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 3,
        _ => 2,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut buf = Vec::new();
    let result = run(&cfg, &mut buf).and_then(|status| {
        match &cfg.out {
            Some(path) => fs::write(path, &buf)?,
            None => io::stdout().write_all(&buf)?,
        }
        Ok(status)
    });
    match result {
        Ok(Status::Pass) => 0,
        Ok(Status::Fail) => 1,
        Err(e) => {
            eprintln!("metriq: {e}");
            exit_code(&e)
        }
    }
}
