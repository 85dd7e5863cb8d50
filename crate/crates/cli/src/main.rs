//! `gsk`: verification suites, parameter scans and single evaluations.

mod config;
mod eval;
mod parse;
mod report;
mod scan;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::Settings;
use report::emit;
use suites::Suite;

/// Bad flags, config or output path. Exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Debug, Parser)]
#[command(name = "gsk", version, about = "Kloosterman sums and spectral transforms over Z[i]: verification suites")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Run a verification suite and write a report; exit 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate measured values over a parameter grid.
    Scan {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grids: Grids,
    },
    /// Evaluate one quantity and print it as JSON.
    #[command(subcommand)]
    Eval(eval::Eval),
}

#[derive(Debug, Args)]
struct Common {
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    max_norm: Option<i64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    /// Worker threads; 0 uses one per core.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    tol_exact: Option<f64>,
    #[arg(long)]
    tol_quadrature: Option<f64>,
    #[arg(long)]
    tol_cross: Option<f64>,
}

/// Comma lists, or `a..b` for powers of 4 between `a` and `b`.
#[derive(Debug, Args)]
struct Grids {
    #[arg(long)]
    nu: Option<String>,
    #[arg(long = "x", visible_alias = "X")]
    x: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    w: Option<String>,
}

impl Common {
    fn settings(&self, grids: Option<&Grids>) -> Result<Settings, UsageError> {
        let mut s = Settings::default();
        if let Some(path) = &self.config {
            s.apply_all(&config::load(path)?)?;
        }
        let mut flags: Vec<(&str, String)> = Vec::new();
        let mut put = |k: &'static str, v: Option<String>| {
            if let Some(v) = v {
                flags.push((k, v));
            }
        };
        put("max_norm", self.max_norm.map(|v| v.to_string()));
        put("trials", self.trials.map(|v| v.to_string()));
        put("seed", self.seed.map(|v| v.to_string()));
        put("out", self.out.as_ref().map(|p| p.display().to_string()));
        put("format", self.format.clone());
        put("workers", self.workers.map(|v| v.to_string()));
        put("tol_exact", self.tol_exact.map(|v| v.to_string()));
        put("tol_quadrature", self.tol_quadrature.map(|v| v.to_string()));
        put("tol_cross", self.tol_cross.map(|v| v.to_string()));
        if let Some(g) = grids {
            put("nu", g.nu.clone());
            put("x", g.x.clone());
            put("t", g.t.clone());
            put("q", g.q.clone());
            put("n", g.n.clone());
            put("w", g.w.clone());
        }
        for (k, v) in flags {
            s.apply(k, &v)?;
        }
        Ok(s)
    }
}

fn write_out(text: &str, s: &Settings) -> Result<(), UsageError> {
    emit(text, s.out.as_deref()).map_err(|e| {
        let target = s.out.as_ref().map_or("standard output".to_string(), |p| p.display().to_string());
        UsageError(format!("cannot write {target}: {e}"))
    })
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.cmd {
        Cmd::Verify { suite, common } => {
            let s = common.settings(None)?;
            let report = suites::run_suite(suite, &s)?;
            write_out(&report.render(s.format), &s)?;
            let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
            if report.passed() {
                eprintln!("{}: {} checks passed", report.suite, report.checks.len());
                Ok(ExitCode::SUCCESS)
            } else {
                for name in &failed {
                    eprintln!("check failed: {name}");
                }
                eprintln!("{}: {} of {} checks failed", report.suite, failed.len(), report.checks.len());
                Ok(ExitCode::from(1))
            }
        }
        Cmd::Scan { suite, common, grids } => {
            let s = common.settings(Some(&grids))?;
            match scan::run_scan(suite, &s) {
                Ok(t) => {
                    write_out(&t.render(s.format), &s)?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(scan::ScanError::Usage(e)) => Err(e),
                Err(scan::ScanError::Core(e)) => {
                    eprintln!("scan failed: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Eval(e) => match eval::run(&e) {
            Ok(v) => {
                println!("{v}");
                Ok(ExitCode::SUCCESS)
            }
            Err(gsk_core::Error::Domain(msg)) => Err(UsageError(msg)),
            Err(err) => {
                eprintln!("evaluation failed: {err}");
                Ok(ExitCode::from(1))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
