mod config;

use anyhow::{Context, Result};
use clap::Parser;
use config::{build, load_source, Cli, Command, ConfigError, Format, GenArgs, RunConfig};
use eigenbounds::report::{reports_to_csv, reports_to_json, series_to_csv, BoundReport, Status};
use eigenbounds::riesz_heat::karamata_limit_check;
use eigenbounds::spectra::write_spectrum;
use eigenbounds::suite::{run_suite, Suite, SuiteOutcome};
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

const BOUNDS_SUITES: &[Suite] = &[Suite::All];
const RIESZ_SUITES: &[Suite] = &[Suite::Berezin, Suite::Counting, Suite::HarrellStubbe];
const HEAT_SUITES: &[Suite] = &[Suite::Kac, Suite::HsMonotonicity, Suite::Laplace];

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<ConfigError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Returns whether every theorem-status check passed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen(args) => gen(&args).map(|()| true),
        Command::Bounds(args) => check(build(&args, BOUNDS_SUITES)?, false),
        Command::Riesz(args) => check(build(&args, RIESZ_SUITES)?, false),
        Command::Heat(args) => check(build(&args, HEAT_SUITES)?, false),
        Command::VerifyAll(args) => {
            if args.suite.is_some() {
                return Err(ConfigError("verify-all runs every suite; use `bounds --suite` to select".into()).into());
            }
            check(build(&args, BOUNDS_SUITES)?, true)
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn gen(args: &GenArgs) -> Result<()> {
    let spectrum = load_source(&args.source)?;
    let mut buf = Vec::new();
    write_spectrum(&spectrum, &mut buf)?;
    emit(args.output.as_deref(), std::str::from_utf8(&buf)?)
}

fn check(cfg: RunConfig, summary_only: bool) -> Result<bool> {
    let mut outcome = SuiteOutcome::default();
    for &suite in &cfg.suites {
        let o = run_suite(&cfg.spectrum, suite, &cfg.suite_config);
        outcome.reports.extend(o.reports);
        outcome.errors.extend(o.errors);
        outcome.skipped.extend(o.skipped);
    }
    let text = match cfg.format {
        Format::Csv => reports_to_csv(&outcome.reports),
        Format::Json => reports_to_json(&outcome.reports),
    };
    if !summary_only || cfg.output.is_some() {
        emit(cfg.output.as_deref(), &text)?;
    }
    if let Some(path) = &cfg.series {
        write_series(&cfg, path, &mut outcome)?;
    }
    let summary = summarize(&cfg, &outcome);
    if summary_only || cfg.output.is_some() {
        emit(None, &summary)?;
    } else {
        eprint!("{summary}");
    }
    Ok(outcome.passed())
}

fn write_series(cfg: &RunConfig, path: &Path, outcome: &mut SuiteOutcome) -> Result<()> {
    let c = &cfg.suite_config;
    match karamata_limit_check(&cfg.spectrum, &c.t_grid, &c.z_grid, &cfg.rhos, c.truncation_eps) {
        Ok(series) => {
            let mut text = String::new();
            let mut section = |name: &str, points| {
                let _ = writeln!(text, "# {name}");
                text.push_str(&series_to_csv(points));
            };
            section("heat t^(n/2) Z(t)", &series.heat);
            section("counting N(z) / z^(n/2)", &series.counting);
            for (rho, points) in &series.riesz {
                section(&format!("riesz R_{rho}(z) / z^({rho}+n/2)"), points);
            }
            let _ = writeln!(text, "# consistency {:e}", series.consistency);
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        Err(e) => {
            outcome.errors.push(format!("series: {e}"));
            Ok(())
        }
    }
}

fn summarize(cfg: &RunConfig, outcome: &SuiteOutcome) -> String {
    let mut ids: Vec<&str> = Vec::new();
    for r in &outcome.reports {
        let id = r.bound_id.as_str();
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    let mut s = String::new();
    let names: Vec<&str> = cfg.suites.iter().map(|s| s.name()).collect();
    let _ = writeln!(s, "== summary ==");
    let _ = writeln!(s, "spectrum: {}", cfg.spectrum.domain().label());
    let _ = writeln!(s, "suites: {}", names.join(","));
    for id in &ids {
        let rows: Vec<&BoundReport> = outcome.reports.iter().filter(|r| r.bound_id.as_str() == *id).collect();
        let ok = rows.iter().filter(|r| r.satisfied).count();
        let status = rows[0].status;
        let mixed = rows.iter().any(|r| r.status != status);
        let _ = writeln!(
            s,
            "{id}: {ok}/{} satisfied ({})",
            rows.len(),
            if mixed { "mixed" } else { status.as_str() }
        );
    }
    let failures: Vec<&BoundReport> = outcome.theorem_failures().collect();
    if !failures.is_empty() {
        let _ = writeln!(s, "theorem failures: {}", failures.len());
        for r in failures.iter().take(20) {
            let _ = writeln!(
                s,
                "  {} {}={} lhs={} rhs={} margin={}",
                r.bound_id.as_str(),
                r.argument.name(),
                r.argument.value(),
                r.lhs,
                r.rhs,
                r.margin
            );
        }
        if failures.len() > 20 {
            let _ = writeln!(s, "  ... and {} more", failures.len() - 20);
        }
    }
    let informational = outcome
        .reports
        .iter()
        .filter(|r| !r.satisfied && r.status != Status::Theorem)
        .count();
    if informational > 0 {
        let _ = writeln!(s, "unsatisfied non-theorem checks (informational): {informational}");
    }
    if !outcome.errors.is_empty() {
        let _ = writeln!(s, "errors: {}", outcome.errors.len());
        for e in outcome.errors.iter().take(20) {
            let _ = writeln!(s, "  {e}");
        }
        if outcome.errors.len() > 20 {
            let _ = writeln!(s, "  ... and {} more", outcome.errors.len() - 20);
        }
    }
    for k in &outcome.skipped {
        let _ = writeln!(s, "skipped: {k}");
    }
    let _ = writeln!(s, "result: {}", if outcome.passed() { "PASS" } else { "FAIL" });
    s
}
