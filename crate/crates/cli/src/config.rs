//! Command-line arguments and their validation into run configurations.

use clap::{Args, Parser, Subcommand, ValueEnum};
use eigenbounds::spectra::{
    ball_spectrum, box_spectrum, load_spectrum, projective_spectrum, sphere_spectrum, Field, Spectrum,
};
use eigenbounds::suite::{Suite, SuiteConfig};
use eigenbounds::universal_bounds::ShiftContext;
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;

/// An invalid command line or input file. Reported with exit status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config_err(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "eigenbounds",
    version,
    about = "Exact model spectra and universal eigenvalue inequalities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a spectrum and write it as a spectrum file.
    Gen(GenArgs),
    /// Run inequality suites over k, z and t grids.
    Bounds(CheckArgs),
    /// Riesz-mean checks: Berezin, counting and Harrell-Stubbe over the z grid.
    Riesz(CheckArgs),
    /// Heat-trace checks: Kac, monotonicity and Laplace consistency over the t grid.
    Heat(CheckArgs),
    /// Run every applicable check and print a summary; exits 1 on any theorem failure.
    VerifyAll(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Dirichlet box with the given side lengths; `pi` and `k*pi` are accepted.
    #[arg(long = "box", value_name = "L1,...")]
    pub box_lengths: Option<String>,
    /// Dirichlet ball of dimension n and radius R.
    #[arg(long, value_name = "n,R")]
    pub ball: Option<String>,
    /// Closed unit sphere S^n.
    #[arg(long, value_name = "n")]
    pub sphere: Option<usize>,
    /// Closed projective space FP^m with F in {R, C, Q}.
    #[arg(long, value_name = "F,m")]
    pub projective: Option<String>,
    /// Spectrum file written by `gen`.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Eigenvalues to generate (box, ball) or distinct levels (sphere, projective).
    #[arg(long, value_name = "N")]
    pub count: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Output path; stdout when omitted.
    #[arg(short = 'o', long = "output", value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Inclusive index range for k-indexed checks.
    #[arg(long, value_name = "a..b")]
    pub k: Option<String>,
    /// Spectral parameter grid for Riesz-mean checks.
    #[arg(long = "z-grid", value_name = "a:b:step")]
    pub z_grid: Option<String>,
    /// Time grid for heat-trace checks.
    #[arg(long = "t-grid", value_name = "a:b:step")]
    pub t_grid: Option<String>,
    /// Squared sup-norm of the mean curvature.
    #[arg(long, value_name = "X")]
    pub h0sq: Option<f64>,
    /// Ambient space of the immersion.
    #[arg(long, value_enum)]
    pub ambient: Option<AmbientArg>,
    /// Real dimension of the field for the projective ambient.
    #[arg(long, value_name = "1|2|4")]
    pub dfield: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Report output path; stdout when omitted.
    #[arg(short = 'o', long = "output", value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Comma-separated suite names.
    #[arg(long, value_name = "NAME,...")]
    pub suite: Option<String>,
    /// Comma-separated Riesz exponents for Berezin checks; the largest drives Harrell-Stubbe.
    #[arg(long, value_name = "RHO,...")]
    pub rho: Option<String>,
    /// Constant for the conjectured sum and individual bounds; enables the conjecture suite.
    #[arg(long = "conjecture-c", value_name = "C")]
    pub conjecture_c: Option<f64>,
    /// Write the Weyl-limit convergence series (CSV) to this path.
    #[arg(long, value_name = "PATH")]
    pub series: Option<PathBuf>,
    /// Relative heat-trace truncation tolerance.
    #[arg(long = "truncation-eps", value_name = "EPS")]
    pub truncation_eps: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AmbientArg {
    Euclidean,
    Sphere,
    Hyperbolic,
    Projective,
    Abstract,
}

impl AmbientArg {
    fn as_str(self) -> &'static str {
        match self {
            AmbientArg::Euclidean => "euclidean",
            AmbientArg::Sphere => "sphere",
            AmbientArg::Hyperbolic => "hyperbolic",
            AmbientArg::Projective => "projective",
            AmbientArg::Abstract => "abstract",
        }
    }
}

pub struct RunConfig {
    pub spectrum: Spectrum,
    pub suites: Vec<Suite>,
    pub suite_config: SuiteConfig,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub series: Option<PathBuf>,
    pub rhos: Vec<f64>,
}

pub fn parse_real(s: &str) -> Result<f64, ConfigError> {
    let t = s.trim().to_ascii_lowercase();
    let v = if t == "pi" {
        PI
    } else if let Some(m) = t.strip_suffix("*pi").or_else(|| t.strip_suffix("pi")) {
        m.parse::<f64>()
            .map(|m| m * PI)
            .map_err(|_| config_err(format!("not a number: '{s}'")))?
    } else {
        t.parse::<f64>()
            .map_err(|_| config_err(format!("not a number: '{s}'")))?
    };
    if !v.is_finite() {
        return Err(config_err(format!("not a finite number: '{s}'")));
    }
    Ok(v)
}

fn parse_list(s: &str) -> Result<Vec<f64>, ConfigError> {
    s.split(',').map(parse_real).collect()
}

/// `a..b`, inclusive on both ends.
pub fn parse_k_range(s: &str) -> Result<Vec<usize>, ConfigError> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| config_err(format!("--k expects a..b, got '{s}'")))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| config_err(format!("--k bound '{x}' is not a nonnegative integer")))
    };
    let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
    if a == 0 || b < a {
        return Err(config_err(format!("--k range {a}..{b} must satisfy 1 <= a <= b")));
    }
    Ok((a..=b).collect())
}

/// `a:b:step`, ascending, including `b` when it lies on the grid.
pub fn parse_grid(s: &str, flag: &str) -> Result<Vec<f64>, ConfigError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(config_err(format!("{flag} expects a:b:step, got '{s}'")));
    }
    let (a, b, step) = (parse_real(parts[0])?, parse_real(parts[1])?, parse_real(parts[2])?);
    if step <= 0.0 {
        return Err(config_err(format!("{flag} step must be positive, got {step}")));
    }
    if b < a {
        return Err(config_err(format!("{flag} must be ascending, got {a} > {b}")));
    }
    let n = ((b - a) / step * (1.0 + 1e-12) + 1e-9).floor() as usize;
    if n > 1_000_000 {
        return Err(config_err(format!("{flag} has more than 10^6 points")));
    }
    Ok((0..=n).map(|i| a + i as f64 * step).collect())
}

fn parse_suites(s: &str) -> Result<Vec<Suite>, ConfigError> {
    s.split(',')
        .map(|name| {
            Suite::parse(name.trim()).ok_or_else(|| {
                let names: Vec<&str> = Suite::NAMES.iter().map(|(n, _)| *n).collect();
                config_err(format!(
                    "unknown suite '{}'; expected one of: {}",
                    name.trim(),
                    names.join(", ")
                ))
            })
        })
        .collect()
}

pub fn load_source(src: &SourceArgs) -> Result<Spectrum, ConfigError> {
    let given = [
        src.box_lengths.is_some(),
        src.ball.is_some(),
        src.sphere.is_some(),
        src.projective.is_some(),
        src.input.is_some(),
    ]
    .iter()
    .filter(|&&g| g)
    .count();
    if given != 1 {
        return Err(config_err(
            "exactly one spectrum source is required: --box, --ball, --sphere, --projective or --in",
        ));
    }
    if src.input.is_some() && src.count.is_some() {
        return Err(config_err("--count applies to generators, not to --in"));
    }
    let lib = |e: eigenbounds::Error| config_err(e.to_string());
    if let Some(lengths) = &src.box_lengths {
        return box_spectrum(&parse_list(lengths)?, src.count.unwrap_or(1000)).map_err(lib);
    }
    if let Some(ball) = &src.ball {
        let v = parse_list(ball)?;
        if v.len() != 2 || v[0].fract() != 0.0 || v[0] < 1.0 {
            return Err(config_err(format!(
                "--ball expects n,R with integer n >= 1, got '{ball}'"
            )));
        }
        return ball_spectrum(v[0] as usize, v[1], src.count.unwrap_or(200)).map_err(lib);
    }
    if let Some(n) = src.sphere {
        return sphere_spectrum(n, src.count.unwrap_or(30)).map_err(lib);
    }
    if let Some(p) = &src.projective {
        let (f, m) = p
            .split_once(',')
            .ok_or_else(|| config_err(format!("--projective expects F,m, got '{p}'")))?;
        let field = Field::parse(f)
            .or_else(|| f.trim().parse().ok().and_then(Field::from_real_dimension))
            .ok_or_else(|| config_err(format!("unknown field '{f}'; expected R, C or Q")))?;
        let m = m
            .trim()
            .parse::<usize>()
            .map_err(|_| config_err(format!("--projective dimension '{m}' is not an integer")))?;
        return projective_spectrum(field, m, src.count.unwrap_or(30)).map_err(lib);
    }
    let path = src.input.as_ref().expect("one source is set");
    load_spectrum(path).map_err(|e| config_err(format!("{}: {e}", path.display())))
}

pub fn build(args: &CheckArgs, default_suites: &[Suite]) -> Result<RunConfig, ConfigError> {
    let spectrum = load_source(&args.source)?;
    let mut cfg = SuiteConfig::defaults_for(&spectrum);
    if let Some(k) = &args.k {
        cfg.ks = parse_k_range(k)?;
    }
    if let Some(z) = &args.z_grid {
        cfg.z_grid = parse_grid(z, "--z-grid")?;
    }
    if let Some(t) = &args.t_grid {
        cfg.t_grid = parse_grid(t, "--t-grid")?;
        if cfg.t_grid[0] <= 0.0 {
            return Err(config_err("--t-grid values must be positive"));
        }
    }
    if args.h0sq.is_some() || args.ambient.is_some() || args.dfield.is_some() {
        let h0 = args.h0sq.unwrap_or(0.0);
        let ambient = match args.ambient {
            Some(a) => a.as_str(),
            None if args.dfield.is_some() => "projective",
            None => "euclidean",
        };
        cfg.shift = ShiftContext::from_parts(h0, ambient, args.dfield).map_err(|e| config_err(e.to_string()))?;
    }
    let mut rhos = vec![1.0, 2.0, 3.0];
    if let Some(r) = &args.rho {
        rhos = parse_list(r)?;
        if rhos.iter().any(|&r| r < 0.0) {
            return Err(config_err("--rho values must be nonnegative"));
        }
        cfg.berezin_rhos = rhos.clone();
        cfg.hs_rho = rhos.iter().cloned().fold(1.0, f64::max);
    }
    if let Some(eps) = args.truncation_eps {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(config_err("--truncation-eps must lie in (0, 1)"));
        }
        cfg.truncation_eps = eps;
    }
    if let Some(c) = args.conjecture_c {
        if !c.is_finite() {
            return Err(config_err("--conjecture-c must be finite"));
        }
        cfg.conjecture_c = Some(c);
    }
    let mut suites = match &args.suite {
        Some(s) => parse_suites(s)?,
        None => default_suites.to_vec(),
    };
    if args.conjecture_c.is_some() && args.suite.is_none() && !suites.contains(&Suite::All) {
        suites.push(Suite::Conjecture);
    }
    if suites.contains(&Suite::Conjecture) && cfg.conjecture_c.is_none() {
        return Err(config_err("the conjecture suite needs --conjecture-c"));
    }
    Ok(RunConfig {
        spectrum,
        suites,
        suite_config: cfg,
        format: args.format,
        output: args.output.clone(),
        series: args.series.clone(),
        rhos,
    })
}
