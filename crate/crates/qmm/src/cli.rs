//! Batch command line front end.
//!
//! Commands: `omf list|check`, `metric eval`, `fuzz <suite>`,
//! `classical distance`, `bloch profile`, `pure limit`. Reports are JSON
//! (CSV for grid profiles), byte-identical across runs with the same
//! configuration. Exit codes: 0 all pass, 1 property violation,
//! 2 usage or input error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::boundary::{radial_extension_limit, BoundarySequence, HorizontalVector};
use crate::bloch::{radial_coefficient, tangential_coefficient};
use crate::classical::{geodesic_distance, hellinger, ProbabilityVector};
use crate::fuzz::{run_suite, RunConfig, Suite, Tolerances};
use crate::hermitian::{validate_density, TangentVector, C64};
use crate::io::{parse_real_vector, read_matrix_file};
use crate::metric::{metric_rld, metric_sld, metric_value};
use crate::omf::{
    check_bounds, check_operator_monotone_sample, check_symmetry, default_catalog, eval_f,
    f_at_zero, MonotoneKind, MonotoneSampleReport, SweepReport,
};
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qmm",
    version,
    about = "Monotone Riemannian metrics on density matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operator monotone function catalog
    Omf {
        #[command(subcommand)]
        command: OmfCommand,
    },
    /// Metric evaluation on explicit inputs
    Metric {
        #[command(subcommand)]
        command: MetricCommand,
    },
    /// Seeded property-fuzz suites
    Fuzz {
        /// Suite: monotone, schwarz, ordering, or classical
        suite: String,
        #[command(flatten)]
        run: RunArgs,
        /// Override a named tolerance, e.g. --tol contraction-rel=1e-6
        #[arg(long = "tol", value_name = "NAME=VALUE")]
        tol: Vec<String>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Classical simplex geometry
    Classical {
        #[command(subcommand)]
        command: ClassicalCommand,
    },
    /// Qubit ball metric profiles
    Bloch {
        #[command(subcommand)]
        command: BlochCommand,
    },
    /// Pure-state boundary limits
    Pure {
        #[command(subcommand)]
        command: PureCommand,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Comma-separated dimensions in [2, 16]
    #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3, 4])]
    dims: Vec<usize>,
    /// Restrict to comma-separated catalog kinds (default: full catalog)
    #[arg(long = "f", value_name = "KIND", value_delimiter = ',')]
    kinds: Vec<String>,
}

#[derive(Subcommand)]
enum OmfCommand {
    /// List the catalog with the f(0) limits
    List {
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run the defining-property checks (symmetry, bounds, sampled
    /// operator monotonicity)
    Check {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MetricCommand {
    /// Evaluate one metric on a density and one or two tangents (JSON files)
    Eval {
        /// Catalog kind
        #[arg(long = "f", value_name = "KIND")]
        kind: String,
        /// Density matrix JSON file
        density: PathBuf,
        /// Tangent JSON file
        tangent: PathBuf,
        /// Second tangent JSON file (defaults to the first)
        tangent2: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ClassicalCommand {
    /// Geodesic and Hellinger distance between two distributions
    Distance {
        /// First distribution (comma list or JSON array)
        #[arg(long)]
        p: String,
        /// Second distribution
        #[arg(long)]
        r: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BlochCommand {
    /// CSV of radial/tangential coefficients over a radius grid
    Profile {
        /// Comma-separated kinds (default: full catalog)
        #[arg(long = "f", value_name = "KIND", value_delimiter = ',')]
        kinds: Vec<String>,
        /// Comma-separated radii in (0, 1)
        #[arg(long)]
        grid: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PureCommand {
    /// Boundary limit of the lifted inner product per kind
    Limit {
        /// Comma-separated kinds (default: full catalog)
        #[arg(long = "f", value_name = "KIND", value_delimiter = ',')]
        kinds: Vec<String>,
        /// Horizontal coordinates u_2..u_n (comma list or JSON array)
        #[arg(long, default_value = "1")]
        u: String,
        /// Epsilon grid, strictly decreasing (default 1e-2..1e-7)
        #[arg(long = "eps-grid")]
        eps_grid: Option<String>,
        /// Positive weights of the boundary sequence (default: ones)
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

/// Run with explicit arguments, writing reports to `stdout` (or `--out`).
/// Returns the process exit code.
pub fn run<I>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    eprintln!("{e}");
                    2
                }
            };
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Omf { command } => match command {
            OmfCommand::List { out } => cmd_omf_list(&out, stdout),
            OmfCommand::Check { run, out } => cmd_omf_check(&run, &out, stdout),
        },
        Command::Metric { command } => match command {
            MetricCommand::Eval {
                kind,
                density,
                tangent,
                tangent2,
                out,
            } => cmd_metric_eval(&kind, &density, &tangent, tangent2.as_deref(), &out, stdout),
        },
        Command::Fuzz {
            suite,
            run,
            tol,
            out,
        } => cmd_fuzz(&suite, &run, &tol, &out, stdout),
        Command::Classical { command } => match command {
            ClassicalCommand::Distance { p, r, out } => cmd_classical_distance(&p, &r, &out, stdout),
        },
        Command::Bloch { command } => match command {
            BlochCommand::Profile { kinds, grid, out } => {
                cmd_bloch_profile(&kinds, &grid, &out, stdout)
            }
        },
        Command::Pure { command } => match command {
            PureCommand::Limit {
                kinds,
                u,
                eps_grid,
                weights,
                out,
            } => cmd_pure_limit(&kinds, &u, eps_grid.as_deref(), weights.as_deref(), &out, stdout),
        },
    }
}

fn parse_kinds(names: &[String]) -> Result<Vec<MonotoneKind>> {
    if names.is_empty() {
        return Ok(default_catalog());
    }
    names.iter().map(|s| MonotoneKind::parse(s)).collect()
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::InvalidInput(format!("stdout: {e}"))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct CatalogEntry {
    name: String,
    f_at_zero: f64,
    f_at_two: f64,
}

fn cmd_omf_list(out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<i32> {
    let entries: Vec<CatalogEntry> = default_catalog()
        .into_iter()
        .map(|kind| {
            Ok(CatalogEntry {
                name: kind.name(),
                f_at_zero: f_at_zero(kind),
                f_at_two: eval_f(kind, 2.0)?,
            })
        })
        .collect::<Result<_>>()?;
    emit(out, stdout, &to_json(&entries))?;
    Ok(0)
}

#[derive(Serialize)]
struct OmfKindReport {
    kind: String,
    f_at_one: f64,
    symmetry: SweepReport,
    bounds: SweepReport,
    monotone: Vec<MonotoneSampleReport>,
}

#[derive(Serialize)]
struct OmfCheckReport {
    seed: u64,
    trials: usize,
    dims: Vec<usize>,
    violations: usize,
    kinds: Vec<OmfKindReport>,
}

fn cmd_omf_check(run: &RunArgs, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<i32> {
    let kinds = parse_kinds(&run.kinds)?;
    let cfg = RunConfig {
        seed: run.seed,
        trials: run.trials,
        dims: run.dims.clone(),
        kinds: kinds.clone(),
        tolerances: Tolerances::default(),
    };
    cfg.validate()?;
    let mono_dims: Vec<usize> = cfg.dims.iter().cloned().filter(|&n| n <= 6).collect();
    if mono_dims.is_empty() {
        return Err(Error::InvalidInput(
            "operator monotonicity sampling needs at least one dim <= 6".into(),
        ));
    }
    let mut violations = 0usize;
    let mut reports = Vec::new();
    for kind in kinds {
        let symmetry = check_symmetry(kind, cfg.trials, cfg.seed)?;
        let bounds = check_bounds(kind, cfg.trials, cfg.seed)?;
        let monotone: Vec<MonotoneSampleReport> = mono_dims
            .iter()
            .map(|&dim| check_operator_monotone_sample(kind, dim, cfg.trials, cfg.seed))
            .collect::<Result<_>>()?;
        let f_at_one = eval_f(kind, 1.0)?;
        violations += symmetry.violations + bounds.violations;
        violations += monotone.iter().map(|m| m.violations).sum::<usize>();
        if f_at_one != 1.0 {
            violations += 1;
        }
        reports.push(OmfKindReport {
            kind: kind.name(),
            f_at_one,
            symmetry,
            bounds,
            monotone,
        });
    }
    let report = OmfCheckReport {
        seed: cfg.seed,
        trials: cfg.trials,
        dims: mono_dims,
        violations,
        kinds: reports,
    };
    emit(out, stdout, &to_json(&report))?;
    Ok(if violations == 0 { 0 } else { 1 })
}

#[derive(Serialize)]
struct MetricEvalReport {
    kind: String,
    value: f64,
    sld: f64,
    rld: f64,
}

fn cmd_metric_eval(
    kind: &str,
    density: &std::path::Path,
    tangent: &std::path::Path,
    tangent2: Option<&std::path::Path>,
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let kind = MonotoneKind::parse(kind)?;
    let d = validate_density(&read_matrix_file(density)?, 1e-12)?;
    let a = TangentVector::from_matrix(&read_matrix_file(tangent)?)?;
    let b = match tangent2 {
        Some(path) => TangentVector::from_matrix(&read_matrix_file(path)?)?,
        None => a.clone(),
    };
    let report = MetricEvalReport {
        kind: kind.name(),
        value: metric_value(kind, &d, &a, &b)?,
        sld: metric_sld(&d, &a, &b),
        rld: metric_rld(&d, &a, &b),
    };
    emit(out, stdout, &to_json(&report))?;
    Ok(0)
}

fn cmd_fuzz(
    suite: &str,
    run: &RunArgs,
    tol_overrides: &[String],
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let suite = Suite::parse(suite)?;
    let mut tolerances = Tolerances::default();
    for entry in tol_overrides {
        let (name, value) = entry.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!("tolerance override '{entry}' is not NAME=VALUE"))
        })?;
        let value: f64 = value
            .parse()
            .map_err(|e| Error::InvalidInput(format!("tolerance '{entry}': {e}")))?;
        tolerances.set(name.trim(), value)?;
    }
    let cfg = RunConfig {
        seed: run.seed,
        trials: run.trials,
        dims: run.dims.clone(),
        kinds: parse_kinds(&run.kinds)?,
        tolerances,
    };
    let report = run_suite(suite, &cfg)?;
    let failed = report.failures > 0;
    emit(out, stdout, &to_json(&report))?;
    Ok(if failed { 1 } else { 0 })
}

#[derive(Serialize)]
struct ClassicalDistanceReport {
    p: Vec<f64>,
    r: Vec<f64>,
    geodesic: f64,
    hellinger: f64,
}

fn cmd_classical_distance(
    p: &str,
    r: &str,
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let p = ProbabilityVector::new(parse_real_vector(p)?)?;
    let r = ProbabilityVector::new(parse_real_vector(r)?)?;
    let report = ClassicalDistanceReport {
        p: p.as_slice().to_vec(),
        r: r.as_slice().to_vec(),
        geodesic: geodesic_distance(&p, &r)?,
        hellinger: hellinger(&p, &r)?,
    };
    emit(out, stdout, &to_json(&report))?;
    Ok(0)
}

fn cmd_bloch_profile(
    kind_names: &[String],
    grid: &str,
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let kinds = parse_kinds(kind_names)?;
    let radii = parse_real_vector(grid)?;
    if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        return Err(Error::InvalidInput("radii must lie in (0, 1)".into()));
    }
    let mut text = String::from("r,kind,radial,tangential\n");
    for &r in &radii {
        let radial = radial_coefficient(r)?;
        for &kind in &kinds {
            let tangential = tangential_coefficient(kind, r)?;
            text.push_str(&format!("{r},{},{radial},{tangential}\n", kind.name()));
        }
    }
    emit(out, stdout, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct PureLimitReport {
    u: Vec<[f64; 2]>,
    weights: Vec<f64>,
    eps_grid: Vec<f64>,
    h: f64,
    kinds: Vec<crate::boundary::LimitReport>,
}

fn cmd_pure_limit(
    kind_names: &[String],
    u_text: &str,
    eps_grid: Option<&str>,
    weights: Option<&str>,
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let kinds = parse_kinds(kind_names)?;
    let u_vals = parse_real_vector(u_text)?;
    let u = HorizontalVector::from_reals(&u_vals);
    let weights = match weights {
        Some(w) => parse_real_vector(w)?,
        None => vec![1.0; u_vals.len()],
    };
    if weights.len() != u_vals.len() {
        return Err(Error::InvalidInput(
            "weights must have the same length as u".into(),
        ));
    }
    let grid = match eps_grid {
        Some(g) => parse_real_vector(g)?,
        None => (2..=7).map(|k| 10f64.powi(-k)).collect(),
    };
    let seq = BoundarySequence::new(weights.clone(), grid.clone())
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    let reports: Vec<_> = kinds
        .iter()
        .map(|&kind| radial_extension_limit(kind, &seq, &u, &u))
        .collect::<Result<_>>()?;
    let report = PureLimitReport {
        u: u.as_slice().iter().map(|z: &C64| [z.re, z.im]).collect(),
        weights,
        eps_grid: grid,
        h: crate::boundary::fubini_study(&u, &u),
        kinds: reports,
    };
    emit(out, stdout, &to_json(&report))?;
    Ok(0)
}
