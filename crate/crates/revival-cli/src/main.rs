//! Command-line front end. Four subcommands: `state` prints a Fock-basis
//! coefficient table, `revival` runs a ground-state-probability trace,
//! `optimize` reports optimal squeeze-displacement pairs, and `verify` runs
//! the library's self-check suites.
//!
//! Exit codes: 0 success, 1 runtime or check failure, 2 under-truncated
//! basis, 3 invalid arguments, 4 optimizer failure.

mod output;
mod presets;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use revival_lab::fock::number_expectation_numeric;
use revival_lab::jcm::{self, JcmParams};
use revival_lab::{moments, optimize, states, verify, Error, StateParams};

#[derive(Parser)]
#[command(
    name = "revival-lab",
    version,
    about = "Photon statistics and collapse-revival traces of displaced, squeezed number states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Family {
    /// Displaced vacuum
    Coherent,
    /// Coherent state carrying extra photons
    Ncoherent,
    /// Squeezed coherent state
    Squeezed,
    /// Squeezed coherent state carrying extra photons
    Nsqueezed,
    /// Bare number state
    Fock,
}

impl Family {
    fn label(self) -> &'static str {
        match self {
            Family::Coherent => "coherent",
            Family::Ncoherent => "ncoherent",
            Family::Squeezed => "squeezed",
            Family::Nsqueezed => "nsqueezed",
            Family::Fock => "fock",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum SuiteArg {
    Ladder,
    Basis,
    Moments,
    Closedforms,
    Jcm,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a state and emit its Fock coefficients as CSV
    State(StateCmd),
    /// Trace the atomic ground-state probability under the Jaynes-Cummings coupling
    Revival(RevivalCmd),
    /// Locate squeeze-displacement pairs optimizing the variance-to-mean quotient
    Optimize(OptimizeCmd),
    /// Run the self-check suites and print one line per identity
    Verify(VerifyCmd),
}

#[derive(Args)]
struct StateCmd {
    /// State family to build
    #[arg(value_enum)]
    family: Family,
    /// Displacement magnitude |alpha|
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Displacement phase theta in radians
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    /// Squeeze magnitude r
    #[arg(long, default_value_t = 0.0)]
    r: f64,
    /// Squeeze phase phi in radians; defaults to 2*theta
    #[arg(long)]
    phi: Option<f64>,
    /// Number of extra photons
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Fock-space dimension; overrides the automatic choice and REVIVAL_LAB_DIM_OVERRIDE
    #[arg(long)]
    dim: Option<usize>,
    /// Write the CSV to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit '#' metadata lines; with --out the metadata moves to <out>.meta
    #[arg(long)]
    no_comments: bool,
}

#[derive(Args)]
struct RevivalCmd {
    /// Named preset, fig1 through fig8; mutually exclusive with --family
    preset: Option<String>,
    /// State family to build instead of a preset
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Displacement magnitude |alpha|
    #[arg(long)]
    alpha: Option<f64>,
    /// Displacement phase theta in radians
    #[arg(long)]
    theta: Option<f64>,
    /// Squeeze magnitude r
    #[arg(long)]
    r: Option<f64>,
    /// Squeeze phase phi in radians; defaults to 2*theta
    #[arg(long)]
    phi: Option<f64>,
    /// Number of extra photons
    #[arg(long)]
    n: Option<usize>,
    /// Atom-field coupling strength
    #[arg(long)]
    lambda: Option<f64>,
    /// Atom-field detuning
    #[arg(long)]
    delta: Option<f64>,
    /// Final time of the uniform grid
    #[arg(long)]
    tmax: Option<f64>,
    /// Number of samples on the grid
    #[arg(long)]
    points: Option<usize>,
    /// Fock-space dimension; overrides the automatic choice and REVIVAL_LAB_DIM_OVERRIDE
    #[arg(long)]
    dim: Option<usize>,
    /// Write the CSV to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit '#' metadata lines; with --out the metadata moves to <out>.meta
    #[arg(long)]
    no_comments: bool,
}

#[derive(Args)]
struct OptimizeCmd {
    /// Number of extra photons
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Squeeze amplitude at which to place the optimum
    #[arg(long)]
    r: Option<f64>,
    /// Integer mean photon number to hit instead of fixing r
    #[arg(long)]
    target_mean: Option<usize>,
    /// Lower edge of the squeeze bracket for --target-mean
    #[arg(long, default_value_t = 1e-3)]
    r_lo: f64,
    /// Upper edge of the squeeze bracket for --target-mean
    #[arg(long, default_value_t = 1.2)]
    r_hi: f64,
}

#[derive(Args)]
struct VerifyCmd {
    /// Which suite to run
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    Validation(String),
    ChecksFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_code(f: Failure) -> ExitCode {
    match f {
        Failure::Lib(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::UnderTruncated { .. } => 2,
                Error::InvalidParameter(_)
                | Error::SingularSqueeze { .. }
                | Error::DegenerateState => 3,
                Error::NegativeRadicand { .. }
                | Error::BracketFailure(_)
                | Error::NoInteriorMinimum(_) => 4,
                Error::NoRevivalInWindow => 1,
            };
            ExitCode::from(code)
        }
        Failure::Io(e) => {
            if e.kind() == io::ErrorKind::BrokenPipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Failure::Validation(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Failure::ChecksFailed => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => exit_code(f),
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::State(c) => cmd_state(c),
        Command::Revival(c) => cmd_revival(c),
        Command::Optimize(c) => cmd_optimize(c),
        Command::Verify(c) => cmd_verify(c),
    }
}

/// Maps a family name plus raw flags onto validated state parameters,
/// rejecting flags the family cannot use instead of silently ignoring them.
fn build_params(
    family: Family,
    alpha: f64,
    theta: f64,
    r: f64,
    phi: Option<f64>,
    n: usize,
) -> Result<StateParams, Failure> {
    let reject = |flag: &str| {
        Err(Failure::Validation(format!(
            "{flag} does not apply to the {} family",
            family.label()
        )))
    };
    match family {
        Family::Coherent => {
            if r != 0.0 {
                return reject("--r");
            }
            if phi.is_some() {
                return reject("--phi");
            }
            if n != 0 {
                return reject("--n");
            }
            Ok(StateParams::coherent(alpha, theta))
        }
        Family::Ncoherent => {
            if r != 0.0 {
                return reject("--r");
            }
            if phi.is_some() {
                return reject("--phi");
            }
            Ok(StateParams::n_photon_coherent(alpha, theta, n))
        }
        Family::Squeezed => {
            if n != 0 {
                return reject("--n");
            }
            let p = StateParams::squeezed(alpha, theta, r);
            Ok(match phi {
                Some(v) => p.with_phi(v),
                None => p,
            })
        }
        Family::Nsqueezed => {
            let p = StateParams::n_photon_squeezed(alpha, theta, r, n);
            Ok(match phi {
                Some(v) => p.with_phi(v),
                None => p,
            })
        }
        Family::Fock => {
            if alpha != 0.0 {
                return reject("--alpha");
            }
            if theta != 0.0 {
                return reject("--theta");
            }
            if r != 0.0 {
                return reject("--r");
            }
            if phi.is_some() {
                return reject("--phi");
            }
            Ok(StateParams::fock(n))
        }
    }
}

/// Dimension priority: `--dim`, then `REVIVAL_LAB_DIM_OVERRIDE`, then the
/// automatic choice for the state.
fn resolve_dim(flag: Option<usize>, fallback: usize) -> Result<usize, Failure> {
    let dim = match flag {
        Some(d) => d,
        None => match std::env::var("REVIVAL_LAB_DIM_OVERRIDE") {
            Ok(raw) => raw.trim().parse::<usize>().map_err(|_| {
                Failure::Validation(format!(
                    "REVIVAL_LAB_DIM_OVERRIDE must be an unsigned integer, got {raw:?}"
                ))
            })?,
            Err(std::env::VarError::NotPresent) => fallback,
            Err(e) => {
                return Err(Failure::Validation(format!(
                    "REVIVAL_LAB_DIM_OVERRIDE: {e}"
                )))
            }
        },
    };
    if dim == 0 {
        return Err(Failure::Validation("dimension must be at least 1".into()));
    }
    Ok(dim)
}

fn param_meta(family: &str, p: &StateParams) -> Vec<String> {
    vec![
        format!("family={family}"),
        format!("alpha={}", p.alpha_mod),
        format!("theta={}", p.theta),
        format!("r={}", p.r),
        format!("phi={}", p.phi),
        format!("n={}", p.n_extra),
    ]
}

fn cmd_state(c: StateCmd) -> Result<(), Failure> {
    let params = build_params(c.family, c.alpha, c.theta, c.r, c.phi, c.n)?;
    let dim = resolve_dim(c.dim, states::default_dim(&params))?;
    let state = states::build_state(&params, dim)?;
    let closed = moments::matrix_elements(&params);
    let (mean_num, second_num) = number_expectation_numeric(&state)?;
    let var_num = second_num - mean_num * mean_num;

    let mut meta = param_meta(c.family.label(), &params);
    meta.push(format!("dim={dim}"));
    meta.push(format!("tail_mass={:.3e}", state.tail_mass()));
    meta.push(format!("mean_closed={}", closed.mean()));
    meta.push(format!("variance_closed={}", closed.variance()));
    meta.push(format!("mean_numeric={mean_num}"));
    meta.push(format!("variance_numeric={var_num}"));

    match &c.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            output::write_state_csv(&mut w, &state, &meta, !c.no_comments)?;
            w.flush()?;
            if c.no_comments {
                output::write_sidecar(path, &meta)?;
            }
            println!("wrote {} rows to {}", state.dim(), path.display());
            println!("mean_closed={}", closed.mean());
            println!("variance_closed={}", closed.variance());
            println!("mean_numeric={mean_num}");
            println!("variance_numeric={var_num}");
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            output::write_state_csv(&mut w, &state, &meta, !c.no_comments)?;
        }
    }
    Ok(())
}

fn cmd_revival(c: RevivalCmd) -> Result<(), Failure> {
    let (label, params, coupling, preset_name) = match (&c.preset, c.family) {
        (Some(name), None) => {
            let fp = presets::preset(name).ok_or_else(|| {
                Failure::Validation(format!(
                    "unknown preset {name:?}; available: {}",
                    presets::PRESET_NAMES.join(", ")
                ))
            })?;
            let touched = c.alpha.is_some()
                || c.theta.is_some()
                || c.r.is_some()
                || c.phi.is_some()
                || c.n.is_some()
                || c.lambda.is_some()
                || c.delta.is_some();
            if touched {
                return Err(Failure::Validation(
                    "presets fix the state and coupling; only --tmax, --points, --dim, \
                     and the output flags can be changed"
                        .into(),
                ));
            }
            (
                fp.family,
                fp.params,
                (fp.lambda, fp.delta, fp.tmax, fp.points),
                Some(fp.name),
            )
        }
        (None, Some(family)) => {
            let params = build_params(
                family,
                c.alpha.unwrap_or(0.0),
                c.theta.unwrap_or(0.0),
                c.r.unwrap_or(0.0),
                c.phi,
                c.n.unwrap_or(0),
            )?;
            (
                family.label(),
                params,
                (c.lambda.unwrap_or(1.0), c.delta.unwrap_or(0.0), 60.0, 6000),
                None,
            )
        }
        (Some(_), Some(_)) => {
            return Err(Failure::Validation(
                "give a preset or --family, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Failure::Validation(
                "give a preset name (fig1 through fig8) or --family".into(),
            ))
        }
    };
    let (lambda, delta, tmax_default, points_default) = coupling;
    let tmax = c.tmax.unwrap_or(tmax_default);
    let points = c.points.unwrap_or(points_default);
    let jcm = JcmParams::uniform(lambda, delta, tmax, points)?;
    let dim = resolve_dim(c.dim, states::default_dim(&params))?;
    let trace = jcm::revival_trace_with_dim(&params, &jcm, dim)?;

    let mut meta = Vec::new();
    if let Some(name) = preset_name {
        meta.push(format!("preset={name}"));
    }
    meta.extend(param_meta(label, &params));
    meta.push(format!("lambda={lambda}"));
    meta.push(format!("delta={delta}"));
    meta.push(format!("tmax={tmax}"));
    meta.push(format!("points={points}"));
    meta.push(format!("dim={dim}"));
    meta.push(format!("mean_numeric={}", trace.mean_n));

    match &c.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            output::write_trace_csv(&mut w, &trace.times, &trace.p_ground, &meta, !c.no_comments)?;
            w.flush()?;
            if c.no_comments {
                output::write_sidecar(path, &meta)?;
            }
            println!("wrote {} samples to {}", trace.times.len(), path.display());
            println!("mean_numeric={}", trace.mean_n);
            match jcm::envelope_metrics(&trace) {
                Ok(m) => {
                    println!("collapse_time={}", m.collapse_time);
                    println!("first_revival_time={}", m.first_revival_time);
                    println!("revival_peak={}", m.revival_peak);
                }
                Err(e) => println!("envelope: {e}"),
            }
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            output::write_trace_csv(&mut w, &trace.times, &trace.p_ground, &meta, !c.no_comments)?;
        }
    }
    Ok(())
}

fn cmd_optimize(c: OptimizeCmd) -> Result<(), Failure> {
    let (r, alpha) = match (c.r, c.target_mean) {
        (Some(_), Some(_)) => {
            return Err(Failure::Validation(
                "give --r or --target-mean, not both".into(),
            ))
        }
        (None, None) => return Err(Failure::Validation("give --r or --target-mean".into())),
        (Some(r), None) => {
            let alpha = if c.n == 2 {
                optimize::optimal_alpha_sq(r)?.max(0.0).sqrt()
            } else {
                optimize::minimize_quotient_numeric(c.n, r)?
            };
            (r, alpha)
        }
        (None, Some(target)) => optimize::match_integer_mean(c.n, target, (c.r_lo, c.r_hi))?,
    };
    let params = StateParams::n_photon_squeezed(alpha, 0.0, r, c.n);
    let closed = moments::matrix_elements(&params);
    let mean = closed.mean();
    let variance = closed.variance();
    println!("n={}", c.n);
    println!("r={r}");
    println!("alpha={alpha}");
    println!("alpha_sq={}", alpha * alpha);
    println!("mean={mean}");
    println!("variance={variance}");
    let quotient = if mean > 0.0 {
        variance / mean
    } else {
        f64::NAN
    };
    println!("quotient={quotient}");
    Ok(())
}

fn cmd_verify(c: VerifyCmd) -> Result<(), Failure> {
    let suite = match c.suite {
        SuiteArg::Ladder => verify::Suite::Ladder,
        SuiteArg::Basis => verify::Suite::Basis,
        SuiteArg::Moments => verify::Suite::Moments,
        SuiteArg::Closedforms => verify::Suite::ClosedForms,
        SuiteArg::Jcm => verify::Suite::Jcm,
        SuiteArg::All => verify::Suite::All,
    };
    let report = verify::run(suite)?;
    for check in &report.checks {
        let tag = if check.passed { "PASS" } else { "FAIL" };
        println!(
            "{tag} defect={:.3e} limit={:.1e} {}",
            check.defect, check.limit, check.name
        );
    }
    let failed = report.checks.iter().filter(|ch| !ch.passed).count();
    if failed == 0 {
        println!("ok: {} checks passed", report.checks.len());
        Ok(())
    } else {
        eprintln!("{failed} of {} checks failed", report.checks.len());
        Err(Failure::ChecksFailed)
    }
}
