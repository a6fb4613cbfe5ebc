//! Config-driven experiment runner behind the `ggf` binary.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use commands::{execute, Command};
use config::{ExperimentConfig, Settings};
use report::{Format, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;

const OVERVIEW: &str = "\
Exit codes: 0 success, 2 invalid input or unmet precondition, 3 numerical tolerance failure.

Generator specs (--gen):
  gaussian | box:W | randwin:SEED | file:PATH   rank-one phi (x) phi, unit phi
  identity                                     the identity operator
  random:RANK:SEED                             random operator, unit HS norm
  multiwindow:W1+W2+...                        sum_n e_n (x) phi_n over window specs
  locop:MASK:WINDOW                            localization operator; MASK is tile, ones, zero or a CSV grid
  underspread:(k,l)=c;(k,l)=c;...              spreading coefficients on a finite set

Floats are printed in scientific notation; complex numbers as re+imj.
Every report row records L, the lattice, the generator and the seed.";

const FRAME_BOUNDS_HELP: &str = "\
Columns:
  L, lattice, gen, seed   experiment inputs
  card, redundancy        lattice cardinality and card/L
  A, B                    extreme eigenvalues of the g-frame operator
  tightness               B/A (inf when A = 0)
  janssen_residual        relative error of the Janssen representation of the frame operator
  dual_residual           ||P(S^* R) - I||_F / sqrt(L) for the canonical dual R (nan if not a frame)
  is_frame                A > 1e-10 B";

const JANSSEN_HELP: &str = "\
Table janssen:
  L, lattice, gen, seed   experiment inputs
  adjoint, card, adjoint_card   adjoint lattice and both cardinalities
  janssen_residual        relative Frobenius error of the Janssen representation of S
  frame_op_residual       same for S^* S
  sufficient_test         whether card (c(0) - sum_{mu != 0} |c(mu)|) > 0 on the adjoint lattice
  guaranteed_A            that lower bound
  off_origin_mass         sum_{mu != 0} |c(mu)| for S^* S
Table coefficients:
  k, l, coef              card * spreading coefficient of S at each adjoint-lattice point";

const WEXLER_RAZ_HELP: &str = "\
T is an operator spec or `dual` (the canonical dual, default).
Columns:
  L, lattice, gen, T, seed   experiment inputs
  biorth_ok, recon_ok        the two equivalent duality conditions
  biorth_residual            max |card c_{S^* T}(mu) - delta(mu)| over the adjoint lattice
  recon_residual             ||P(S^* T) - I||_F / sqrt(L)
  consistent                 biorth_ok == recon_ok";

const DUAL_HELP: &str = "\
Writes the canonical dual to dual.txt in the output directory (default: current directory).
Columns:
  L, lattice, gen, seed   experiment inputs
  A, B                    frame bounds
  dual_residual           ||P(S^* R) - I||_F / sqrt(L)
  biorth_residual, recon_residual   as in wexler-raz
  inverse_support_leak    largest spreading coefficient of the inverse frame operator off the adjoint lattice, relative to its HS norm
  dual_hs_norm            ||R||_HS";

const RECONSTRUCT_HELP: &str = "\
PSI is a window spec or random[:SEED] (default: random with --seed).
Columns:
  L, lattice, gen, psi, seed   experiment inputs
  psi_norm                     ||psi||
  synthesis_error              ||D_S C_R psi - psi|| / ||psi||
  analysis_error               ||D_R C_S psi - psi|| / ||psi||";

const COHEN_HELP: &str = "\
PSI is a window spec or random[:SEED] (default: random with --seed).
Table summary:
  L, gen, psi, seed       experiment inputs
  sum                     sum over phase space of Q
  expected                L ||S||_HS^2 ||psi||^2
  relative_error          |sum - expected| / expected
Table cohen:
  k, l, Q                 Q(k,l) = ||alpha_(k,l)(S) psi||^2";

const NORM_EQUIV_HELP: &str = "\
Table summary:
  L, lattice, gen, window, p, weight, seed, probes   experiment inputs
  A, B                    frame bounds
  is_frame                A > 1e-10 B
  C_emp, D_emp            smallest and largest probe ratio
  weakest_ratio           ratio at the least-seen direction of the analysis operator
Table probes:
  index, kind, ratio      ||C_S psi||_{p,m} / ||V_g psi||_{p,m} per probe (kind random or weakest)";

const SVD_WINDOWS_HELP: &str = "\
Table summary:
  L, gen, seed            experiment inputs
  rank                    numerical rank of S
  gram_residual           relative error between M^* M and S^* S for the multi-window operator M
Table singular_values:
  n, sigma                singular values in descending order
Table windows:
  n, t, value             entries of the n-th window";

const ADJOINT_HELP: &str = "\
Columns:
  L, lattice, card        the input lattice
  adjoint, adjoint_card   its adjoint lattice
  card_product, L_squared card * adjoint_card and L^2 (equal)
  brute_force_agrees      closed form matches the commutation search";

const PERIODIC_FOURIER_HELP: &str = "\
T is periodize (the lattice periodization of --gen, default), frame-op,
frame-op-inv, or an operator spec that must itself be lattice-periodic.
Table summary:
  L, lattice, gen, T, seed   experiment inputs
  terms                   number of adjoint-lattice terms
  synthesis_residual      relative error of the resynthesized series
Table fourier:
  k, l, coef              Fourier coefficient at each adjoint-lattice point";

#[derive(Parser, Debug)]
#[command(
    name = "ggf",
    version,
    about = "Gabor g-frame experiments on Z_L x Z_L",
    after_long_help = OVERVIEW,
    arg_required_else_help = true
)]
struct Cli {
    /// Run every *.cfg file in DIR concurrently; each must set `command`.
    #[arg(long, value_name = "DIR")]
    batch: Option<PathBuf>,

    #[command(flatten)]
    output: OutputArgs,

    #[command(subcommand)]
    command: Option<Sub>,
}

#[derive(Args, Debug, Clone, Default)]
struct OutputArgs {
    /// Write the report (and any extra files) into DIR instead of stdout.
    #[arg(long, value_name = "DIR", global = true)]
    out: Option<PathBuf>,
    /// JSON report.
    #[arg(long, global = true, conflicts_with = "kv")]
    json: bool,
    /// Flat key=value report.
    #[arg(long, global = true)]
    kv: bool,
}

#[derive(Args, Debug, Clone, Default)]
struct ConfigArgs {
    /// key = value config file; flags override its entries.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Signal length.
    #[arg(long = "L", value_name = "L")]
    len: Option<String>,
    /// sep:a,b or gen:(k,l);(k,l).
    #[arg(long)]
    lattice: Option<String>,
    /// Generator spec (see `ggf --help`).
    #[arg(long = "gen")]
    generator: Option<String>,
    /// Exponent p >= 1, or inf.
    #[arg(long)]
    p: Option<String>,
    /// const, poly:s, or file:grid.csv.
    #[arg(long)]
    weight: Option<String>,
    /// Number of random probes.
    #[arg(long)]
    probes: Option<String>,
    /// Seed for every random draw.
    #[arg(long)]
    seed: Option<String>,
    /// Reference window spec for norm-equiv.
    #[arg(long)]
    window: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct WithTarget {
    #[command(flatten)]
    config: ConfigArgs,
    target: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Frame bounds of the g-frame generated by --gen.
    #[command(after_long_help = FRAME_BOUNDS_HELP)]
    FrameBounds(ConfigArgs),
    /// Janssen representation check and sufficient frame test.
    #[command(after_long_help = JANSSEN_HELP)]
    Janssen(ConfigArgs),
    /// Duality check between --gen and T.
    #[command(after_long_help = WEXLER_RAZ_HELP)]
    WexlerRaz(WithTarget),
    /// Canonical dual generator and its residuals.
    #[command(after_long_help = DUAL_HELP)]
    Dual(ConfigArgs),
    /// Round trip through analysis and synthesis with the canonical dual.
    #[command(after_long_help = RECONSTRUCT_HELP)]
    Reconstruct(WithTarget),
    /// Cohen's class map of PSI over phase space.
    #[command(after_long_help = COHEN_HELP)]
    Cohen(WithTarget),
    /// Weighted coefficient norms against a reference STFT.
    #[command(after_long_help = NORM_EQUIV_HELP)]
    NormEquiv(ConfigArgs),
    /// Singular-value decomposition of --gen as a multi-window operator.
    #[command(after_long_help = SVD_WINDOWS_HELP)]
    SvdWindows(ConfigArgs),
    /// Adjoint lattice and the cardinality identity.
    #[command(after_long_help = ADJOINT_HELP)]
    AdjointLattice(ConfigArgs),
    /// Fourier series of a lattice-periodic operator.
    #[command(after_long_help = PERIODIC_FOURIER_HELP)]
    PeriodicFourier(WithTarget),
}

impl Sub {
    fn split(&self) -> (Command, &ConfigArgs, Option<&str>) {
        match self {
            Sub::FrameBounds(c) => (Command::FrameBounds, c, None),
            Sub::Janssen(c) => (Command::Janssen, c, None),
            Sub::WexlerRaz(w) => (Command::WexlerRaz, &w.config, w.target.as_deref()),
            Sub::Dual(c) => (Command::Dual, c, None),
            Sub::Reconstruct(w) => (Command::Reconstruct, &w.config, w.target.as_deref()),
            Sub::Cohen(w) => (Command::Cohen, &w.config, w.target.as_deref()),
            Sub::NormEquiv(c) => (Command::NormEquiv, c, None),
            Sub::SvdWindows(c) => (Command::SvdWindows, c, None),
            Sub::AdjointLattice(c) => (Command::AdjointLattice, c, None),
            Sub::PeriodicFourier(w) => (Command::PeriodicFourier, &w.config, w.target.as_deref()),
        }
    }
}

impl OutputArgs {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.kv {
            Format::KeyValue
        } else {
            Format::Csv
        }
    }
}

fn settings_from(args: &ConfigArgs, target: Option<&str>) -> Result<Settings> {
    let mut s = match &args.config {
        Some(path) => Settings::load(path)
            .map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?,
        None => Settings::default(),
    };
    s.set("L", args.len.clone());
    s.set("lattice", args.lattice.clone());
    s.set("gen", args.generator.clone());
    s.set("p", args.p.clone());
    s.set("weight", args.weight.clone());
    s.set("probes", args.probes.clone());
    s.set("seed", args.seed.clone());
    s.set("window", args.window.clone());
    s.set("target", target.map(str::to_string));
    Ok(s)
}

fn exit_code(report: &Report) -> i32 {
    if report.failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_TOLERANCE
    }
}

/// Writes `report` as `<stem>.<ext>` plus `<prefix><artifact>` files.
fn write_files(
    report: &Report,
    format: Format,
    dir: &Path,
    stem: &str,
    prefix: &str,
) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(
        dir.join(format!("{stem}.{}", format.extension())),
        report.render(format),
    )?;
    for (name, contents) in &report.artifacts {
        fs::write(dir.join(format!("{prefix}{name}")), contents)?;
    }
    Ok(())
}

fn run_single(
    sub: &Sub,
    output: &OutputArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let (cmd, args, target) = sub.split();
    let format = output.format();
    let result = settings_from(args, target).and_then(|s| {
        let cfg = ExperimentConfig::from_settings(&s)?;
        let report = execute(cmd, &cfg, cfg.target.as_deref())?;
        match &output.out {
            Some(dir) => write_files(&report, format, dir, cmd.name(), "")?,
            None => {
                stdout.write_all(report.render(format).as_bytes())?;
                if !report.artifacts.is_empty() {
                    write_files(&report, format, Path::new("."), cmd.name(), "")?;
                }
            }
        }
        Ok(report)
    });
    match result {
        Ok(report) => {
            for f in &report.failures {
                let _ = writeln!(stderr, "ggf {}: tolerance failure: {f}", cmd.name());
            }
            exit_code(&report)
        }
        Err(e) => {
            let _ = writeln!(stderr, "ggf {}: {e}", cmd.name());
            EXIT_PRECONDITION
        }
    }
}

fn run_config_file(path: &Path, out_dir: &Path, format: Format) -> Result<Report> {
    let settings = Settings::load(path)?;
    let cfg = ExperimentConfig::from_settings(&settings)?;
    let name = cfg
        .command
        .as_deref()
        .ok_or_else(|| Error::Parse("command: missing".into()))?;
    let cmd = Command::parse(name)?;
    let report = execute(cmd, &cfg, cfg.target.as_deref())?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| cmd.name().to_string());
    write_files(&report, format, out_dir, &stem, &format!("{stem}."))?;
    Ok(report)
}

fn run_batch(dir: &Path, output: &OutputArgs, stderr: &mut dyn Write) -> i32 {
    let mut files: Vec<PathBuf> = match fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "cfg"))
            .collect(),
        Err(e) => {
            let _ = writeln!(stderr, "ggf --batch {}: {e}", dir.display());
            return EXIT_PRECONDITION;
        }
    };
    files.sort();
    if files.is_empty() {
        let _ = writeln!(stderr, "ggf --batch {}: no .cfg files", dir.display());
        return EXIT_PRECONDITION;
    }
    let out_dir = output.out.clone().unwrap_or_else(|| dir.to_path_buf());
    let format = output.format();
    let results: Vec<Result<Report>> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|f| {
                let out_dir = &out_dir;
                scope.spawn(move || run_config_file(f, out_dir, format))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("experiment thread panicked"))
            .collect()
    });
    let mut code = EXIT_OK;
    for (file, result) in files.iter().zip(results) {
        match result {
            Ok(report) => {
                for f in &report.failures {
                    let _ = writeln!(stderr, "{}: tolerance failure: {f}", file.display());
                }
                code = code.max(exit_code(&report));
            }
            Err(e) => {
                let _ = writeln!(stderr, "{}: {e}", file.display());
                code = code.max(EXIT_PRECONDITION);
            }
        }
    }
    code
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_PRECONDITION
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match (&cli.batch, &cli.command) {
        (Some(_), Some(_)) => {
            let _ = writeln!(stderr, "ggf: --batch cannot be combined with a command");
            EXIT_PRECONDITION
        }
        (Some(dir), None) => run_batch(dir, &cli.output, stderr),
        (None, Some(sub)) => run_single(sub, &cli.output, stdout, stderr),
        (None, None) => {
            let _ = writeln!(stderr, "ggf: a command or --batch DIR is required");
            EXIT_PRECONDITION
        }
    }
}

pub fn run() -> i32 {
    run_with(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
