//! `simplexflows` command line.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use simplexflows_core::classify::classify;
use simplexflows_core::group::{self, FreeWord, GroupWord};
use simplexflows_core::regularize::{inradius_flow_with, omega_points, phi, regularize_bimedian, FlowOptions};
use simplexflows_core::retract_k::{pyramid_k, KOptions, KRetraction, ScaleRule};
use simplexflows_core::retract_l::{pyramid_l, LOptions, LRetraction};
use simplexflows_core::solid_angle::{greatest_solid_angle_with, half_sphere, set_table_size};
use simplexflows_core::{linalg, ComplexKind, Configuration, Error, Simplex, Tolerances, Trajectory};

use crate::{io, selfcheck};

pub const SOBOL_ENV: &str = "SIMPLEXFLOWS_SOBOL_SIZE";

#[derive(Debug, Parser)]
#[command(name = "simplexflows", version, about = "Regularize simplices and retract K/L configurations onto pyramids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Relative rank threshold.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive)]
    pub tol_rank: f64,
    /// Absolute geometric threshold.
    #[arg(long, global = true, default_value_t = 1e-8, value_parser = positive)]
    pub tol_geom: f64,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the degeneracy type and greatest solid angle of a configuration.
    Classify(Input),
    /// Regularize a simplex given as a K configuration.
    Regularize {
        #[command(flatten)]
        io: PathArgs,
        #[arg(long, value_enum, default_value_t = Method::Omega)]
        method: Method,
    },
    /// Retract a K configuration onto a pyramid.
    RetractK {
        #[command(flatten)]
        io: PathArgs,
        /// Use the unnormalized perpendicular scale.
        #[arg(long)]
        literal_scale: bool,
    },
    /// Retract an L configuration onto a pyramid.
    RetractL {
        #[command(flatten)]
        io: PathArgs,
        #[arg(long, value_enum, default_value_t = Stage::All)]
        stage: Stage,
    },
    #[command(subcommand)]
    Group(GroupCommand),
    /// Run the verification suite.
    Selfcheck,
}

#[derive(Debug, Args)]
pub struct Input {
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// JSON-lines output; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(2..))]
    pub samples: u64,
    /// Also write one OBJ file per sample into this directory (n = 3 only).
    #[arg(long)]
    pub obj_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Phi,
    Omega,
    Bimedian,
    Flow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    All,
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    /// Check every relation and identity.
    Verify,
    /// Apply a word in y1, y2, y3 (or X, R, S) to an element of F3.
    Act {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        on: String,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("{s} is not a positive number")),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0:#}")]
    Usage(anyhow::Error),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Numeric(Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EmbeddingViolated { t } => Failure::Verification(format!("embedding violated at t = {t}")),
            Error::InvalidConfiguration(_) | Error::DimensionError { .. } | Error::NotGated { .. } | Error::Parse(_) => {
                Failure::Usage(e.into())
            }
            e => Failure::Numeric(e),
        }
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if let Ok(v) = std::env::var(SOBOL_ENV) {
        match v.parse::<usize>() {
            Ok(size) if size >= 2 => set_table_size(size),
            _ => {
                let _ = writeln!(err, "error: {SOBOL_ENV} must be an integer >= 2, got {v:?}");
                return 1;
            }
        }
    }
    match run(&cli, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let tol = Tolerances { rank: cli.tol_rank, geom: cli.tol_geom };
    match &cli.command {
        Command::Classify(input) => {
            let c = load(&input.input)?;
            run_classify(&c, &tol, out)
        }
        Command::Regularize { io, method } => {
            let c = load(&io.input)?;
            let traj = regularize_trajectory(&c, *method, io.samples as usize, &tol)?;
            emit(&traj, io, out)
        }
        Command::RetractK { io, literal_scale } => {
            let c = load(&io.input)?;
            let scale = if *literal_scale { ScaleRule::Literal } else { ScaleRule::Corrected };
            let r = KRetraction::new(&c, KOptions { tol, scale })?;
            let traj = r.trajectory_checked(io.samples as usize)?;
            emit(&traj, io, out)?;
            if io.out.is_some() {
                let end = Configuration { kind: ComplexKind::K, points: traj.last().expect("nonempty").points.clone() };
                summary(out, format_args!("endpoint pyramid: {:?}", pyramid_k(&end, 1e-6).is_some()))?;
            }
            Ok(())
        }
        Command::RetractL { io, stage } => {
            let c = load(&io.input)?;
            let r = LRetraction::new(&c, LOptions { tol })?;
            let n = io.samples as usize;
            let traj = match stage {
                Stage::All => r.trajectory_checked(n)?,
                Stage::One => r.stage_trajectory(1, n)?,
                Stage::Two => r.stage_trajectory(2, n)?,
                Stage::Three => r.stage_trajectory(3, n)?,
            };
            simplexflows_core::retract_k::check_embedded(&traj, ComplexKind::L, &tol)?;
            emit(&traj, io, out)?;
            if io.out.is_some() && *stage == Stage::All {
                let end = Configuration { kind: ComplexKind::L, points: traj.last().expect("nonempty").points.clone() };
                summary(out, format_args!("endpoint pyramid: {:?}", pyramid_l(&end, 1e-6).is_some()))?;
            }
            Ok(())
        }
        Command::Group(GroupCommand::Verify) => {
            let checks = group::verify_all();
            for c in &checks {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                summary(out, format_args!("{mark} {}  [{}]", c.name, c.detail))?;
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            summary(out, format_args!("{} of {} checks passed", checks.len() - failed, checks.len()))?;
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} group checks failed")));
            }
            Ok(())
        }
        Command::Group(GroupCommand::Act { word, on }) => {
            let w: GroupWord = word.parse()?;
            let v: FreeWord = on.parse()?;
            summary(out, format_args!("{}", group::act_word(&w, &v)))
        }
        Command::Selfcheck => {
            let results = selfcheck::run_all(cli.seed);
            for c in &results {
                summary(out, format_args!("{c}"))?;
            }
            let failed = results.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} criteria failed")));
            }
            Ok(())
        }
    }
}

fn summary(out: &mut dyn Write, args: std::fmt::Arguments<'_>) -> Result<(), Failure> {
    writeln!(out, "{args}").map_err(|e| Failure::Usage(e.into()))
}

fn load(path: &Path) -> Result<Configuration, Failure> {
    io::read_config(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::Usage)
}

fn run_classify(c: &Configuration, tol: &Tolerances, out: &mut dyn Write) -> Result<(), Failure> {
    let cls = classify(c, tol)?;
    summary(out, format_args!("class: {:?}", cls.class))?;
    summary(out, format_args!("margin: {:e}", cls.margin))?;
    if c.kind == ComplexKind::K {
        let s = c.as_simplex().expect("K configuration");
        let (alpha, vertex) = greatest_solid_angle_with(&s, tol)?;
        let v = half_sphere(c.dim());
        summary(out, format_args!("alpha: {alpha} at vertex {vertex}"))?;
        summary(out, format_args!("V: {v}"))?;
        if (alpha - v).abs() <= 1e-12 * v {
            summary(out, format_args!("alpha = V"))?;
        }
    }
    Ok(())
}

fn regularize_trajectory(c: &Configuration, method: Method, samples: usize, tol: &Tolerances) -> Result<Trajectory, Failure> {
    if c.kind != ComplexKind::K {
        return Err(Failure::Usage(anyhow::anyhow!("regularize expects a K configuration (a simplex)")));
    }
    let s = Simplex::with_tolerances(c.points.clone(), tol)?;
    let points = s.vertices().to_vec();
    let traj = match method {
        Method::Phi => {
            let x = linalg::difference_matrix(&points, 0);
            Trajectory::sample(samples, |t| {
                let y = phi(&x, t)?;
                Ok::<_, Error>(
                    std::iter::once(points[0].clone()).chain(y.column_iter().map(|col| &points[0] + col)).collect(),
                )
            })?
        }
        Method::Omega => Trajectory::sample(samples, |t| omega_points(&points, t))?,
        Method::Bimedian => Trajectory::sample(samples, |t| regularize_bimedian(&s, t).map(Simplex::into_vertices))?,
        Method::Flow => inradius_flow_with(&s, &FlowOptions::default())?.trajectory,
    };
    Ok(traj)
}

fn emit(traj: &Trajectory, args: &PathArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let usage = |e: io::IoError| Failure::Usage(e.into());
    match &args.out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display())).map_err(Failure::Usage)?;
            io::write_jsonl(BufWriter::new(f), traj).map_err(usage)?;
        }
        None => io::write_jsonl(&mut *out, traj).map_err(usage)?,
    }
    if let Some(dir) = &args.obj_dir {
        io::write_obj_frames(dir, traj).map_err(usage)?;
    }
    Ok(())
}
