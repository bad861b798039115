// Copyright 2026 The structsums developers
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.

//! Command line front end.
//!
//! Every command writes its outputs and a `manifest.json` into `--out`.
//! `structsums replay <manifest>` reruns a recorded command; CSV outputs of
//! the rerun are byte-identical on the same platform.
//!
//! Exit codes: 0 on success, 2 for usage errors (bad arguments, missing
//! inputs), 3 for numerical or protocol errors.

mod commands;
mod manifest;
mod tables;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use manifest::{RunManifest, MANIFEST_FILE};
pub use tables::{expand_globs, read_feature_tables, FeatureTable};

use crate::error::Error;
use crate::features::Projection;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, Parser)]
#[command(name = "structsums", version, about = "Structural sums of random disk composites")]
pub struct Cli {
    /// Base seed of every random choice.
    #[arg(long, global = true, env = "STRUCTSUMS_SEED")]
    pub seed: Option<u64>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "STRUCTSUMS_THREADS")]
    pub threads: Option<usize>,
    /// Target accuracy of Eisenstein function values.
    #[arg(long, global = true, env = "STRUCTSUMS_TOLERANCE")]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Lattice sums S_2..S_nmax.
    Latsum(LatsumArgs),
    /// Random or regular disk configurations.
    Generate(GenerateArgs),
    /// Feature table of structural sums.
    Features(FeaturesArgs),
    /// Naive Bayes accuracy grid and confusion matrices.
    Classify(ClassifyArgs),
    /// Effective conductivity series.
    Conduct(ConductArgs),
    /// Irregularity measure per sample and per class.
    Irregularity(IrregularityArgs),
    /// Accuracy of every pair of diagonal sums e_p_p.
    ScanPairs(ScanPairsArgs),
    /// Fit y = a log(b x + 1).
    FitCurve(FitCurveArgs),
    /// Rerun a command from its manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args)]
pub struct LatsumArgs {
    /// `square`, `hexagonal` or `re1,im1,re2,im2`.
    #[arg(long, default_value = "square")]
    pub lattice: String,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    /// Generator description (JSON).
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// `json` or `csv`.
    #[arg(long, default_value = "json")]
    pub format: String,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct FeaturesArgs {
    /// Glob of configuration files; repeatable.
    #[arg(long, required = true, num_args = 1..)]
    pub configs: Vec<String>,
    #[arg(long, default_value_t = 4)]
    pub q: u32,
    /// abs, re, im, arg or re_im.
    #[arg(long, default_value = "abs")]
    pub projection: Projection,
    /// Only the diagonal sums e_p_p (2 <= p <= q).
    #[arg(long)]
    pub prime: bool,
    /// Value of the `class` column.
    #[arg(long)]
    pub class: Option<String>,
    /// Cell of CSV configuration files.
    #[arg(long, default_value = "square")]
    pub lattice: String,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    /// Feature tables as `[class=]path`; repeatable.
    #[arg(long, required = true, num_args = 1..)]
    pub features: Vec<String>,
    /// Training samples per class.
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    #[arg(long, default_value_t = 10)]
    pub repeats: usize,
    /// Defaults to the smallest order in the tables.
    #[arg(long)]
    pub q_min: Option<u32>,
    /// Defaults to the largest order in the tables.
    #[arg(long)]
    pub q_max: Option<u32>,
    #[arg(long, value_delimiter = ',', default_value = "abs,re,im,arg")]
    pub projections: Vec<Projection>,
    /// Splits of the confusion-matrix protocol.
    #[arg(long, default_value_t = 3)]
    pub folds: usize,
    #[arg(long, default_value_t = 0.25)]
    pub train_fraction: f64,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ConductArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Conductivity of the inclusions (matrix conductivity is 1).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_f: f64,
    #[arg(long, default_value_t = crate::conductivity::DEFAULT_Q_MAX)]
    pub q_max: u32,
    #[arg(long, default_value = "square")]
    pub lattice: String,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct IrregularityArgs {
    /// Configuration globs as `[class=]glob`; repeatable. Without a class
    /// name the parent directory names the class.
    #[arg(long, required = true, num_args = 1..)]
    pub configs: Vec<String>,
    /// Also evaluate the effective conductivity for this inclusion
    /// conductivity.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_f: Option<f64>,
    #[arg(long, default_value_t = crate::conductivity::DEFAULT_Q_MAX)]
    pub q_max: u32,
    #[arg(long, default_value = "square")]
    pub lattice: String,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ScanPairsArgs {
    #[arg(long, required = true, num_args = 1..)]
    pub features: Vec<String>,
    /// Largest p of the sums e_p_p.
    #[arg(long, default_value_t = 10)]
    pub max_p: u32,
    #[arg(long, default_value = "abs")]
    pub projection: Projection,
    #[arg(long, default_value_t = 3)]
    pub folds: usize,
    #[arg(long, default_value_t = 0.25)]
    pub train_fraction: f64,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct FitCurveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    /// Fit each value of this column separately.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// A manifest file or the directory holding it.
    pub manifest: PathBuf,
    /// Output directory of the rerun.
    #[arg(long, short)]
    pub out: PathBuf,
}

/// Error of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failed(_) => EXIT_NUMERIC,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Failed(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } => CliError::Usage(e.to_string()),
            e => CliError::Failed(e),
        }
    }
}

impl Cli {
    /// The subcommand's output directory.
    pub fn out_dir(&self) -> &PathBuf {
        match &self.command {
            Command::Latsum(a) => &a.out,
            Command::Generate(a) => &a.out,
            Command::Features(a) => &a.out,
            Command::Classify(a) => &a.out,
            Command::Conduct(a) => &a.out,
            Command::Irregularity(a) => &a.out,
            Command::ScanPairs(a) => &a.out,
            Command::FitCurve(a) => &a.out,
            Command::Replay(a) => &a.out,
        }
    }

    fn out_dir_mut(&mut self) -> &mut PathBuf {
        match &mut self.command {
            Command::Latsum(a) => &mut a.out,
            Command::Generate(a) => &mut a.out,
            Command::Features(a) => &mut a.out,
            Command::Classify(a) => &mut a.out,
            Command::Conduct(a) => &mut a.out,
            Command::Irregularity(a) => &mut a.out,
            Command::ScanPairs(a) => &mut a.out,
            Command::FitCurve(a) => &mut a.out,
            Command::Replay(a) => &mut a.out,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&args).map_err(|e| CliError::Usage(e.to_string()))?;
    let argv = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    execute(cli, argv)
}

/// Reruns the command recorded in `manifest`, writing into `out`.
pub fn replay(manifest: &RunManifest, out: PathBuf) -> Result<(), CliError> {
    let mut args = vec!["structsums".to_string()];
    args.extend(manifest.argv.iter().cloned());
    let mut cli = Cli::try_parse_from(&args).map_err(|e| CliError::Usage(e.to_string()))?;
    if matches!(cli.command, Command::Replay(_)) {
        return Err(CliError::Usage("a replay manifest cannot be replayed".into()));
    }
    cli.seed = manifest.seed;
    cli.threads = manifest.threads;
    cli.tolerance = manifest.tolerance;
    *cli.out_dir_mut() = out;
    execute(cli, manifest.argv.clone())
}

fn execute(cli: Cli, argv: Vec<String>) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        // the global pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    if let Some(tol) = cli.tolerance {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(CliError::Usage(format!("--tolerance must lie in (0, 1), got {tol}")));
        }
    }
    if let Command::Replay(a) = &cli.command {
        let m = RunManifest::read(&a.manifest)?;
        return replay(&m, a.out.clone());
    }
    let out = cli.out_dir().clone();
    std::fs::create_dir_all(&out).map_err(|e| CliError::Usage(format!("{}: {e}", out.display())))?;
    commands::dispatch(&cli, argv)
}

/// Entry point of the binary: runs and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    if let Err(e) = Cli::try_parse_from(&args) {
        let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        let _ = e.print();
        return code;
    }
    match run(args) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
