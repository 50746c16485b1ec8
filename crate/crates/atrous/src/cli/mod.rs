//! Command-line front end.
//!
//! Exit codes: 0 success, 1 malformed input, 2 I/O failure, 3 divergence verdict,
//! 4 numerical failure. Failures print one `error: <kind>: <message>` line on standard error.

pub mod io;
pub mod registry;

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::design::{
    interp_design, optimize_symmetric, pr_triplet_design_with, symmetric_family, SymmetricSearch,
    TripletPhases,
};
use crate::error::AtrousError;
use crate::filterbank::{
    analyze, certify_stability_on, frame_bounds, frame_reconstruct_traced, infinite_frame_bounds,
    FrameReport, StabilityCertificate, TailFlag, Verdict,
};
use crate::separable2d::{analyze_2d, frame_bounds_2d, separable_product};
use crate::spectrum::{power_grid, GridSpec, DEFAULT_GRID};
use crate::tfmetrics::{tf_stats, SpreadMode, TFStats};
use io::FilterBankFile;

/// Environment variable overriding the default grid size.
pub const GRID_ENV: &str = "ATROUS_GRID_N";

/// Starting grid per axis for 2-D bounds; doubled as the filters require.
pub const GRID_2D_START: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Input(String),
    Io(String),
    Divergence(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Io(_) => 2,
            CliError::Divergence(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Io(_) => "io",
            CliError::Divergence(_) => "divergence",
            CliError::Numerical(_) => "numerical",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Io(m) | CliError::Divergence(m) | CliError::Numerical(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "error: {}: {}", self.kind(), self.message().replace('\n', " "))
    }
}

impl From<AtrousError> for CliError {
    fn from(e: AtrousError) -> Self {
        use AtrousError::*;
        let m = e.to_string();
        match e {
            NoConvergence { .. } | SingularSystem(_) | NotCoprime(_) | NotNonnegative(_)
            | OddCircleRoot(_) | NegativeFactor(_) | EmptyFeasibleSet(_) | GridTooSmall { .. } => {
                CliError::Numerical(m)
            }
            _ => CliError::Input(m),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "atrous", version, about = "Shift-invariant iterated filter banks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Built-in filter banks.
    Filters {
        #[command(subcommand)]
        action: FiltersAction,
    },
    /// Certified frame bounds and stability certificate.
    Analyze(AnalyzeArgs),
    /// Analysis transform of a signal into a pyramid directory.
    Transform(TransformArgs),
    /// Iterative frame reconstruction from a pyramid directory.
    Reconstruct(ReconstructArgs),
    /// Time and frequency spreads of every filter.
    Tf(TfArgs),
    /// Frequency responses and the one-level frame function as CSV.
    Response(ResponseArgs),
    /// Filter design.
    Design {
        #[command(subcommand)]
        method: DesignCommand,
    },
    /// Frame bounds of a separable 2-D product bank.
    Analyze2d(Analyze2dArgs),
    /// 2-D analysis of a matrix into a pyramid directory.
    Transform2d(Transform2dArgs),
}

#[derive(Debug, Subcommand)]
pub enum FiltersAction {
    List,
    Show { name: String },
}

#[derive(Debug, Args)]
pub struct BankArg {
    /// Registry name or path to a filter-bank JSON file.
    #[arg(long)]
    pub bank: String,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub bank: BankArg,
    #[arg(long, default_value_t = 1)]
    pub levels: usize,
    /// Truncated infinite bounds instead of order `levels`.
    #[arg(long)]
    pub infinite: bool,
    #[arg(long, default_value_t = 16)]
    pub jmax: usize,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub bank: BankArg,
    #[arg(long)]
    pub signal: PathBuf,
    #[arg(long)]
    pub levels: usize,
    #[arg(long)]
    pub outdir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    #[command(flatten)]
    pub bank: BankArg,
    #[arg(long)]
    pub pyramid: PathBuf,
    /// Report written by `analyze`; its certified bounds set the relaxation.
    #[arg(long)]
    pub bounds: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TfArgs {
    #[command(flatten)]
    pub bank: BankArg,
    /// Measure every high-pass filter about its one-sided centroid.
    #[arg(long)]
    pub bandpass_high: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ResponseArgs {
    #[command(flatten)]
    pub bank: BankArg,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum DesignCommand {
    /// Symmetric family `ĥ = [(1+e^{2πiξ})/2]ⁿ p̂`, `g = modulate_half(h)`.
    Symmetric(SymmetricArgs),
    /// High-pass filters interpolating frequency-response constraints.
    Interp(InterpArgs),
    /// Perfect-reconstruction triplet from Bezout identities.
    BezoutPr(BezoutArgs),
}

#[derive(Debug, Args)]
pub struct SymmetricArgs {
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    /// Comma-separated parameters `a[,b]`.
    #[arg(long, value_delimiter = ',', conflicts_with = "optimize")]
    pub params: Vec<f64>,
    /// Minimize the certified one-level sup/inf ratio.
    #[arg(long)]
    pub optimize: bool,
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    /// Bank whose low-pass filter is kept.
    #[arg(long)]
    pub lowpass: String,
    #[arg(long)]
    pub k: usize,
    /// One high-pass filter per occurrence: `xi:value,xi:value,…`; fractions like `5/32` allowed.
    #[arg(long, required = true)]
    pub constraints: Vec<String>,
    #[arg(long, default_value = "interp-design")]
    pub name: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BezoutArgs {
    /// `θ₀` as a multiple of π.
    #[arg(long, default_value_t = 5.0 / 16.0)]
    pub theta0: f64,
    /// `θ₁` as a multiple of π.
    #[arg(long, default_value_t = 0.25)]
    pub theta1: f64,
    /// Minimum phase for every spectral factor.
    #[arg(long)]
    pub all_minimum: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Analyze2dArgs {
    #[arg(long)]
    pub bank_x: String,
    #[arg(long)]
    pub bank_y: String,
    #[arg(long)]
    pub levels: usize,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Transform2dArgs {
    #[arg(long)]
    pub bank_x: String,
    #[arg(long)]
    pub bank_y: String,
    /// Matrix file with a `# offset=<r>,<c>` header.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub levels: usize,
    #[arg(long)]
    pub outdir: PathBuf,
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("{}", CliError::Input(first.to_string()));
            return 1;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Filters { action } => filters(action),
        Command::Analyze(a) => analyze_cmd(a),
        Command::Transform(a) => transform_cmd(a),
        Command::Reconstruct(a) => reconstruct_cmd(a),
        Command::Tf(a) => tf_cmd(a),
        Command::Response(a) => response_cmd(a),
        Command::Design { method } => design_cmd(method),
        Command::Analyze2d(a) => analyze2d_cmd(a),
        Command::Transform2d(a) => transform2d_cmd(a),
    }
}

/// Loads a registry bank by name, or a filter-bank JSON file otherwise.
pub fn load_bank(spec: &str) -> Result<crate::filterbank::FilterBank, CliError> {
    if registry::NAMES.contains(&spec) {
        return registry::get(spec).map_err(CliError::from);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::Input(format!(
            "{spec:?} is neither a built-in bank nor an existing file"
        )));
    }
    FilterBankFile::parse(&io::read_text(path)?)?.to_bank()
}

/// `--grid`, else `ATROUS_GRID_N`, else the library default.
pub fn resolve_grid(flag: Option<usize>) -> Result<GridSpec, CliError> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var(GRID_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("{GRID_ENV}={v:?} is not an integer")))?,
            Err(_) => DEFAULT_GRID,
        },
    };
    GridSpec::new(n).map_err(CliError::from)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn filters(action: FiltersAction) -> Result<(), CliError> {
    match action {
        FiltersAction::List => {
            for n in registry::NAMES {
                println!("{n}");
            }
            Ok(())
        }
        FiltersAction::Show { name } => {
            let b = registry::get(&name)?;
            print!("{}", FilterBankFile::from_bank(&b, None).to_json());
            Ok(())
        }
    }
}

/// Output of `analyze`.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct AnalyzeReport {
    pub bank: String,
    pub frame: FrameReport,
    pub stability: Option<StabilityCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stability_error: Option<String>,
    pub verdict: String,
}

fn analyze_cmd(a: AnalyzeArgs) -> Result<(), CliError> {
    let bank = load_bank(&a.bank.bank)?;
    let grid = resolve_grid(a.grid)?;
    let frame = if a.infinite {
        infinite_frame_bounds(&bank, a.jmax, grid)?
    } else {
        frame_bounds(&bank, a.levels, grid)?
    };
    let (stability, stability_error) = match certify_stability_on(&bank, grid) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let diverged = frame.tail_flag == TailFlag::DivergenceDetected
        || stability.as_ref().map(|c| c.verdict) == Some(Verdict::DivergenceDetected);
    let parseval = frame.parseval_deviation <= 1e-5;
    let verdict = if diverged {
        "DivergenceDetected".to_string()
    } else if parseval {
        "Parseval".to_string()
    } else {
        stability
            .as_ref()
            .map(|c| format!("{:?}", c.verdict))
            .unwrap_or_else(|| "Unverified".to_string())
    };
    let report = AnalyzeReport {
        bank: bank.name().to_string(),
        frame,
        stability,
        stability_error,
        verdict,
    };
    io::emit(a.out.as_deref(), &to_json(&report))?;
    if diverged {
        return Err(CliError::Divergence(format!(
            "{}: infinitely iterated bank diverges",
            bank.name()
        )));
    }
    Ok(())
}

fn transform_cmd(a: TransformArgs) -> Result<(), CliError> {
    let bank = load_bank(&a.bank.bank)?;
    let x = io::parse_signal_csv(&io::read_text(&a.signal)?)?;
    let pyr = analyze(&bank, &x, a.levels)?;
    io::write_pyramid(&a.outdir, &pyr)
}

fn reconstruct_cmd(a: ReconstructArgs) -> Result<(), CliError> {
    let bank = load_bank(&a.bank.bank)?;
    let pyr = io::read_pyramid(&a.pyramid)?;
    let text = io::read_text(&a.bounds)?;
    let frame = serde_json::from_str::<AnalyzeReport>(&text)
        .map(|r| r.frame)
        .or_else(|_| serde_json::from_str::<FrameReport>(&text))
        .map_err(|e| CliError::Input(format!("bounds file: {e}")))?;
    let (lo, hi) = frame.certified_bounds();
    let rec = frame_reconstruct_traced(&bank, &pyr, lo, hi, a.tol, a.max_iter)?;
    io::emit(a.out.as_deref(), &io::format_signal_csv(&rec.signal))
}

#[derive(Debug, Serialize)]
struct TfRow {
    filter: String,
    #[serde(flatten)]
    stats: TFStats,
}

fn tf_cmd(a: TfArgs) -> Result<(), CliError> {
    let bank = load_bank(&a.bank.bank)?;
    let mut rows = vec![TfRow {
        filter: "h".into(),
        stats: tf_stats(bank.lowpass(), SpreadMode::Lowpass)?,
    }];
    for (l, g) in bank.highpass().iter().enumerate() {
        let mode = if a.bandpass_high {
            SpreadMode::Bandpass
        } else {
            SpreadMode::auto(g)
        };
        rows.push(TfRow {
            filter: format!("g{}", l + 1),
            stats: tf_stats(g, mode)?,
        });
    }
    io::emit(a.out.as_deref(), &to_json(&rows))
}

fn response_cmd(a: ResponseArgs) -> Result<(), CliError> {
    let bank = load_bank(&a.bank.bank)?;
    let grid = resolve_grid(a.grid)?.doubled_past(bank.max_support(1))?;
    let n = grid.n;
    let h2 = power_grid(bank.lowpass(), grid)?;
    let g2 = bank
        .highpass()
        .iter()
        .map(|g| power_grid(g, grid))
        .collect::<Result<Vec<_>, _>>()?;
    let mut s = String::from("xi,h2");
    for l in 1..=g2.len() {
        s.push_str(&format!(",g{l}_2"));
    }
    s.push_str(",phi1\n");
    for i in 0..n {
        let k = (i + n / 2) % n;
        let xi = i as f64 / n as f64 - 0.5;
        let mut phi = h2[k];
        s.push_str(&format!("{xi},{}", h2[k]));
        for g in &g2 {
            phi += g[k];
            s.push_str(&format!(",{}", g[k]));
        }
        s.push_str(&format!(",{phi}\n"));
    }
    io::emit(a.out.as_deref(), &s)
}

fn parse_number(s: &str) -> Result<f64, CliError> {
    let bad = || CliError::Input(format!("cannot parse {s:?} as a number"));
    let v = match s.trim().split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            p / q
        }
        None => s.trim().parse().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

fn parse_constraints(s: &str) -> Result<Vec<(f64, f64)>, CliError> {
    s.split(',')
        .map(|pair| {
            let (xi, v) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Input(format!("constraint {pair:?} is not `xi:value`")))?;
            Ok((parse_number(xi)?, parse_number(v)?))
        })
        .collect()
}

fn design_cmd(method: DesignCommand) -> Result<(), CliError> {
    let (bank, out) = match method {
        DesignCommand::Symmetric(a) => {
            let bank = if a.optimize {
                let search = SymmetricSearch::default_for(a.n, a.degree);
                optimize_symmetric(a.n, a.degree, &search)?.bank
            } else {
                symmetric_family(a.n, &a.params)?
            };
            (bank, a.out)
        }
        DesignCommand::Interp(a) => {
            let h = load_bank(&a.lowpass)?.lowpass().clone();
            let g = a
                .constraints
                .iter()
                .map(|c| Ok(interp_design(a.k, &parse_constraints(c)?)?.to_sequence()))
                .collect::<Result<Vec<_>, CliError>>()?;
            (crate::filterbank::FilterBank::new(a.name, h, g)?, a.out)
        }
        DesignCommand::BezoutPr(a) => {
            let phases = if a.all_minimum {
                TripletPhases::all_minimum()
            } else {
                TripletPhases::default()
            };
            let t = pr_triplet_design_with(a.theta0 * PI, a.theta1 * PI, phases)?;
            (t.bank, a.out)
        }
    };
    io::emit(out.as_deref(), &FilterBankFile::from_bank(&bank, None).to_json())
}

fn analyze2d_cmd(a: Analyze2dArgs) -> Result<(), CliError> {
    let bx = load_bank(&a.bank_x)?;
    let by = load_bank(&a.bank_y)?;
    let grid = match (a.grid, std::env::var_os(GRID_ENV)) {
        (None, None) => GridSpec::new(GRID_2D_START).map_err(CliError::from)?,
        (flag, _) => resolve_grid(flag)?,
    };
    let report = frame_bounds_2d(&separable_product(&bx, &by), a.levels, grid)?;
    io::emit(a.out.as_deref(), &to_json(&report))
}

fn transform2d_cmd(a: Transform2dArgs) -> Result<(), CliError> {
    let bx = load_bank(&a.bank_x)?;
    let by = load_bank(&a.bank_y)?;
    let bank = separable_product(&bx, &by);
    let x = io::parse_matrix(&io::read_text(&a.input)?)?;
    let pyr = analyze_2d(&bank, &x, a.levels)?;
    fs::create_dir_all(&a.outdir).map_err(|e| CliError::Io(format!("{}: {e}", a.outdir.display())))?;
    let idx = bank.highpass_indices();
    for (j, lv) in pyr.details.iter().enumerate() {
        for ((l, m), c) in idx.iter().zip(lv) {
            let name = format!("detail_j{}_l{l}_m{m}.txt", j + 1);
            io::write_atomic(&a.outdir.join(name), &io::format_matrix(c))?;
        }
    }
    io::write_atomic(&a.outdir.join("approx.txt"), &io::format_matrix(&pyr.approximation))
}
