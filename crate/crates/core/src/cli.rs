//! Command-line front end.
//!
//! Subcommands: `walk`, `density`, `compare`, `figures` and `bench`. Exit codes
//! are 0 on success, 1 when a verification gate fails, 2 on invalid input and
//! 3 on I/O failure.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::hint::black_box;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::coin::CoinParameters;
use crate::momentum::{momentum_density, s_power_closed, s_power_oracle, sample_closed_form};
use crate::position_walk::{evolve, initial_state, position_density, Spinor};
use crate::transform_bridge::{dtft, MomentumGrid, MomentumSamples};

/// Tolerance on the norm of a user-supplied initial spinor.
pub const SPINOR_TOLERANCE: f64 = 1e-9;
/// Residual above which `compare` and `bench` report a verification failure.
pub const AGREEMENT_GATE: f64 = 1e-8;
/// Grid used for the figure data when none is given.
pub const FIGURE_GRID: usize = 1024;
/// Coin angles of the reference figures, as `(file tag, angle token)`.
pub const FIGURE_BETAS: [(&str, &str); 3] = [("8", "pi/8"), ("4", "pi/4"), ("3x8", "3pi/8")];
pub const FIGURE_TIMES: [usize; 4] = [10, 30, 50, 70];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<crate::error::WalkError> for CliError {
    fn from(e: crate::error::WalkError) -> Self {
        CliError::Validation(e.to_string())
    }
}

/// Parses an angle in radians: a decimal number, or a multiple of pi such as
/// `pi`, `-pi/2`, `3pi/8` or `3*pi/8`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("angle {s:?} is not finite"))
        };
    }
    let bad = || format!("cannot parse angle {s:?}");
    let lower = t.to_ascii_lowercase();
    let (sign, body) = match lower.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, lower.strip_prefix('+').unwrap_or(&lower)),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let factor = num.strip_suffix("pi").ok_or_else(bad)?;
    let factor = factor.strip_suffix('*').unwrap_or(factor);
    let k = if factor.is_empty() {
        1.0
    } else {
        factor.parse::<f64>().map_err(|_| bad())?
    };
    let d = match den {
        Some(d) => d.parse::<f64>().map_err(|_| bad())?,
        None => 1.0,
    };
    if d == 0.0 || !k.is_finite() || !d.is_finite() {
        return Err(bad());
    }
    Ok(sign * k * PI / d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "qwalk",
    version,
    about = "One-dimensional coined quantum walks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate the walk on the lattice and write its position density.
    Walk(WalkArgs),
    /// Evaluate the closed-form momentum density on a grid.
    Density(WalkArgs),
    /// Cross-check the closed form against the lattice walk and matrix powers.
    Compare(WalkArgs),
    /// Write the reference momentum-density figure data.
    Figures(FigureArgs),
    /// Time the closed form against repeated matrix products.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WalkArgs {
    /// Coin mixing angle (radians, or e.g. pi/8).
    #[arg(long, default_value = "pi/4", value_parser = parse_angle, allow_hyphen_values = true)]
    pub beta: f64,
    /// Phase of a (radians).
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Phase of b (radians).
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub delta: f64,
    /// Global phase per step (radians).
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Initial amplitude of component 0.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], default_values_t = [1.0, 0.0], allow_hyphen_values = true)]
    pub psi0: Vec<f64>,
    /// Initial amplitude of component 1.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], default_values_t = [0.0, 0.0], allow_hyphen_values = true)]
    pub psi1: Vec<f64>,
    /// Number of time steps.
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    /// Momentum grid size; 0 picks the next power of two >= 2*steps+2.
    #[arg(long, default_value_t = 0)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    /// Directory receiving the CSV files and manifest.json.
    #[arg(long)]
    pub out: PathBuf,
    /// Momentum grid size for every panel.
    #[arg(long, default_value_t = FIGURE_GRID)]
    pub grid: usize,
    /// Also write an SVG chart next to each CSV.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub walk: WalkArgs,
    /// Timed repetitions per engine; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
}

/// A validated run: coin, unit initial spinor, step count and grid.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub coin: CoinParameters,
    pub initial: Spinor,
    pub steps: usize,
    pub grid: MomentumGrid,
}

impl RunConfig {
    /// Validates the flags. A spinor within [`SPINOR_TOLERANCE`] of unit norm
    /// is rescaled to unit norm.
    pub fn from_args(args: &WalkArgs) -> Result<Self, CliError> {
        let coin = CoinParameters::from_angles(args.beta, args.gamma, args.delta, args.alpha)?;
        let raw = Spinor::from_parts(args.psi0[0], args.psi0[1], args.psi1[0], args.psi1[1]);
        raw.check_normalized(SPINOR_TOLERANCE)?;
        let initial = raw.scale(Complex64::new(raw.norm_sqr().sqrt().recip(), 0.0));
        let grid = if args.grid == 0 {
            MomentumGrid::auto_for_steps(args.steps)
        } else {
            MomentumGrid::new(args.grid)?
        };
        Ok(RunConfig {
            coin,
            initial,
            steps: args.steps,
            grid,
        })
    }

    pub fn new(coin: CoinParameters, initial: Spinor, steps: usize, grid: MomentumGrid) -> Self {
        RunConfig {
            coin,
            initial,
            steps,
            grid,
        }
    }

    fn metadata(&self) -> serde_json::Value {
        json!({
            "beta": self.coin.beta(),
            "gamma": self.coin.gamma(),
            "delta": self.coin.delta(),
            "alpha": self.coin.alpha(),
            "steps": self.steps,
            "grid_size": self.grid.size(),
        })
    }
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, contents.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// Shortest round-trip decimal form of `v`, switching to exponent notation
/// for very small or very large magnitudes.
pub fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// `x,prob` rows of a lattice density.
pub fn walk_csv(density: &[(i64, f64)]) -> String {
    let mut s = String::from("x,prob\n");
    for (x, p) in density {
        writeln!(s, "{x},{}", fmt_num(*p)).unwrap();
    }
    s
}

/// One row of momentum-density output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityRow {
    pub p: f64,
    pub density0: f64,
    pub density1: f64,
    pub total: f64,
}

pub fn density_rows(samples: &MomentumSamples) -> Vec<DensityRow> {
    samples
        .iter()
        .map(|(p, phi)| {
            let (density0, density1) = momentum_density(phi);
            DensityRow {
                p,
                density0,
                density1,
                total: density0 + density1,
            }
        })
        .collect()
}

pub fn density_csv(rows: &[DensityRow]) -> String {
    let mut s = String::from("p,density0,density1,total\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{}",
            fmt_num(r.p),
            fmt_num(r.density0),
            fmt_num(r.density1),
            fmt_num(r.total)
        )
        .unwrap();
    }
    s
}

/// Minimal line chart of `density0` against `p`.
pub fn density_svg(rows: &[DensityRow], title: &str) -> String {
    let (w, h, margin) = (640.0, 400.0, 50.0);
    let ymax = rows
        .iter()
        .map(|r| r.density0)
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let sx = |p: f64| margin + (p + PI) / (2.0 * PI) * (w - 2.0 * margin);
    let sy = |d: f64| h - margin - d / ymax * (h - 2.0 * margin);
    let points = rows
        .iter()
        .map(|r| format!("{:.2},{:.2}", sx(r.p), sy(r.density0)))
        .collect::<Vec<_>>()
        .join(" ");
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="25" text-anchor="middle" font-family="sans-serif" font-size="14">{title}</text>"#,
        w / 2.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<path d="M{m},{m} V{b} H{r}" fill="none" stroke="black"/>"#,
        m = margin,
        b = h - margin,
        r = w - margin
    )
    .unwrap();
    for (p, label) in [(-PI, "-π"), (0.0, "0"), (PI, "π")] {
        writeln!(
            s,
            r#"<text x="{:.2}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{label}</text>"#,
            sx(p),
            h - margin + 18.0
        )
        .unwrap();
    }
    for d in [0.0, ymax] {
        writeln!(
            s,
            r#"<text x="{}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="12">{d:.3}</text>"#,
            margin - 6.0,
            sy(d) + 4.0
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<polyline points="{points}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#
    )
    .unwrap();
    s.push_str("</svg>\n");
    s
}

/// Residuals between the engines for one configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompareReport {
    /// Closed-form wave function against the transformed lattice walk.
    pub max_residual_wavefn: f64,
    /// Chebyshev operator power against repeated products, over the grid.
    pub max_residual_operator: f64,
    pub grid_size: usize,
    pub steps: usize,
}

impl CompareReport {
    pub fn passes(&self) -> bool {
        self.max_residual_wavefn <= AGREEMENT_GATE && self.max_residual_operator <= AGREEMENT_GATE
    }
}

pub fn compare_engines(config: &RunConfig) -> Result<CompareReport, CliError> {
    let walked = evolve(&initial_state(config.initial)?, &config.coin, config.steps);
    let lattice = dtft(&walked, &config.grid);
    let closed = sample_closed_form(&config.coin, config.initial, &config.grid, config.steps);
    let max_residual_operator = config
        .grid
        .nodes()
        .map(|p| {
            s_power_closed(&config.coin, p, config.steps).max_abs_diff(&s_power_oracle(
                &config.coin,
                p,
                config.steps,
            ))
        })
        .fold(0.0, f64::max);
    Ok(CompareReport {
        max_residual_wavefn: closed.max_abs_diff(&lattice),
        max_residual_operator,
        grid_size: config.grid.size(),
        steps: config.steps,
    })
}

/// Fastest of `repeats` timings per engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchReport {
    pub chebyshev: Duration,
    pub matrix_power: Duration,
    /// Largest difference between the two engines' wave functions.
    pub agreement: f64,
}

impl BenchReport {
    pub fn csv(&self, steps: usize, grid: usize) -> String {
        format!(
            "engine,steps,grid,seconds\nchebyshev,{steps},{grid},{}\nmatrix_power,{steps},{grid},{}\n",
            self.chebyshev.as_secs_f64(),
            self.matrix_power.as_secs_f64()
        )
    }
}

fn oracle_samples(config: &RunConfig) -> MomentumSamples {
    let phase = Complex64::from_polar(1.0, config.steps as f64 * config.coin.alpha());
    let values = config
        .grid
        .nodes()
        .map(|p| {
            s_power_oracle(&config.coin, p, config.steps)
                .apply(config.initial)
                .scale(phase)
        })
        .collect();
    MomentumSamples::new(config.grid, values, config.steps, None)
}

fn fastest<T>(repeats: usize, mut f: impl FnMut() -> T) -> Duration {
    (0..repeats.max(1))
        .map(|_| {
            let start = Instant::now();
            black_box(f());
            start.elapsed()
        })
        .min()
        .expect("at least one repeat")
}

/// Checks agreement first, then times both engines over the grid.
pub fn run_bench(config: &RunConfig, repeats: usize) -> Result<BenchReport, CliError> {
    let closed = sample_closed_form(&config.coin, config.initial, &config.grid, config.steps);
    let agreement = closed.max_abs_diff(&oracle_samples(config));
    if agreement > AGREEMENT_GATE {
        return Err(CliError::Verification(format!(
            "engines disagree by {agreement:e} (gate {AGREEMENT_GATE:e})"
        )));
    }
    let chebyshev = fastest(repeats, || {
        sample_closed_form(&config.coin, config.initial, &config.grid, config.steps)
    });
    let matrix_power = fastest(repeats, || oracle_samples(config));
    Ok(BenchReport {
        chebyshev,
        matrix_power,
        agreement,
    })
}

/// File written by `figures`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureEntry {
    pub file: String,
    pub beta: f64,
    pub beta_label: String,
    pub gamma: f64,
    pub delta: f64,
    pub alpha: f64,
    pub steps: usize,
    pub grid_size: usize,
}

/// Momentum samples of one reference panel: initial `(1, 0)`, `alpha = gamma = delta = 0`.
pub fn figure_samples(beta: f64, steps: usize, grid: &MomentumGrid) -> MomentumSamples {
    let coin = CoinParameters::from_angles(beta, 0.0, 0.0, 0.0).expect("finite beta");
    sample_closed_form(&coin, Spinor::up(), grid, steps)
}

pub fn cmd_walk(args: &WalkArgs) -> Result<(), CliError> {
    let config = RunConfig::from_args(args)?;
    let state = evolve(&initial_state(config.initial)?, &config.coin, config.steps);
    eprintln!("total probability: {}", state.total_probability());
    let density = position_density(&state);
    let body = match args.format {
        Format::Csv => walk_csv(&density),
        Format::Json => {
            let (x, prob): (Vec<i64>, Vec<f64>) = density.into_iter().unzip();
            let mut v = config.metadata();
            v["x"] = json!(x);
            v["prob"] = json!(prob);
            format!("{v}\n")
        }
        Format::Svg => return Err(CliError::Validation("walk writes csv or json".to_string())),
    };
    emit(args.out.as_deref(), &body)
}

pub fn cmd_density(args: &WalkArgs) -> Result<(), CliError> {
    let config = RunConfig::from_args(args)?;
    let samples = sample_closed_form(&config.coin, config.initial, &config.grid, config.steps);
    let rows = density_rows(&samples);
    let body = match args.format {
        Format::Csv => density_csv(&rows),
        Format::Svg => density_svg(
            &rows,
            &format!(
                "|phi0(p)|^2  beta={:.4} gamma={:.4} delta={:.4} t={}",
                config.coin.beta(),
                config.coin.gamma(),
                config.coin.delta(),
                config.steps
            ),
        ),
        Format::Json => {
            let mut v = config.metadata();
            v["p"] = json!(rows.iter().map(|r| r.p).collect::<Vec<_>>());
            v["density0"] = json!(rows.iter().map(|r| r.density0).collect::<Vec<_>>());
            v["density1"] = json!(rows.iter().map(|r| r.density1).collect::<Vec<_>>());
            format!("{v}\n")
        }
    };
    emit(args.out.as_deref(), &body)
}

pub fn cmd_compare(args: &WalkArgs) -> Result<(), CliError> {
    let config = RunConfig::from_args(args)?;
    let report = compare_engines(&config)?;
    let body = format!(
        "{}\n",
        serde_json::to_string(&report).expect("plain numbers")
    );
    emit(args.out.as_deref(), &body)?;
    if report.passes() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "residuals {:e} / {:e} exceed {AGREEMENT_GATE:e}",
            report.max_residual_wavefn, report.max_residual_operator
        )))
    }
}

pub fn cmd_figures(args: &FigureArgs) -> Result<Vec<FigureEntry>, CliError> {
    let grid = MomentumGrid::new(args.grid)?;
    let dir_err = |source| CliError::Io {
        path: args.out.clone(),
        source,
    };
    std::fs::create_dir_all(&args.out).map_err(dir_err)?;
    let mut entries = Vec::new();
    for (tag, token) in FIGURE_BETAS {
        let beta = parse_angle(token).expect("valid token");
        for steps in FIGURE_TIMES {
            let rows = density_rows(&figure_samples(beta, steps, &grid));
            let stem = format!("fig_beta{tag}_t{steps}");
            write_atomic(
                &args.out.join(format!("{stem}.csv")),
                density_csv(&rows).as_bytes(),
            )?;
            if args.svg {
                let title = format!("|phi0(p)|^2  beta={token} t={steps}");
                write_atomic(
                    &args.out.join(format!("{stem}.svg")),
                    density_svg(&rows, &title).as_bytes(),
                )?;
            }
            entries.push(FigureEntry {
                file: format!("{stem}.csv"),
                beta,
                beta_label: token.to_string(),
                gamma: 0.0,
                delta: 0.0,
                alpha: 0.0,
                steps,
                grid_size: grid.size(),
            });
        }
    }
    let manifest = serde_json::to_string_pretty(&json!({ "files": entries })).expect("plain data");
    write_atomic(
        &args.out.join("manifest.json"),
        format!("{manifest}\n").as_bytes(),
    )?;
    Ok(entries)
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let config = RunConfig::from_args(&args.walk)?;
    let report = run_bench(&config, args.repeats)?;
    eprintln!("agreement: {:e}", report.agreement);
    emit(
        args.walk.out.as_deref(),
        &report.csv(config.steps, config.grid.size()),
    )
}

/// Parses `argv` and runs the selected command, returning the process exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Walk(a) => cmd_walk(a),
        Command::Density(a) => cmd_density(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Figures(a) => cmd_figures(a).map(|_| ()),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
