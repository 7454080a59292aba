//! The `wfs-noise` command line.
//!
//! ```text
//! wfs-noise sweep --family single --axis r --values 0,0.5,1 --N 64 --s 2 --wfs both
//! wfs-noise bs --r 1 --phi1 1.5707963
//! wfs-noise check --N 64 --s 2 --samples 100000
//! ```
//!
//! `sweep` and `bs` emit CSV (header row, fixed column order, 9 significant
//! digits) or JSON lines with the same field names. Identical flags give
//! identical bytes, whatever `--workers` is.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analytic::{self, Regime};
use crate::beamsplitter::{self, BsSetup};
use crate::error::{invalid, Error};
use crate::medium::{sample_row, MediumConfig};
use crate::montecarlo::{self, ExperimentSpec, InputFamily, SweepAxis, DEFAULT_SEED};
use crate::stats::RunningStats;

#[derive(Debug, Parser)]
#[command(name = "wfs-noise", version, about = "Quadrature noise of squeezed light through a disordered medium")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo and closed-form variances over one parameter axis.
    Sweep(SweepArgs),
    /// Output variance of two squeezed vacua on a balanced beam splitter.
    Bs(BsArgs),
    /// Statistical self-check of sampled transmission coefficients.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Single,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    R,
    G,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WfsArg {
    On,
    Off,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, value_enum)]
    pub axis: AxisArg,
    /// Comma-separated axis values.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub values: Vec<f64>,
    /// Transmission channels.
    #[arg(long = "N", default_value_t = montecarlo::DEFAULT_CHANNELS)]
    pub n: usize,
    /// Excited inputs (default: N).
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Disorder degree s = L/l (when not swept).
    #[arg(long, default_value_t = montecarlo::DEFAULT_DISORDER)]
    pub s: f64,
    /// Single-mode squeezing (when not swept).
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    /// Two-mode squeezing (when not swept).
    #[arg(long, default_value_t = 0.6)]
    pub g: f64,
    #[arg(long = "phi-g", default_value_t = PI)]
    pub phi_g: f64,
    #[arg(long = "alpha-x", default_value_t = 0.0)]
    pub alpha_x: f64,
    #[arg(long = "alpha-p", default_value_t = 0.0)]
    pub alpha_p: f64,
    #[arg(long, default_value_t = montecarlo::DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = WfsArg::Both)]
    pub wfs: WfsArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses all cores. Does not change the output.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct BsArgs {
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    /// Phase of input 0 (default: both 0 and π/2).
    #[arg(long, conflicts_with = "phi1_grid")]
    pub phi1: Option<f64>,
    /// Comma-separated phases of input 0.
    #[arg(long = "phi1-grid", value_delimiter = ',', num_args = 1..)]
    pub phi1_grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.0)]
    pub phi2: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long = "N", default_value_t = montecarlo::DEFAULT_CHANNELS)]
    pub n: usize,
    #[arg(long, default_value_t = montecarlo::DEFAULT_DISORDER)]
    pub s: f64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

/// One emitted sweep line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub axis_name: &'static str,
    pub axis_value: f64,
    pub var_x_mc: f64,
    pub se_x: f64,
    pub var_p_mc: f64,
    pub se_p: f64,
    pub var_x_theory: f64,
    pub var_p_theory: f64,
    pub wfs_flag: &'static str,
    pub family: &'static str,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub s: f64,
    pub trials: usize,
    pub seed: u64,
}

pub const RESULT_COLUMNS: [&str; 15] = [
    "axis_name", "axis_value", "var_x_mc", "se_x", "var_p_mc", "se_p", "var_x_theory", "var_p_theory",
    "wfs_flag", "family", "N", "K", "s", "trials", "seed",
];

impl ResultRow {
    fn csv_fields(&self) -> [String; 15] {
        let f = format_sig9;
        [
            self.axis_name.to_string(),
            f(self.axis_value),
            f(self.var_x_mc),
            f(self.se_x),
            f(self.var_p_mc),
            f(self.se_p),
            f(self.var_x_theory),
            f(self.var_p_theory),
            self.wfs_flag.to_string(),
            self.family.to_string(),
            self.n.to_string(),
            self.k.to_string(),
            f(self.s),
            self.trials.to_string(),
            self.seed.to_string(),
        ]
    }
}

/// One emitted beam-splitter line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BsRow {
    pub r: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub var_x0: f64,
    pub var_p0: f64,
    pub cosh_2r: f64,
    pub exp_minus_2r: f64,
}

pub const BS_COLUMNS: [&str; 7] = ["r", "phi1", "phi2", "var_x0", "var_p0", "cosh_2r", "exp_minus_2r"];

/// Decimal rendering with 9 significant digits, trailing zeros trimmed;
/// scientific notation outside `[1e-5, 1e9)`.
pub fn format_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_fraction(&format!("{v:.decimals$}")).to_string()
    } else {
        let s = format!("{v:.8e}");
        let (mantissa, exponent) = s.split_once('e').expect("scientific format has an exponent");
        format!("{}e{exponent}", trim_fraction(mantissa))
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn emit<R: Serialize>(format: Format, header: &[&str], rows: &[R], fields: impl Fn(&R) -> Vec<String>) -> io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(header)?;
            for row in rows {
                w.write_record(fields(row))?;
            }
            w.flush()?;
        }
        Format::Jsonl => {
            for row in rows {
                serde_json::to_writer(&mut buf, row)?;
                buf.push(b'\n');
            }
        }
    }
    Ok(buf)
}

fn write_output(out: &Option<PathBuf>, bytes: &[u8]) -> io::Result<()> {
    match out {
        Some(path) if path.as_os_str() != "-" => File::create(path)?.write_all(bytes),
        _ => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()
        }
    }
}

/// Everything that can end a command early.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

/// Computes the sweep table.
pub fn sweep_rows(args: &SweepArgs) -> Result<Vec<ResultRow>, CliError> {
    let medium = MediumConfig::new(args.n, args.s)?;
    let (family, axis) = match (args.family, args.axis) {
        (FamilyArg::Single, AxisArg::G) => return Err(invalid("--axis g needs --family two").into()),
        (FamilyArg::Two, AxisArg::R) => return Err(invalid("--axis r needs --family single").into()),
        (FamilyArg::Single, a) => (InputFamily::SingleSqueezed, a),
        (FamilyArg::Two, a) => (InputFamily::TwoSqueezed, a),
    };
    let axis = match axis {
        AxisArg::R => SweepAxis::R,
        AxisArg::G => SweepAxis::G,
        AxisArg::S => SweepAxis::S,
    };
    let spec = ExperimentSpec {
        r: args.r,
        g: args.g,
        phi_g: args.phi_g,
        alpha_x: args.alpha_x,
        alpha_p: args.alpha_p,
        excited: args.k.unwrap_or(args.n),
        trials: args.trials,
        seed: args.seed,
        ..ExperimentSpec::new(family, medium)
    };
    spec.validate()?;
    let settings: &[bool] = match args.wfs {
        WfsArg::On => &[true],
        WfsArg::Off => &[false],
        WfsArg::Both => &[true, false],
    };

    let mut rows = Vec::new();
    for (i, &value) in args.values.iter().enumerate() {
        let point = spec.at(axis, value)?;
        for &wfs in settings {
            let theory = point.theory(Regime::from(wfs))?;
            let est = montecarlo::sweep_point(&spec, axis, i, value, wfs, args.workers)?;
            rows.push(ResultRow {
                axis_name: axis.name(),
                axis_value: value,
                var_x_mc: est.mean_var_x,
                se_x: est.se_x,
                var_p_mc: est.mean_var_p,
                se_p: est.se_p,
                var_x_theory: theory.var_x,
                var_p_theory: theory.var_p,
                wfs_flag: if wfs { "on" } else { "off" },
                family: match args.family {
                    FamilyArg::Single => "single",
                    FamilyArg::Two => "two",
                },
                n: point.medium.channels(),
                k: point.excited,
                s: point.medium.disorder(),
                trials: point.trials,
                seed: point.seed,
            });
        }
    }
    Ok(rows)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let rows = sweep_rows(args)?;
    let bytes = emit(args.format, &RESULT_COLUMNS, &rows, |r| r.csv_fields().to_vec())?;
    write_output(&args.out, &bytes)?;
    Ok(())
}

pub fn bs_rows(args: &BsArgs) -> Vec<BsRow> {
    let grid = match (&args.phi1, &args.phi1_grid) {
        (Some(p), _) => vec![*p],
        (None, Some(g)) => g.clone(),
        (None, None) => vec![0.0, FRAC_PI_2],
    };
    grid.into_iter()
        .map(|phi1| {
            let (var_x0, var_p0) = beamsplitter::bs_output_variance(&BsSetup { r: args.r, phi1, phi2: args.phi2 });
            BsRow {
                r: args.r,
                phi1,
                phi2: args.phi2,
                var_x0,
                var_p0,
                cosh_2r: beamsplitter::closed_form_no_wfs(args.r),
                exp_minus_2r: beamsplitter::closed_form_wfs(args.r),
            }
        })
        .collect()
}

pub fn cmd_bs(args: &BsArgs) -> Result<(), CliError> {
    if !args.r.is_finite() {
        return Err(invalid("--r must be finite").into());
    }
    let rows = bs_rows(args);
    let bytes = emit(args.format, &BS_COLUMNS, &rows, |r| {
        [r.r, r.phi1, r.phi2, r.var_x0, r.var_p0, r.cosh_2r, r.exp_minus_2r].map(format_sig9).to_vec()
    })?;
    write_output(&args.out, &bytes)?;
    Ok(())
}

/// Random stream tag reserved for `check`.
const CHECK_STREAM: u64 = u64::MAX;

/// Writes the coefficient-statistics report; returns whether every check passed.
pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let cfg = MediumConfig::new(args.n, args.s)?;
    if args.samples < 2 {
        return Err(invalid("--samples must be >= 2").into());
    }
    let n = cfg.channels();
    let half = n / 2;
    let mut mean_t = RunningStats::new();
    let mut mean_r = RunningStats::new();
    let mut cross = RunningStats::new();
    let mut max_dev = 0.0f64;
    for i in 0..args.samples {
        let row = sample_row(&cfg, &mut montecarlo::trial_rng(args.seed, CHECK_STREAM, i as u64));
        let t: Vec<f64> = row.intensities().collect();
        mean_t.push(t.iter().sum::<f64>() / n as f64);
        mean_r.push(row.reflection().iter().map(|c| c.norm_sqr()).sum::<f64>() / n as f64);
        if half > 0 {
            cross.push((0..half).map(|j| (t[j] * t[j + half]).sqrt()).sum::<f64>() / half as f64);
        }
        max_dev = max_dev.max((row.norm_sqr() - 1.0).abs());
    }

    writeln!(out, "coefficient check: N={} s={} samples={} seed={}", n, format_sig9(cfg.disorder()), args.samples, args.seed)?;
    if n < 16 {
        writeln!(out, "warning: N={n} is small; normalized amplitudes are only approximately Rayleigh at this size")?;
    }

    let mut all = true;
    let mut line = |out: &mut dyn Write, name: &str, got: f64, want: f64, tol: f64| -> io::Result<()> {
        let ok = (got - want).abs() <= tol;
        all &= ok;
        writeln!(
            out,
            "{} {name}: {} expected {} (|diff| {} <= {})",
            if ok { "PASS" } else { "FAIL" },
            format_sig9(got),
            format_sig9(want),
            format_sig9((got - want).abs()),
            format_sig9(tol)
        )
    };
    // 1e-12 floor: at s = 1 every row has the same total and the standard error collapses
    line(out, "mean |t|^2", mean_t.mean(), cfg.mean_transmission(), (3.0 * mean_t.std_error()).max(1e-12))?;
    line(out, "mean |r|^2", mean_r.mean(), cfg.mean_reflection(), (3.0 * mean_r.std_error()).max(1e-12))?;
    if half > 0 {
        let ratio = cross.mean() / mean_t.mean();
        line(out, "mean sqrt(T T')/mean T", ratio, analytic::rayleigh_cross_moment_ratio(), 0.01)?;
    } else {
        writeln!(out, "SKIP mean sqrt(T T')/mean T: needs N >= 2")?;
    }
    line(out, "max |row norm - 1|", max_dev, 0.0, 1e-12)?;
    Ok(all)
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code: 0 success, 1 failed check, 2 usage or configuration
/// error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Sweep(a) => cmd_sweep(a).map(|_| true),
        Command::Bs(a) => cmd_bs(a).map(|_| true),
        Command::Check(a) => cmd_check(a, &mut io::stdout().lock()),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("wfs-noise: {e}");
            2
        }
    }
}
