//! The `gqfi` command line. [`run`] takes the arguments and output streams
//! and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gqfi_core::qfi::precision_report;
use gqfi_core::variance::unbounded_demo;
use gqfi_core::{ChannelConfig, ModeParams, ProductStateParams};

use crate::config::load_spec;
use crate::oracle::{
    compare_point, run_grid, OracleGrid, FIDELITY_TOL, MOMENT_TOL, QFI_TOL,
};
use crate::sweep::{
    format_value, gnuplot_script, run_sweep, write_csv, Scale, SweepMode, SweepRange, SweepSpec,
};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Relative QFI deviation above which `qfi --oracle` reports a mismatch.
pub const ORACLE_MISMATCH_TOL: f64 = 1e-3;

#[derive(Debug, Parser)]
#[command(name = "gqfi", version, about = "Phase-estimation bounds for Gaussian states in a lossy interferometer")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// QFI, J and the phase bound for one input state.
    Qfi(QfiArgs),
    /// Sweep a parameter and write CSV.
    Sweep(SweepArgs),
    /// Compare the Gaussian formulas with the Fock-space simulation on a grid.
    OracleCheck(OracleArgs),
    /// Two-point photon distribution with a large phase-generator spread.
    VarianceDemo(VarianceArgs),
}

#[derive(Debug, Args)]
pub struct QfiArgs {
    /// Dual squeezed vacuum, from --nbar or --r.
    #[arg(long, conflicts_with = "dsdv")]
    pub dsv: bool,
    /// Dual squeezed displaced vacuum, from two of --alpha2, --r, --nbar.
    #[arg(long)]
    pub dsdv: bool,
    #[arg(long)]
    pub nbar: Option<f64>,
    #[arg(long)]
    pub alpha2: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[command(flatten)]
    pub state: StateArgs,
    /// Transmissivity of arm a (and of arm b unless --eta-b is given).
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    #[arg(long)]
    pub eta_b: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    /// Also run the Fock-space simulation (N̄ ≤ 6).
    #[arg(long)]
    pub oracle: bool,
}

/// Input parameters of an arbitrary product state; used when neither --dsv
/// nor --dsdv is given.
#[derive(Debug, Args, Default)]
pub struct StateArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub omega_a: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha_a: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta_a: f64,
    #[arg(long, default_value_t = 0.0)]
    pub r_a: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta_a: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub omega_b: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha_b: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta_b: f64,
    #[arg(long, default_value_t = 0.0)]
    pub r_b: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta_b: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub mode: Option<SweepMode>,
    /// TOML file with the sweep spec; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Transmissivities, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    pub eta: Vec<f64>,
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum)]
    pub scale: Option<Scale>,
    #[arg(long)]
    pub alpha2: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub nbar: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// State parameter swept in custom mode, e.g. r_a.
    #[arg(long)]
    pub variable: Option<String>,
    /// CSV path; per-η files get an `_eta<η>` suffix. Without it the table
    /// goes to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub single_file: bool,
    /// Also write a gnuplot script next to the CSV.
    #[arg(long)]
    pub gnuplot: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Number of random states added to the grid.
    #[arg(long, default_value_t = 20)]
    pub random: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Leave out the fixed DSV and DSDV states.
    #[arg(long)]
    pub no_fixed: bool,
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 0.8, 1.0])]
    pub eta: Vec<f64>,
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    pub phi: f64,
    /// Write every grid point to this CSV file.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VarianceArgs {
    #[arg(long)]
    pub nbar: f64,
    #[arg(long)]
    pub kappa: f64,
}

/// Exit code for an error that ends a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } | Error::Csv { .. } => EXIT_IO,
        Error::Leakage { .. }
        | Error::CutoffTooLarge { .. }
        | Error::LinearAlgebra(_)
        | Error::CutoffMismatch { .. } => EXIT_NUMERICAL,
        Error::Core(core) => match core {
            gqfi_core::Error::InvalidParameter { .. }
            | gqfi_core::Error::Transmissivity { .. }
            | gqfi_core::Error::Epsilon { .. }
            | gqfi_core::Error::NonOptimalPhases { .. }
            | gqfi_core::Error::Distribution { .. }
            | gqfi_core::Error::Coefficients { .. } => EXIT_USAGE,
            _ => EXIT_NUMERICAL,
        },
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Qfi(a) => cmd_qfi(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::OracleCheck(a) => cmd_oracle_check(a, out),
        Command::VarianceDemo(a) => cmd_variance_demo(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Twelve significant digits, without trailing zeros.
fn readable(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    rounded.to_string()
}

fn usage(message: impl Into<String>) -> Error {
    Error::Usage(message.into())
}

fn io_out(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn state_from_args(a: &QfiArgs) -> Result<ProductStateParams> {
    let (nbar, alpha2, r) = (a.nbar, a.alpha2, a.r);
    if a.dsv {
        return match (nbar, r, alpha2) {
            (_, _, Some(_)) => Err(usage("--dsv takes no --alpha2")),
            (Some(n), None, None) => Ok(ProductStateParams::dsv_with_mean_photons(n)),
            (None, Some(r), None) => Ok(ProductStateParams::dsv(r)),
            _ => Err(usage("--dsv needs exactly one of --nbar, --r")),
        };
    }
    if a.dsdv {
        let (alpha2, r) = match (alpha2, r, nbar) {
            (Some(a2), Some(r), None) => (a2, r),
            (Some(a2), None, Some(n)) => {
                let s = n / 2.0 - a2;
                if s < 0.0 {
                    return Err(usage("--nbar must be at least 2 * --alpha2"));
                }
                (a2, s.sqrt().asinh())
            }
            (None, Some(r), Some(n)) => {
                let a2 = n / 2.0 - r.sinh().powi(2);
                if a2 < 0.0 {
                    return Err(usage("--nbar must be at least 2 sinh²(--r)"));
                }
                (a2, r)
            }
            _ => return Err(usage("--dsdv needs exactly two of --alpha2, --r, --nbar")),
        };
        if !(alpha2 >= 0.0) {
            return Err(usage("--alpha2 must be non-negative"));
        }
        return Ok(ProductStateParams::dsdv(alpha2.sqrt(), r));
    }
    if nbar.is_some() || alpha2.is_some() || r.is_some() {
        return Err(usage("--nbar, --alpha2 and --r need --dsv or --dsdv"));
    }
    let s = &a.state;
    Ok(ProductStateParams {
        a: ModeParams {
            omega: s.omega_a,
            alpha_abs: s.alpha_a,
            beta: s.beta_a,
            r: s.r_a,
            theta: s.theta_a,
        },
        b: ModeParams {
            omega: s.omega_b,
            alpha_abs: s.alpha_b,
            beta: s.beta_b,
            r: s.r_b,
            theta: s.theta_b,
        },
    })
}

fn cmd_qfi(a: &QfiArgs, out: &mut dyn Write) -> Result<i32> {
    let params = state_from_args(a)?;
    let cfg = ChannelConfig::new(a.eta, a.eta_b.unwrap_or(a.eta), a.phi)?;
    let rep = precision_report(&params, &cfg)?;
    let route = match rep.route {
        gqfi_core::qfi::QfiRoute::ClosedForm => "closed form",
        gqfi_core::qfi::QfiRoute::General => "general",
    };
    let mut text = format!(
        "N = {}\nI = {}\nJ = {}\n",
        readable(rep.n_bar),
        readable(rep.qfi),
        readable(rep.j_ratio)
    );
    if rep.bound_is_infinite() {
        text.push_str("delta_phi = inf (no phase information)\n");
    } else {
        text.push_str(&format!("delta_phi >= {}\n", readable(rep.delta_phi_bound)));
    }
    text.push_str(&format!("route = {route}\n"));
    out.write_all(text.as_bytes()).map_err(io_out)?;
    if !a.oracle {
        return Ok(EXIT_OK);
    }
    let rec = compare_point(&params, &cfg)?;
    writeln!(
        out,
        "oracle I = {} (cutoff {}, leakage {:e})\noracle relative deviation = {:e}",
        readable(rec.qfi_fock), rec.n_max, rec.leakage, rec.qfi_deviation
    )
    .map_err(io_out)?;
    if rec.qfi_deviation > ORACLE_MISMATCH_TOL {
        writeln!(out, "ORACLE_MISMATCH").map_err(io_out)?;
        return Ok(EXIT_NUMERICAL);
    }
    Ok(EXIT_OK)
}

fn sweep_spec(a: &SweepArgs) -> Result<SweepSpec> {
    let mut spec = match &a.config {
        Some(path) => load_spec(path)?,
        None => SweepSpec::default(),
    };
    if let Some(mode) = a.mode {
        spec.mode = mode;
    }
    if !a.eta.is_empty() {
        spec.etas = Some(a.eta.clone());
    }
    for (field, value) in [
        (&mut spec.alpha2, a.alpha2),
        (&mut spec.r, a.r),
        (&mut spec.n_bar, a.nbar),
        (&mut spec.phi, a.phi),
    ] {
        if let Some(v) = value {
            *field = v;
        }
    }
    if a.start.is_some() || a.stop.is_some() || a.points.is_some() || a.scale.is_some() {
        let base = spec.range();
        spec.range = Some(SweepRange {
            start: a.start.unwrap_or(base.start),
            stop: a.stop.unwrap_or(base.stop),
            points: a.points.unwrap_or(base.points),
            scale: a.scale.unwrap_or(base.scale),
        });
    }
    if a.variable.is_some() {
        spec.variable = a.variable.clone();
    }
    if a.output.is_some() {
        spec.output = a.output.clone();
    }
    spec.single_file |= a.single_file;
    spec.gnuplot |= a.gnuplot;
    Ok(spec)
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = sweep_spec(a)?;
    let result = run_sweep(&spec)?;
    let Some(path) = &spec.output else {
        writeln!(out, "{}", result.columns.join(",")).map_err(io_out)?;
        for row in &result.rows {
            let fields: Vec<String> = row.iter().map(|&x| format_value(x)).collect();
            writeln!(out, "{}", fields.join(",")).map_err(io_out)?;
        }
        return Ok(EXIT_OK);
    };
    let files = write_csv(&result, path, spec.single_file)?;
    for f in &files {
        writeln!(out, "wrote {}", f.display()).map_err(io_out)?;
    }
    if spec.gnuplot {
        let script = path.with_extension("gp");
        std::fs::write(&script, gnuplot_script(&result, &files))
            .map_err(|e| Error::io(&script, e))?;
        writeln!(out, "wrote {}", script.display()).map_err(io_out)?;
    }
    writeln!(
        out,
        "{} rows, {} infeasible points skipped",
        result.rows.len(),
        result.skipped
    )
    .map_err(io_out)?;
    Ok(EXIT_OK)
}

fn cmd_oracle_check(a: &OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let mut states = OracleGrid::standard(a.random, a.seed).states;
    if a.no_fixed {
        states.retain(|(label, _)| label.starts_with("random"));
    }
    let grid = OracleGrid::new(states, a.eta.clone(), a.phi)?;
    let summary = run_grid(&grid)?;
    if let Some(path) = &a.output {
        write_records(path, &summary.records)?;
    }
    let lines = [
        ("qfi", summary.max_qfi_deviation(), QFI_TOL),
        ("fidelity", summary.max_fidelity_deviation(), FIDELITY_TOL),
        ("moments", summary.max_moment_deviation(), MOMENT_TOL),
    ];
    writeln!(out, "{} points", summary.records.len()).map_err(io_out)?;
    writeln!(out, "{:<10} {:>12} {:>12}  result", "category", "max dev", "tolerance")
        .map_err(io_out)?;
    for (name, dev, tol) in lines {
        let verdict = if dev <= tol { "PASS" } else { "FAIL" };
        writeln!(out, "{name:<10} {dev:>12.3e} {tol:>12.1e}  {verdict}").map_err(io_out)?;
    }
    Ok(if summary.passes() { EXIT_OK } else { EXIT_NUMERICAL })
}

fn write_records(path: &std::path::Path, records: &[crate::oracle::OracleRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::csv(path, e))?;
    w.write_record([
        "label",
        "eta",
        "n_max",
        "leakage",
        "qfi_fock",
        "qfi_gaussian",
        "qfi_deviation",
        "fidelity_fock",
        "fidelity_gaussian",
        "fidelity_deviation",
        "moment_deviation",
    ])
    .map_err(|e| Error::csv(path, e))?;
    for r in records {
        let mut fields = vec![r.label.clone(), format_value(r.eta), r.n_max.to_string()];
        fields.extend(
            [
                r.leakage,
                r.qfi_fock,
                r.qfi_gaussian,
                r.qfi_deviation,
                r.fidelity_fock,
                r.fidelity_gaussian,
                r.fidelity_deviation,
                r.moment_deviation,
            ]
            .map(format_value),
        );
        w.write_record(&fields).map_err(|e| Error::csv(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn cmd_variance_demo(a: &VarianceArgs, out: &mut dyn Write) -> Result<i32> {
    let demo = unbounded_demo(a.nbar, a.kappa)?;
    let p_n = demo.distribution.get(demo.total);
    let p_0 = demo.distribution.get(0);
    writeln!(
        out,
        "N = {}\np_0 = {}\np_N = {}\nmean = {}\ndelta_H = {}",
        demo.total, p_0, p_n, demo.mean, demo.delta_h
    )
    .map_err(io_out)?;
    Ok(EXIT_OK)
}
