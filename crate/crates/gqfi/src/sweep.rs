//! Parameter sweeps behind the `J` curves and the `(r_a, r_b)` surface.

use std::path::{Path, PathBuf};

use gqfi_core::qfi::{j_dsv, optimal_phases, precision_report, PrecisionReport};
use gqfi_core::{ChannelConfig, ModeParams, ProductStateParams};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    /// `J_DSV` against `N̄`.
    #[default]
    Dsv,
    /// DSDV with `α²` fixed and `r` varied, plotted against `N̄`, with the
    /// difference to the DSV state of the same squeezing.
    DsdvFixedAlpha,
    /// DSDV with `r` fixed and `α` varied.
    DsdvFixedR,
    /// `(r_a, r_b)` grid at fixed `N̄`, `|α_j|² = N̄/2 - sinh² r_j`.
    Surface,
    /// One named parameter of an arbitrary product state.
    Custom,
}

impl SweepMode {
    pub fn id(self) -> &'static str {
        match self {
            SweepMode::Dsv => "dsv",
            SweepMode::DsdvFixedAlpha => "dsdv-fixed-alpha",
            SweepMode::DsdvFixedR => "dsdv-fixed-r",
            SweepMode::Surface => "surface",
            SweepMode::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

/// `points` values from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl SweepRange {
    pub fn linear(start: f64, stop: f64, points: usize) -> Self {
        SweepRange {
            start,
            stop,
            points,
            scale: Scale::Linear,
        }
    }

    pub fn log(start: f64, stop: f64, points: usize) -> Self {
        SweepRange {
            start,
            stop,
            points,
            scale: Scale::Log,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(Error::Sweep("range has no points".into()));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::Sweep("range bounds must be finite".into()));
        }
        if self.points > 1 && self.stop <= self.start {
            return Err(Error::Sweep(format!(
                "range stop {} must exceed start {}",
                self.stop, self.start
            )));
        }
        if self.scale == Scale::Log && self.start <= 0.0 {
            return Err(Error::Sweep("log range needs a positive start".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    return self.stop;
                }
                let t = k as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + t * (self.stop - self.start),
                    Scale::Log => self.start * (self.stop / self.start).powf(t),
                }
            })
            .collect()
    }
}

/// Base state for [`SweepMode::Custom`], one field per input parameter.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StateSpec {
    pub omega_a: f64,
    pub alpha_a: f64,
    pub beta_a: f64,
    pub r_a: f64,
    pub theta_a: f64,
    pub omega_b: f64,
    pub alpha_b: f64,
    pub beta_b: f64,
    pub r_b: f64,
    pub theta_b: f64,
}

impl StateSpec {
    pub const FIELDS: [&'static str; 10] = [
        "omega_a", "alpha_a", "beta_a", "r_a", "theta_a", "omega_b", "alpha_b", "beta_b", "r_b",
        "theta_b",
    ];

    fn field_mut(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "omega_a" => &mut self.omega_a,
            "alpha_a" => &mut self.alpha_a,
            "beta_a" => &mut self.beta_a,
            "r_a" => &mut self.r_a,
            "theta_a" => &mut self.theta_a,
            "omega_b" => &mut self.omega_b,
            "alpha_b" => &mut self.alpha_b,
            "beta_b" => &mut self.beta_b,
            "r_b" => &mut self.r_b,
            "theta_b" => &mut self.theta_b,
            _ => return None,
        })
    }

    pub fn with(mut self, name: &str, value: f64) -> Result<Self> {
        let field = self.field_mut(name).ok_or_else(|| {
            Error::Sweep(format!(
                "unknown variable `{name}` (expected one of {})",
                Self::FIELDS.join(", ")
            ))
        })?;
        *field = value;
        Ok(self)
    }

    pub fn params(&self) -> ProductStateParams {
        ProductStateParams {
            a: ModeParams {
                omega: self.omega_a,
                alpha_abs: self.alpha_a,
                beta: self.beta_a,
                r: self.r_a,
                theta: self.theta_a,
            },
            b: ModeParams {
                omega: self.omega_b,
                alpha_abs: self.alpha_b,
                beta: self.beta_b,
                r: self.r_b,
                theta: self.theta_b,
            },
        }
    }
}

/// Everything a sweep needs. Unset `etas` and `range` take the defaults of
/// the mode (see [`SweepSpec::etas`], [`SweepSpec::range`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSpec {
    pub mode: SweepMode,
    pub etas: Option<Vec<f64>>,
    pub range: Option<SweepRange>,
    /// Fixed `α²` of [`SweepMode::DsdvFixedAlpha`].
    pub alpha2: f64,
    /// Fixed `r` of [`SweepMode::DsdvFixedR`].
    pub r: f64,
    /// Fixed `N̄` of [`SweepMode::Surface`].
    pub n_bar: f64,
    /// Interferometer phase; only the custom mode can depend on it.
    pub phi: f64,
    /// Swept field of [`StateSpec`] in the custom mode.
    pub variable: Option<String>,
    pub state: StateSpec,
    pub output: Option<PathBuf>,
    pub single_file: bool,
    pub gnuplot: bool,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            mode: SweepMode::Dsv,
            etas: None,
            range: None,
            alpha2: 10.0,
            r: 1.0,
            n_bar: 100.0,
            phi: 0.0,
            variable: None,
            state: StateSpec::default(),
            output: None,
            single_file: false,
            gnuplot: false,
        }
    }
}

pub const DEFAULT_ETAS: [f64; 5] = [0.6, 0.8, 0.9, 0.95, 1.0];
pub const SURFACE_ETA: f64 = 0.9;

/// Relative slack under which `N̄/2 - sinh² r` counts as zero on the surface.
const FEASIBILITY_SLACK: f64 = 1e-12;

impl SweepSpec {
    pub fn new(mode: SweepMode) -> Self {
        SweepSpec {
            mode,
            ..Default::default()
        }
    }

    pub fn etas(&self) -> Vec<f64> {
        match (&self.etas, self.mode) {
            (Some(etas), _) => etas.clone(),
            (None, SweepMode::Surface) => vec![SURFACE_ETA],
            (None, _) => DEFAULT_ETAS.to_vec(),
        }
    }

    pub fn range(&self) -> SweepRange {
        if let Some(range) = self.range {
            return range;
        }
        match self.mode {
            SweepMode::Dsv | SweepMode::DsdvFixedAlpha => SweepRange::log(0.1, 1e4, 60),
            SweepMode::DsdvFixedR => SweepRange::linear(0.0, 30.0, 60),
            SweepMode::Surface => SweepRange::linear(0.0, (self.n_bar / 2.0).sqrt().asinh(), 40),
            SweepMode::Custom => SweepRange::linear(0.0, 1.0, 21),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let etas = self.etas();
        if etas.is_empty() {
            return Err(Error::Sweep("no η values".into()));
        }
        for eta in etas {
            ChannelConfig::symmetric(eta, self.phi)?;
        }
        self.range().validate()?;
        for (name, value) in [("alpha2", self.alpha2), ("r", self.r), ("n_bar", self.n_bar)] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::Sweep(format!("{name} must be finite and non-negative")));
            }
        }
        if self.mode == SweepMode::Custom {
            let name = self.variable.as_deref().ok_or_else(|| {
                Error::Sweep("custom sweeps need a `variable`".into())
            })?;
            self.state.with(name, 0.0)?;
        }
        Ok(())
    }
}

/// Rows of a sweep, `eta` first, in sweep order (η outermost).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub mode: SweepMode,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Grid points rejected as infeasible.
    pub skipped: usize,
}

impl SweepResult {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|row| row[i]).collect())
    }

    /// Distinct η values in order of appearance.
    pub fn etas(&self) -> Vec<f64> {
        let mut etas: Vec<f64> = Vec::new();
        for row in &self.rows {
            if !etas.iter().any(|e| e.to_bits() == row[0].to_bits()) {
                etas.push(row[0]);
            }
        }
        etas
    }

    /// The rows at one η.
    pub fn for_eta(&self, eta: f64) -> SweepResult {
        SweepResult {
            mode: self.mode,
            columns: self.columns.clone(),
            rows: self
                .rows
                .iter()
                .filter(|row| row[0].to_bits() == eta.to_bits())
                .cloned()
                .collect(),
            skipped: 0,
        }
    }
}

const REPORT_COLUMNS: [&str; 4] = ["n_bar", "qfi", "j_ratio", "delta_phi_bound"];

fn report_values(r: &PrecisionReport) -> [f64; 4] {
    [r.n_bar, r.qfi, r.j_ratio, r.delta_phi_bound]
}

fn columns(leading: &[&str], trailing: &[&str]) -> Vec<String> {
    let mut out = vec!["eta".to_owned()];
    out.extend(leading.iter().map(|s| s.to_string()));
    out.extend(REPORT_COLUMNS.iter().map(|s| s.to_string()));
    out.extend(trailing.iter().map(|s| s.to_string()));
    out
}

fn report(params: &ProductStateParams, eta: f64, phi: f64) -> Result<PrecisionReport> {
    Ok(precision_report(params, &ChannelConfig::symmetric(eta, phi)?)?)
}

fn row(eta: f64, leading: &[f64], rep: &PrecisionReport, trailing: &[f64]) -> Vec<f64> {
    let mut out = vec![eta];
    out.extend_from_slice(leading);
    out.extend_from_slice(&report_values(rep));
    out.extend_from_slice(trailing);
    out
}

/// Evaluates the sweep. Output order is fixed by the spec alone.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let values = spec.range().values();
    let mut rows = Vec::new();
    let mut skipped = 0;
    let cols = match spec.mode {
        SweepMode::Dsv => columns(&[], &[]),
        SweepMode::DsdvFixedAlpha => columns(&["alpha2", "r"], &["j_dsv", "delta_j"]),
        SweepMode::DsdvFixedR => columns(&["alpha", "r"], &[]),
        SweepMode::Surface => columns(&["r_a", "r_b", "alpha_a", "alpha_b"], &[]),
        SweepMode::Custom => {
            let name = spec.variable.as_deref().unwrap_or_default();
            columns(&[name], &[])
        }
    };
    for eta in spec.etas() {
        match spec.mode {
            SweepMode::Dsv => {
                for &n_bar in &values {
                    let rep = report(&ProductStateParams::dsv_with_mean_photons(n_bar), eta, 0.0)?;
                    rows.push(row(eta, &[], &rep, &[]));
                }
            }
            SweepMode::DsdvFixedAlpha => {
                let alpha2 = spec.alpha2;
                for &n_bar in &values {
                    let sinh2 = n_bar / 2.0 - alpha2;
                    if sinh2 < 0.0 {
                        skipped += 1;
                        continue;
                    }
                    let r = sinh2.sqrt().asinh();
                    let rep = report(&ProductStateParams::dsdv(alpha2.sqrt(), r), eta, 0.0)?;
                    // DSV state with the same squeezing, i.e. the displacement removed
                    let j_ref = j_dsv(2.0 * sinh2, eta);
                    rows.push(row(eta, &[alpha2, r], &rep, &[j_ref, rep.j_ratio - j_ref]));
                }
            }
            SweepMode::DsdvFixedR => {
                for &alpha in &values {
                    let rep = report(&ProductStateParams::dsdv(alpha, spec.r), eta, 0.0)?;
                    rows.push(row(eta, &[alpha, spec.r], &rep, &[]));
                }
            }
            SweepMode::Surface => {
                let half = spec.n_bar / 2.0;
                let alpha_for = |r: f64| {
                    let a2 = half - r.sinh().powi(2);
                    if a2 >= 0.0 {
                        Some(a2.sqrt())
                    } else if a2 >= -FEASIBILITY_SLACK * half.max(1.0) {
                        Some(0.0)
                    } else {
                        None
                    }
                };
                for &r_a in &values {
                    for &r_b in &values {
                        let (Some(alpha_a), Some(alpha_b)) = (alpha_for(r_a), alpha_for(r_b)) else {
                            skipped += 1;
                            continue;
                        };
                        let params = optimal_phases(&ProductStateParams {
                            a: ModeParams {
                                alpha_abs: alpha_a,
                                ..ModeParams::squeezed(r_a, 0.0)
                            },
                            b: ModeParams {
                                alpha_abs: alpha_b,
                                ..ModeParams::squeezed(r_b, 0.0)
                            },
                        });
                        let rep = report(&params, eta, 0.0)?;
                        rows.push(row(eta, &[r_a, r_b, alpha_a, alpha_b], &rep, &[]));
                    }
                }
            }
            SweepMode::Custom => {
                let name = spec.variable.as_deref().unwrap_or_default();
                for &v in &values {
                    let params = spec.state.with(name, v)?.params();
                    let rep = report(&params, eta, spec.phi)?;
                    rows.push(row(eta, &[v], &rep, &[]));
                }
            }
        }
    }
    Ok(SweepResult {
        mode: spec.mode,
        columns: cols,
        rows,
        skipped,
    })
}

/// Seventeen significant digits: parses back to the same `f64`.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// `<stem>_eta<η>.<ext>` next to `path`.
pub fn path_for_eta(path: &Path, eta: f64) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("sweep");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_eta{eta}.{ext}"),
        None => format!("{stem}_eta{eta}"),
    };
    path.with_file_name(name)
}

fn write_table(path: &Path, columns: &[String], rows: &[Vec<f64>], skip: usize) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| Error::csv(path, e))?;
    writer
        .write_record(&columns[skip..])
        .map_err(|e| Error::csv(path, e))?;
    for row in rows {
        writer
            .write_record(row[skip..].iter().map(|&x| format_value(x)))
            .map_err(|e| Error::csv(path, e))?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

/// Writes the sweep to `path` (with an `eta` column) or, unless
/// `single_file`, to one file per η without it. Returns the files written.
pub fn write_csv(result: &SweepResult, path: &Path, single_file: bool) -> Result<Vec<PathBuf>> {
    if single_file {
        write_table(path, &result.columns, &result.rows, 0)?;
        return Ok(vec![path.to_path_buf()]);
    }
    let mut written = Vec::new();
    for eta in result.etas() {
        let file = path_for_eta(path, eta);
        write_table(&file, &result.columns, &result.for_eta(eta).rows, 1)?;
        written.push(file);
    }
    Ok(written)
}

/// Header and numeric rows of a file written by [`write_csv`].
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| Error::csv(path, e))?;
    let columns = reader
        .headers()
        .map_err(|e| Error::csv(path, e))?
        .iter()
        .map(str::to_owned)
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::csv(path, e))?;
        let row = record
            .iter()
            .map(|field| {
                field.parse::<f64>().map_err(|e| Error::Config {
                    path: path.to_path_buf(),
                    message: format!("bad number `{field}`: {e}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok((columns, rows))
}

/// A gnuplot script plotting `j_ratio` from the written files.
pub fn gnuplot_script(result: &SweepResult, files: &[PathBuf]) -> String {
    let name = |p: &PathBuf| {
        p.file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default()
    };
    let mut s = String::from("set datafile separator ','\nset key autotitle columnhead\n");
    match result.mode {
        SweepMode::Surface => {
            s.push_str("set xlabel 'r_a'\nset ylabel 'r_b'\nset zlabel 'J'\n");
            let plots: Vec<String> = files
                .iter()
                .map(|f| format!("'{}' using 'r_a':'r_b':'j_ratio' with points", name(f)))
                .collect();
            s.push_str(&format!("splot {}\n", plots.join(", \\\n      ")));
        }
        mode => {
            let x = match mode {
                SweepMode::Custom => result.columns[1].clone(),
                _ => "n_bar".to_owned(),
            };
            if matches!(mode, SweepMode::Dsv | SweepMode::DsdvFixedAlpha) {
                s.push_str("set logscale x\n");
            }
            s.push_str(&format!("set xlabel '{x}'\nset ylabel 'J'\n"));
            let plots: Vec<String> = files
                .iter()
                .map(|f| format!("'{}' using '{x}':'j_ratio' with lines", name(f)))
                .collect();
            s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
        }
    }
    s
}
