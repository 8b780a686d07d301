//! Gaussian formulas against the Fock-space simulation, point by point.

use gqfi_core::qfi::{fidelity_gaussian, qfi_pipeline};
use gqfi_core::{interferometer_output, ChannelConfig, ModeParams, ProductStateParams};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::TAU;

use crate::fock::{
    apply_beam_splitter, apply_phase, build_fock_input, choose_cutoff, loss_channel, moments,
    qfi_spectral, uhlmann_fidelity, FockDensityMatrix, PhaseGenerator, COMPRESS_FLOOR,
    ORACLE_LEAKAGE,
};
use crate::{Error, Result};

pub const QFI_TOL: f64 = 1e-4;
pub const FIDELITY_TOL: f64 = 1e-6;
pub const MOMENT_TOL: f64 = 1e-9;
/// Largest mean photon number allowed on a comparison grid.
pub const GRID_MAX_N_BAR: f64 = 4.0;
/// Largest mean photon number for a single-point comparison.
pub const POINT_MAX_N_BAR: f64 = 6.0;
/// Phase offset of the second state in the fidelity comparison.
pub const FIDELITY_OFFSET: f64 = 0.1;

/// States, transmissivities and the working phase of a comparison run.
/// Every state is paired with every `η` (applied to both arms).
#[derive(Debug, Clone, PartialEq)]
pub struct OracleGrid {
    pub states: Vec<(String, ProductStateParams)>,
    pub etas: Vec<f64>,
    pub phi: f64,
}

impl OracleGrid {
    pub fn new(states: Vec<(String, ProductStateParams)>, etas: Vec<f64>, phi: f64) -> Result<Self> {
        if states.is_empty() || etas.is_empty() {
            return Err(Error::EmptyGrid);
        }
        for (_, p) in &states {
            p.validate()?;
            check_n_bar(p, GRID_MAX_N_BAR)?;
        }
        for &eta in &etas {
            ChannelConfig::symmetric(eta, phi)?;
        }
        Ok(OracleGrid { states, etas, phi })
    }

    /// DSV at three squeezings, two DSDV points and `random` seeded random
    /// states with `|α| ≤ 1`, `r ≤ 0.4`; `η ∈ {0.5, 0.8, 1}`, `φ = 0.3`.
    pub fn standard(random: usize, seed: u64) -> Self {
        let mut states: Vec<(String, ProductStateParams)> = [0.2, 0.4, 0.55]
            .iter()
            .map(|&r| (format!("dsv r={r}"), ProductStateParams::dsv(r)))
            .collect();
        for (alpha, r) in [(1.0, 0.3), (1.2, 0.2)] {
            states.push((
                format!("dsdv alpha={alpha} r={r}"),
                ProductStateParams::dsdv(alpha, r),
            ));
        }
        let mut rng = StdRng::seed_from_u64(seed);
        for k in 0..random {
            let mut mode = || ModeParams {
                omega: rng.random_range(0.0..TAU),
                alpha_abs: rng.random_range(0.0..1.0),
                beta: rng.random_range(0.0..TAU),
                r: rng.random_range(0.0..0.4),
                theta: rng.random_range(0.0..TAU),
            };
            let (a, b) = (mode(), mode());
            states.push((format!("random {k}"), ProductStateParams { a, b }));
        }
        OracleGrid {
            states,
            etas: vec![0.5, 0.8, 1.0],
            phi: 0.3,
        }
    }
}

impl Default for OracleGrid {
    fn default() -> Self {
        OracleGrid::standard(20, 2024)
    }
}

fn check_n_bar(p: &ProductStateParams, max: f64) -> Result<()> {
    let n_bar = p.mean_photons();
    if n_bar > max {
        return Err(Error::OracleRange { n_bar, max });
    }
    Ok(())
}

/// Deviations at one `(state, η)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleRecord {
    pub label: String,
    pub eta: f64,
    pub n_max: usize,
    pub leakage: f64,
    pub qfi_fock: f64,
    pub qfi_gaussian: f64,
    /// Relative when the Gaussian value is above `1e-12`, absolute otherwise.
    pub qfi_deviation: f64,
    pub fidelity_fock: f64,
    pub fidelity_gaussian: f64,
    pub fidelity_deviation: f64,
    pub moment_deviation: f64,
}

impl OracleRecord {
    pub fn passes(&self) -> bool {
        self.qfi_deviation <= QFI_TOL
            && self.fidelity_deviation <= FIDELITY_TOL
            && self.moment_deviation <= MOMENT_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSummary {
    pub records: Vec<OracleRecord>,
}

impl OracleSummary {
    fn max_of(&self, f: impl Fn(&OracleRecord) -> f64) -> f64 {
        self.records.iter().map(f).fold(0.0, f64::max)
    }

    pub fn max_qfi_deviation(&self) -> f64 {
        self.max_of(|r| r.qfi_deviation)
    }

    pub fn max_fidelity_deviation(&self) -> f64 {
        self.max_of(|r| r.fidelity_deviation)
    }

    pub fn max_moment_deviation(&self) -> f64 {
        self.max_of(|r| r.moment_deviation)
    }

    pub fn passes(&self) -> bool {
        self.records.iter().all(OracleRecord::passes)
    }
}

/// Runs every point of the grid. The Fock input and beam splitter output are
/// shared by all `η` of a state.
pub fn run_grid(grid: &OracleGrid) -> Result<OracleSummary> {
    if grid.states.is_empty() || grid.etas.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut records = Vec::with_capacity(grid.states.len() * grid.etas.len());
    for (label, params) in &grid.states {
        check_n_bar(params, GRID_MAX_N_BAR)?;
        let n_max = choose_cutoff(params, ORACLE_LEAKAGE)?;
        let mixed = apply_beam_splitter(&FockDensityMatrix::pure(&build_fock_input(params, n_max)?));
        for &eta in &grid.etas {
            let cfg = ChannelConfig::symmetric(eta, grid.phi)?;
            let lossy = loss_channel(&mixed, eta, eta)?.compressed(COMPRESS_FLOOR)?;
            records.push(compare(label, params, &cfg, &lossy)?);
        }
    }
    Ok(OracleSummary { records })
}

/// Compares one point at the cutoff picked for the oracle leakage target.
pub fn compare_point(params: &ProductStateParams, cfg: &ChannelConfig) -> Result<OracleRecord> {
    check_n_bar(params, POINT_MAX_N_BAR)?;
    cfg.validate()?;
    let n_max = choose_cutoff(params, ORACLE_LEAKAGE)?;
    let mixed = apply_beam_splitter(&FockDensityMatrix::pure(&build_fock_input(params, n_max)?));
    let lossy = loss_channel(&mixed, cfg.eta_a, cfg.eta_b)?.compressed(COMPRESS_FLOOR)?;
    compare("point", params, cfg, &lossy)
}

/// `lossy` is the Fock state before the phase.
fn compare(
    label: &str,
    params: &ProductStateParams,
    cfg: &ChannelConfig,
    lossy: &FockDensityMatrix,
) -> Result<OracleRecord> {
    let rho = apply_phase(lossy, cfg.phi);
    let shifted = apply_phase(lossy, cfg.phi + FIDELITY_OFFSET);

    let qfi_fock = qfi_spectral(&rho, &PhaseGenerator::new(rho.basis()))?;
    let qfi_gaussian = qfi_pipeline(params, cfg)?.i_total;
    let qfi_deviation = if qfi_gaussian > 1e-12 {
        (qfi_fock - qfi_gaussian).abs() / qfi_gaussian
    } else {
        (qfi_fock - qfi_gaussian).abs()
    };

    let state = interferometer_output(params, cfg)?;
    let state_shifted = interferometer_output(params, &cfg.with_phi(cfg.phi + FIDELITY_OFFSET))?;
    let fidelity_fock = uhlmann_fidelity(&rho, &shifted)?;
    let fidelity_gaussian = fidelity_gaussian(&state, &state_shifted)?;

    Ok(OracleRecord {
        label: label.to_owned(),
        eta: cfg.eta_a,
        n_max: rho.n_max(),
        leakage: rho.leakage,
        qfi_fock,
        qfi_gaussian,
        qfi_deviation,
        fidelity_fock,
        fidelity_gaussian,
        fidelity_deviation: (fidelity_fock - fidelity_gaussian).abs(),
        moment_deviation: moments(&rho).max_abs_diff(&state.moments()),
    })
}
