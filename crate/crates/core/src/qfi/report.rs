#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use super::closed_form::{qfi_optimal, violated_condition, PHASE_TOL};
use super::general::qfi_pipeline;
use crate::gaussian::{ChannelConfig, ProductStateParams};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfiRoute {
    ClosedForm,
    General,
}

/// Phase-estimation figures of merit for one input state and channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionReport {
    /// Mean input photon number.
    pub n_bar: f64,
    pub qfi: f64,
    /// Cramér-Rao bound `1/√I` in radians; infinite when `I = 0`.
    pub delta_phi_bound: f64,
    /// `√(I/(ηN̄))`; NaN when `ηN̄ = 0`.
    pub j_ratio: f64,
    /// The transmissivity `J` refers to (the mean of the two arms).
    pub eta: f64,
    pub route: QfiRoute,
}

impl PrecisionReport {
    pub fn from_qfi(n_bar: f64, qfi: f64, eta: f64, route: QfiRoute) -> Self {
        PrecisionReport {
            n_bar,
            qfi,
            delta_phi_bound: delta_phi_bound(qfi),
            j_ratio: j_ratio(qfi, eta, n_bar),
            eta,
            route,
        }
    }

    /// True when the state carries no phase information.
    pub fn bound_is_infinite(&self) -> bool {
        self.delta_phi_bound.is_infinite()
    }
}

pub fn delta_phi_bound(qfi: f64) -> f64 {
    if qfi > 0.0 {
        1.0 / qfi.sqrt()
    } else {
        f64::INFINITY
    }
}

pub fn j_ratio(qfi: f64, eta: f64, n_bar: f64) -> f64 {
    let classical = eta * n_bar;
    if classical > 0.0 {
        (qfi.max(0.0) / classical).sqrt()
    } else {
        f64::NAN
    }
}

/// QFI and derived metrics. Uses the closed form when the losses are equal
/// and the input phases are optimal, the general covariance formula
/// otherwise.
pub fn precision_report(params: &ProductStateParams, cfg: &ChannelConfig) -> Result<PrecisionReport> {
    params.validate()?;
    cfg.validate()?;
    let n_bar = params.mean_photons();
    let eta = 0.5 * (cfg.eta_a + cfg.eta_b);
    let closed = cfg.is_symmetric() && violated_condition(params, PHASE_TOL).is_none();
    let (qfi, route) = if closed {
        let (a, b) = (&params.a, &params.b);
        (
            qfi_optimal(a.r, b.r, a.alpha_abs, b.alpha_abs, cfg.eta_a),
            QfiRoute::ClosedForm,
        )
    } else {
        (qfi_pipeline(params, cfg)?.i_total, QfiRoute::General)
    };
    Ok(PrecisionReport::from_qfi(n_bar, qfi, eta, route))
}
