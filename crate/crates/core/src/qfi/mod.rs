//! Quantum Fisher information with respect to the interferometer phase.

mod closed_form;
mod fidelity;
mod general;
mod report;

pub use closed_form::{
    j_dsv, optimal_phase_family, optimal_phases, qfi_closed_form, qfi_dsdv, qfi_dsv, qfi_optimal,
    violated_condition, PhaseCondition, PHASE_TOL,
};
pub use fidelity::{fidelity_gaussian, qfi_fidelity_limit, DEFAULT_FIDELITY_STEP};
pub use general::{
    qfi_general, qfi_general_with, qfi_pipeline, QfiBreakdown, QfiOptions, TauTermForm,
};
pub use report::{delta_phi_bound, j_ratio, precision_report, PrecisionReport, QfiRoute};
