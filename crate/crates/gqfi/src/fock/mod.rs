//! Brute-force simulation of the interferometer on truncated two-mode Fock
//! space, independent of the Gaussian formalism.

mod build;
mod expm;
mod measure;

pub use build::{
    apply_beam_splitter, apply_phase, beam_splitter_block, build_fock_input, choose_cutoff,
    cutoff_rule, kraus_operators, loss_channel, output_density_matrix, single_mode_amplitudes,
    FockDensityMatrix, FockInput, TwoModeBasis, COMPRESS_FLOOR, INPUT_LEAKAGE_LIMIT, MAX_CUTOFF,
    ORACLE_LEAKAGE,
};
pub use expm::expm;
pub use measure::{
    moment, moments, qfi_spectral, qfi_spectral_dense, uhlmann_fidelity, uhlmann_fidelity_dense,
    MomentOp, PhaseGenerator,
};
