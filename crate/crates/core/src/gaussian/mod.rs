//! Two-mode Gaussian states and the interferometer acting on them.

mod params;
pub mod reference;
mod state;

pub use params::{mean_photon_input, ChannelConfig, ModeParams, ProductStateParams};
pub use state::{
    apply_beam_splitter, apply_loss, apply_phase, build_input_state, interferometer_output,
    phase_derivative, state_derivative, symplectic_eigenvalues, GaussianState, Moments,
    StateDerivative, PHYSICALITY_TOL,
};

pub(crate) use params::check_eta;
pub(crate) use state::symplectic_squares;
