//! Quantum Fisher information for two-mode Gaussian product states in a
//! lossy, symmetric Mach-Zehnder-type interferometer.
//!
//! The crate is `no_std` (it needs `alloc` only for the photon-number
//! distributions in [`variance`]). Everything here is a pure function of its
//! inputs.
//!
//! States are described by first moments `d = <u>` and the covariance matrix
//! `Σ_ij = <{δu_i, δu_j†}>` in the complex ordering `u = (a, b, a†, b†)`, so
//! the vacuum has `Σ = 1`. The interferometer is
//!
//! ```text
//! R D S|0> ⊗ R D S|0>  ->  50:50 beam splitter  ->  loss (η_a, η_b)  ->  phase ±φ/2
//! ```
//!
//! and the quantum Fisher information with respect to `φ` is available by
//! several independent routes:
//!
//! * [`qfi::qfi_general`]: the covariance-matrix formula for arbitrary
//!   two-mode Gaussian states,
//! * [`qfi::qfi_fidelity_limit`]: the small-`ε` limit of the Gaussian
//!   fidelity between `ρ_φ` and `ρ_{φ+ε}`,
//! * [`qfi::qfi_closed_form`]: the closed form at optimal input phases,
//! * [`qfi::qfi_dsv`] / [`qfi::qfi_dsdv`]: dual squeezed (displaced) vacuum.
//!
//! ```
//! use gqfi_core::{ChannelConfig, ProductStateParams, qfi};
//!
//! let params = ProductStateParams::dsv_with_mean_photons(2.0);
//! let cfg = ChannelConfig::symmetric(0.5, 0.3).unwrap();
//! let q = qfi::qfi_pipeline(&params, &cfg).unwrap();
//! assert!((q.i_total - 4.0 / 3.0).abs() < 1e-9);
//! ```
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod gaussian;
pub mod linalg;
pub mod qfi;
pub mod variance;

pub use error::{Error, Result};
pub use gaussian::{
    apply_beam_splitter, apply_loss, apply_phase, build_input_state, interferometer_output,
    mean_photon_input, state_derivative, symplectic_eigenvalues, ChannelConfig, GaussianState,
    ModeParams, ProductStateParams, StateDerivative,
};
pub use linalg::{Mat4, Vec4, C64};
