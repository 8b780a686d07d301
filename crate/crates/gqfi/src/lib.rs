//! Fock-space oracle, parameter sweeps and file formats on top of
//! [`gqfi_core`].

pub mod cli;
pub mod config;
mod error;
pub mod fock;
pub mod oracle;
pub mod sweep;

pub use error::{Error, Result};
