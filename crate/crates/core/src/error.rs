use crate::qfi::PhaseCondition;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("parameter `{name}` is invalid: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("transmissivity {value} outside [0, 1]")]
    Transmissivity { value: f64 },

    #[error("non-physical covariance matrix: symplectic eigenvalue tau_{index} = {tau} < 1")]
    NonPhysical { index: usize, tau: f64 },

    #[error("matrix is singular or ill-conditioned (condition number {condition:e})")]
    SingularMatrix { condition: f64 },

    #[error("negative quantum Fisher information {value:e} (internal consistency failure)")]
    NegativeQfi { value: f64 },

    #[error("Gaussian fidelity undefined: Gamma = {gamma}, Lambda = {lambda}, Delta = {delta}")]
    FidelityDomain { gamma: f64, lambda: f64, delta: f64 },

    #[error("fidelity {value} outside [0, 1]")]
    FidelityRange { value: f64 },

    #[error("finite-difference step {epsilon:e} outside [1e-6, 1e-2]")]
    Epsilon { epsilon: f64 },

    #[error("Richardson extrapolation did not converge (coarse {coarse}, fine {fine})")]
    NotConverged { coarse: f64, fine: f64 },

    #[error("input phases are not optimal: {condition} has cosine {cosine}")]
    NonOptimalPhases { condition: PhaseCondition, cosine: f64 },

    #[error("probability distribution invalid: {reason}")]
    Distribution { reason: &'static str },

    #[error("coefficients invalid at (N = {total}, n = {diff}): {reason}")]
    Coefficients {
        total: u64,
        diff: i64,
        reason: &'static str,
    },
}
