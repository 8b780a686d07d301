use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error(transparent)]
    Core(#[from] gqfi_core::Error),

    #[error(
        "Fock truncation leakage {leakage:e} at cutoff {n_max} exceeds {limit:e}; \
         use a cutoff of at least {suggested}"
    )]
    Leakage {
        leakage: f64,
        n_max: usize,
        limit: f64,
        suggested: usize,
    },

    #[error("state needs a photon-number cutoff above {max}, too large for the dense Fock oracle")]
    CutoffTooLarge { max: usize },

    #[error("Fock spaces differ: cutoff {left} vs {right}")]
    CutoffMismatch { left: usize, right: usize },

    #[error("unknown operator `{0}` (expected one of a, a2, ada, b, b2, bdb, ab, abd)")]
    UnknownOperator(String),

    #[error("linear algebra failure: {0}")]
    LinearAlgebra(&'static str),

    #[error("mean photon number {n_bar} exceeds the Fock oracle limit {max}")]
    OracleRange { n_bar: f64, max: f64 },

    #[error("empty grid")]
    EmptyGrid,

    #[error("{0}")]
    Usage(String),

    #[error("invalid sweep: {0}")]
    Sweep(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },

    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>, source: csv::Error) -> Self {
        Error::Csv {
            path: path.into(),
            source,
        }
    }
}
