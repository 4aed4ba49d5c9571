use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("subsystem dimensions {dims:?} do not partition a {dim}-dimensional matrix (traced index {traced})")]
    BadPartition {
        dim: usize,
        dims: Vec<usize>,
        traced: usize,
    },

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:e})")]
    NotPSD { min_eigenvalue: f64 },

    #[error("trace {trace} differs from 1")]
    NotUnitTrace { trace: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coefficient {value} outside [-1, 1]")]
    BadCoefficient { value: f64 },

    #[error("unphysical X-state, eigenvalues {eigenvalues:?}")]
    UnphysicalState { eigenvalues: [f64; 4] },

    #[error("unknown state preset `{0}`")]
    UnknownPreset(String),

    #[error("physical acceleration parameters must be positive and finite (a={a}, omega={omega}, c={c_light})")]
    BadPhysicalParam { a: f64, omega: f64, c_light: f64 },

    #[error("Rindler parameter r={0} outside [0, pi/4]")]
    BadRindlerParam(f64),

    #[error("{name}={value} outside [0, 1]")]
    BadProbability { name: &'static str, value: f64 },

    #[error("amplitude damping is not a Pauli channel")]
    NotAPauliChannel,

    #[error("Kraus set violates completeness (residual {residual:e})")]
    ChannelNotTracePreserving { residual: f64 },

    #[error("state is not of X form")]
    NotXForm,

    #[error("closed form radicand `{term}` is negative ({value:e})")]
    ClosedFormDomainError { term: &'static str, value: f64 },

    #[error("unknown channel `{0}`")]
    UnknownChannel(String),

    #[error("unknown figure preset `{0}`")]
    UnknownFigure(String),

    #[error("bad sweep spec: {0}")]
    BadSweepSpec(String),

    #[error("bad plot request: {0}")]
    BadPlotRequest(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
