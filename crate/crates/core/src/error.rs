use thiserror::Error;

use crate::model::Phase;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid oscillator: {0}")]
    InvalidSpec(String),

    #[error("moment <f^{k}> is not available for k={k} with shift s={s}")]
    UnsupportedMoment { k: u32, s: f64 },

    #[error("no gap equation for k={k}, g={g}, phase {phase:?}")]
    UnsupportedGap { k: u32, g: f64, phase: Phase },

    #[error("no physical root: coupling {lambda} exceeds the critical coupling {lambda_c}")]
    NoPhysicalRoot { lambda: f64, lambda_c: f64 },

    #[error("no symmetry-broken solution: {0}")]
    NoSsbSolution(String),

    #[error("perturbation about a displaced (s != 0) vacuum is not supported")]
    SsbUnsupported,

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("oracle did not converge at dim {dim}: last change {last_change:e}")]
    NotConverged { dim: usize, last_change: f64 },

    #[error("grid span [{lo}, {hi}] does not cover [-{need}, {need}]")]
    InsufficientGrid { lo: f64, hi: f64, need: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
