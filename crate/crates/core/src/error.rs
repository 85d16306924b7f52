use thiserror::Error;

/// Errors for matrix validation, state construction, and measure evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains a non-finite entry at ({row},{col})")]
    NonFinite { row: usize, col: usize },

    #[error("not Hermitian: max |M[j,k] - conj(M[k,j])| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("trace is {trace:.12} (expected 1 within {tolerance:.3e})")]
    InvalidTrace { trace: f64, tolerance: f64 },

    #[error("not positive semi-definite: smallest eigenvalue {min_eigenvalue:.3e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("eigensolver did not converge after {iterations} iterations (dim {dim})")]
    EigenNonConvergence { iterations: usize, dim: usize },

    #[error("tensor product dimension {dim} exceeds the configured maximum {max}")]
    DimensionOverflow { dim: usize, max: usize },

    #[error("truncation deficit {deficit:.3e} exceeds {limit:.3e}; increase the Fock cutoff (currently {cutoff})")]
    TruncationDeficit {
        deficit: f64,
        limit: f64,
        cutoff: usize,
    },

    #[error("parameter {name} = {value} outside domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("probe is invariant under the generator (vanishing resolution)")]
    InvariantProbe,

    #[error("invalid coherent mixture: {0}")]
    InvalidMixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
