use thiserror::Error;

use crate::channels::ChannelKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qudit dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("channel mismatch: expected {expected:?}-channel, found {found:?}-channel")]
    ChannelMismatch { expected: ChannelKind, found: ChannelKind },

    #[error("structure constant f[{a},{b},{c}] has imaginary part {imag:e}")]
    ComplexStructureConstant { a: usize, b: usize, c: usize, imag: f64 },

    #[error("operator has {found} distinct eigenvalues, expected 2")]
    SpectrumNotTwoValued { found: usize },

    #[error("amplitude (a, b) = (0, 0) has no block encoding")]
    ZeroAmplitude,

    #[error("input state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("kappa must be positive, got {0}")]
    NonPositiveKappa(f64),

    #[error("resolution must be at least 2, got {0}")]
    InvalidResolution(usize),

    #[error("invalid circuit description: {0}")]
    InvalidCircuit(String),
}
