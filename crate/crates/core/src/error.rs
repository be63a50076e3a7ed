use thiserror::Error;

/// Which operand of a binary operation a failure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    A,
    B,
}

impl std::fmt::Display for Operand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Operand::A => f.write_str("A"),
            Operand::B => f.write_str("B"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("entry count {len} does not match shape {rows}x{cols}")]
    BadLength { rows: usize, cols: usize, len: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid tolerance: atol={atol}, rtol={rtol}")]
    InvalidTolerance { atol: f64, rtol: f64 },

    #[error("input columns are not orthonormal (||Q*Q - I|| = {residual:e})")]
    NonOrthonormalInput { residual: f64 },

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("{what}: residual {residual:e} exceeds bound {bound:e}")]
    ResidualTooLarge {
        what: &'static str,
        residual: f64,
        bound: f64,
    },

    #[error("index of {operand} is {index}, at most 1 is required")]
    IndexTooLarge { operand: Operand, index: usize },

    #[error("{what}: computation routes disagree by {difference:e} (bound {bound:e})")]
    RouteDisagreement {
        what: &'static str,
        difference: f64,
        bound: f64,
    },

    #[error("{relation}: characterizations disagree ({detail})")]
    CharacterizationDisagreement { relation: &'static str, detail: String },

    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
}

impl Error {
    /// Variant name, stable for scripts.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BadLength { .. } => "BadLength",
            Error::NonFinite { .. } => "NonFinite",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::InvalidTolerance { .. } => "InvalidTolerance",
            Error::NonOrthonormalInput { .. } => "NonOrthonormalInput",
            Error::Singular => "Singular",
            Error::ResidualTooLarge { .. } => "ResidualTooLarge",
            Error::IndexTooLarge { .. } => "IndexTooLarge",
            Error::RouteDisagreement { .. } => "RouteDisagreement",
            Error::CharacterizationDisagreement { .. } => "CharacterizationDisagreement",
            Error::InfeasibleSpec(_) => "InfeasibleSpec",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
