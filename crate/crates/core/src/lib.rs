//! Core-EP decomposition, generalized inverses and matrix order relations
//! for dense complex matrices.
//!
//! Everything is generic over the real scalar type ([`Real`], implemented
//! for `f32` and `f64`); the aliases at the crate root fix it to `f64`.

pub mod decomp;
pub mod error;
pub mod gen;
pub mod inverses;
pub mod kernel;
pub mod matrix;
pub mod orders;
pub mod scalar;
pub mod svd;
pub mod tolerance;

pub use decomp::{
    canonical_form, core_ep_decompose, core_form, core_nilpotent_decompose, index, index_analysis, CanonicalForm,
    CoreEPParts, CoreNilpotentParts, IndexAnalysis,
};
pub use error::{Error, Operand, Result};
pub use inverses::{core, core_ep, core_ep_projector, drazin, group, moore_penrose, InverseKind, InverseResult, Route};
pub use kernel::{approx_eq, range_basis, rank, scaled_power, unitary_complete};
pub use matrix::ComplexMatrix;
pub use orders::{OrderVerdict, Relation};
pub use scalar::Real;
pub use tolerance::{Residual, Residuals, ToleranceContext};

pub use num_complex::Complex;

/// Double-precision complex matrix.
pub type Matrix = ComplexMatrix<f64>;
/// Single-precision complex matrix.
pub type Matrix32 = ComplexMatrix<f32>;
pub type Tolerance = ToleranceContext<f64>;
pub type Tolerance32 = ToleranceContext<f32>;
pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;
