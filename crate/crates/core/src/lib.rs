//! Exact verification of the Lie-algebraic data attached to higher order
//! fixed points of infinitesimal automorphisms of projective and
//! pseudo-Riemannian conformal structures.
//!
//! Everything is computed over the rationals. The two |1|-graded algebras
//! `sl(n+1)` and `so(p+1,q+1)` are realized as matrices ([`algebra`]); the
//! sets `C(Z) ⊂ F(Z)` and `T(Z)` attached to a covector `Z ∈ g₁` live in
//! [`isotropy`]; the eigenvalue conditions on curvature modules are checked
//! in [`curvature`]; flows on the homogeneous models are in [`flow`].

pub mod algebra;
pub mod curvature;
pub mod flow;
pub mod isotropy;
pub mod linalg;
pub mod sample;
pub mod scalar;

pub use algebra::{AlgebraFamily, Covector, Grade, GradedAlgebra, Vector};
pub use linalg::{EigenReport, Mat, Subspace};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("non-rational spectrum: rational eigenvalue multiplicities sum to {found} of {degree}")]
    NonRationalSpectrum { found: usize, degree: usize },
    #[error("matrix is not diagonalizable over the rationals")]
    NotDiagonalizable,
    #[error("characteristic polynomial coefficient too large for divisor search: {0}")]
    CoefficientTooLarge(String),
    #[error("X is not in T(Z): {0} fails")]
    NotInT(&'static str),
    #[error("Z must be nonzero")]
    ZeroCovector,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("pole: 1 + {0} = 0")]
    Pole(String),
    #[error("vector is not null: <xi,xi> = {0}")]
    NonNullVector(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("module shape {shape} is not available for {family}")]
    IncompatibleShape { shape: String, family: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
