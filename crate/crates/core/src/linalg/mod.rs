//! Exact rational linear algebra: dense matrices, canonical subspaces and
//! rational eigen-decompositions.

mod eigen;
mod mat;
mod subspace;

pub use eigen::{
    characteristic_polynomial, eigen_decompose, rational_eigenvalues, rational_roots, EigenPair,
    EigenReport, Poly, RationalSpectrum,
};
pub use mat::Mat;
pub use subspace::{eigenspace, kernel, Subspace};
