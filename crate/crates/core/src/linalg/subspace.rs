use serde::Serialize;

use super::mat::Mat;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// A linear subspace of `Q^ambient_dim`, stored by a basis in reduced
/// column echelon form. The representation is canonical: equal subspaces
/// have identical basis matrices, so `==` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    /// `ambient_dim × dim`, columns in reduced column echelon form.
    basis: Mat,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::zeros(ambient_dim, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the columns of `m`.
    pub fn from_columns_of(m: &Mat) -> Self {
        let (r, pivots) = m.transpose().rref();
        let k = pivots.len();
        Subspace {
            ambient_dim: m.rows(),
            basis: r.submatrix(0..k, 0..m.rows()).transpose(),
            pivots,
        }
    }

    /// Span of a list of vectors of length `ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
        Ok(Subspace::from_columns_of(&Mat::from_columns(ambient_dim, vectors)))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.columns()
    }

    /// Exact membership test using the echelon pivots.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut residual = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            let coeff = residual[p].clone();
            if coeff.is_zero() {
                continue;
            }
            for (i, r) in residual.iter_mut().enumerate() {
                let b = self.basis.get(i, k);
                if !b.is_zero() {
                    *r -= &coeff * b;
                }
            }
        }
        residual.iter().all(Scalar::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_columns_of(&self.basis.hcat(&other.basis)?))
    }

    /// `self ∩ other`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // Solutions (a, b) of B1 a − B2 b = 0 give the vectors B1 a.
        let joined = self.basis.hcat(&-&other.basis)?;
        let relations = kernel(&joined);
        let k1 = self.dim();
        let coeffs = relations.basis().submatrix(0..k1, 0..relations.dim());
        Ok(Subspace::from_columns_of(&(&self.basis * &coeffs)))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient_dim)?;
        f.debug_list().entries(self.basis_vectors()).finish()
    }
}

/// `{v : M v = 0}` in canonical form.
pub fn kernel(m: &Mat) -> Subspace {
    let (r, pivots) = m.rref();
    let cols = m.cols();
    let mut vectors = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(row, free);
        }
        vectors.push(v);
    }
    Subspace::from_columns_of(&Mat::from_columns(cols, &vectors))
}

/// `kernel(M − λI)`.
pub fn eigenspace(m: &Mat, lambda: &Scalar) -> Result<Subspace> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("eigenspace of non-square matrix".into()));
    }
    Ok(kernel(&(m - &Mat::identity(m.rows()).scale(lambda))))
}
