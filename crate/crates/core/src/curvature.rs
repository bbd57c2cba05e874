//! Full tensor modules `Λ²g₁ ⊗ V` carrying the harmonic curvature, the
//! induced action of `A = [Z,X]` on them, the subspaces `W_ss(A) ⊆ W_st(A)`
//! and the three eigenvalue conditions for local flatness.
//!
//! The second factor `V` is `g₁`, `sl(g₋₁)` or `so(g₋₁)`. `g₀` acts on `g₁`
//! by the bracket in the ambient algebra and on endomorphisms of `g₋₁` by
//! commutator with `ad(A)|g₋₁`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraFamily, Covector, Grade, GradedAlgebra, Vector};
use crate::isotropy::{self, GeometricType};
use crate::linalg::{eigen_decompose, rational_eigenvalues, EigenReport, Mat, Subspace};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Modules up to this dimension also get their spectrum recomputed
/// directly from the assembled action matrix.
pub const DIRECT_SPECTRUM_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModuleShape {
    #[serde(rename = "lam2g1_tensor_g1")]
    Lam2G1TensorG1,
    #[serde(rename = "lam2g1_tensor_sl_gm1")]
    Lam2G1TensorSlGm1,
    #[serde(rename = "lam2g1_tensor_so_gm1")]
    Lam2G1TensorSoGm1,
}

impl ModuleShape {
    pub fn name(self) -> &'static str {
        match self {
            ModuleShape::Lam2G1TensorG1 => "lam2g1_tensor_g1",
            ModuleShape::Lam2G1TensorSlGm1 => "lam2g1_tensor_sl_gm1",
            ModuleShape::Lam2G1TensorSoGm1 => "lam2g1_tensor_so_gm1",
        }
    }

    /// The module containing the harmonic curvature for a family.
    pub fn default_for(family: AlgebraFamily) -> ModuleShape {
        match family {
            AlgebraFamily::Projective { n: 2 } => ModuleShape::Lam2G1TensorG1,
            AlgebraFamily::Projective { .. } => ModuleShape::Lam2G1TensorSlGm1,
            AlgebraFamily::Conformal { p, q } if p + q == 3 => ModuleShape::Lam2G1TensorG1,
            AlgebraFamily::Conformal { .. } => ModuleShape::Lam2G1TensorSoGm1,
        }
    }

    pub fn is_compatible(self, family: AlgebraFamily) -> bool {
        match self {
            ModuleShape::Lam2G1TensorG1 => true,
            ModuleShape::Lam2G1TensorSlGm1 => !family.is_conformal(),
            ModuleShape::Lam2G1TensorSoGm1 => family.is_conformal(),
        }
    }
}

impl fmt::Display for ModuleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModuleShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lam2g1_tensor_g1" | "tensor_g1" => Ok(ModuleShape::Lam2G1TensorG1),
            "lam2g1_tensor_sl_gm1" | "tensor_sl" => Ok(ModuleShape::Lam2G1TensorSlGm1),
            "lam2g1_tensor_so_gm1" | "tensor_so" => Ok(ModuleShape::Lam2G1TensorSoGm1),
            _ => Err(Error::Parse(format!("unknown module shape {s:?}"))),
        }
    }
}

/// `Λ²g₁ ⊗ V` with basis `(e^i ∧ e^j) ⊗ v_b`, `i < j`, indexed
/// `pair_index · dim V + b`.
#[derive(Clone, Debug)]
pub struct TensorModule {
    shape: ModuleShape,
    n: usize,
    pairs: Vec<(usize, usize)>,
    /// Basis of `V` as `n × n` endomorphisms of `g₋₁` (empty for `V = g₁`).
    endo_basis: Vec<Mat>,
    signs: Vec<Scalar>,
}

pub fn build_module(alg: &GradedAlgebra, shape: ModuleShape) -> Result<TensorModule> {
    if !shape.is_compatible(alg.family()) {
        return Err(Error::IncompatibleShape {
            shape: shape.to_string(),
            family: alg.family().to_string(),
        });
    }
    let n = alg.n();
    let pairs = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let signs: Vec<Scalar> = match alg.signature_matrix() {
        Some(s) => (0..n).map(|i| s.get(i, i).clone()).collect(),
        None => vec![Scalar::one(); n],
    };
    let unit = |i: usize, j: usize| {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = Scalar::one();
        m
    };
    let endo_basis = match shape {
        ModuleShape::Lam2G1TensorG1 => Vec::new(),
        ModuleShape::Lam2G1TensorSlGm1 => {
            let mut basis = Vec::with_capacity(n * n - 1);
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        basis.push(unit(i, j));
                    }
                }
            }
            for i in 0..n - 1 {
                let mut m = unit(i, i);
                m[(n - 1, n - 1)] = Scalar::from_int(-1);
                basis.push(m);
            }
            basis
        }
        ModuleShape::Lam2G1TensorSoGm1 => {
            let mut basis = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    let mut m = Mat::zeros(n, n);
                    m[(i, j)] = signs[j].clone();
                    m[(j, i)] = -&signs[i];
                    basis.push(m);
                }
            }
            basis
        }
    };
    Ok(TensorModule {
        shape,
        n,
        pairs,
        endo_basis,
        signs,
    })
}

impl TensorModule {
    pub fn shape(&self) -> ModuleShape {
        self.shape
    }

    pub fn lambda2_dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn second_dim(&self) -> usize {
        match self.shape {
            ModuleShape::Lam2G1TensorG1 => self.n,
            _ => self.endo_basis.len(),
        }
    }

    pub fn dim(&self) -> usize {
        self.lambda2_dim() * self.second_dim()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = (i.min(j), i.max(j));
        // Position of (i, j) in the lexicographic list of pairs.
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Coordinates of an endomorphism of `g₋₁` in the basis of `V`.
    fn endo_coords(&self, m: &Mat) -> Vec<Scalar> {
        let n = self.n;
        match self.shape {
            ModuleShape::Lam2G1TensorG1 => unreachable!("g1 factor has no endomorphism basis"),
            ModuleShape::Lam2G1TensorSlGm1 => {
                let mut out = Vec::with_capacity(n * n - 1);
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            out.push(m.get(i, j).clone());
                        }
                    }
                }
                out.extend((0..n - 1).map(|i| m.get(i, i).clone()));
                out
            }
            ModuleShape::Lam2G1TensorSoGm1 => {
                let mut out = Vec::with_capacity(n * (n - 1) / 2);
                for i in 0..n {
                    for j in i + 1..n {
                        out.push(m.get(i, j) * &self.signs[j]);
                    }
                }
                out
            }
        }
    }

    /// Endomorphism of `g₋₁` with the given coordinates in `V`.
    pub fn endo_from_coords(&self, coords: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.n, self.n);
        for (c, b) in coords.iter().zip(&self.endo_basis) {
            if !c.is_zero() {
                m = &m + &b.scale(c);
            }
        }
        m
    }

    /// Action of `a ∈ g₀` on `Λ²g₁`.
    pub fn lambda2_action(&self, alg: &GradedAlgebra, a: &Mat) -> Result<Mat> {
        let g = alg.ad_restricted(a, Grade::Pos)?;
        let d = self.lambda2_dim();
        let mut out = Mat::zeros(d, d);
        for (col, &(i, j)) in self.pairs.iter().enumerate() {
            // a·(e_i ∧ e_j) = (a e_i) ∧ e_j + e_i ∧ (a e_j)
            for k in 0..self.n {
                let gi = g.get(k, i);
                if !gi.is_zero() && k != j {
                    let sign = if k < j { 1 } else { -1 };
                    out[(self.pair_index(k, j), col)] += gi * &Scalar::from_int(sign);
                }
                let gj = g.get(k, j);
                if !gj.is_zero() && k != i {
                    let sign = if i < k { 1 } else { -1 };
                    out[(self.pair_index(i, k), col)] += gj * &Scalar::from_int(sign);
                }
            }
        }
        Ok(out)
    }

    /// Action of `a ∈ g₀` on the second factor.
    pub fn second_action(&self, alg: &GradedAlgebra, a: &Mat) -> Result<Mat> {
        match self.shape {
            ModuleShape::Lam2G1TensorG1 => alg.ad_restricted(a, Grade::Pos),
            _ => {
                let ad = alg.ad_restricted(a, Grade::Neg)?;
                let cols: Vec<Vec<Scalar>> = self
                    .endo_basis
                    .iter()
                    .map(|b| self.endo_coords(&ad.commutator(b)))
                    .collect();
                Ok(Mat::from_columns(self.second_dim(), &cols))
            }
        }
    }

    /// Induced action on the whole module, a derivation across the factors.
    pub fn action(&self, alg: &GradedAlgebra, a: &Mat) -> Result<Mat> {
        let l = self.lambda2_action(alg, a)?;
        let r = self.second_action(alg, a)?;
        Ok(kron_sum(&l, &r))
    }

    /// The `Λ²g₁`-slot `pair` of a module vector, as an endomorphism of
    /// `g₋₁` (endomorphism shapes only).
    pub fn endo_component(&self, w: &[Scalar], pair: usize) -> Result<Mat> {
        if self.shape == ModuleShape::Lam2G1TensorG1 {
            return Err(Error::Unsupported("g1 factor has no endomorphism values".into()));
        }
        let d2 = self.second_dim();
        Ok(self.endo_from_coords(&w[pair * d2..(pair + 1) * d2]))
    }
}

/// `L ⊗ I + I ⊗ R`.
fn kron_sum(l: &Mat, r: &Mat) -> Mat {
    let (d1, d2) = (l.rows(), r.rows());
    let mut out = Mat::zeros(d1 * d2, d1 * d2);
    for a in 0..d1 {
        for b in 0..d2 {
            let col = a * d2 + b;
            for a2 in 0..d1 {
                let v = l.get(a2, a);
                if !v.is_zero() {
                    out[(a2 * d2 + b, col)] += v;
                }
            }
            for b2 in 0..d2 {
                let v = r.get(b2, b);
                if !v.is_zero() {
                    out[(a * d2 + b2, col)] += v;
                }
            }
        }
    }
    out
}

fn tensor(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            out.push(if a.is_zero() { Scalar::zero() } else { a * b });
        }
    }
    out
}

/// Eigenstructure of `A = [Z,X]` on a tensor module.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleSpectrum {
    pub shape: ModuleShape,
    pub module_dim: usize,
    pub lambda2: Vec<(Scalar, usize)>,
    pub second: Vec<(Scalar, usize)>,
    /// Module eigenvalues with multiplicities, increasing.
    pub module: Vec<(Scalar, usize)>,
    pub diagonalizable: bool,
    /// Agreement with the spectrum of the assembled module matrix, when the
    /// module is small enough to recompute it directly.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct_check: Option<bool>,
    #[serde(skip)]
    lambda2_report: EigenReport,
    #[serde(skip)]
    second_report: EigenReport,
    #[serde(skip)]
    a: Mat,
}

impl ModuleSpectrum {
    pub fn values(&self) -> Vec<Scalar> {
        self.module.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn lambda2_values(&self) -> Vec<Scalar> {
        self.lambda2.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn second_values(&self) -> Vec<Scalar> {
        self.second.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn lambda2_report(&self) -> &EigenReport {
        &self.lambda2_report
    }

    pub fn second_report(&self) -> &EigenReport {
        &self.second_report
    }

    /// The element `A` whose action this describes.
    pub fn a(&self) -> &Mat {
        &self.a
    }
}

fn module_spectrum_of(alg: &GradedAlgebra, a: Mat, module: &TensorModule) -> Result<ModuleSpectrum> {
    let l = module.lambda2_action(alg, &a)?;
    let r = module.second_action(alg, &a)?;
    let lambda2_report = eigen_decompose(&l)?;
    let second_report = eigen_decompose(&r)?;
    let diagonalizable = lambda2_report.diagonalizable && second_report.diagonalizable;
    let mut sums: BTreeMap<Scalar, usize> = BTreeMap::new();
    for el in &lambda2_report.eigen {
        for er in &second_report.eigen {
            *sums.entry(&el.value + &er.value).or_default() += el.multiplicity * er.multiplicity;
        }
    }
    let module_spec: Vec<(Scalar, usize)> = sums.into_iter().collect();
    let direct_check = (module.dim() <= DIRECT_SPECTRUM_LIMIT)
        .then(|| rational_eigenvalues(&kron_sum(&l, &r)))
        .transpose()?
        .map(|s| s.eigenvalues == module_spec);
    Ok(ModuleSpectrum {
        shape: module.shape(),
        module_dim: module.dim(),
        lambda2: lambda2_report.spectrum(),
        second: second_report.spectrum(),
        module: module_spec,
        diagonalizable,
        direct_check,
        lambda2_report,
        second_report,
        a,
    })
}

/// Spectrum of the induced action of `A = [Z,X]`, `X ∈ T(Z)`.
pub fn module_spectrum(
    alg: &GradedAlgebra,
    z: &Covector,
    x: &Vector,
    module: &TensorModule,
) -> Result<ModuleSpectrum> {
    let a = isotropy::bracket_a(alg, z, x)?;
    module_spectrum_of(alg, a, module)
}

/// `W_ss(A)` and `W_st(A)` for one `X ∈ T(Z)`.
#[derive(Clone, Debug, Serialize)]
pub struct WeightSpaces {
    pub ss: Subspace,
    pub st: Subspace,
}

/// Sum of eigenspaces with eigenvalue satisfying `keep`, built from factor
/// eigenvectors and checked against the assembled action matrix.
fn eigen_sum(
    alg: &GradedAlgebra,
    spec: &ModuleSpectrum,
    module: &TensorModule,
    keep: impl Fn(&Scalar) -> bool,
) -> Result<Subspace> {
    spec.lambda2_report.require_diagonalizable()?;
    spec.second_report.require_diagonalizable()?;
    let mut vectors: Vec<(Scalar, Vec<Scalar>)> = Vec::new();
    for el in &spec.lambda2_report.eigen {
        for er in &spec.second_report.eigen {
            let lambda = &el.value + &er.value;
            if !keep(&lambda) {
                continue;
            }
            for u in el.eigenspace.basis_vectors() {
                for v in er.eigenspace.basis_vectors() {
                    vectors.push((lambda.clone(), tensor(&u, &v)));
                }
            }
        }
    }
    if vectors.is_empty() {
        return Ok(Subspace::zero(module.dim()));
    }
    let m = module.action(alg, &spec.a)?;
    for (lambda, w) in &vectors {
        let image = m.mul_vec(w)?;
        if image.iter().zip(w).any(|(mw, w)| mw != &(lambda * w)) {
            return Err(Error::Precondition(
                "factor eigenvector product is not a module eigenvector".into(),
            ));
        }
    }
    let cols: Vec<Vec<Scalar>> = vectors.into_iter().map(|(_, w)| w).collect();
    Subspace::span(module.dim(), &cols)
}

pub fn weight_spaces(
    alg: &GradedAlgebra,
    z: &Covector,
    x: &Vector,
    module: &TensorModule,
) -> Result<WeightSpaces> {
    let spec = module_spectrum(alg, z, x, module)?;
    weight_spaces_of(alg, &spec, module)
}

fn weight_spaces_of(
    alg: &GradedAlgebra,
    spec: &ModuleSpectrum,
    module: &TensorModule,
) -> Result<WeightSpaces> {
    let ss = eigen_sum(alg, spec, module, Scalar::is_negative)?;
    let st = eigen_sum(alg, spec, module, |v| !v.is_positive())?;
    Ok(WeightSpaces { ss, st })
}

/// Sum of the eigenspaces of `A` with negative eigenvalue.
pub fn w_ss(alg: &GradedAlgebra, z: &Covector, x: &Vector, module: &TensorModule) -> Result<Subspace> {
    let spec = module_spectrum(alg, z, x, module)?;
    eigen_sum(alg, &spec, module, Scalar::is_negative)
}

/// Sum of the eigenspaces of `A` with non-positive eigenvalue.
pub fn w_st(alg: &GradedAlgebra, z: &Covector, x: &Vector, module: &TensorModule) -> Result<Subspace> {
    let spec = module_spectrum(alg, z, x, module)?;
    eigen_sum(alg, &spec, module, |v| !v.is_positive())
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition1Entry {
    pub x: Vector,
    pub spectrum: Vec<(Scalar, usize)>,
    pub diagonalizable: bool,
    pub nonpositive: bool,
    pub zero_eigenspace_is_centralizer: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition1 {
    pub passed: bool,
    pub per_x: Vec<Condition1Entry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition2Entry {
    pub x: Vector,
    pub module_spectrum: Vec<(Scalar, usize)>,
    pub lambda2_spectrum: Vec<(Scalar, usize)>,
    pub second_spectrum: Vec<(Scalar, usize)>,
    pub w_ss_dim: usize,
    pub w_st_dim: usize,
    pub diagonalizable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct_check: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition2 {
    pub passed: bool,
    pub per_x: Vec<Condition2Entry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition3 {
    pub passed: bool,
    /// `dim W_st(A)` for each `X` of the spanning set.
    pub w_st_dims: Vec<usize>,
    /// Dimension of the running intersection after each `X`, stopping at
    /// the first zero.
    pub intersection_trace: Vec<usize>,
    pub intersection: Subspace,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessReport {
    pub family: AlgebraFamily,
    pub z: Covector,
    pub gtype: GeometricType,
    pub shape: ModuleShape,
    pub centralizer: Subspace,
    pub spanning_set: Vec<Vector>,
    pub condition1: Condition1,
    pub condition2: Condition2,
    pub condition3: Condition3,
    /// `A` acts diagonalizably on `g₋₁` and on the module for every `X`.
    pub diagonalizable: bool,
    pub passed: bool,
    #[serde(skip)]
    pub w_st: Vec<Subspace>,
}

/// Runs the three flatness conditions for `Z` over a spanning subset of
/// `T(Z)`, on the family's default module or `shape` if given.
pub fn check_flat_conditions(
    alg: &GradedAlgebra,
    z: &Covector,
    shape: Option<ModuleShape>,
) -> Result<FlatnessReport> {
    if z.is_zero() {
        return Err(Error::ZeroCovector);
    }
    let shape = shape.unwrap_or_else(|| ModuleShape::default_for(alg.family()));
    let module = build_module(alg, shape)?;
    let centralizer = isotropy::centralizer(alg, z);
    let spanning_set = isotropy::t_spanning_set(alg, z)?;

    let mut c1 = Vec::new();
    let mut c2 = Vec::new();
    let mut w_st_all = Vec::new();
    let mut diagonalizable = true;
    for x in &spanning_set {
        let a = isotropy::bracket_a(alg, z, x)?;
        let eig = isotropy::eigen_gm1(alg, &a)?;
        let nonpositive = eig.values().iter().all(|v| !v.is_positive());
        let zero_space = eig.eigenspace_or_zero(&Scalar::zero());
        diagonalizable &= eig.diagonalizable;
        c1.push(Condition1Entry {
            x: x.clone(),
            spectrum: eig.spectrum(),
            diagonalizable: eig.diagonalizable,
            nonpositive,
            zero_eigenspace_is_centralizer: zero_space == centralizer,
        });

        let spec = module_spectrum_of(alg, a, &module)?;
        diagonalizable &= spec.diagonalizable;
        let ws = weight_spaces_of(alg, &spec, &module)?;
        c2.push(Condition2Entry {
            x: x.clone(),
            module_spectrum: spec.module.clone(),
            lambda2_spectrum: spec.lambda2.clone(),
            second_spectrum: spec.second.clone(),
            w_ss_dim: ws.ss.dim(),
            w_st_dim: ws.st.dim(),
            diagonalizable: spec.diagonalizable,
            direct_check: spec.direct_check,
        });
        w_st_all.push(ws.st);
    }

    let mut intersection = Subspace::full(module.dim());
    let mut trace = Vec::with_capacity(w_st_all.len());
    for w in &w_st_all {
        intersection = intersection.intersect(w)?;
        trace.push(intersection.dim());
        if intersection.is_zero() {
            break;
        }
    }

    let condition1 = Condition1 {
        passed: c1
            .iter()
            .all(|e| e.diagonalizable && e.nonpositive && e.zero_eigenspace_is_centralizer),
        per_x: c1,
    };
    let condition2 = Condition2 {
        passed: c2.iter().all(|e| e.w_ss_dim == 0),
        per_x: c2,
    };
    let condition3 = Condition3 {
        passed: intersection.is_zero(),
        w_st_dims: w_st_all.iter().map(Subspace::dim).collect(),
        intersection_trace: trace,
        intersection,
    };
    let passed = diagonalizable && condition1.passed && condition2.passed && condition3.passed;
    Ok(FlatnessReport {
        family: alg.family(),
        z: z.clone(),
        gtype: isotropy::geometric_type(alg, z),
        shape,
        centralizer,
        spanning_set,
        condition1,
        condition2,
        condition3,
        diagonalizable,
        passed,
        w_st: w_st_all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bracket, build};
    use crate::scalar::{int, ints};

    fn conf(p: usize, q: usize) -> GradedAlgebra {
        build(AlgebraFamily::Conformal { p, q }).unwrap()
    }

    fn proj(n: usize) -> GradedAlgebra {
        build(AlgebraFamily::Projective { n }).unwrap()
    }

    #[test]
    fn module_dimensions() {
        assert_eq!(build_module(&conf(1, 2), ModuleShape::Lam2G1TensorG1).unwrap().dim(), 9);
        assert_eq!(build_module(&proj(3), ModuleShape::Lam2G1TensorSlGm1).unwrap().dim(), 24);
        assert_eq!(build_module(&conf(1, 3), ModuleShape::Lam2G1TensorSoGm1).unwrap().dim(), 36);
        assert!(matches!(
            build_module(&proj(3), ModuleShape::Lam2G1TensorSoGm1),
            Err(Error::IncompatibleShape { .. })
        ));
    }

    #[test]
    fn default_shapes() {
        use AlgebraFamily::*;
        assert_eq!(ModuleShape::default_for(Projective { n: 2 }), ModuleShape::Lam2G1TensorG1);
        assert_eq!(ModuleShape::default_for(Projective { n: 5 }), ModuleShape::Lam2G1TensorSlGm1);
        assert_eq!(ModuleShape::default_for(Conformal { p: 1, q: 2 }), ModuleShape::Lam2G1TensorG1);
        assert_eq!(ModuleShape::default_for(Conformal { p: 2, q: 2 }), ModuleShape::Lam2G1TensorSoGm1);
    }

    #[test]
    fn action_is_a_representation() {
        for (alg, shape) in [
            (proj(3), ModuleShape::Lam2G1TensorSlGm1),
            (conf(1, 3), ModuleShape::Lam2G1TensorSoGm1),
            (conf(1, 2), ModuleShape::Lam2G1TensorG1),
        ] {
            let module = build_module(&alg, shape).unwrap();
            let g0 = alg.basis(Grade::Zero);
            for i in 0..g0.len().min(4) {
                for j in 0..g0.len().min(5) {
                    let lhs = module.action(&alg, &bracket(&g0[i], &g0[j])).unwrap();
                    let ai = module.action(&alg, &g0[i]).unwrap();
                    let aj = module.action(&alg, &g0[j]).unwrap();
                    assert_eq!(lhs, ai.commutator(&aj), "{shape} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn grading_element_positive_on_g1_shapes() {
        let alg = conf(1, 2);
        let module = build_module(&alg, ModuleShape::Lam2G1TensorG1).unwrap();
        let m = module.action(&alg, alg.grading_element()).unwrap();
        assert_eq!(m, Mat::identity(9).scale(&int(3)));
    }

    #[test]
    fn null_conformal_n3_has_trivial_w_st() {
        let alg = conf(1, 2);
        let z = Covector::from_ints(&[1, 1, 0]);
        let x = Vector::from_ints(&[1, 0, 1]);
        let module = build_module(&alg, ModuleShape::Lam2G1TensorG1).unwrap();
        let spec = module_spectrum(&alg, &z, &x, &module).unwrap();
        assert_eq!(spec.lambda2_values(), ints(&[1, 2, 3]));
        assert_eq!(spec.direct_check, Some(true));
        assert!(w_st(&alg, &z, &x, &module).unwrap().is_zero());
    }

    #[test]
    fn null_conformal_so_module() {
        let alg = conf(1, 3);
        let z = Covector::from_ints(&[1, 1, 0, 0]);
        let module = build_module(&alg, ModuleShape::Lam2G1TensorSoGm1).unwrap();
        let xs = isotropy::t_spanning_set(&alg, &z).unwrap();
        let spec = module_spectrum(&alg, &z, &xs[0], &module).unwrap();
        assert_eq!(spec.lambda2_values(), ints(&[1, 2, 3]));
        assert_eq!(spec.second_values(), ints(&[-1, 0, 1]));
        assert_eq!(spec.direct_check, Some(true));
        let ws = weight_spaces(&alg, &z, &xs[0], &module).unwrap();
        assert!(ws.ss.is_zero());
        assert!(ws.ss.is_subspace_of(&ws.st));
        // (n − 2)² = 4: degree-1 part of Λ²g₁ times degree −1 part of so.
        assert_eq!(ws.st.dim(), 4);
    }

    #[test]
    fn flatness_projective_and_nonnull() {
        let report = check_flat_conditions(&proj(3), &Covector::from_ints(&[1, 0, 0]), None).unwrap();
        assert!(report.passed);
        assert_eq!(report.condition3.w_st_dims[0], 0);

        let report =
            check_flat_conditions(&conf(1, 2), &Covector::from_ints(&[1, 0, 0]), None).unwrap();
        assert!(report.passed);
        assert_eq!(report.spanning_set.len(), 1);
        assert_eq!(report.condition1.per_x[0].spectrum, vec![(int(-2), 3)]);
    }

    #[test]
    fn flatness_null_needs_several_x() {
        let report =
            check_flat_conditions(&conf(1, 3), &Covector::from_ints(&[1, 1, 0, 0]), None).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.condition3.w_st_dims.iter().all(|&d| d > 0));
        assert!(report.condition3.intersection_trace[0] > 0);
        assert_eq!(report.condition3.intersection_trace, vec![4, 0]);
        assert!(matches!(
            check_flat_conditions(&conf(1, 3), &Covector::zero(4), None),
            Err(Error::ZeroCovector)
        ));
    }
}
