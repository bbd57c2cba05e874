//! The two |1|-graded algebras: `sl(n+1)` (projective structures) in the
//! 1+n block form, and `so(p+1,q+1)` (conformal structures) in the
//! 1+n+1 block form
//!
//! ```text
//!   ( a    Z      0   )
//!   ( X    A   -𝕀Zᵗ )      A ∈ so(p,q),  𝕀 = Id_p ⊕ −Id_q.
//!   ( 0  -Xᵗ𝕀   -a   )
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{kernel, Mat};
use crate::scalar::Scalar;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum AlgebraFamily {
    Projective { n: usize },
    Conformal { p: usize, q: usize },
}

impl AlgebraFamily {
    /// Dimension `n` of `g₋₁`.
    pub fn dim(&self) -> usize {
        match *self {
            AlgebraFamily::Projective { n } => n,
            AlgebraFamily::Conformal { p, q } => p + q,
        }
    }

    /// Size of the ambient matrices.
    pub fn ambient_size(&self) -> usize {
        match *self {
            AlgebraFamily::Projective { n } => n + 1,
            AlgebraFamily::Conformal { p, q } => p + q + 2,
        }
    }

    pub fn is_conformal(&self) -> bool {
        matches!(self, AlgebraFamily::Conformal { .. })
    }

    /// Checks parameter bounds and orders conformal signatures as `p ≤ q`.
    pub fn normalized(self, allow_definite: bool) -> Result<Self> {
        match self {
            AlgebraFamily::Projective { n } if n < 2 => Err(Error::InvalidParameters(format!(
                "projective structures need n >= 2, got n = {n}"
            ))),
            AlgebraFamily::Projective { .. } => Ok(self),
            AlgebraFamily::Conformal { p, q } => {
                let (p, q) = (p.min(q), p.max(q));
                if p + q < 3 {
                    return Err(Error::InvalidParameters(format!(
                        "conformal structures need p + q >= 3, got p + q = {}",
                        p + q
                    )));
                }
                if p == 0 && !allow_definite {
                    return Err(Error::InvalidParameters(
                        "definite signature (p = 0) requires the allow-definite flag".into(),
                    ));
                }
                Ok(AlgebraFamily::Conformal { p, q })
            }
        }
    }
}

impl fmt::Display for AlgebraFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraFamily::Projective { n } => write!(f, "projective(n={n})"),
            AlgebraFamily::Conformal { p, q } => write!(f, "conformal(p={p},q={q})"),
        }
    }
}

/// Grading degree −1, 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Grade {
    #[serde(rename = "-1")]
    Neg,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    Pos,
}

impl Grade {
    pub const ALL: [Grade; 3] = [Grade::Neg, Grade::Zero, Grade::Pos];

    pub fn value(self) -> i64 {
        match self {
            Grade::Neg => -1,
            Grade::Zero => 0,
            Grade::Pos => 1,
        }
    }

    pub fn from_value(v: i64) -> Option<Grade> {
        match v {
            -1 => Some(Grade::Neg),
            0 => Some(Grade::Zero),
            1 => Some(Grade::Pos),
            _ => None,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g_{}", self.value())
    }
}

/// Element of `g₋₁ ≅ Rⁿ`, as a coordinate column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<Scalar>);

/// Element of `g₁ ≅ Rⁿ*`, as a coordinate row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Covector(pub Vec<Scalar>);

macro_rules! coordinate_type {
    ($t:ident) => {
        impl $t {
            pub fn zero(n: usize) -> Self {
                $t(vec![Scalar::zero(); n])
            }

            pub fn basis(n: usize, i: usize) -> Self {
                let mut v = vec![Scalar::zero(); n];
                v[i] = Scalar::one();
                $t(v)
            }

            pub fn from_ints(values: &[i64]) -> Self {
                $t(crate::scalar::ints(values))
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(Scalar::is_zero)
            }

            pub fn scale(&self, s: &Scalar) -> Self {
                $t(self.0.iter().map(|x| x * s).collect())
            }

            pub fn add(&self, other: &Self) -> Self {
                $t(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                $t(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn as_slice(&self) -> &[Scalar] {
                &self.0
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    };
}

coordinate_type!(Vector);
coordinate_type!(Covector);

impl Covector {
    /// The natural pairing `Z·X`.
    pub fn apply(&self, x: &Vector) -> Scalar {
        self.0.iter().zip(&x.0).map(|(a, b)| a * b).sum()
    }
}

/// A concrete |1|-graded matrix algebra. Immutable after [`build`].
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    family: AlgebraFamily,
    size: usize,
    basis_gm1: Vec<Mat>,
    basis_g0: Vec<Mat>,
    basis_g1: Vec<Mat>,
    grading_element: Mat,
    /// Diagonal of 𝕀 (conformal only).
    signs: Vec<Scalar>,
    signature_matrix: Option<Mat>,
    invariant_form: Option<Mat>,
}

/// Builds the algebra for a family, rejecting out-of-range parameters
/// (including definite conformal signature).
pub fn build(family: AlgebraFamily) -> Result<GradedAlgebra> {
    build_with(family, false)
}

/// As [`build`], optionally admitting definite conformal signature `p = 0`.
pub fn build_with(family: AlgebraFamily, allow_definite: bool) -> Result<GradedAlgebra> {
    let family = family.normalized(allow_definite)?;
    let n = family.dim();
    let size = family.ambient_size();
    let unit = |i: usize, j: usize| {
        let mut m = Mat::zeros(size, size);
        m[(i, j)] = Scalar::one();
        m
    };
    let alg = match family {
        AlgebraFamily::Projective { .. } => {
            let basis_gm1 = (0..n).map(|i| unit(i + 1, 0)).collect();
            let basis_g1 = (0..n).map(|j| unit(0, j + 1)).collect();
            let mut basis_g0 = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let mut m = unit(i + 1, j + 1);
                    if i == j {
                        m[(0, 0)] = Scalar::from_int(-1);
                    }
                    basis_g0.push(m);
                }
            }
            let mut diag = vec![Scalar::ratio(-1, size as i64); size];
            diag[0] = Scalar::ratio(n as i64, size as i64);
            GradedAlgebra {
                family,
                size,
                basis_gm1,
                basis_g0,
                basis_g1,
                grading_element: Mat::diag(&diag),
                signs: Vec::new(),
                signature_matrix: None,
                invariant_form: None,
            }
        }
        AlgebraFamily::Conformal { p, .. } => {
            let signs: Vec<Scalar> = (0..n)
                .map(|i| Scalar::from_int(if i < p { 1 } else { -1 }))
                .collect();
            let last = n + 1;
            let basis_gm1 = (0..n)
                .map(|i| {
                    let mut m = unit(i + 1, 0);
                    m[(last, i + 1)] = -&signs[i];
                    m
                })
                .collect();
            let basis_g1 = (0..n)
                .map(|j| {
                    let mut m = unit(0, j + 1);
                    m[(j + 1, last)] = -&signs[j];
                    m
                })
                .collect();
            let mut basis_g0 = Vec::with_capacity(n * (n - 1) / 2 + 1);
            let mut a = unit(0, 0);
            a[(last, last)] = Scalar::from_int(-1);
            basis_g0.push(a);
            // e_i e_jᵀ𝕀 − e_j e_iᵀ𝕀 spans so(p,q).
            for i in 0..n {
                for j in i + 1..n {
                    let mut m = Mat::zeros(size, size);
                    m[(i + 1, j + 1)] = signs[j].clone();
                    m[(j + 1, i + 1)] = -&signs[i];
                    basis_g0.push(m);
                }
            }
            let mut diag = vec![Scalar::zero(); size];
            diag[0] = Scalar::one();
            diag[last] = Scalar::from_int(-1);
            let signature_matrix = Mat::diag(&signs);
            let mut form = Mat::zeros(size, size);
            form[(0, last)] = Scalar::one();
            form[(last, 0)] = Scalar::one();
            for (i, s) in signs.iter().enumerate() {
                form[(i + 1, i + 1)] = s.clone();
            }
            GradedAlgebra {
                family,
                size,
                basis_gm1,
                basis_g0,
                basis_g1,
                grading_element: Mat::diag(&diag),
                signs,
                signature_matrix: Some(signature_matrix),
                invariant_form: Some(form),
            }
        }
    };
    Ok(alg)
}

/// Matrix commutator `[M1, M2] = M1·M2 − M2·M1`.
pub fn bracket(m1: &Mat, m2: &Mat) -> Mat {
    m1.commutator(m2)
}

impl GradedAlgebra {
    pub fn family(&self) -> AlgebraFamily {
        self.family
    }

    pub fn is_conformal(&self) -> bool {
        self.family.is_conformal()
    }

    /// `n = dim g₋₁`.
    pub fn n(&self) -> usize {
        self.family.dim()
    }

    pub fn ambient_size(&self) -> usize {
        self.size
    }

    pub fn basis(&self, grade: Grade) -> &[Mat] {
        match grade {
            Grade::Neg => &self.basis_gm1,
            Grade::Zero => &self.basis_g0,
            Grade::Pos => &self.basis_g1,
        }
    }

    /// Basis of the whole algebra: `g₋₁`, then `g₀`, then `g₁`.
    pub fn full_basis(&self) -> Vec<(Grade, &Mat)> {
        Grade::ALL
            .iter()
            .flat_map(|&g| self.basis(g).iter().map(move |m| (g, m)))
            .collect()
    }

    pub fn dim(&self, grade: Grade) -> usize {
        self.basis(grade).len()
    }

    /// The grading element `E`, with `ad(E) = i` on `g_i`.
    pub fn grading_element(&self) -> &Mat {
        &self.grading_element
    }

    /// 𝕀 = Id_p ⊕ −Id_q (conformal only).
    pub fn signature_matrix(&self) -> Option<&Mat> {
        self.signature_matrix.as_ref()
    }

    /// Symmetric form `S` with `gᵀS + Sg = 0` on the algebra (conformal only).
    pub fn invariant_form(&self) -> Option<&Mat> {
        self.invariant_form.as_ref()
    }

    /// A copy with one basis element replaced, for negative controls.
    pub fn with_basis_element(&self, grade: Grade, index: usize, m: Mat) -> GradedAlgebra {
        let mut out = self.clone();
        let basis = match grade {
            Grade::Neg => &mut out.basis_gm1,
            Grade::Zero => &mut out.basis_g0,
            Grade::Pos => &mut out.basis_g1,
        };
        basis[index] = m;
        out
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {len}",
                self.n()
            )));
        }
        Ok(())
    }

    /// Embeds `X ∈ g₋₁`.
    pub fn inj_vector(&self, x: &Vector) -> Mat {
        self.check_len(x.len()).expect("vector length");
        let mut m = Mat::zeros(self.size, self.size);
        for (i, v) in x.0.iter().enumerate() {
            m[(i + 1, 0)] = v.clone();
            if self.is_conformal() {
                m[(self.size - 1, i + 1)] = -(v * &self.signs[i]);
            }
        }
        m
    }

    /// Embeds `Z ∈ g₁`.
    pub fn inj_covector(&self, z: &Covector) -> Mat {
        self.check_len(z.len()).expect("covector length");
        let mut m = Mat::zeros(self.size, self.size);
        for (j, v) in z.0.iter().enumerate() {
            m[(0, j + 1)] = v.clone();
            if self.is_conformal() {
                m[(j + 1, self.size - 1)] = -(v * &self.signs[j]);
            }
        }
        m
    }

    /// Coordinates of the `g₋₁` component.
    pub fn vector_of(&self, m: &Mat) -> Vector {
        Vector((0..self.n()).map(|i| m.get(i + 1, 0).clone()).collect())
    }

    /// Coordinates of the `g₁` component.
    pub fn covector_of(&self, m: &Mat) -> Covector {
        Covector((0..self.n()).map(|j| m.get(0, j + 1).clone()).collect())
    }

    /// Coordinates of the `g₀` component in `basis(Grade::Zero)`.
    pub fn g0_coords(&self, m: &Mat) -> Vec<Scalar> {
        let n = self.n();
        match self.family {
            AlgebraFamily::Projective { .. } => {
                let mut out = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        out.push(m.get(i + 1, j + 1).clone());
                    }
                }
                out
            }
            AlgebraFamily::Conformal { .. } => {
                let mut out = vec![m.get(0, 0).clone()];
                for i in 0..n {
                    for j in i + 1..n {
                        out.push(m.get(i + 1, j + 1) * &self.signs[j]);
                    }
                }
                out
            }
        }
    }

    /// Coordinates of a matrix lying in `g_grade`.
    pub fn coords(&self, m: &Mat, grade: Grade) -> Vec<Scalar> {
        match grade {
            Grade::Neg => self.vector_of(m).0,
            Grade::Zero => self.g0_coords(m),
            Grade::Pos => self.covector_of(m).0,
        }
    }

    /// Linear combination of `basis(grade)`.
    pub fn from_coords(&self, coords: &[Scalar], grade: Grade) -> Mat {
        let mut m = Mat::zeros(self.size, self.size);
        for (c, b) in coords.iter().zip(self.basis(grade)) {
            if !c.is_zero() {
                m = &m + &b.scale(c);
            }
        }
        m
    }

    /// Grading degree of the matrix entry `(i, j)`, read off the grading
    /// element. Corner entries of the conformal realization have degree ±2.
    pub fn entry_degree(&self, i: usize, j: usize) -> Scalar {
        self.grading_element.get(i, i) - self.grading_element.get(j, j)
    }

    /// Component of `m` in `g_grade`.
    pub fn grading_projection(&self, m: &Mat, grade: Grade) -> Mat {
        let target = Scalar::from_int(grade.value());
        Mat::from_fn(self.size, self.size, |i, j| {
            if self.entry_degree(i, j) == target {
                m.get(i, j).clone()
            } else {
                Scalar::zero()
            }
        })
    }

    /// True iff `m` lies in the ambient Lie algebra.
    pub fn contains(&self, m: &Mat) -> bool {
        if m.rows() != self.size || m.cols() != self.size {
            return false;
        }
        match &self.invariant_form {
            None => m.trace().is_zero(),
            Some(s) => (&(&m.transpose() * s) + &(s * m)).is_zero(),
        }
    }

    /// True iff `m` lies in `g_grade` (algebra membership and degree).
    pub fn in_grade(&self, m: &Mat, grade: Grade) -> bool {
        self.contains(m) && &self.grading_projection(m, grade) == m
    }

    /// Matrix of `ad(a)` restricted to `g_grade`, in the coordinates of
    /// `basis(grade)`. Requires `a ∈ g₀`.
    pub fn ad_restricted(&self, a: &Mat, grade: Grade) -> Result<Mat> {
        if !self.in_grade(a, Grade::Zero) {
            return Err(Error::Precondition("element is not in g_0".into()));
        }
        let cols: Vec<Vec<Scalar>> = self
            .basis(grade)
            .iter()
            .map(|b| self.coords(&bracket(a, b), grade))
            .collect();
        Ok(Mat::from_columns(self.dim(grade), &cols))
    }

    /// Solves `ad(E)|g_i = i` for `E` over the full basis and checks the
    /// solution is unique.
    pub fn solve_grading_element(&self) -> Result<Mat> {
        let basis = self.full_basis();
        let k = basis.len();
        let entries = self.size * self.size;
        let mut system = Mat::zeros(k * entries, k + 1);
        for (row_block, (grade, b)) in basis.iter().enumerate() {
            for (col, (_, bk)) in basis.iter().enumerate() {
                let br = bracket(bk, b);
                for (e, v) in br.entries().iter().enumerate() {
                    if !v.is_zero() {
                        system[(row_block * entries + e, col)] = v.clone();
                    }
                }
            }
            let g = Scalar::from_int(grade.value());
            for (e, v) in b.entries().iter().enumerate() {
                if !v.is_zero() {
                    system[(row_block * entries + e, k)] = -(v * &g);
                }
            }
        }
        // Affine solutions are kernel vectors normalized to last coordinate 1.
        let sol = kernel(&system);
        if sol.dim() != 1 {
            return Err(Error::Precondition(format!(
                "grading element not unique: solution space of dimension {}",
                sol.dim()
            )));
        }
        let v = sol.basis().column(0);
        let Some(norm) = v[k].recip() else {
            return Err(Error::Precondition("no grading element exists".into()));
        };
        let mut e = Mat::zeros(self.size, self.size);
        for (c, (_, b)) in v[..k].iter().zip(&basis) {
            if !c.is_zero() {
                e = &e + &b.scale(&(c * &norm));
            }
        }
        Ok(e)
    }

    /// Pairing `g₋₁ × g₁ → R` from the trace form, normalized so the
    /// standard bases are dual.
    pub fn killing_pairing(&self, x: &Vector, z: &Covector) -> Scalar {
        let raw = (&self.inj_vector(x) * &self.inj_covector(z)).trace();
        let unit = (&self.basis_gm1[0] * &self.basis_g1[0]).trace();
        raw / unit
    }

    fn require_conformal(&self, what: &str) -> Result<()> {
        if self.is_conformal() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "{what} is only defined for conformal algebras"
            )))
        }
    }

    /// `⟨Z1, Z2⟩ = Z1·𝕀·Z2ᵗ`.
    pub fn inner_product(&self, z1: &Covector, z2: &Covector) -> Result<Scalar> {
        self.require_conformal("the inner product")?;
        Ok(self.signed_dot(&z1.0, &z2.0))
    }

    /// `⟨X, Y⟩ = Xᵗ·𝕀·Y` on `g₋₁`.
    pub fn inner_product_vectors(&self, x: &Vector, y: &Vector) -> Result<Scalar> {
        self.require_conformal("the inner product")?;
        Ok(self.signed_dot(&x.0, &y.0))
    }

    fn signed_dot(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        a.iter()
            .zip(b)
            .zip(&self.signs)
            .map(|((x, y), s)| x * y * s)
            .sum()
    }

    /// `𝕀Zᵗ`, the vector metrically dual to `Z`.
    pub fn sharp(&self, z: &Covector) -> Result<Vector> {
        self.require_conformal("metric duality")?;
        Ok(Vector(
            z.0.iter().zip(&self.signs).map(|(v, s)| v * s).collect(),
        ))
    }

    /// `Xᵗ𝕀`.
    pub fn flat(&self, x: &Vector) -> Result<Covector> {
        self.require_conformal("metric duality")?;
        Ok(Covector(
            x.0.iter().zip(&self.signs).map(|(v, s)| v * s).collect(),
        ))
    }

    /// Exact structural checks; failures are entries in the report.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();

        let bad_member = self
            .full_basis()
            .iter()
            .position(|(_, m)| !self.contains(m));
        checks.push(Check::new(
            if self.is_conformal() {
                "basis satisfies MᵀS + SM = 0"
            } else {
                "basis is trace-free"
            },
            bad_member.map(|i| format!("basis element #{i} violates it")),
        ));

        let e = &self.grading_element;
        for grade in Grade::ALL {
            let g = Scalar::from_int(grade.value());
            let bad = self
                .basis(grade)
                .iter()
                .position(|b| bracket(e, b) != b.scale(&g));
            checks.push(Check::new(
                format!("ad(E) = {} on {grade}", grade.value()),
                bad.map(|i| format!("fails on basis element {i} of {grade}")),
            ));
        }

        let pairs = [
            (Grade::Neg, Grade::Neg),
            (Grade::Neg, Grade::Zero),
            (Grade::Neg, Grade::Pos),
            (Grade::Zero, Grade::Zero),
            (Grade::Zero, Grade::Pos),
            (Grade::Pos, Grade::Pos),
        ];
        for (gi, gj) in pairs {
            let target = Grade::from_value(gi.value() + gj.value());
            let name = match target {
                Some(t) => format!("[{gi}, {gj}] ⊆ {t}"),
                None => format!("[{gi}, {gj}] = 0"),
            };
            let mut failure = None;
            'outer: for (a, ba) in self.basis(gi).iter().enumerate() {
                for (b, bb) in self.basis(gj).iter().enumerate() {
                    let br = bracket(ba, bb);
                    let ok = match target {
                        Some(t) => self.in_grade(&br, t),
                        None => br.is_zero(),
                    };
                    if !ok {
                        failure = Some(format!("basis pair ({gi}#{a}, {gj}#{b})"));
                        break 'outer;
                    }
                }
            }
            checks.push(Check::new(name, failure));
        }

        let basis = self.full_basis();
        let mut jacobi_failure = None;
        'jacobi: for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let bij = bracket(basis[i].1, basis[j].1);
                for k in j + 1..basis.len() {
                    let (a, b, c) = (basis[i].1, basis[j].1, basis[k].1);
                    let sum = &(&bracket(a, &bracket(b, c)) + &bracket(b, &bracket(c, a)))
                        + &bracket(c, &bij);
                    if !sum.is_zero() {
                        jacobi_failure = Some(format!("basis triple ({i}, {j}, {k})"));
                        break 'jacobi;
                    }
                }
            }
        }
        checks.push(Check::new("Jacobi identity on basis triples", jacobi_failure));

        let grading = match self.solve_grading_element() {
            Ok(solved) if &solved == e => None,
            Ok(_) => Some("solved grading element differs from the stored one".to_string()),
            Err(err) => Some(err.to_string()),
        };
        checks.push(Check::new("grading element is unique", grading));

        let n = self.n();
        let expected = [
            (Grade::Neg, n),
            (
                Grade::Zero,
                if self.is_conformal() { n * (n - 1) / 2 + 1 } else { n * n },
            ),
            (Grade::Pos, n),
        ];
        let bad_dim = expected
            .iter()
            .find(|(g, d)| {
                let vecs: Vec<Vec<Scalar>> =
                    self.basis(*g).iter().map(|m| m.entries().to_vec()).collect();
                self.dim(*g) != *d || Mat::from_columns(self.size * self.size, &vecs).rank() != *d
            })
            .map(|(g, d)| format!("{g} should have dimension {d}"));
        checks.push(Check::new("graded dimensions", bad_dim));

        ValidationReport {
            family: self.family,
            checks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// A check that passed iff `failure` is `None`.
    pub fn new(name: impl Into<String>, failure: Option<String>) -> Self {
        Check {
            name: name.into(),
            passed: failure.is_none(),
            detail: failure,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub family: AlgebraFamily,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Compares the matrix commutator with the closed-form bracket formulas on
/// `(Z, X, Y)` triples. Returns the index of the first disagreement.
pub fn closed_form_disagreement(
    alg: &GradedAlgebra,
    triples: &[(Covector, Vector, Vector)],
) -> Result<Option<usize>> {
    for (idx, (z, x, y)) in triples.iter().enumerate() {
        let zm = alg.inj_covector(z);
        let xm = alg.inj_vector(x);
        let ym = alg.inj_vector(y);
        let a = bracket(&zm, &xm);
        let zx = z.apply(x);
        let zy = z.apply(y);
        let zxz = z.scale(&zx).scale(&Scalar::from_int(2));
        let (expected_a, expected_zxz, expected_zxy) = if alg.is_conformal() {
            let zz = alg.inner_product(z, z)?;
            let xy = alg.inner_product_vectors(x, y)?;
            let sharp_z = alg.sharp(z)?;
            // [Z,X] = (−XZ + 𝕀(XZ)ᵗ𝕀, ZX)
            let n = alg.n();
            let i_mat = alg.signature_matrix().expect("conformal");
            let xz = Mat::from_fn(n, n, |i, j| &x.0[i] * &z.0[j]);
            let block = &(-&xz) + &(&(i_mat * &xz.transpose()) * i_mat);
            let mut expected_a = Mat::zeros(alg.ambient_size(), alg.ambient_size());
            expected_a[(0, 0)] = zx.clone();
            expected_a[(n + 1, n + 1)] = -&zx;
            for i in 0..n {
                for j in 0..n {
                    expected_a[(i + 1, j + 1)] = block.get(i, j).clone();
                }
            }
            let zxz = zxz.sub(&alg.flat(x)?.scale(&zz));
            let zxy = x
                .scale(&(-&zy))
                .sub(&y.scale(&zx))
                .add(&sharp_z.scale(&xy));
            (expected_a, zxz, zxy)
        } else {
            // [Z,X] = diag(ZX, −XZ)
            let n = alg.n();
            let mut expected_a = Mat::zeros(alg.ambient_size(), alg.ambient_size());
            expected_a[(0, 0)] = zx.clone();
            for i in 0..n {
                for j in 0..n {
                    expected_a[(i + 1, j + 1)] = -(&x.0[i] * &z.0[j]);
                }
            }
            let zxy = x.scale(&(-&zy)).sub(&y.scale(&zx));
            (expected_a, zxz, zxy)
        };
        let ok = a == expected_a
            && bracket(&a, &zm) == alg.inj_covector(&expected_zxz)
            && bracket(&a, &ym) == alg.inj_vector(&expected_zxy);
        if !ok {
            return Ok(Some(idx));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn proj(n: usize) -> GradedAlgebra {
        build(AlgebraFamily::Projective { n }).unwrap()
    }

    fn conf(p: usize, q: usize) -> GradedAlgebra {
        build(AlgebraFamily::Conformal { p, q }).unwrap()
    }

    #[test]
    fn dimensions() {
        let p2 = proj(2);
        assert_eq!(p2.ambient_size(), 3);
        assert_eq!(p2.dim(Grade::Zero), 4);
        let c12 = conf(1, 2);
        assert_eq!(c12.ambient_size(), 5);
        assert_eq!(c12.dim(Grade::Zero), 4);
        assert_eq!(c12.dim(Grade::Neg), 3);
    }

    #[test]
    fn parameter_bounds() {
        assert!(build(AlgebraFamily::Projective { n: 1 }).is_err());
        assert!(build(AlgebraFamily::Conformal { p: 0, q: 3 }).is_err());
        assert!(build(AlgebraFamily::Conformal { p: 1, q: 1 }).is_err());
        let definite = build_with(AlgebraFamily::Conformal { p: 0, q: 3 }, true).unwrap();
        assert!(definite.validate().passed());
        let swapped = build(AlgebraFamily::Conformal { p: 3, q: 1 }).unwrap();
        assert_eq!(swapped.family(), AlgebraFamily::Conformal { p: 1, q: 3 });
    }

    #[test]
    fn grading_elements() {
        assert_eq!(
            proj(2).grading_element(),
            &Mat::diag(&[frac(2, 3), frac(-1, 3), frac(-1, 3)])
        );
        assert_eq!(
            conf(1, 2).grading_element(),
            &Mat::diag(&[int(1), int(0), int(0), int(0), int(-1)])
        );
        for alg in [proj(2), proj(3), conf(1, 2), conf(2, 2)] {
            assert_eq!(&alg.solve_grading_element().unwrap(), alg.grading_element());
            let e = alg.grading_element();
            assert_eq!(alg.grading_projection(e, Grade::Zero), *e);
            for b in alg.basis(Grade::Zero) {
                assert!(bracket(e, b).is_zero());
            }
        }
    }

    #[test]
    fn projective_bracket_example() {
        let alg = proj(2);
        let z = Covector::from_ints(&[1, 0]);
        let x = Vector::from_ints(&[1, 0]);
        let a = bracket(&alg.inj_covector(&z), &alg.inj_vector(&x));
        // −XZ in the gl(n) block, trace part ZX = 1 in the corner.
        assert_eq!(a, Mat::from_ints(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]));
        assert!(alg.in_grade(&a, Grade::Zero));
    }

    #[test]
    fn conformal_bracket_is_twice_grading_element() {
        let alg = conf(1, 2);
        let z = Covector::from_ints(&[1, 0, 0]);
        let x = Vector::from_ints(&[2, 0, 0]);
        let a = bracket(&alg.inj_covector(&z), &alg.inj_vector(&x));
        assert_eq!(a, alg.grading_element().scale(&int(2)));
    }

    #[test]
    fn projections_pick_blocks() {
        let alg = conf(1, 2);
        let x = alg.inj_vector(&Vector::from_ints(&[1, 2, 3]));
        let z = alg.inj_covector(&Covector::from_ints(&[4, 5, 6]));
        let h = &alg.basis(Grade::Zero)[2].scale(&int(7)) + alg.grading_element();
        let m = &(&x + &z) + &h;
        assert_eq!(alg.grading_projection(&m, Grade::Neg), x);
        assert_eq!(alg.grading_projection(&m, Grade::Pos), z);
        assert_eq!(alg.grading_projection(&m, Grade::Zero), h);
        assert_eq!(alg.vector_of(&m), Vector::from_ints(&[1, 2, 3]));
        assert_eq!(alg.covector_of(&m), Covector::from_ints(&[4, 5, 6]));
        assert_eq!(alg.from_coords(&alg.g0_coords(&h), Grade::Zero), h);
    }

    #[test]
    fn pairing_and_inner_product() {
        for alg in [proj(3), conf(1, 2)] {
            let n = alg.n();
            for i in 0..n {
                for j in 0..n {
                    let expected = if i == j { int(1) } else { int(0) };
                    assert_eq!(
                        alg.killing_pairing(&Vector::basis(n, i), &Covector::basis(n, j)),
                        expected
                    );
                }
            }
        }
        let alg = conf(1, 2);
        let x = Vector::from_ints(&[1, -2, 3]);
        let z = Covector::from_ints(&[2, 1, 1]);
        assert_eq!(alg.killing_pairing(&x, &z), z.apply(&x));
        let ip = |a: &[i64], b: &[i64]| {
            alg.inner_product(&Covector::from_ints(a), &Covector::from_ints(b)).unwrap()
        };
        assert_eq!(ip(&[1, 0, 0], &[1, 0, 0]), int(1));
        assert_eq!(ip(&[1, 1, 0], &[1, 1, 0]), int(0));
        assert_eq!(ip(&[0, 1, 0], &[0, 1, 0]), int(-1));
        let p = proj(2);
        assert!(matches!(
            p.inner_product(&Covector::from_ints(&[1, 0]), &Covector::from_ints(&[1, 0])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn validation_passes_and_detects_corruption() {
        assert!(proj(3).validate().passed());
        assert!(conf(2, 3).validate().passed());
        let alg = conf(1, 2);
        let corrupt = &alg.basis(Grade::Pos)[0].clone() + &alg.basis(Grade::Neg)[0].clone();
        let bad = alg.with_basis_element(Grade::Pos, 0, corrupt);
        let report = bad.validate();
        assert!(!report.passed());
        let names: Vec<&str> = report.failures().iter().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"[g_1, g_1] = 0"), "{names:?}");
    }

    #[test]
    fn invariant_form_annihilates_basis() {
        let alg = conf(2, 2);
        let s = alg.invariant_form().unwrap();
        for (_, b) in alg.full_basis() {
            assert!((&(&b.transpose() * s) + &(s * b)).is_zero());
        }
    }
}
