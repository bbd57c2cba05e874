//! Sets attached to a covector `Z ∈ g₁`:
//!
//! * `C(Z) = {X : [X,Z] = 0}` (a linear subspace),
//! * `F(Z) = {X : [X,[X,Z]] = 0}` (a cone),
//! * `T(Z) = {X : [[Z,X],X] = −2X, [[Z,X],Z] = 2Z}`,
//!
//! each with a brute-force bracket oracle and the closed form it is
//! cross-checked against.

use std::fmt;

use serde::Serialize;

use crate::algebra::{bracket, AlgebraFamily, Covector, Grade, GradedAlgebra, Vector};
use crate::linalg::{eigen_decompose, kernel, EigenReport, Mat, Subspace};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Coarse orbit invariant of `Z` under the parabolic subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GeometricType {
    ProjectiveNonzero,
    ProjectiveZero,
    ConformalPositive,
    ConformalNull,
    ConformalNegative,
    ConformalZero,
}

impl GeometricType {
    pub fn is_zero(self) -> bool {
        matches!(self, GeometricType::ProjectiveZero | GeometricType::ConformalZero)
    }

    pub fn is_non_null(self) -> bool {
        matches!(
            self,
            GeometricType::ConformalPositive | GeometricType::ConformalNegative
        )
    }
}

impl fmt::Display for GeometricType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn geometric_type(alg: &GradedAlgebra, z: &Covector) -> GeometricType {
    match alg.family() {
        AlgebraFamily::Projective { .. } => {
            if z.is_zero() {
                GeometricType::ProjectiveZero
            } else {
                GeometricType::ProjectiveNonzero
            }
        }
        AlgebraFamily::Conformal { .. } => {
            if z.is_zero() {
                return GeometricType::ConformalZero;
            }
            match alg.inner_product(z, z).expect("conformal").signum() {
                1 => GeometricType::ConformalPositive,
                -1 => GeometricType::ConformalNegative,
                _ => GeometricType::ConformalNull,
            }
        }
    }
}

fn require_nonzero(z: &Covector) -> Result<()> {
    if z.is_zero() {
        Err(Error::ZeroCovector)
    } else {
        Ok(())
    }
}

/// `C(Z)`: kernel of `X ↦ [inj(X), inj(Z)]` on `g₋₁`.
pub fn centralizer(alg: &GradedAlgebra, z: &Covector) -> Subspace {
    let zm = alg.inj_covector(z);
    let cols: Vec<Vec<Scalar>> = alg
        .basis(Grade::Neg)
        .iter()
        .map(|b| bracket(b, &zm).entries().to_vec())
        .collect();
    let size = alg.ambient_size();
    kernel(&Mat::from_columns(size * size, &cols))
}

/// `C(Z)` from the closed forms: `0` for projective and non-null conformal
/// `Z`, the line `R·𝕀Zᵗ` for null `Z`, everything for `Z = 0`.
pub fn centralizer_closed_form(alg: &GradedAlgebra, z: &Covector) -> Result<Subspace> {
    let n = alg.n();
    Ok(match geometric_type(alg, z) {
        GeometricType::ProjectiveZero | GeometricType::ConformalZero => Subspace::full(n),
        GeometricType::ConformalNull => Subspace::span(n, &[alg.sharp(z)?.0])?,
        _ => Subspace::zero(n),
    })
}

/// Brute-force `F(Z)` membership: `[X,[X,Z]] = 0`.
pub fn in_f(alg: &GradedAlgebra, z: &Covector, x: &Vector) -> bool {
    let xm = alg.inj_vector(x);
    bracket(&xm, &bracket(&xm, &alg.inj_covector(z))).is_zero()
}

/// Closed-form `F(Z)` membership: `ZX = 0` (projective), `ZX = ⟨X,X⟩ = 0`
/// (conformal).
pub fn in_f_closed_form(alg: &GradedAlgebra, z: &Covector, x: &Vector) -> Result<bool> {
    require_nonzero(z)?;
    let zx = z.apply(x);
    Ok(if alg.is_conformal() {
        zx.is_zero() && alg.inner_product_vectors(x, x)?.is_zero()
    } else {
        zx.is_zero()
    })
}

/// The first defining equation of `T(Z)` that fails for `X`, if any.
pub fn t_failure(alg: &GradedAlgebra, z: &Covector, x: &Vector) -> Option<&'static str> {
    let zm = alg.inj_covector(z);
    let xm = alg.inj_vector(x);
    let a = bracket(&zm, &xm);
    if bracket(&a, &xm) != xm.scale(&Scalar::from_int(-2)) {
        return Some("[[Z,X],X] = -2X");
    }
    if bracket(&a, &zm) != zm.scale(&Scalar::from_int(2)) {
        return Some("[[Z,X],Z] = 2Z");
    }
    None
}

/// Brute-force `T(Z)` membership.
pub fn in_t(alg: &GradedAlgebra, z: &Covector, x: &Vector) -> bool {
    t_failure(alg, z, x).is_none()
}

/// Closed-form description of `T(Z)` for `Z ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TDescription {
    /// `{X : ZX = 1}`.
    AffineHyperplane { z: Covector },
    /// The single point `2/⟨Z,Z⟩·𝕀Zᵗ`.
    Point { x: Vector },
    /// `{X : ZX = 1, ⟨X,X⟩ = 0}`.
    QuadricSlice { z: Covector },
}

pub fn t_description(alg: &GradedAlgebra, z: &Covector) -> Result<TDescription> {
    require_nonzero(z)?;
    Ok(match geometric_type(alg, z) {
        GeometricType::ProjectiveNonzero => TDescription::AffineHyperplane { z: z.clone() },
        GeometricType::ConformalNull => TDescription::QuadricSlice { z: z.clone() },
        _ => {
            let zz = alg.inner_product(z, z)?;
            let factor = Scalar::from_int(2) / zz;
            TDescription::Point {
                x: alg.sharp(z)?.scale(&factor),
            }
        }
    })
}

impl TDescription {
    pub fn contains(&self, alg: &GradedAlgebra, x: &Vector) -> bool {
        match self {
            TDescription::AffineHyperplane { z } => z.apply(x).is_one(),
            TDescription::Point { x: p } => x == p,
            TDescription::QuadricSlice { z } => {
                z.apply(x).is_one()
                    && alg
                        .inner_product_vectors(x, x)
                        .map(|v| v.is_zero())
                        .unwrap_or(false)
            }
        }
    }
}

/// Closed-form `T(Z)` membership.
pub fn in_t_closed_form(alg: &GradedAlgebra, z: &Covector, x: &Vector) -> Result<bool> {
    Ok(t_description(alg, z)?.contains(alg, x))
}

/// Basis of `ker Z` together with `W₀` satisfying `Z·W₀ = 1`.
fn affine_frame(z: &Covector) -> (Vector, Vec<Vector>) {
    let n = z.len();
    let k = z.0.iter().position(|v| !v.is_zero()).expect("nonzero covector");
    let inv = z.0[k].recip().expect("nonzero");
    let w0 = Vector::basis(n, k).scale(&inv);
    let kernel_basis = (0..n)
        .filter(|&j| j != k)
        .map(|j| {
            let mut v = Vector::basis(n, j);
            v.0[k] = -(&z.0[j] * &inv);
            v
        })
        .collect();
    (w0, kernel_basis)
}

/// Moves `W` with `ZW = 1` onto the null quadric along the null direction
/// `U = 𝕀Zᵗ`; valid for null `Z` since `ZU = 0` and `⟨W,U⟩ = 1`.
pub fn project_to_quadric_slice(alg: &GradedAlgebra, z: &Covector, w: &Vector) -> Result<Vector> {
    let u = alg.sharp(z)?;
    let ww = alg.inner_product_vectors(w, w)?;
    Ok(w.sub(&u.scale(&(ww / Scalar::from_int(2)))))
}

/// Finite subset of `T(Z)` spanning `g₋₁` (projective and null conformal
/// `Z`); for non-null conformal `Z`, the singleton `T(Z)`.
pub fn t_spanning_set(alg: &GradedAlgebra, z: &Covector) -> Result<Vec<Vector>> {
    require_nonzero(z)?;
    let n = alg.n();
    let gtype = geometric_type(alg, z);
    if gtype.is_non_null() {
        let TDescription::Point { x } = t_description(alg, z)? else {
            unreachable!("non-null T(Z) is a point")
        };
        return Ok(vec![x]);
    }
    let (w0, ker) = affine_frame(z);
    let lift = |w: Vector| -> Result<Vector> {
        if gtype == GeometricType::ConformalNull {
            project_to_quadric_slice(alg, z, &w)
        } else {
            Ok(w)
        }
    };
    let mut candidates: Vec<Vector> = vec![w0.clone()];
    candidates.extend(ker.iter().map(|v| w0.add(v)));
    // Fallback candidates in case the first n lifts are dependent.
    for scale in [2, -1, 3] {
        candidates.extend(ker.iter().map(|v| w0.add(&v.scale(&Scalar::from_int(scale)))));
    }
    for i in 0..ker.len() {
        for j in i + 1..ker.len() {
            candidates.push(w0.add(&ker[i]).add(&ker[j]));
        }
    }
    let mut chosen: Vec<Vector> = Vec::new();
    let mut span = Subspace::zero(n);
    for w in candidates {
        let x = lift(w)?;
        if span.contains(&x.0) {
            continue;
        }
        span = span.sum(&Subspace::span(n, std::slice::from_ref(&x.0))?)?;
        debug_assert!(in_t(alg, z, &x));
        chosen.push(x);
        if span.dim() == n {
            return Ok(chosen);
        }
    }
    Err(Error::Precondition(format!(
        "could not find a spanning subset of T(Z) (rank {} of {n})",
        span.dim()
    )))
}

/// `A = [Z, X] ∈ g₀`, refusing `X ∉ T(Z)`.
pub fn bracket_a(alg: &GradedAlgebra, z: &Covector, x: &Vector) -> Result<Mat> {
    require_nonzero(z)?;
    if let Some(eq) = t_failure(alg, z, x) {
        return Err(Error::NotInT(eq));
    }
    let a = bracket(&alg.inj_covector(z), &alg.inj_vector(x));
    debug_assert!(alg.in_grade(&a, Grade::Zero));
    Ok(a)
}

/// Eigen-decomposition of `ad(A)` restricted to `g₋₁`.
pub fn eigen_gm1(alg: &GradedAlgebra, a: &Mat) -> Result<EigenReport> {
    eigen_decompose(&alg.ad_restricted(a, Grade::Neg)?)
}

/// Whether a nonzero multiple of `X` lies in `T(Z)` (projective `Z ≠ 0`),
/// i.e. whether `ZX ≠ 0`.
pub fn scaled_t_complement(alg: &GradedAlgebra, z: &Covector, x: &Vector) -> Result<bool> {
    if alg.is_conformal() {
        return Err(Error::Unsupported(
            "scaled T(Z) complement is a projective statement".into(),
        ));
    }
    require_nonzero(z)?;
    let zx = z.apply(x);
    let Some(inv) = zx.recip() else {
        return Ok(false);
    };
    Ok(in_t(alg, z, &x.scale(&inv)))
}

/// Everything attached to one covector.
#[derive(Clone, Debug, Serialize)]
pub struct IsotropyData {
    pub z: Covector,
    pub gtype: GeometricType,
    pub centralizer: Subspace,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_description: Option<TDescription>,
}

impl IsotropyData {
    pub fn new(alg: &GradedAlgebra, z: &Covector) -> Self {
        IsotropyData {
            z: z.clone(),
            gtype: geometric_type(alg, z),
            centralizer: centralizer(alg, z),
            t_description: t_description(alg, z).ok(),
        }
    }

    pub fn in_f(&self, alg: &GradedAlgebra, x: &Vector) -> bool {
        in_f(alg, &self.z, x)
    }

    pub fn in_t(&self, alg: &GradedAlgebra, x: &Vector) -> bool {
        in_t(alg, &self.z, x)
    }

    pub fn a_of(&self, alg: &GradedAlgebra, x: &Vector) -> Result<Mat> {
        bracket_a(alg, &self.z, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build;
    use crate::scalar::int;

    fn proj(n: usize) -> GradedAlgebra {
        build(AlgebraFamily::Projective { n }).unwrap()
    }

    fn conf(p: usize, q: usize) -> GradedAlgebra {
        build(AlgebraFamily::Conformal { p, q }).unwrap()
    }

    #[test]
    fn types() {
        assert_eq!(
            geometric_type(&proj(2), &Covector::from_ints(&[1, 0])),
            GeometricType::ProjectiveNonzero
        );
        let c = conf(1, 2);
        assert_eq!(
            geometric_type(&c, &Covector::from_ints(&[1, 1, 0])),
            GeometricType::ConformalNull
        );
        assert_eq!(geometric_type(&c, &Covector::zero(3)), GeometricType::ConformalZero);
        assert_eq!(geometric_type(&proj(3), &Covector::zero(3)), GeometricType::ProjectiveZero);
        assert_eq!(
            geometric_type(&c, &Covector::from_ints(&[0, 0, 1])),
            GeometricType::ConformalNegative
        );
    }

    #[test]
    fn centralizers() {
        assert!(centralizer(&proj(2), &Covector::from_ints(&[1, 0])).is_zero());
        let c = conf(1, 2);
        assert!(centralizer(&c, &Covector::from_ints(&[1, 0, 0])).is_zero());
        let null = centralizer(&c, &Covector::from_ints(&[1, 1, 0]));
        assert_eq!(null, Subspace::span(3, &[crate::scalar::ints(&[1, -1, 0])]).unwrap());
        assert_eq!(centralizer(&c, &Covector::zero(3)), Subspace::full(3));
    }

    #[test]
    fn f_membership_examples() {
        let p = proj(2);
        let z = Covector::from_ints(&[1, 0]);
        assert!(in_f(&p, &z, &Vector::from_ints(&[0, 1])));
        assert!(in_f_closed_form(&p, &z, &Vector::from_ints(&[0, 1])).unwrap());

        let c = conf(1, 2);
        let z = Covector::from_ints(&[1, 0, 0]);
        assert!(!in_f(&c, &z, &Vector::from_ints(&[0, 1, 1])));
        assert!(in_f(&c, &z, &Vector::zero(3)));

        let z = Covector::from_ints(&[1, 1, 0]);
        let x = Vector::from_ints(&[1, -1, 0]);
        assert!(in_f(&c, &z, &x));
        assert!(in_f_closed_form(&c, &z, &x).unwrap());
        assert_eq!(in_f_closed_form(&c, &Covector::zero(3), &x), Err(Error::ZeroCovector));
    }

    #[test]
    fn t_membership_examples() {
        let c = conf(1, 2);
        let z = Covector::from_ints(&[1, 0, 0]);
        assert_eq!(
            t_description(&c, &z).unwrap(),
            TDescription::Point {
                x: Vector::from_ints(&[2, 0, 0])
            }
        );
        assert!(in_t(&c, &z, &Vector::from_ints(&[2, 0, 0])));

        let z = Covector::from_ints(&[1, 1, 0]);
        let x = Vector::from_ints(&[1, 0, 1]);
        assert!(in_t(&c, &z, &x));
        assert!(in_t_closed_form(&c, &z, &x).unwrap());

        let p = proj(3);
        let z = Covector::from_ints(&[1, 0, 0]);
        assert!(in_t(&p, &z, &Vector::from_ints(&[1, 5, -2])));
        assert!(matches!(t_description(&p, &Covector::zero(3)), Err(Error::ZeroCovector)));
    }

    #[test]
    fn spanning_sets() {
        let p = proj(2);
        let z = Covector::from_ints(&[1, 0]);
        assert_eq!(
            t_spanning_set(&p, &z).unwrap(),
            vec![Vector::from_ints(&[1, 0]), Vector::from_ints(&[1, 1])]
        );
        let c = conf(1, 2);
        let z = Covector::from_ints(&[1, 1, 0]);
        let set = t_spanning_set(&c, &z).unwrap();
        assert_eq!(set.len(), 3);
        for x in &set {
            assert!(in_t(&c, &z, x));
        }
        let vecs: Vec<Vec<Scalar>> = set.iter().map(|x| x.0.clone()).collect();
        assert_eq!(Subspace::span(3, &vecs).unwrap().dim(), 3);
        assert_eq!(t_spanning_set(&c, &Covector::from_ints(&[1, 0, 0])).unwrap().len(), 1);
    }

    #[test]
    fn a_of_rejects_non_t() {
        let c = conf(1, 2);
        let z = Covector::from_ints(&[1, 1, 0]);
        // ZX = 1 but <X,X> = 1: the first equation fails.
        let err = bracket_a(&c, &z, &Vector::from_ints(&[1, 0, 0]));
        assert_eq!(err, Err(Error::NotInT("[[Z,X],X] = -2X")));
        // X = 0 satisfies the first equation trivially but not the second.
        let err = bracket_a(&c, &z, &Vector::zero(3));
        assert_eq!(err, Err(Error::NotInT("[[Z,X],Z] = 2Z")));
    }

    #[test]
    fn spectra_on_gm1() {
        let p = proj(4);
        let z = Covector::from_ints(&[1, 0, 0, 0]);
        let x = Vector::from_ints(&[1, 2, 0, -1]);
        let a = bracket_a(&p, &z, &x).unwrap();
        let r = eigen_gm1(&p, &a).unwrap();
        assert_eq!(r.spectrum(), vec![(int(-2), 1), (int(-1), 3)]);
        assert_eq!(
            r.eigenspace(&int(-2)).unwrap(),
            &Subspace::span(4, std::slice::from_ref(&x.0)).unwrap()
        );

        let c = conf(1, 2);
        let z = Covector::from_ints(&[1, 1, 0]);
        let a = bracket_a(&c, &z, &Vector::from_ints(&[1, 0, 1])).unwrap();
        let r = eigen_gm1(&c, &a).unwrap();
        assert_eq!(r.spectrum(), vec![(int(-2), 1), (int(-1), 1), (int(0), 1)]);
        assert!(r.diagonalizable);
        assert_eq!(r.eigenspace(&int(0)).unwrap(), &centralizer(&c, &z));
    }

    #[test]
    fn scaled_complement() {
        let p = proj(2);
        let z = Covector::from_ints(&[1, 0]);
        assert!(scaled_t_complement(&p, &z, &Vector::from_ints(&[3, 7])).unwrap());
        assert!(!scaled_t_complement(&p, &z, &Vector::from_ints(&[0, 1])).unwrap());
        assert!(!scaled_t_complement(&p, &z, &Vector::zero(2)).unwrap());
    }
}
