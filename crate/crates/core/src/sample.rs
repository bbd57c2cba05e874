//! Seeded random samples of covectors by geometric type, elements of
//! `T(Z)`, `F(Z) ∖ C(Z)` and null vectors. All samples are exact rationals
//! with small numerators and denominators, so a seed fixes them everywhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraFamily, Covector, GradedAlgebra, Vector};
use crate::isotropy::{self, GeometricType, TDescription};
use crate::linalg::{kernel, Mat};
use crate::scalar::Scalar;
use crate::{Error, Result};

const MAX_TRIES: usize = 10_000;

/// The representative of each type used when no `Z` is supplied.
pub fn canonical_z(alg: &GradedAlgebra, gtype: GeometricType) -> Result<Covector> {
    let n = alg.n();
    let p = match alg.family() {
        AlgebraFamily::Conformal { p, .. } => p,
        AlgebraFamily::Projective { .. } => 0,
    };
    let z = match (alg.is_conformal(), gtype) {
        (false, GeometricType::ProjectiveNonzero) => Covector::basis(n, 0),
        (false, GeometricType::ProjectiveZero) | (true, GeometricType::ConformalZero) => {
            Covector::zero(n)
        }
        (true, GeometricType::ConformalPositive) if p >= 1 => Covector::basis(n, 0),
        (true, GeometricType::ConformalNegative) if p < n => Covector::basis(n, n - 1),
        (true, GeometricType::ConformalNull) if p >= 1 && p < n => {
            Covector::basis(n, 0).add(&Covector::basis(n, p))
        }
        _ => {
            return Err(Error::InvalidParameters(format!(
                "no {gtype} covector in {}",
                alg.family()
            )))
        }
    };
    Ok(z)
}

/// The nonzero geometric types occurring in a family.
pub fn nonzero_types(alg: &GradedAlgebra) -> Vec<GeometricType> {
    match alg.family() {
        AlgebraFamily::Projective { .. } => vec![GeometricType::ProjectiveNonzero],
        AlgebraFamily::Conformal { p: 0, .. } => vec![GeometricType::ConformalNegative],
        AlgebraFamily::Conformal { .. } => vec![
            GeometricType::ConformalPositive,
            GeometricType::ConformalNull,
            GeometricType::ConformalNegative,
        ],
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `a/b` with `a ∈ [−4, 4]`, `b ∈ [1, 3]`.
    pub fn rational(&mut self) -> Scalar {
        let num = self.rng.gen_range(-4..=4);
        let den = self.rng.gen_range(1..=3);
        Scalar::ratio(num, den)
    }

    /// Uniform in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn nonzero_rational(&mut self) -> Scalar {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn scalars(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.rational()).collect()
    }

    pub fn vector(&mut self, n: usize) -> Vector {
        Vector(self.scalars(n))
    }

    pub fn covector(&mut self, n: usize) -> Covector {
        Covector(self.scalars(n))
    }

    pub fn nonzero_vector(&mut self, n: usize) -> Vector {
        loop {
            let v = self.vector(n);
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// A rational point on the unit sphere `S^{k−1}` by inverse
    /// stereographic projection.
    pub fn unit_vector(&mut self, k: usize) -> Vec<Scalar> {
        let sign = if self.coin() { 1 } else { -1 };
        if k == 1 {
            return vec![Scalar::from_int(sign)];
        }
        let y = self.scalars(k - 1);
        let r2: Scalar = y.iter().map(|v| v * v).sum();
        let denom = (&r2 + &Scalar::one()).recip().expect("positive");
        let mut out: Vec<Scalar> = y
            .iter()
            .map(|v| v * &Scalar::from_int(2) * &denom)
            .collect();
        out.push((r2 - Scalar::one()) * denom * Scalar::from_int(sign));
        out
    }

    /// A nonzero null vector `(r·u, r·w)` in signature `(p, q)`.
    fn null_coords(&mut self, p: usize, q: usize) -> Vec<Scalar> {
        let r = self.nonzero_rational();
        let mut out = self.unit_vector(p);
        out.extend(self.unit_vector(q));
        out.iter().map(|v| v * &r).collect()
    }

    /// A random covector of the given type.
    pub fn z_of_type(&mut self, alg: &GradedAlgebra, gtype: GeometricType) -> Result<Covector> {
        let n = alg.n();
        if gtype.is_zero() {
            return canonical_z(alg, gtype);
        }
        if gtype == GeometricType::ConformalNull {
            let AlgebraFamily::Conformal { p, q } = alg.family() else {
                unreachable!()
            };
            canonical_z(alg, gtype)?;
            return Ok(Covector(self.null_coords(p, q)));
        }
        canonical_z(alg, gtype)?;
        for _ in 0..MAX_TRIES {
            let z = self.covector(n);
            if isotropy::geometric_type(alg, &z) == gtype {
                return Ok(z);
            }
        }
        Err(Error::Precondition(format!("no {gtype} sample found")))
    }

    /// A random element of `T(Z)`.
    pub fn x_in_t(&mut self, alg: &GradedAlgebra, z: &Covector) -> Result<Vector> {
        match isotropy::t_description(alg, z)? {
            TDescription::Point { x } => Ok(x),
            desc => {
                let w = self.affine_point(z)?;
                let x = match desc {
                    TDescription::QuadricSlice { .. } => {
                        isotropy::project_to_quadric_slice(alg, z, &w)?
                    }
                    _ => w,
                };
                debug_assert!(isotropy::in_t(alg, z, &x));
                Ok(x)
            }
        }
    }

    /// Random `W` with `ZW = 1`.
    fn affine_point(&mut self, z: &Covector) -> Result<Vector> {
        if z.is_zero() {
            return Err(Error::ZeroCovector);
        }
        loop {
            let v = self.vector(z.len());
            if let Some(inv) = z.apply(&v).recip() {
                return Ok(v.scale(&inv));
            }
        }
    }

    /// A random nonzero element of `C(Z)`, if `C(Z) ≠ 0`.
    pub fn x_in_c(&mut self, alg: &GradedAlgebra, z: &Covector) -> Option<Vector> {
        let c = isotropy::centralizer(alg, z);
        if c.is_zero() {
            return None;
        }
        loop {
            let coeffs = self.scalars(c.dim());
            let v = c.basis().mul_vec(&coeffs).expect("dims");
            if v.iter().any(|x| !x.is_zero()) {
                return Some(Vector(v));
            }
        }
    }

    /// An element of `F(Z) ∖ C(Z)`, or `None` when no rational one is found.
    pub fn x_in_f_minus_c(&mut self, alg: &GradedAlgebra, z: &Covector) -> Option<Vector> {
        let x = f_minus_c_point(alg, z)?;
        // Randomize within the cone by a nonzero scale and, for the
        // conformal case, a shift along C(Z).
        let mut x = x.scale(&self.nonzero_rational());
        if let Some(c) = self.x_in_c(alg, z) {
            x = x.add(&c.scale(&self.rational()));
        }
        debug_assert!(isotropy::in_f(alg, z, &x));
        Some(x)
    }

    /// A null `ξ` with `Zξ > 0` (conformal, `Z ≠ 0`).
    pub fn null_vector_positive_on(&mut self, alg: &GradedAlgebra, z: &Covector) -> Result<Vector> {
        let AlgebraFamily::Conformal { p, q } = alg.family() else {
            return Err(Error::Unsupported("null vectors need a conformal family".into()));
        };
        if p == 0 {
            return Err(Error::InvalidParameters("definite signature has no null vectors".into()));
        }
        for _ in 0..MAX_TRIES {
            let xi = Vector(self.null_coords(p, q));
            let zxi = z.apply(&xi);
            if zxi.is_positive() {
                return Ok(xi);
            }
            if zxi.is_negative() {
                return Ok(xi.scale(&Scalar::from_int(-1)));
            }
        }
        Err(Error::Precondition("no null vector with Zξ > 0 found".into()))
    }

    /// `(Z, X, Y)` for the closed-form bracket comparison.
    pub fn triple(&mut self, n: usize) -> (Covector, Vector, Vector) {
        (self.covector(n), self.vector(n), self.vector(n))
    }
}

/// Deterministic search for `X ∈ F(Z) ∖ C(Z)`.
///
/// Projective: `F(Z) = ker Z` and `C(Z) = 0`. Conformal: `F(Z)` is the set of
/// null vectors in `ker Z`, so this looks for a rational isotropic vector of
/// the form restricted to `ker Z` outside its radical.
pub fn f_minus_c_point(alg: &GradedAlgebra, z: &Covector) -> Option<Vector> {
    if z.is_zero() {
        return None;
    }
    let n = alg.n();
    let row = Mat::from_rows(vec![z.0.clone()]).expect("one row");
    let ker: Vec<Vector> = kernel(&row).basis_vectors().into_iter().map(Vector).collect();
    if !alg.is_conformal() {
        return ker.into_iter().next();
    }
    let c = isotropy::centralizer(alg, z);
    let ip = |a: &Vector, b: &Vector| alg.inner_product_vectors(a, b).expect("conformal");
    let ok = |x: &Vector| !x.is_zero() && ip(x, x).is_zero() && !c.contains(&x.0);

    // Orthogonalize ker Z; isotropic leftovers are collected separately.
    let mut pending = ker;
    let mut diag: Vec<(Vector, Scalar)> = Vec::new();
    loop {
        if let Some(idx) = pending.iter().position(|v| !ip(v, v).is_zero()) {
            let b = pending.swap_remove(idx);
            let bb = ip(&b, &b);
            pending = pending
                .into_iter()
                .map(|v| v.sub(&b.scale(&(ip(&v, &b) / &bb))))
                .filter(|v| !v.is_zero())
                .collect();
            diag.push((b, bb));
            continue;
        }
        // Everything left is isotropic.
        if let Some(v) = pending.iter().find(|v| ok(v)) {
            return Some(v.clone());
        }
        let pair = (0..pending.len())
            .flat_map(|i| (i + 1..pending.len()).map(move |j| (i, j)))
            .find(|&(i, j)| !ip(&pending[i], &pending[j]).is_zero());
        match pair {
            Some((i, j)) => pending[i] = pending[i].add(&pending[j]),
            None => break,
        }
    }
    debug_assert!(diag.len() <= n);

    // a·b_i + b·b_j with a² d_i + b² d_j = 0.
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let (bi, di) = &diag[i];
            let (bj, dj) = &diag[j];
            if let Some(r) = (-(di / dj)).sqrt_exact() {
                let x = bi.add(&bj.scale(&r));
                if ok(&x) {
                    return Some(x);
                }
            }
        }
    }
    // Small integer points on ternary subforms.
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            for k in j + 1..diag.len() {
                let (bi, di) = &diag[i];
                let (bj, dj) = &diag[j];
                let (bk, dk) = &diag[k];
                for a in 1..=12i64 {
                    for b in 1..=12i64 {
                        let rest = -(di * &Scalar::from_int(a * a) + dj * &Scalar::from_int(b * b));
                        if let Some(cc) = (rest / dk).sqrt_exact() {
                            let x = bi
                                .scale(&Scalar::from_int(a))
                                .add(&bj.scale(&Scalar::from_int(b)))
                                .add(&bk.scale(&cc));
                            if ok(&x) {
                                return Some(x);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build;

    fn conf(p: usize, q: usize) -> GradedAlgebra {
        build(AlgebraFamily::Conformal { p, q }).unwrap()
    }

    #[test]
    fn canonical_types() {
        let c = conf(2, 2);
        for t in nonzero_types(&c) {
            let z = canonical_z(&c, t).unwrap();
            assert_eq!(isotropy::geometric_type(&c, &z), t);
        }
        assert_eq!(canonical_z(&c, GeometricType::ConformalNull).unwrap(), Covector::from_ints(&[1, 0, 1, 0]));
        let p = build(AlgebraFamily::Projective { n: 3 }).unwrap();
        assert!(canonical_z(&p, GeometricType::ConformalNull).is_err());
    }

    #[test]
    fn random_types_and_t() {
        let mut s = Sampler::new(3);
        for (p, q) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
            let c = conf(p, q);
            for t in nonzero_types(&c) {
                for _ in 0..5 {
                    let z = s.z_of_type(&c, t).unwrap();
                    assert_eq!(isotropy::geometric_type(&c, &z), t);
                    let x = s.x_in_t(&c, &z).unwrap();
                    assert!(isotropy::in_t(&c, &z, &x));
                }
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let c = conf(1, 3);
        let a: Vec<_> = {
            let mut s = Sampler::new(7);
            (0..5).map(|_| s.z_of_type(&c, GeometricType::ConformalNull).unwrap()).collect()
        };
        let b: Vec<_> = {
            let mut s = Sampler::new(7);
            (0..5).map(|_| s.z_of_type(&c, GeometricType::ConformalNull).unwrap()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn f_minus_c_on_representatives() {
        let mut s = Sampler::new(1);
        let c = conf(2, 2);
        for t in nonzero_types(&c) {
            let z = canonical_z(&c, t).unwrap();
            let x = s.x_in_f_minus_c(&c, &z).expect("exists for p = 2");
            assert!(isotropy::in_f(&c, &z, &x));
            assert!(!isotropy::centralizer(&c, &z).contains(&x.0));
        }
        // p = 1, null Z: F(Z) = C(Z).
        let c = conf(1, 3);
        let z = canonical_z(&c, GeometricType::ConformalNull).unwrap();
        assert!(f_minus_c_point(&c, &z).is_none());
        // p = 1, positive Z: ker Z is negative definite.
        let z = canonical_z(&c, GeometricType::ConformalPositive).unwrap();
        assert!(f_minus_c_point(&c, &z).is_none());
        let z = canonical_z(&c, GeometricType::ConformalNegative).unwrap();
        assert!(f_minus_c_point(&c, &z).is_some());
    }

    #[test]
    fn null_vectors() {
        let mut s = Sampler::new(11);
        let c = conf(1, 2);
        let z = Covector::from_ints(&[1, 1, 0]);
        for _ in 0..10 {
            let xi = s.null_vector_positive_on(&c, &z).unwrap();
            assert!(c.inner_product_vectors(&xi, &xi).unwrap().is_zero());
            assert!(z.apply(&xi).is_positive());
        }
    }
}
