//! Exact characteristic polynomials, rational spectra and eigenspace
//! decompositions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::mat::Mat;
use super::subspace::{eigenspace, Subspace};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Largest absolute coefficient we are willing to factor by trial division.
const MAX_FACTOR: u64 = 1 << 42;

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Scalar>);

impl Poly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    fn trim(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(Scalar::is_zero) {
            self.0.pop();
        }
        self
    }

    fn mul_linear(&self, root: &Scalar) -> Poly {
        // (x − root)·self
        let mut out = vec![Scalar::zero(); self.0.len() + 1];
        for (i, c) in self.0.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        Poly(out)
    }

    /// Divides by `(x − root)`, returning `None` if there is a remainder.
    fn deflate(&self, root: &Scalar) -> Option<Poly> {
        let n = self.degree();
        if n == 0 {
            return None;
        }
        let mut q = vec![Scalar::zero(); n];
        let mut carry = Scalar::zero();
        for i in (0..=n).rev() {
            let v = &self.0[i] + &carry * root;
            if i == 0 {
                return v.is_zero().then_some(Poly(q));
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly(vec![Scalar::zero()]);
        }
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_int(i as i64))
                .collect(),
        )
    }

    /// Quotient and remainder of division by a nonzero `d`.
    fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let d = d.clone().trim();
        let lead_inv = d.0.last().and_then(Scalar::recip).expect("nonzero divisor");
        let mut rem = self.clone().trim();
        let dd = d.degree();
        if rem.degree() < dd || rem.is_zero() {
            return (Poly(vec![Scalar::zero()]), rem);
        }
        let mut quot = vec![Scalar::zero(); rem.degree() - dd + 1];
        while !rem.is_zero() && rem.degree() >= dd {
            let shift = rem.degree() - dd;
            let c = rem.0.last().expect("nonempty") * &lead_inv;
            for (i, dc) in d.0.iter().enumerate() {
                rem.0[i + shift] -= &c * dc;
            }
            quot[shift] = c;
            rem.0.pop();
            rem = rem.trim();
        }
        (Poly(quot).trim(), rem)
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone().trim(), other.clone().trim());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// The product of the distinct irreducible factors.
    fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }
}

/// `det(xI − M)` via reduction to upper Hessenberg form.
pub fn characteristic_polynomial(m: &Mat) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("characteristic polynomial of non-square matrix".into()));
    }
    let n = m.rows();
    let mut h = m.clone();
    for c in 0..n.saturating_sub(2) {
        let r = c + 1;
        let Some(p) = (r..n).find(|&i| !h.get(i, c).is_zero()) else {
            continue;
        };
        h.swap_rows(p, r);
        h.swap_cols(p, r);
        let pivot = h.get(r, c).clone();
        for i in r + 1..n {
            let u = h.get(i, c) / &pivot;
            if u.is_zero() {
                continue;
            }
            // row_i -= u·row_r, then col_r += u·col_i keeps the similarity.
            for j in 0..n {
                let delta = &u * h.get(r, j);
                if !delta.is_zero() {
                    h[(i, j)] -= delta;
                }
            }
            for k in 0..n {
                let delta = &u * h.get(k, i);
                if !delta.is_zero() {
                    h[(k, r)] += delta;
                }
            }
        }
    }
    // p_k is the characteristic polynomial of the leading k×k block.
    let mut polys: Vec<Poly> = vec![Poly(vec![Scalar::one()])];
    for k in 0..n {
        let mut next = polys[k].mul_linear(h.get(k, k));
        let mut t = Scalar::one();
        for i in 1..=k {
            t *= h.get(k - i + 1, k - i);
            if t.is_zero() {
                break;
            }
            let coeff = h.get(k - i, k) * &t;
            if coeff.is_zero() {
                continue;
            }
            for (d, c) in polys[k - i].0.iter().enumerate() {
                next.0[d] -= &coeff * c;
            }
        }
        polys.push(next);
    }
    Ok(polys.pop().expect("nonempty").trim())
}

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let small = n
        .to_u64()
        .filter(|&v| v <= MAX_FACTOR)
        .ok_or_else(|| Error::CoefficientTooLarge(n.to_string()))?;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = small;
    let mut d = 2u64;
    while d * d <= rest {
        let mut e = 0;
        while rest % d == 0 {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
        d += 1;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    let mut divisors = vec![1u64];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for &dv in &divisors {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(dv * pk);
                pk *= p;
            }
        }
        divisors = next;
    }
    divisors.sort_unstable();
    Ok(divisors.into_iter().map(BigInt::from).collect())
}

/// All rational roots of `poly` with multiplicities, by exact candidate
/// search over divisors of the extreme coefficients.
pub fn rational_roots(poly: &Poly) -> Result<Vec<(Scalar, usize)>> {
    let mut roots = Vec::new();
    let mut p = poly.clone().trim();
    if p.0.iter().all(Scalar::is_zero) {
        return Err(Error::Precondition("zero polynomial".into()));
    }
    let zero_mult = p.0.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        p = Poly(p.0[zero_mult..].to_vec());
        roots.push((Scalar::zero(), zero_mult));
    }
    if p.degree() == 0 {
        return Ok(roots);
    }
    // Candidates come from the squarefree part, whose extreme coefficients
    // stay small even when roots are highly repeated.
    let sf = p.squarefree_part();
    // Primitive integer polynomial with the same roots.
    let lcm = sf
        .0
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
    let ints: Vec<BigInt> = sf
        .0
        .iter()
        .map(|c| (c * &Scalar::from(lcm.clone())).numer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
    let lead = ints.last().expect("nonzero degree");
    let constant = &ints[0];
    let numerators = positive_divisors(constant)?;
    let denominators = positive_divisors(lead)?;
    let mut candidates: Vec<Scalar> = Vec::new();
    for num in &numerators {
        for den in &denominators {
            for sign in [1, -1] {
                let c = Scalar::from_big(num * sign, den.clone())?;
                if !candidates.contains(&c) {
                    candidates.push(c);
                }
            }
        }
    }
    candidates.sort();
    for c in candidates {
        let mut mult = 0;
        while let Some(q) = p.deflate(&c) {
            p = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((c, mult));
        }
        if p.degree() == 0 {
            break;
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

/// Rational part of the spectrum of a square matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalSpectrum {
    /// Eigenvalues in increasing order with algebraic multiplicities.
    pub eigenvalues: Vec<(Scalar, usize)>,
    pub degree: usize,
}

impl RationalSpectrum {
    /// True when every root of the characteristic polynomial is rational.
    pub fn is_complete(&self) -> bool {
        self.eigenvalues.iter().map(|(_, m)| m).sum::<usize>() == self.degree
    }

    pub fn require_complete(&self) -> Result<&Self> {
        if self.is_complete() {
            Ok(self)
        } else {
            Err(Error::NonRationalSpectrum {
                found: self.eigenvalues.iter().map(|(_, m)| m).sum(),
                degree: self.degree,
            })
        }
    }
}

pub fn rational_eigenvalues(m: &Mat) -> Result<RationalSpectrum> {
    let poly = characteristic_polynomial(m)?;
    let degree = m.rows();
    if degree == 0 {
        return Ok(RationalSpectrum {
            eigenvalues: Vec::new(),
            degree,
        });
    }
    Ok(RationalSpectrum {
        eigenvalues: rational_roots(&poly)?,
        degree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenPair {
    pub value: Scalar,
    pub multiplicity: usize,
    pub eigenspace: Subspace,
}

/// Exact eigen-decomposition with a diagonalizability certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenReport {
    pub dim: usize,
    pub eigen: Vec<EigenPair>,
    pub rational_spectrum: bool,
    /// Eigenspace dimensions sum to `dim`.
    pub diagonalizable: bool,
}

impl EigenReport {
    pub fn spectrum(&self) -> Vec<(Scalar, usize)> {
        self.eigen
            .iter()
            .map(|e| (e.value.clone(), e.multiplicity))
            .collect()
    }

    pub fn values(&self) -> Vec<Scalar> {
        self.eigen.iter().map(|e| e.value.clone()).collect()
    }

    pub fn eigenspace(&self, lambda: &Scalar) -> Option<&Subspace> {
        self.eigen
            .iter()
            .find(|e| &e.value == lambda)
            .map(|e| &e.eigenspace)
    }

    /// Eigenspace for `lambda`, the zero subspace if `lambda` is not an
    /// eigenvalue.
    pub fn eigenspace_or_zero(&self, lambda: &Scalar) -> Subspace {
        self.eigenspace(lambda)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.dim))
    }

    pub fn require_diagonalizable(&self) -> Result<&Self> {
        if !self.rational_spectrum {
            return Err(Error::NonRationalSpectrum {
                found: self.eigen.iter().map(|e| e.multiplicity).sum(),
                degree: self.dim,
            });
        }
        if !self.diagonalizable {
            return Err(Error::NotDiagonalizable);
        }
        Ok(self)
    }

    /// Columns are eigenbases, grouped by increasing eigenvalue.
    pub fn change_of_basis(&self) -> Mat {
        let cols: Vec<Vec<Scalar>> = self
            .eigen
            .iter()
            .flat_map(|e| e.eigenspace.basis_vectors())
            .collect();
        Mat::from_columns(self.dim, &cols)
    }
}

/// Full decomposition of `m`: rational spectrum, eigenspaces and the
/// diagonalizability certificate `Σ dim eigenspace = dim`.
pub fn eigen_decompose(m: &Mat) -> Result<EigenReport> {
    let spectrum = rational_eigenvalues(m)?;
    let mut eigen = Vec::with_capacity(spectrum.eigenvalues.len());
    for (value, multiplicity) in &spectrum.eigenvalues {
        eigen.push(EigenPair {
            value: value.clone(),
            multiplicity: *multiplicity,
            eigenspace: eigenspace(m, value)?,
        });
    }
    let geometric: usize = eigen.iter().map(|e| e.eigenspace.dim()).sum();
    Ok(EigenReport {
        dim: m.rows(),
        rational_spectrum: spectrum.is_complete(),
        diagonalizable: spectrum.is_complete() && geometric == m.rows(),
        eigen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int, ints};

    fn det_oracle(m: &Mat, x: &Scalar) -> Scalar {
        (&Mat::identity(m.rows()).scale(x) - m).det().unwrap()
    }

    #[test]
    fn charpoly_matches_determinant_oracle() {
        let m = Mat::from_fn(5, 5, |i, j| frac((i * 3 + j * 7 % 5) as i64 - 4, (j + 1) as i64));
        let p = characteristic_polynomial(&m).unwrap();
        assert_eq!(p.degree(), 5);
        for x in -3..=3 {
            assert_eq!(p.eval(&int(x)), det_oracle(&m, &int(x)));
        }
        assert_eq!(p.eval(&frac(1, 3)), det_oracle(&m, &frac(1, 3)));
    }

    #[test]
    fn diagonal_spectrum() {
        let s = rational_eigenvalues(&Mat::diag(&ints(&[-2, -1, 0]))).unwrap();
        assert_eq!(
            s.eigenvalues,
            vec![(int(-2), 1), (int(-1), 1), (int(0), 1)]
        );
        assert!(s.is_complete());
    }

    #[test]
    fn jordan_block_not_diagonalizable() {
        let j = Mat::from_ints(&[&[0, 1], &[0, 0]]);
        let r = eigen_decompose(&j).unwrap();
        assert_eq!(r.spectrum(), vec![(int(0), 2)]);
        assert!(!r.diagonalizable);
        assert_eq!(r.require_diagonalizable(), Err(Error::NotDiagonalizable));
    }

    #[test]
    fn irrational_spectrum_reported() {
        let m = Mat::from_ints(&[&[0, 2], &[1, 0]]);
        let s = rational_eigenvalues(&m).unwrap();
        assert!(s.eigenvalues.is_empty());
        assert!(!s.is_complete());
        assert!(matches!(
            s.require_complete(),
            Err(Error::NonRationalSpectrum { found: 0, degree: 2 })
        ));
    }

    #[test]
    fn repeated_roots_with_huge_constant() {
        // (x − 3)^30 (x + 2)^12: the constant term is far past the
        // trial-division cap but the squarefree part is not.
        let mut p = Poly(vec![int(1)]);
        for _ in 0..30 {
            p = p.mul_linear(&int(3));
        }
        for _ in 0..12 {
            p = p.mul_linear(&int(-2));
        }
        assert_eq!(rational_roots(&p).unwrap(), vec![(int(-2), 12), (int(3), 30)]);
    }

    #[test]
    fn fractional_roots() {
        // (2x − 1)(3x + 2)²
        let p = Poly(vec![int(-4), int(-4), int(15), int(18)]);
        let roots = rational_roots(&p).unwrap();
        let expanded = Poly(vec![int(1)])
            .mul_linear(&frac(1, 2))
            .mul_linear(&frac(-2, 3))
            .mul_linear(&frac(-2, 3));
        assert_eq!(roots.len(), 2);
        for x in -2..3 {
            assert_eq!(p.eval(&int(x)), expanded.eval(&int(x)) * int(18));
        }
        assert_eq!(roots, vec![(frac(-2, 3), 2), (frac(1, 2), 1)]);
    }

    #[test]
    fn diagonalizable_reconstructs_identity() {
        let m = Mat::from_ints(&[&[2, 1, 0], &[0, 3, 0], &[0, 0, 2]]);
        let r = eigen_decompose(&m).unwrap();
        assert!(r.diagonalizable);
        let p = r.change_of_basis();
        let inv = p.inverse().unwrap();
        let d = &(&inv * &m) * &p;
        assert!(d.is_diagonal());
        assert_eq!(&p * &inv, Mat::identity(3));
    }
}
