//! The homogeneous model `G/P` (projective space or the null quadric), flows
//! `φᵗ = exp(tZ)` acting by left translation, and exact checks of the flow
//! law and fixed-point classification on the model.

use std::fmt;

use serde::Serialize;

use crate::algebra::{bracket, Covector, Grade, GradedAlgebra, Vector};
use crate::isotropy::{self, geometric_type};
use crate::linalg::Mat;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// A matrix in `G`, compared projectively: up to any nonzero scalar for the
/// projective family, up to sign for the conformal one.
#[derive(Clone, Debug, Serialize)]
pub struct GroupElement {
    pub matrix: Mat,
    pub projective: bool,
}

impl GroupElement {
    pub fn identity(alg: &GradedAlgebra) -> Self {
        GroupElement {
            matrix: Mat::identity(alg.ambient_size()),
            projective: !alg.is_conformal(),
        }
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: &self.matrix * &other.matrix,
            projective: self.projective,
        }
    }

    pub fn act(&self, pt: &ModelPoint) -> ModelPoint {
        ModelPoint {
            coords: self.matrix.mul_vec(&pt.coords).expect("ambient size"),
        }
    }

    /// `gᵀSg = S` (conformal) or `det g ≠ 0` (projective).
    pub fn is_in_group(&self, alg: &GradedAlgebra) -> bool {
        match alg.invariant_form() {
            Some(s) => &(&self.matrix.transpose() * s) * &self.matrix == *s,
            None => self.matrix.det().map(|d| !d.is_zero()).unwrap_or(false),
        }
    }

    pub fn equivalent(&self, other: &GroupElement) -> bool {
        let (a, b) = (self.matrix.entries(), other.matrix.entries());
        if a.len() != b.len() {
            return false;
        }
        let Some(k) = a.iter().position(|v| !v.is_zero()) else {
            return b.iter().all(Scalar::is_zero);
        };
        if b[k].is_zero() {
            return false;
        }
        let ratio = &b[k] / &a[k];
        if !self.projective && !(ratio.is_one() || (-&ratio).is_one()) {
            return false;
        }
        a.iter().zip(b).all(|(x, y)| &(x * &ratio) == y)
    }
}

/// A point of `G/P` in homogeneous coordinates. Equality is proportionality.
#[derive(Clone, Debug, Serialize)]
pub struct ModelPoint {
    pub coords: Vec<Scalar>,
}

impl ModelPoint {
    pub fn new(alg: &GradedAlgebra, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != alg.ambient_size() {
            return Err(Error::DimensionMismatch(format!(
                "{} homogeneous coordinates for ambient size {}",
                coords.len(),
                alg.ambient_size()
            )));
        }
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::InvalidParameters("zero homogeneous coordinates".into()));
        }
        if let Some(s) = alg.invariant_form() {
            let sv = s.mul_vec(&coords)?;
            let q: Scalar = coords.iter().zip(&sv).map(|(a, b)| a * b).sum();
            if !q.is_zero() {
                return Err(Error::NonNullVector(format!("vᵀSv = {q}")));
            }
        }
        Ok(ModelPoint { coords })
    }

    /// Coordinates scaled so the first nonzero entry is 1.
    pub fn normalized(&self) -> Vec<Scalar> {
        let lead = self
            .coords
            .iter()
            .find(|v| !v.is_zero())
            .and_then(Scalar::recip)
            .unwrap_or_else(Scalar::one);
        self.coords.iter().map(|v| v * &lead).collect()
    }
}

impl PartialEq for ModelPoint {
    fn eq(&self, other: &Self) -> bool {
        self.coords.len() == other.coords.len() && self.normalized() == other.normalized()
    }
}

impl Eq for ModelPoint {}

impl fmt::Display for ModelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.normalized().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

/// The base point `o = [e₀]`.
pub fn base_point(alg: &GradedAlgebra) -> ModelPoint {
    let mut coords = vec![Scalar::zero(); alg.ambient_size()];
    coords[0] = Scalar::one();
    ModelPoint { coords }
}

/// `I + M + M²/2 + …` for nilpotent `M`.
pub fn exp_nilpotent(alg: &GradedAlgebra, m: &Mat) -> Result<GroupElement> {
    let size = alg.ambient_size();
    if m.rows() != size || !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}×{} matrix in ambient size {size}",
            m.rows(),
            m.cols()
        )));
    }
    let mut sum = Mat::identity(size);
    let mut term = Mat::identity(size);
    for k in 1..=size {
        term = (&term * m).scale(&Scalar::ratio(1, k as i64));
        if term.is_zero() {
            return Ok(GroupElement {
                matrix: sum,
                projective: !alg.is_conformal(),
            });
        }
        sum = &sum + &term;
    }
    Err(Error::NotNilpotent)
}

/// `g·o = o`.
pub fn in_p(g: &GroupElement) -> bool {
    (1..g.matrix.rows()).all(|i| g.matrix.get(i, 0).is_zero())
}

/// `exp(s·X)·o`.
pub fn normal_point(alg: &GradedAlgebra, x: &Vector, s: &Scalar) -> ModelPoint {
    let g = exp_nilpotent(alg, &alg.inj_vector(&x.scale(s))).expect("g₋₁ is nilpotent");
    g.act(&base_point(alg))
}

/// `exp(t·Z)·pt`.
pub fn flow(alg: &GradedAlgebra, z: &Covector, t: &Scalar, pt: &ModelPoint) -> ModelPoint {
    let g = exp_nilpotent(alg, &alg.inj_covector(&z.scale(t))).expect("g₁ is nilpotent");
    g.act(pt)
}

/// One cell of the flow-law check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowLawCheck {
    pub s: Scalar,
    pub t: Scalar,
    pub s_prime: Scalar,
    pub holds: bool,
    /// `st > 0`, where the law is asserted; other cells are reported only.
    pub asserted: bool,
}

fn pole_guard(s: &Scalar, t: &Scalar) -> Result<Scalar> {
    let denom = Scalar::one() + s * t;
    if denom.is_zero() {
        return Err(Error::Pole(format!("1 + s·t = 0 at s = {s}, t = {t}")));
    }
    Ok(denom)
}

/// Checks `exp(−s′X)·exp(tZ)·exp(sX) ∈ P` with `s′ = s/(1+st)`.
pub fn verify_flow_law(
    alg: &GradedAlgebra,
    z: &Covector,
    x: &Vector,
    s: &Scalar,
    t: &Scalar,
) -> Result<FlowLawCheck> {
    isotropy::bracket_a(alg, z, x)?;
    let s_prime = s / &pole_guard(s, t)?;
    let back = exp_nilpotent(alg, &alg.inj_vector(&x.scale(&-&s_prime)))?;
    let fwd = exp_nilpotent(alg, &alg.inj_covector(&z.scale(t)))?;
    let out = exp_nilpotent(alg, &alg.inj_vector(&x.scale(s)))?;
    let g = back.compose(&fwd).compose(&out);
    Ok(FlowLawCheck {
        holds: in_p(&g),
        asserted: (s * t).is_positive(),
        s: s.clone(),
        t: t.clone(),
        s_prime,
    })
}

/// The default grid: `s, t ∈ {±2, ±1, ±1/2, ±1/3}`.
pub fn default_grid() -> Vec<Scalar> {
    let mut g = Vec::new();
    for (p, q) in [(2, 1), (1, 1), (1, 2), (1, 3)] {
        g.push(Scalar::ratio(p, q));
        g.push(Scalar::ratio(-p, q));
    }
    g
}

/// Checks `φᵗ(ξ) = ξ/(1 + t·Zξ)` for null `ξ` (conformal only).
pub fn verify_null_ray_flow(
    alg: &GradedAlgebra,
    z: &Covector,
    xi: &Vector,
    t: &Scalar,
) -> Result<bool> {
    let norm = alg.inner_product_vectors(xi, xi)?;
    if !norm.is_zero() {
        return Err(Error::NonNullVector(format!("⟨ξ,ξ⟩ = {norm}")));
    }
    let zxi = z.apply(xi);
    if zxi.is_negative() {
        return Err(Error::Precondition(format!("Zξ = {zxi} is negative")));
    }
    let denom = pole_guard(t, &zxi)?;
    let image = flow(alg, z, t, &normal_point(alg, xi, &Scalar::one()));
    let expected = normal_point(alg, xi, &denom.recip().expect("nonzero"));
    Ok(image == expected)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PointClass {
    Moving,
    ZeroOfField,
    HigherOrderFixedSameType,
    HigherOrderFixedOtherType,
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `Ad(exp(−sX))·Z = Z − s[X,Z] + s²/2·[X,[X,Z]]`.
pub fn transported_generator(alg: &GradedAlgebra, z: &Covector, x: &Vector, s: &Scalar) -> Mat {
    let zm = alg.inj_covector(z);
    let xm = alg.inj_vector(x);
    let xz = bracket(&xm, &zm);
    let xxz = bracket(&xm, &xz);
    let half_s2 = s * s / Scalar::from_int(2);
    &(&zm - &xz.scale(s)) + &xxz.scale(&half_s2)
}

/// Classifies `exp(sX)·o` for the flow of `Z` by the grading components of
/// the transported generator.
pub fn classify_point(alg: &GradedAlgebra, z: &Covector, x: &Vector, s: &Scalar) -> PointClass {
    let w = transported_generator(alg, z, x, s);
    if !alg.grading_projection(&w, Grade::Neg).is_zero() {
        PointClass::Moving
    } else if !alg.grading_projection(&w, Grade::Zero).is_zero() {
        PointClass::ZeroOfField
    } else if geometric_type(alg, &alg.covector_of(&w)) == geometric_type(alg, z) {
        PointClass::HigherOrderFixedSameType
    } else {
        PointClass::HigherOrderFixedOtherType
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSample {
    pub s: Scalar,
    pub point: ModelPoint,
    pub class: PointClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolationWitness {
    pub isolated: bool,
    /// First basis vector of `C(Z)` when it is nonzero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vector>,
    pub curve: Vec<CurveSample>,
    /// Every curve sample is a higher order fixed point of the same type.
    pub curve_confirmed: bool,
}

pub fn curve_parameters() -> Vec<Scalar> {
    [(1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1), (-2, 1)]
        .into_iter()
        .map(|(p, q)| Scalar::ratio(p, q))
        .collect()
}

/// `dim C(Z) = 0`, or else a curve of same-type fixed points through `o`.
pub fn smoothly_isolated_witness(alg: &GradedAlgebra, z: &Covector) -> Result<IsolationWitness> {
    if z.is_zero() {
        return Err(Error::ZeroCovector);
    }
    let c = isotropy::centralizer(alg, z);
    if c.is_zero() {
        return Ok(IsolationWitness {
            isolated: true,
            direction: None,
            curve: Vec::new(),
            curve_confirmed: false,
        });
    }
    let dir = Vector(c.basis().column(0));
    let curve: Vec<CurveSample> = curve_parameters()
        .into_iter()
        .map(|s| CurveSample {
            point: normal_point(alg, &dir, &s),
            class: classify_point(alg, z, &dir, &s),
            s,
        })
        .collect();
    let curve_confirmed = curve
        .iter()
        .all(|c| c.class == PointClass::HigherOrderFixedSameType);
    Ok(IsolationWitness {
        isolated: false,
        direction: Some(dir),
        curve,
        curve_confirmed,
    })
}

/// Chart preimage `Y` with `normal_point(Y, 1) = pt`, or `None` off the
/// chart (first homogeneous coordinate zero).
pub fn chart_coordinates(alg: &GradedAlgebra, pt: &ModelPoint) -> Option<Vector> {
    let inv = pt.coords[0].recip()?;
    Some(Vector(
        (1..=alg.n()).map(|i| &pt.coords[i] * &inv).collect(),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct TrajectorySample {
    pub t: Scalar,
    /// `None` when the image point left the chart.
    pub y: Option<Vector>,
}

/// Chart coordinates of `φᵗ(exp(sX)·o)` at each sampled `t`.
pub fn chart_trajectory(
    alg: &GradedAlgebra,
    z: &Covector,
    x: &Vector,
    s: &Scalar,
    ts: &[Scalar],
) -> Vec<TrajectorySample> {
    let start = normal_point(alg, x, s);
    ts.iter()
        .map(|t| TrajectorySample {
            t: t.clone(),
            y: chart_coordinates(alg, &flow(alg, z, t, &start)),
        })
        .collect()
}
