use ahs_core::algebra::{bracket, build, closed_form_disagreement, AlgebraFamily, Covector, Grade, Vector};
use ahs_core::curvature::{build_module, module_spectrum, weight_spaces, ModuleShape};
use ahs_core::flow::{classify_point, exp_nilpotent, flow, normal_point, verify_flow_law, ModelPoint};
use ahs_core::isotropy::{self, GeometricType};
use ahs_core::linalg::{eigen_decompose, rational_eigenvalues, Mat, Subspace};
use ahs_core::sample::{nonzero_types, Sampler};
use ahs_core::scalar::Scalar;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn vec_of(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(rational(), n)
}

fn family() -> impl Strategy<Value = AlgebraFamily> {
    prop_oneof![
        (2usize..=4).prop_map(|n| AlgebraFamily::Projective { n }),
        (1usize..=2, 2usize..=3).prop_map(|(p, q)| AlgebraFamily::Conformal { p, q }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_closed_forms(f in family(), seed in any::<u64>()) {
        let alg = build(f).unwrap();
        let mut s = Sampler::new(seed);
        let triples: Vec<_> = (0..4).map(|_| s.triple(alg.n())).collect();
        prop_assert_eq!(closed_form_disagreement(&alg, &triples).unwrap(), None);
    }

    #[test]
    fn grading_is_respected(f in family(), seed in any::<u64>()) {
        let alg = build(f).unwrap();
        let mut s = Sampler::new(seed);
        let random = |s: &mut Sampler, g: Grade| alg.from_coords(&s.scalars(alg.dim(g)), g);
        for (gi, gj) in [(Grade::Neg, Grade::Zero), (Grade::Zero, Grade::Pos), (Grade::Neg, Grade::Pos), (Grade::Zero, Grade::Zero)] {
            let b = bracket(&random(&mut s, gi), &random(&mut s, gj));
            let k = Grade::from_value(gi.value() + gj.value()).unwrap();
            prop_assert!(alg.in_grade(&b, k));
        }
        for g in [Grade::Neg, Grade::Pos] {
            prop_assert!(bracket(&random(&mut s, g), &random(&mut s, g)).is_zero());
        }
    }

    #[test]
    fn f_and_t_oracles_agree(f in family(), seed in any::<u64>()) {
        let alg = build(f).unwrap();
        let mut s = Sampler::new(seed);
        for t in nonzero_types(&alg) {
            let z = s.z_of_type(&alg, t).unwrap();
            let candidates = [s.vector(alg.n()), s.x_in_t(&alg, &z).unwrap()];
            for x in candidates {
                prop_assert_eq!(isotropy::in_f(&alg, &z, &x), isotropy::in_f_closed_form(&alg, &z, &x).unwrap());
                prop_assert_eq!(isotropy::in_t(&alg, &z, &x), isotropy::in_t_closed_form(&alg, &z, &x).unwrap());
            }
            if let Some(x) = s.x_in_f_minus_c(&alg, &z) {
                prop_assert!(isotropy::in_f(&alg, &z, &x));
                prop_assert!(isotropy::in_f_closed_form(&alg, &z, &x).unwrap());
            }
        }
    }

    #[test]
    fn subspace_dimension_formula(a in prop::collection::vec(vec_of(5), 0..4), b in prop::collection::vec(vec_of(5), 0..4)) {
        let u = Subspace::span(5, &a).unwrap();
        let v = Subspace::span(5, &b).unwrap();
        let cap = u.intersect(&v).unwrap();
        let sum = u.sum(&v).unwrap();
        prop_assert_eq!(cap.dim() + sum.dim(), u.dim() + v.dim());
        prop_assert!(cap.is_subspace_of(&u) && cap.is_subspace_of(&v));
        prop_assert_eq!(u.intersect(&v).unwrap(), v.intersect(&u).unwrap());
    }

    #[test]
    fn similar_triangular_spectrum(d in vec_of(4), upper in vec_of(6), seed in any::<u64>()) {
        // P T P⁻¹ with T upper triangular has the diagonal of T as spectrum.
        let mut t = Mat::diag(&d);
        let mut k = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                t[(i, j)] = upper[k].clone();
                k += 1;
            }
        }
        let mut s = Sampler::new(seed);
        let p = loop {
            let m = Mat::from_fn(4, 4, |_, _| s.rational());
            if m.det().unwrap() != Scalar::zero() { break m; }
        };
        let m = &(&p * &t) * &p.inverse().unwrap();
        let spec = rational_eigenvalues(&m).unwrap();
        prop_assert!(spec.is_complete());
        let mut expected: Vec<(Scalar, usize)> = Vec::new();
        let mut sorted = d.clone();
        sorted.sort();
        for v in sorted {
            match expected.last_mut() {
                Some((w, c)) if *w == v => *c += 1,
                _ => expected.push((v, 1)),
            }
        }
        prop_assert_eq!(spec.eigenvalues, expected);
    }

    #[test]
    fn diagonalizable_reconstructs(d in vec_of(4), seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let p = loop {
            let m = Mat::from_fn(4, 4, |_, _| s.rational());
            if m.det().unwrap() != Scalar::zero() { break m; }
        };
        let m = &(&p * &Mat::diag(&d)) * &p.inverse().unwrap();
        let report = eigen_decompose(&m).unwrap();
        prop_assert!(report.diagonalizable);
        let q = report.change_of_basis();
        let dm = &(&q.inverse().unwrap() * &m) * &q;
        prop_assert!(dm.is_diagonal());
    }

    #[test]
    fn one_parameter_groups(f in family(), s in rational(), t in rational(), seed in any::<u64>()) {
        let alg = build(f).unwrap();
        let mut smp = Sampler::new(seed);
        for m in [alg.inj_vector(&smp.vector(alg.n())), alg.inj_covector(&smp.covector(alg.n()))] {
            let a = exp_nilpotent(&alg, &m.scale(&s)).unwrap();
            let b = exp_nilpotent(&alg, &m.scale(&t)).unwrap();
            let ab = exp_nilpotent(&alg, &m.scale(&(&s + &t))).unwrap();
            prop_assert_eq!(a.compose(&b).matrix, ab.matrix);
            prop_assert!(a.is_in_group(&alg));
        }
    }

    #[test]
    fn conformal_flows_preserve_quadric(seed in any::<u64>(), t in rational(), s in rational()) {
        let alg = build(AlgebraFamily::Conformal { p: 2, q: 3 }).unwrap();
        let form = alg.invariant_form().unwrap().clone();
        let mut smp = Sampler::new(seed);
        let z = smp.covector(5);
        let pt = normal_point(&alg, &smp.vector(5), &s);
        let image = flow(&alg, &z, &t, &pt);
        let q: Scalar = image.coords.iter().zip(form.mul_vec(&image.coords).unwrap()).map(|(a, b)| a * &b).sum();
        prop_assert!(q == Scalar::zero());
        prop_assert!(ModelPoint::new(&alg, image.coords.clone()).is_ok());
    }

    #[test]
    fn flow_law_on_model(f in family(), seed in any::<u64>(), s in rational(), t in rational()) {
        prop_assume!(Scalar::one() + &s * &t != Scalar::zero());
        let alg = build(f).unwrap();
        let mut smp = Sampler::new(seed);
        for ty in nonzero_types(&alg) {
            let z = smp.z_of_type(&alg, ty).unwrap();
            let x = smp.x_in_t(&alg, &z).unwrap();
            // Holds for st < 0 too, away from the pole.
            prop_assert!(verify_flow_law(&alg, &z, &x, &s, &t).unwrap().holds);
        }
    }

    #[test]
    fn classification_constant_in_s(f in family(), seed in any::<u64>(), s in rational()) {
        prop_assume!(s != Scalar::zero());
        let alg = build(f).unwrap();
        let mut smp = Sampler::new(seed);
        for ty in nonzero_types(&alg) {
            let z = smp.z_of_type(&alg, ty).unwrap();
            let x = smp.x_in_t(&alg, &z).unwrap();
            prop_assert_eq!(classify_point(&alg, &z, &x, &s), ahs_core::flow::PointClass::Moving);
            if let Some(c) = smp.x_in_c(&alg, &z) {
                prop_assert_eq!(classify_point(&alg, &z, &c, &s), ahs_core::flow::PointClass::HigherOrderFixedSameType);
            }
            if let Some(fx) = smp.x_in_f_minus_c(&alg, &z) {
                prop_assert_eq!(classify_point(&alg, &z, &fx, &s), ahs_core::flow::PointClass::ZeroOfField);
            }
        }
    }

    #[test]
    fn weight_spaces_nested_and_invariant(seed in any::<u64>(), null in any::<bool>()) {
        let alg = build(AlgebraFamily::Conformal { p: 1, q: 3 }).unwrap();
        let mut smp = Sampler::new(seed);
        let ty = if null { GeometricType::ConformalNull } else { GeometricType::ConformalNegative };
        let z = smp.z_of_type(&alg, ty).unwrap();
        let x = smp.x_in_t(&alg, &z).unwrap();
        let module = build_module(&alg, ModuleShape::Lam2G1TensorSoGm1).unwrap();
        let spec = module_spectrum(&alg, &z, &x, &module).unwrap();
        prop_assert_eq!(spec.direct_check, Some(true));
        let ws = weight_spaces(&alg, &z, &x, &module).unwrap();
        prop_assert!(ws.ss.is_subspace_of(&ws.st));
        let m = module.action(&alg, spec.a()).unwrap();
        for w in [&ws.ss, &ws.st] {
            for v in w.basis_vectors() {
                prop_assert!(w.contains(&m.mul_vec(&v).unwrap()));
            }
        }
        if null {
            prop_assert_eq!(ws.st.dim(), 4);
            // Each slot of w ∈ W_st kills the (−2)-eigenvector X.
            for v in ws.st.basis_vectors() {
                for pair in 0..module.lambda2_dim() {
                    let e = module.endo_component(&v, pair).unwrap();
                    prop_assert!(e.mul_vec(&x.0).unwrap().iter().all(|c| *c == Scalar::zero()));
                }
            }
        } else {
            prop_assert!(ws.st.is_zero());
        }
    }
}

#[test]
fn covector_vector_are_distinct_types() {
    let alg = build(AlgebraFamily::Projective { n: 2 }).unwrap();
    let z = Covector::from_ints(&[1, 0]);
    let x = Vector::from_ints(&[1, 0]);
    assert_eq!(z.apply(&x), Scalar::one());
    assert!(isotropy::in_t(&alg, &z, &x));
}
