use ahs_core::algebra::{build, AlgebraFamily, Covector, GradedAlgebra, Vector};
use ahs_core::curvature::check_flat_conditions;
use ahs_core::flow::{default_grid, verify_flow_law};
use ahs_core::isotropy::{self, geometric_type, GeometricType};
use ahs_core::linalg::{Mat, Subspace};
use ahs_core::sample::{canonical_z, nonzero_types, Sampler};
use ahs_core::scalar::{int, Scalar};

fn families(max_n: usize) -> Vec<AlgebraFamily> {
    let mut out: Vec<AlgebraFamily> = (2..=max_n).map(|n| AlgebraFamily::Projective { n }).collect();
    for total in 3..=max_n {
        for p in 1..=total / 2 {
            out.push(AlgebraFamily::Conformal { p, q: total - p });
        }
    }
    out
}

#[test]
fn f_t_agreement_on_random_samples() {
    let mut s = Sampler::new(2024);
    for f in families(4) {
        let alg = build(f).unwrap();
        for t in nonzero_types(&alg) {
            let z = s.z_of_type(&alg, t).unwrap();
            for k in 0..200 {
                // Mix plain random vectors with points of T(Z) and F(Z).
                let x = match k % 4 {
                    0 => s.x_in_t(&alg, &z).unwrap(),
                    1 => s.x_in_f_minus_c(&alg, &z).unwrap_or_else(|| s.vector(alg.n())),
                    _ => s.vector(alg.n()),
                };
                assert_eq!(isotropy::in_f(&alg, &z, &x), isotropy::in_f_closed_form(&alg, &z, &x).unwrap(), "{f} {z} {x}");
                assert_eq!(isotropy::in_t(&alg, &z, &x), isotropy::in_t_closed_form(&alg, &z, &x).unwrap(), "{f} {z} {x}");
            }
        }
    }
}

/// Signed permutations preserving 𝕀: permute within each sign block and
/// flip some signs.
fn signed_permutation(alg: &GradedAlgebra, s: &mut Sampler) -> Mat {
    let n = alg.n();
    let p = match alg.family() {
        AlgebraFamily::Conformal { p, .. } => p,
        AlgebraFamily::Projective { .. } => n,
    };
    let mut perm: Vec<usize> = (0..n).collect();
    // A few random transpositions inside the blocks.
    for _ in 0..n {
        let (i, j) = (s.index(n), s.index(n));
        if (i < p) == (j < p) {
            perm.swap(i, j);
        }
    }
    let flips: Vec<bool> = (0..n).map(|_| s.coin()).collect();
    Mat::from_fn(n, n, |i, j| {
        if perm[j] == i {
            if flips[i] { int(-1) } else { int(1) }
        } else {
            Scalar::zero()
        }
    })
}

#[test]
fn equivariance_spot_check() {
    let mut s = Sampler::new(99);
    for f in families(5) {
        let alg = build(f).unwrap();
        for t in nonzero_types(&alg) {
            for _ in 0..3 {
                let z = s.z_of_type(&alg, t).unwrap();
                let g = signed_permutation(&alg, &mut s);
                if let Some(sig) = alg.signature_matrix() {
                    assert_eq!(&(&g.transpose() * sig) * &g, *sig);
                }
                let g_inv = g.inverse().unwrap();
                let gz = Covector(Mat::from_rows(vec![z.0.clone()]).unwrap().mul_mat(&g_inv).unwrap().row(0).to_vec());
                let act = |x: &Vector| Vector(g.mul_vec(&x.0).unwrap());
                assert_eq!(geometric_type(&alg, &gz), t);
                let c = isotropy::centralizer(&alg, &z);
                let moved = Subspace::from_columns_of(&(&g * c.basis()));
                assert_eq!(isotropy::centralizer(&alg, &gz), moved);
                let x = s.x_in_t(&alg, &z).unwrap();
                assert!(isotropy::in_t(&alg, &gz, &act(&x)));
                let y = s.vector(alg.n());
                assert_eq!(isotropy::in_f(&alg, &z, &y), isotropy::in_f(&alg, &gz, &act(&y)));
                let a1 = isotropy::eigen_gm1(&alg, &isotropy::bracket_a(&alg, &z, &x).unwrap()).unwrap();
                let a2 = isotropy::eigen_gm1(&alg, &isotropy::bracket_a(&alg, &gz, &act(&x)).unwrap()).unwrap();
                assert_eq!(a1.spectrum(), a2.spectrum());
            }
        }
    }
}

#[test]
fn flatness_for_every_type_up_to_five() {
    for f in families(5) {
        let alg = build(f).unwrap();
        for t in nonzero_types(&alg) {
            let z = canonical_z(&alg, t).unwrap();
            let report = check_flat_conditions(&alg, &z, None).unwrap();
            assert!(report.passed, "{f} {t}");
            let trace = &report.condition3.intersection_trace;
            assert!(trace.windows(2).all(|w| w[0] > w[1]), "{f} {t} {trace:?}");
            if t == GeometricType::ConformalNull && alg.n() >= 4 {
                assert!(trace.len() >= 2 && trace[0] > 0);
            }
        }
    }
}

#[test]
fn flow_law_grid() {
    let grid = default_grid();
    let mut s = Sampler::new(5);
    for f in families(4) {
        let alg = build(f).unwrap();
        for t in nonzero_types(&alg) {
            let mut pairs = vec![{
                let z = canonical_z(&alg, t).unwrap();
                let x = s.x_in_t(&alg, &z).unwrap();
                (z, x)
            }];
            for _ in 0..2 {
                let z = s.z_of_type(&alg, t).unwrap();
                let x = s.x_in_t(&alg, &z).unwrap();
                pairs.push((z, x));
            }
            for (z, x) in &pairs {
                for a in &grid {
                    for b in &grid {
                        if (Scalar::one() + a * b).is_zero() {
                            continue;
                        }
                        let r = verify_flow_law(&alg, z, x, a, b).unwrap();
                        assert!(r.holds, "{f} {z} {x} s={a} t={b}");
                    }
                }
            }
        }
    }
}
