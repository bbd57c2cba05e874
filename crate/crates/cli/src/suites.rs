//! Verification suites. Each produces [`CaseReport`]s; the commands and the
//! acceptance tests assemble them into a [`SuiteReport`].

use ahs_core::algebra::{build, closed_form_disagreement, AlgebraFamily, GradedAlgebra};
use ahs_core::curvature::{build_module, check_flat_conditions, ModuleShape, TensorModule};
use ahs_core::flow::{self, curve_parameters, default_grid, PointClass};
use ahs_core::isotropy::{self, geometric_type, GeometricType, TDescription};
use ahs_core::sample::{canonical_z, f_minus_c_point, nonzero_types, Sampler};
use ahs_core::{Covector, Error, Grade, Scalar, Subspace, Vector};
use rayon::prelude::*;
use serde_json::json;

use crate::config::Lemma;
use crate::report::CaseReport;
use crate::CliError;

pub const RANDOM_Z_PER_TYPE: usize = 20;
pub const BRACKET_TRIPLES: usize = 100;
pub const FLOW_RANDOM_PAIRS: usize = 5;
pub const NULL_RAY_SAMPLES: usize = 10;

/// FNV-1a, used to give every case its own reproducible random stream.
fn stable_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn sampler_for(seed: u64, key: &str) -> Sampler {
    Sampler::new(seed ^ stable_hash(key))
}

/// Projective `n ≤ max_n` and conformal `1 ≤ p ≤ q`, `p + q ≤ max_n`.
pub fn families(max_n: usize) -> Vec<AlgebraFamily> {
    let mut out: Vec<AlgebraFamily> = (2..=max_n).map(|n| AlgebraFamily::Projective { n }).collect();
    for total in 3..=max_n {
        for p in 1..=total / 2 {
            out.push(AlgebraFamily::Conformal { p, q: total - p });
        }
    }
    out
}

fn family_key(f: AlgebraFamily) -> String {
    match f {
        AlgebraFamily::Projective { n } => format!("projective-n{n}"),
        AlgebraFamily::Conformal { p, q } => format!("conformal-p{p}q{q}"),
    }
}

fn type_key(t: GeometricType) -> &'static str {
    match t {
        GeometricType::ProjectiveNonzero => "nonzero",
        GeometricType::ProjectiveZero | GeometricType::ConformalZero => "zero",
        GeometricType::ConformalPositive => "positive",
        GeometricType::ConformalNull => "null",
        GeometricType::ConformalNegative => "negative",
    }
}

pub fn lemma_accepts(lemma: Lemma, t: GeometricType) -> bool {
    match lemma {
        Lemma::Projective => t == GeometricType::ProjectiveNonzero,
        Lemma::ConformalNonnull => t.is_non_null(),
        Lemma::ConformalNull => t == GeometricType::ConformalNull,
    }
}

pub fn lemma_types(alg: &GradedAlgebra, lemma: Lemma) -> Vec<GeometricType> {
    nonzero_types(alg)
        .into_iter()
        .filter(|&t| lemma_accepts(lemma, t))
        .collect()
}

pub fn lemma_for_type(t: GeometricType) -> Option<Lemma> {
    [Lemma::Projective, Lemma::ConformalNonnull, Lemma::ConformalNull]
        .into_iter()
        .find(|&l| lemma_accepts(l, t))
}

/// Rejects a family or covector that the lemma does not speak about.
pub fn preflight_lemma(alg: &GradedAlgebra, lemma: Lemma, z: &Covector) -> Result<GeometricType, CliError> {
    if alg.is_conformal() == (lemma == Lemma::Projective) {
        return Err(CliError::Usage(format!(
            "lemma {lemma} does not apply to {}",
            alg.family()
        )));
    }
    if z.len() != alg.n() {
        return Err(CliError::Usage(format!(
            "Z has {} entries, expected {}",
            z.len(),
            alg.n()
        )));
    }
    let t = geometric_type(alg, z);
    if !lemma_accepts(lemma, t) {
        return Err(CliError::Usage(format!(
            "Z = {z} has geometric type {t}, which lemma {lemma} does not cover"
        )));
    }
    Ok(t)
}

/// Failures grouped by check name, in first-seen order.
#[derive(Default)]
struct Tally(Vec<(String, Vec<String>)>);

impl Tally {
    fn record(&mut self, name: &str, ok: bool, what: impl FnOnce() -> String) {
        let idx = match self.0.iter().position(|(n, _)| n == name) {
            Some(i) => i,
            None => {
                self.0.push((name.to_string(), Vec::new()));
                self.0.len() - 1
            }
        };
        if !ok {
            self.0[idx].1.push(what());
        }
    }

    fn flush(self, case: &mut CaseReport) {
        for (name, fails) in self.0 {
            let detail = (!fails.is_empty()).then(|| fails.join("; "));
            case.check(name, fails.is_empty(), detail);
        }
    }
}

fn spectrum(pairs: &[(i64, usize)]) -> Vec<(Scalar, usize)> {
    pairs
        .iter()
        .filter(|&&(_, m)| m > 0)
        .map(|&(v, m)| (Scalar::from_int(v), m))
        .collect()
}

fn values_within(spec: &[(Scalar, usize)], allowed: &[i64]) -> bool {
    spec.iter()
        .all(|(v, _)| allowed.iter().any(|a| *v == Scalar::from_int(*a)))
}

fn render_spectrum(spec: &[(Scalar, usize)]) -> String {
    let parts: Vec<String> = spec.iter().map(|(v, m)| format!("{v}:{m}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Structural validation plus closed-form bracket agreement.
pub fn validate_case(alg: &GradedAlgebra, seed: u64) -> CaseReport {
    let key = format!("validate/{}", family_key(alg.family()));
    let mut case = CaseReport::new(&key);
    let report = alg.validate();
    for c in &report.checks {
        case.check(c.name.clone(), c.passed, c.detail.clone());
    }
    let mut s = sampler_for(seed, &key);
    let triples: Vec<_> = (0..BRACKET_TRIPLES).map(|_| s.triple(alg.n())).collect();
    match closed_form_disagreement(alg, &triples) {
        Ok(None) => case.check(format!("closed-form brackets on {BRACKET_TRIPLES} random triples"), true, None),
        Ok(Some(i)) => case.check(
            format!("closed-form brackets on {BRACKET_TRIPLES} random triples"),
            false,
            Some(format!("triple {i} disagrees")),
        ),
        Err(e) => case.check("closed-form brackets", false, Some(e.to_string())),
    }
    case.evidence("family", alg.family());
    case.evidence("dims", [alg.dim(Grade::Neg), alg.dim(Grade::Zero), alg.dim(Grade::Pos)]);
    case.evidence("grading_element", alg.grading_element());
    case
}

/// The full chain of checks for one `Z` under one lemma.
pub fn lemma_case(
    alg: &GradedAlgebra,
    lemma: Lemma,
    key: &str,
    z: &Covector,
    shape: Option<ModuleShape>,
    ft_samples: usize,
    sampler: &mut Sampler,
) -> CaseReport {
    let mut case = CaseReport::new(key);
    let n = alg.n();
    let gtype = geometric_type(alg, z);
    case.evidence("family", alg.family());
    case.evidence("z", z);
    case.evidence("geometric_type", gtype);
    case.check("geometric type matches lemma", lemma_accepts(lemma, gtype), Some(gtype.to_string()));
    if !lemma_accepts(lemma, gtype) {
        return case;
    }
    let null = lemma == Lemma::ConformalNull;

    // C(Z)
    let c = isotropy::centralizer(alg, z);
    if let Some(cf) = case.check_result("C(Z) closed form", isotropy::centralizer_closed_form(alg, z)) {
        case.check("C(Z) closed form = brute force", cf == c, None);
    }
    if null {
        let sharp = alg.sharp(z).expect("conformal");
        let expected = Subspace::span(n, &[sharp.0]).expect("dims");
        case.check("C(Z) = span(IZ^t)", c == expected, Some(format!("dim {}", c.dim())));
    } else {
        case.check("C(Z) = 0", c.is_zero(), Some(format!("dim {}", c.dim())));
    }
    case.evidence("centralizer", &c);

    // F and T against their closed forms.
    // F(Z) is a cone stable under adding C(Z), so one base point suffices.
    let f_base = f_minus_c_point(alg, z);
    let c_dir = c.basis_vectors().into_iter().next().map(Vector);
    let mut disagree = Vec::new();
    for k in 0..ft_samples {
        let x = match (k % 4, &f_base) {
            (0, _) => sampler.x_in_t(alg, z).unwrap_or_else(|_| sampler.vector(n)),
            (1, Some(base)) => {
                let x = base.scale(&sampler.nonzero_rational());
                match &c_dir {
                    Some(d) => x.add(&d.scale(&sampler.rational())),
                    None => x,
                }
            }
            _ => sampler.vector(n),
        };
        let f_ok = isotropy::in_f_closed_form(alg, z, &x).map(|v| v == isotropy::in_f(alg, z, &x));
        let t_ok = isotropy::in_t_closed_form(alg, z, &x).map(|v| v == isotropy::in_t(alg, z, &x));
        if !(f_ok == Ok(true) && t_ok == Ok(true)) {
            disagree.push(x.to_string());
        }
    }
    case.check(
        format!("F/T closed form = brute force on {ft_samples} samples"),
        disagree.is_empty(),
        (!disagree.is_empty()).then(|| format!("disagree at {}", disagree.join(", "))),
    );

    if lemma == Lemma::ConformalNonnull {
        let zz = alg.inner_product(z, z).expect("conformal");
        let expected = alg
            .sharp(z)
            .expect("conformal")
            .scale(&(Scalar::from_int(2) / zz));
        let ok = matches!(isotropy::t_description(alg, z), Ok(TDescription::Point { ref x }) if *x == expected)
            && isotropy::in_t(alg, z, &expected);
        case.check("T(Z) = {2/<Z,Z> IZ^t}", ok, Some(expected.to_string()));
    }

    let Some(xs) = case.check_result("T(Z) spanning set", isotropy::t_spanning_set(alg, z)) else {
        return case;
    };
    let span = Subspace::span(n, &xs.iter().map(|x| x.0.clone()).collect::<Vec<_>>()).expect("dims");
    let expect_rank = if lemma == Lemma::ConformalNonnull { 1 } else { n };
    case.check("T(Z) sample spans", span.dim() == expect_rank, Some(format!("rank {}", span.dim())));
    case.evidence("spanning_set", &xs);

    let shape = shape.unwrap_or_else(|| ModuleShape::default_for(alg.family()));
    let Some(report) = case.check_result("flatness report", check_flat_conditions(alg, z, Some(shape))) else {
        return case;
    };
    let module: Option<TensorModule> = build_module(alg, shape).ok();

    let expected_gm1 = match lemma {
        Lemma::Projective => spectrum(&[(-2, 1), (-1, n - 1)]),
        Lemma::ConformalNonnull => spectrum(&[(-2, n)]),
        Lemma::ConformalNull => spectrum(&[(-2, 1), (-1, n - 2), (0, 1)]),
    };
    let mut tally = Tally::default();
    let two_e = alg.grading_element().scale(&Scalar::from_int(2));
    for (i, (e1, e2)) in report.condition1.per_x.iter().zip(&report.condition2.per_x).enumerate() {
        let tag = |s: &str| format!("X#{i}: {s}");
        tally.record("A diagonalizable on g_-1", e1.diagonalizable, || tag("not diagonalizable"));
        tally.record(
            &format!("spectrum on g_-1 = {}", render_spectrum(&expected_gm1)),
            e1.spectrum == expected_gm1,
            || tag(&render_spectrum(&e1.spectrum)),
        );
        if null {
            tally.record("0-eigenspace on g_-1 = C(Z)", e1.zero_eigenspace_is_centralizer, || tag("differs"));
        }
        if lemma == Lemma::ConformalNonnull {
            let a = isotropy::bracket_a(alg, z, &e1.x);
            tally.record("A = 2E", a.as_ref().is_ok_and(|a| *a == two_e), || tag("A differs from 2E"));
            if let (Some(m), Ok(a)) = (&module, &a) {
                let on_module = m.action(alg, a).ok();
                let expected = m.action(alg, alg.grading_element()).ok().map(|e| e.scale(&Scalar::from_int(2)));
                tally.record("A acts on the module as 2E", on_module.is_some() && on_module == expected, || tag("differs"));
            }
        }
        tally.record("module action diagonalizable", e2.diagonalizable, || tag("not diagonalizable"));
        tally.record(
            "module spectrum = factor sums (direct recomputation)",
            e2.direct_check != Some(false),
            || tag("direct spectrum differs"),
        );
        match lemma {
            Lemma::Projective => {
                tally.record("Lambda^2 g_1 spectrum within {2,3}", values_within(&e2.lambda2_spectrum, &[2, 3]), || {
                    tag(&render_spectrum(&e2.lambda2_spectrum))
                });
                if shape == ModuleShape::Lam2G1TensorSlGm1 {
                    tally.record("sl(g_-1) spectrum within {-1,0,1}", values_within(&e2.second_spectrum, &[-1, 0, 1]), || {
                        tag(&render_spectrum(&e2.second_spectrum))
                    });
                }
            }
            Lemma::ConformalNull => {
                tally.record(
                    "Lambda^2 g_1 spectrum = {1,2,3}",
                    e2.lambda2_spectrum.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>()
                        == [1, 2, 3].map(Scalar::from_int).to_vec(),
                    || tag(&render_spectrum(&e2.lambda2_spectrum)),
                );
                if shape == ModuleShape::Lam2G1TensorSoGm1 {
                    tally.record("so(g_-1) spectrum = {-1,0,1}", values_within(&e2.second_spectrum, &[-1, 0, 1]), || {
                        tag(&render_spectrum(&e2.second_spectrum))
                    });
                }
            }
            Lemma::ConformalNonnull => {}
        }
        if lemma != Lemma::ConformalNull {
            tally.record(
                "module spectrum positive",
                e2.module_spectrum.iter().all(|(v, _)| v.is_positive()),
                || tag(&render_spectrum(&e2.module_spectrum)),
            );
        }
        tally.record("W_ss = 0", e2.w_ss_dim == 0, || tag(&format!("dim {}", e2.w_ss_dim)));
        if null && shape == ModuleShape::Lam2G1TensorSoGm1 {
            tally.record("W_st != 0 for each X", e2.w_st_dim > 0, || tag("W_st = 0"));
        } else {
            tally.record("W_st = 0", e2.w_st_dim == 0, || tag(&format!("dim {}", e2.w_st_dim)));
        }
    }
    tally.flush(&mut case);

    case.check("condition 1: A <= 0 on g_-1, diagonalizable, ker = C(Z)", report.condition1.passed, None);
    case.check("condition 2: W_ss = 0", report.condition2.passed, None);
    let trace = &report.condition3.intersection_trace;
    case.check(
        "condition 3: intersection of W_st over T(Z) = 0",
        report.condition3.passed,
        Some(format!("trace {trace:?}")),
    );
    case.check("flatness conditions hold", report.passed, None);
    if null && shape == ModuleShape::Lam2G1TensorSoGm1 {
        let decreasing = trace.windows(2).all(|w| w[0] > w[1]);
        case.check(
            "intersection trace strictly decreasing to 0 over >= 2 elements",
            decreasing && trace.len() >= 2 && trace.last() == Some(&0),
            Some(format!("{trace:?}")),
        );
    }
    case.evidence(
        "flatness",
        json!({
            "shape": report.shape,
            "eigen_gm1": report.condition1.per_x.iter().map(|e| &e.spectrum).collect::<Vec<_>>(),
            "module": report.condition2.per_x,
            "w_st_dims": report.condition3.w_st_dims,
            "intersection_trace": trace,
            "intersection": report.condition3.intersection,
            "passed": report.passed,
        }),
    );

    match flow::smoothly_isolated_witness(alg, z) {
        Ok(w) => {
            if null {
                case.check("not smoothly isolated: fixed curve confirmed", !w.isolated && w.curve_confirmed, None);
            } else {
                case.check("smoothly isolated", w.isolated, None);
            }
            case.evidence("isolation", w);
        }
        Err(e) => case.check("smoothly isolated witness", false, Some(e.to_string())),
    }
    case
}

/// Lemma cases for a family: canonical representative(s) plus `random`
/// seeded covectors per type.
pub fn lemma_cases(
    alg: &GradedAlgebra,
    lemma: Lemma,
    random: usize,
    shape: Option<ModuleShape>,
    ft_samples: usize,
    seed: u64,
) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for t in lemma_types(alg, lemma) {
        let base = format!("lemma-{lemma}/{}/{}", family_key(alg.family()), type_key(t));
        let mut zs = Vec::new();
        if let Ok(z) = canonical_z(alg, t) {
            zs.push((format!("{base}/canonical"), z));
        }
        let mut s = sampler_for(seed, &base);
        for i in 0..random {
            match s.z_of_type(alg, t) {
                Ok(z) => zs.push((format!("{base}/random-{i:02}"), z)),
                Err(e) => {
                    let mut c = CaseReport::new(format!("{base}/random-{i:02}"));
                    c.check("sample Z", false, Some(e.to_string()));
                    out.push(c);
                }
            }
        }
        for (key, z) in zs {
            let mut s = sampler_for(seed, &key);
            out.push(lemma_case(alg, lemma, &key, &z, shape, ft_samples, &mut s));
        }
    }
    out
}

/// Flow law on the default grid for one `(Z, X)`.
pub fn flow_case(alg: &GradedAlgebra, key: &str, z: &Covector, x: &Vector) -> CaseReport {
    let mut case = CaseReport::new(key);
    case.evidence("family", alg.family());
    case.evidence("z", z);
    case.evidence("x", x);
    let grid = default_grid();
    let mut cells = Vec::new();
    let mut poles = Vec::new();
    let mut asserted_fail = Vec::new();
    let mut continuation_holds = true;
    for s in &grid {
        for t in &grid {
            match flow::verify_flow_law(alg, z, x, s, t) {
                Ok(r) => {
                    if r.asserted && !r.holds {
                        asserted_fail.push(format!("s={s}, t={t}"));
                    }
                    if !r.asserted {
                        continuation_holds &= r.holds;
                    }
                    cells.push(r);
                }
                Err(Error::Pole(_)) => poles.push((s.clone(), t.clone())),
                Err(e) => {
                    case.check("flow law", false, Some(e.to_string()));
                    return case;
                }
            }
        }
    }
    let asserted = cells.iter().filter(|c| c.asserted).count();
    case.check(
        format!("flow law on {asserted} grid cells with st > 0"),
        asserted_fail.is_empty() && asserted > 0,
        (!asserted_fail.is_empty()).then(|| asserted_fail.join("; ")),
    );
    case.evidence("cells", cells);
    case.evidence("poles", poles);
    // Reported only: the model identity continues to st < 0.
    case.evidence("continuation_st_negative_holds", continuation_holds);
    case
}

pub fn flow_cases(alg: &GradedAlgebra, random: usize, seed: u64) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for t in nonzero_types(alg) {
        let base = format!("flow/{}/{}", family_key(alg.family()), type_key(t));
        let mut s = sampler_for(seed, &base);
        if let Ok(z) = canonical_z(alg, t) {
            let key = format!("{base}/canonical");
            match s.x_in_t(alg, &z) {
                Ok(x) => out.push(flow_case(alg, &key, &z, &x)),
                Err(e) => {
                    let mut c = CaseReport::new(key);
                    c.check("sample X in T(Z)", false, Some(e.to_string()));
                    out.push(c);
                }
            }
        }
        for i in 0..random {
            let key = format!("{base}/random-{i:02}");
            let pair = s.z_of_type(alg, t).and_then(|z| s.x_in_t(alg, &z).map(|x| (z, x)));
            match pair {
                Ok((z, x)) => out.push(flow_case(alg, &key, &z, &x)),
                Err(e) => {
                    let mut c = CaseReport::new(key);
                    c.check("sample (Z, X)", false, Some(e.to_string()));
                    out.push(c);
                }
            }
        }
    }
    out
}

/// `φᵗ(ξ) = ξ/(1 + tZξ)` for seeded null `ξ` with `Zξ > 0`.
pub fn null_ray_case(alg: &GradedAlgebra, count: usize, seed: u64) -> Option<CaseReport> {
    let z = canonical_z(alg, GeometricType::ConformalNull).ok()?;
    let key = format!("null-ray/{}", family_key(alg.family()));
    let mut case = CaseReport::new(&key);
    let mut s = sampler_for(seed, &key);
    let ts = [Scalar::ratio(1, 3), Scalar::ratio(1, 2), Scalar::one(), Scalar::from_int(2)];
    let mut fails = Vec::new();
    let mut xis = Vec::new();
    for _ in 0..count {
        let xi = match s.null_vector_positive_on(alg, &z) {
            Ok(v) => v,
            Err(e) => {
                fails.push(e.to_string());
                continue;
            }
        };
        for t in &ts {
            if !flow::verify_null_ray_flow(alg, &z, &xi, t).unwrap_or(false) {
                fails.push(format!("xi={xi}, t={t}"));
            }
        }
        xis.push(xi);
    }
    // ξ ∈ F(Z): Zξ = 0, fixed for every t.
    let u = alg.sharp(&z).ok()?;
    let fixed = ts.iter().all(|t| flow::verify_null_ray_flow(alg, &z, &u, t).unwrap_or(false));
    case.check(
        format!("null ray flow for {count} samples"),
        fails.is_empty() && xis.len() == count,
        (!fails.is_empty()).then(|| fails.join("; ")),
    );
    case.check("IZ^t ray fixed", fixed, None);
    case.evidence("z", &z);
    case.evidence("xi", xis);
    Some(case)
}

/// Point classes along `C(Z)`, `F(Z) ∖ C(Z)` and `T(Z)` for the canonical
/// representative of each type.
pub fn classification_cases(alg: &GradedAlgebra, seed: u64) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for t in nonzero_types(alg) {
        let Ok(z) = canonical_z(alg, t) else { continue };
        let key = format!("classify/{}/{}", family_key(alg.family()), type_key(t));
        let mut case = CaseReport::new(&key);
        let mut s = sampler_for(seed, &key);
        let params = curve_parameters();
        let classes = |x: &Vector| -> Vec<PointClass> {
            params.iter().map(|p| flow::classify_point(alg, &z, x, p)).collect()
        };
        let mut samples = serde_json::Map::new();
        let mut run = |case: &mut CaseReport, label: &str, x: Option<Vector>, want: PointClass| match x {
            Some(x) => {
                let got = classes(&x);
                case.check(
                    format!("{label} -> {want}"),
                    got.iter().all(|&c| c == want),
                    Some(format!("X = {x}")),
                );
                samples.insert(label.to_string(), json!({"x": x, "classes": got}));
            }
            None => {
                samples.insert(label.to_string(), json!("none"));
            }
        };
        let c = s.x_in_c(alg, &z);
        run(&mut case, "C(Z) ray", c, PointClass::HigherOrderFixedSameType);
        let f = s.x_in_f_minus_c(alg, &z);
        run(&mut case, "F(Z)\\C(Z)", f, PointClass::ZeroOfField);
        let x = s.x_in_t(alg, &z).ok();
        run(&mut case, "T(Z)", x, PointClass::Moving);
        match flow::smoothly_isolated_witness(alg, &z) {
            Ok(w) => {
                if t == GeometricType::ConformalNull {
                    case.check("not smoothly isolated: fixed curve confirmed", !w.isolated && w.curve_confirmed, None);
                } else {
                    case.check("smoothly isolated", w.isolated, None);
                }
            }
            Err(e) => case.check("smoothly isolated witness", false, Some(e.to_string())),
        }
        case.evidence("z", &z);
        case.evidence("samples", samples);
        out.push(case);
    }
    out
}

/// Corrupted inputs must be caught.
pub fn negative_controls_case() -> CaseReport {
    let mut case = CaseReport::new("negative-controls");
    let alg = build(AlgebraFamily::Conformal { p: 1, q: 2 }).expect("valid family");
    let corrupt = &alg.basis(Grade::Pos)[0] + &alg.basis(Grade::Neg)[0];
    let bad = alg.with_basis_element(Grade::Pos, 0, corrupt);
    let report = bad.validate();
    let names: Vec<String> = report.failures().iter().map(|c| c.name.clone()).collect();
    case.check(
        "corrupted g_1 basis element fails validation naming [g_1, g_1] = 0",
        !report.passed() && names.iter().any(|n| n == "[g_1, g_1] = 0"),
        Some(names.join("; ")),
    );

    let c22 = build(AlgebraFamily::Conformal { p: 2, q: 2 }).expect("valid family");
    let z = Covector::from_ints(&[0, 1, 1, 0]);
    let rejected = preflight_lemma(&c22, Lemma::ConformalNonnull, &z);
    case.check(
        "null Z rejected by the non-null lemma",
        matches!(rejected, Err(CliError::Usage(_))),
        rejected.err().map(|e| e.to_string()),
    );
    let p3 = build(AlgebraFamily::Projective { n: 3 }).expect("valid family");
    case.check(
        "zero Z rejected by the projective lemma",
        preflight_lemma(&p3, Lemma::Projective, &Covector::zero(3)).is_err(),
        None,
    );

    let z = Covector::from_ints(&[1, 1, 0]);
    let err = isotropy::bracket_a(&alg, &z, &Vector::from_ints(&[1, 0, 0]));
    case.check(
        "X outside T(Z) rejected naming [[Z,X],X] = -2X",
        err == Err(Error::NotInT("[[Z,X],X] = -2X")),
        err.err().map(|e| e.to_string()),
    );
    let err = isotropy::bracket_a(&alg, &z, &Vector::zero(3));
    case.check(
        "X = 0 rejected naming [[Z,X],Z] = 2Z",
        err == Err(Error::NotInT("[[Z,X],Z] = 2Z")),
        err.err().map(|e| e.to_string()),
    );
    case
}

/// Groups of cases making up `verify-all`, one per acceptance area.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Area {
    Validation,
    ProjectiveLemma,
    NonnullLemma,
    NullLemma,
    FlowLaw,
    Classification,
    NegativeControls,
}

impl Area {
    pub const ALL: [Area; 7] = [
        Area::Validation,
        Area::ProjectiveLemma,
        Area::NonnullLemma,
        Area::NullLemma,
        Area::FlowLaw,
        Area::Classification,
        Area::NegativeControls,
    ];
}

pub fn area_cases(area: Area, seed: u64, max_n: usize) -> Vec<CaseReport> {
    let algs: Vec<GradedAlgebra> = families(max_n)
        .into_iter()
        .map(|f| build(f).expect("families in range are valid"))
        .collect();
    let lemma = |l: Lemma| -> Vec<CaseReport> {
        algs.par_iter()
            .filter(|a| a.is_conformal() != (l == Lemma::Projective))
            .flat_map_iter(|a| lemma_cases(a, l, RANDOM_Z_PER_TYPE, None, crate::config::DEFAULT_FT_SAMPLES, seed))
            .collect()
    };
    match area {
        Area::Validation => algs.par_iter().map(|a| validate_case(a, seed)).collect(),
        Area::ProjectiveLemma => lemma(Lemma::Projective),
        Area::NonnullLemma => lemma(Lemma::ConformalNonnull),
        Area::NullLemma => lemma(Lemma::ConformalNull),
        Area::FlowLaw => algs
            .par_iter()
            .flat_map_iter(|a| {
                let mut v = flow_cases(a, FLOW_RANDOM_PAIRS, seed);
                v.extend(null_ray_case(a, NULL_RAY_SAMPLES, seed));
                v
            })
            .collect(),
        Area::Classification => algs.par_iter().flat_map_iter(|a| classification_cases(a, seed)).collect(),
        Area::NegativeControls => vec![negative_controls_case()],
    }
}
