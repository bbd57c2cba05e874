//! Command-line front end: builds algebras, runs the verification suites and
//! renders [`report::SuiteReport`]s.

pub mod args;
pub mod config;
pub mod report;
pub mod suites;

use std::time::Instant;

use ahs_core::algebra::{build, GradedAlgebra};
use ahs_core::curvature::ModuleShape;
use ahs_core::flow::{self, chart_trajectory};
use ahs_core::isotropy;
use ahs_core::{AlgebraFamily, Covector, Scalar, Vector};
use rayon::prelude::*;
use thiserror::Error;

use config::{Command, Lemma, RunConfig};
use report::{CaseReport, SuiteReport};
use suites::Area;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ahs_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(_) => 1,
        }
    }
}

/// Decimal digits in trajectory CSV.
pub const DECIMAL_DIGITS: usize = 12;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn family_of(config: &RunConfig) -> Result<AlgebraFamily, CliError> {
    config
        .family
        .ok_or_else(|| usage(format!("{:?} needs --family (or --lemma)", config.command)))
}

/// Builds the algebra; bad parameters are usage errors.
pub fn build_family(family: AlgebraFamily) -> Result<GradedAlgebra, CliError> {
    build(family).map_err(|e| usage(e.to_string()))
}

fn require<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T, CliError> {
    v.as_ref().ok_or_else(|| usage(format!("missing {flag}")))
}

fn check_len(alg: &GradedAlgebra, len: usize, flag: &str) -> Result<(), CliError> {
    if len == alg.n() {
        Ok(())
    } else {
        Err(usage(format!("{flag} has {len} entries, expected {}", alg.n())))
    }
}

fn z_and_x(alg: &GradedAlgebra, config: &RunConfig) -> Result<(Covector, Vector), CliError> {
    let z = require(&config.z, "--Z")?.clone();
    let x = require(&config.x, "--X")?.clone();
    check_len(alg, z.len(), "--Z")?;
    check_len(alg, x.len(), "--X")?;
    Ok((z, x))
}

fn shape_for(alg: &GradedAlgebra, shape: Option<ModuleShape>) -> Result<Option<ModuleShape>, CliError> {
    match shape {
        Some(s) if !s.is_compatible(alg.family()) => Err(usage(format!(
            "module shape {s} is not available for {}",
            alg.family()
        ))),
        s => Ok(s),
    }
}

/// Runs one subcommand. Usage errors are returned before any work is done.
pub fn run(config: &RunConfig) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let cases = match config.command {
        Command::ValidateAlgebra => {
            let alg = build_family(family_of(config)?)?;
            vec![suites::validate_case(&alg, config.seed)]
        }
        Command::Verify => cmd_verify(config)?,
        Command::FlowVerify => cmd_flow_verify(config)?,
        Command::Classify => cmd_classify(config)?,
        Command::Trajectory => cmd_trajectory(config)?,
        Command::VerifyAll => cmd_verify_all(config)?,
    };
    let mut report = SuiteReport::new(config.clone(), cases);
    if config.timings {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn cmd_verify(config: &RunConfig) -> Result<Vec<CaseReport>, CliError> {
    let lemma = *require(&config.lemma, "--lemma")?;
    let alg = build_family(family_of(config)?)?;
    let shape = shape_for(&alg, config.module_shape)?;
    match &config.z {
        Some(z) => {
            let t = suites::preflight_lemma(&alg, lemma, z)?;
            let key = format!("lemma-{lemma}/explicit/{t}");
            let mut s = suites::sampler_for(config.seed, &key);
            Ok(vec![suites::lemma_case(&alg, lemma, &key, z, shape, config.ft_samples, &mut s)])
        }
        None => {
            if alg.is_conformal() == (lemma == Lemma::Projective) {
                return Err(usage(format!("lemma {lemma} does not apply to {}", alg.family())));
            }
            if suites::lemma_types(&alg, lemma).is_empty() {
                return Err(usage(format!("{} has no covectors of the type lemma {lemma} covers", alg.family())));
            }
            Ok(suites::lemma_cases(&alg, lemma, config.random, shape, config.ft_samples, config.seed))
        }
    }
}

fn cmd_flow_verify(config: &RunConfig) -> Result<Vec<CaseReport>, CliError> {
    let alg = build_family(family_of(config)?)?;
    let (z, x) = z_and_x(&alg, config)?;
    if let Some(eq) = isotropy::t_failure(&alg, &z, &x) {
        return Err(usage(format!("X = {x} is not in T(Z): {eq} fails")));
    }
    Ok(vec![suites::flow_case(&alg, "flow/explicit", &z, &x)])
}

fn cmd_classify(config: &RunConfig) -> Result<Vec<CaseReport>, CliError> {
    let alg = build_family(family_of(config)?)?;
    let (z, x) = z_and_x(&alg, config)?;
    let s = config.s.clone().unwrap_or_else(Scalar::one);
    if s.is_zero() {
        return Err(usage("--s must be nonzero"));
    }
    let class = flow::classify_point(&alg, &z, &x, &s);
    let mut case = CaseReport::new("classify/explicit");
    // The class depends only on the ray through X.
    let constant = flow::curve_parameters()
        .iter()
        .all(|p| flow::classify_point(&alg, &z, &x, p) == class);
    case.check("class constant along the ray", constant, Some(class.to_string()));
    case.evidence("family", alg.family());
    case.evidence("z", &z);
    case.evidence("x", &x);
    case.evidence("s", &s);
    case.evidence("point", flow::normal_point(&alg, &x, &s));
    case.evidence("class", class);
    case.evidence("geometric_type", isotropy::geometric_type(&alg, &z));
    Ok(vec![case])
}

fn cmd_trajectory(config: &RunConfig) -> Result<Vec<CaseReport>, CliError> {
    let alg = build_family(family_of(config)?)?;
    let (z, x) = z_and_x(&alg, config)?;
    let s = config.s.clone().unwrap_or_else(Scalar::one);
    let ts: Vec<Scalar> = if config.t_samples.is_empty() {
        (0..=4).map(Scalar::from_int).collect()
    } else {
        config.t_samples.clone()
    };
    let samples = chart_trajectory(&alg, &z, &x, &s, &ts);
    let mut case = CaseReport::new("trajectory/explicit");
    if isotropy::in_t(&alg, &z, &x) {
        // Along T(Z) the flow moves the ray parameter: s -> s/(1+st).
        let mut off = Vec::new();
        for sample in &samples {
            let denom = Scalar::one() + &s * &sample.t;
            let expected = denom.recip().map(|d| x.scale(&(&s * &d)));
            if sample.y != expected {
                off.push(sample.t.to_string());
            }
        }
        case.check(
            "ray values s/(1+st)",
            off.is_empty(),
            (!off.is_empty()).then(|| format!("differs at t = {}", off.join(", "))),
        );
    }
    let decimal_rows: Vec<Vec<String>> = samples
        .iter()
        .map(|sample| {
            let mut row = vec![sample.t.to_decimal(DECIMAL_DIGITS)];
            match &sample.y {
                Some(y) => row.extend(y.0.iter().map(|v| v.to_decimal(DECIMAL_DIGITS))),
                None => row.extend(std::iter::repeat_n(String::new(), alg.n())),
            }
            row
        })
        .collect();
    case.evidence("family", alg.family());
    case.evidence("z", &z);
    case.evidence("x", &x);
    case.evidence("s", &s);
    case.evidence("n", alg.n());
    case.evidence("samples", &samples);
    case.evidence("decimal_rows", decimal_rows);
    Ok(vec![case])
}

fn cmd_verify_all(config: &RunConfig) -> Result<Vec<CaseReport>, CliError> {
    if config.max_n < 2 {
        return Err(usage(format!("--max-n must be at least 2, got {}", config.max_n)));
    }
    Ok(verify_all_cases(config.seed, config.max_n))
}

/// Every case of `verify-all`, unsorted.
pub fn verify_all_cases(seed: u64, max_n: usize) -> Vec<CaseReport> {
    Area::ALL
        .par_iter()
        .flat_map_iter(|&area| suites::area_cases(area, seed, max_n))
        .collect()
}

/// Report for one acceptance area, as `verify-all` would produce it.
pub fn area_report(area: Area, seed: u64, max_n: usize) -> SuiteReport {
    let mut config = RunConfig::new(Command::VerifyAll);
    config.seed = seed;
    config.max_n = max_n;
    SuiteReport::new(config, suites::area_cases(area, seed, max_n))
}

