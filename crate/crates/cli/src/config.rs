use std::fmt;

use ahs_core::curvature::ModuleShape;
use ahs_core::{AlgebraFamily, Covector, Scalar, Vector};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    ValidateAlgebra,
    Verify,
    FlowVerify,
    Classify,
    Trajectory,
    VerifyAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    Projective,
    ConformalNonnull,
    ConformalNull,
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lemma::Projective => "projective",
            Lemma::ConformalNonnull => "conformal-nonnull",
            Lemma::ConformalNull => "conformal-null",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Human,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    /// `s, t ∈ {±2, ±1, ±1/2, ±1/3}`.
    #[default]
    Default,
}

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_MAX_N: usize = 6;
/// Random `X` per `Z` in the F/T oracle comparison.
pub const DEFAULT_FT_SAMPLES: usize = 200;

/// Everything a run depends on. Serializes without loss, and the seed fixes
/// every random sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<AlgebraFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<Lemma>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Covector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub t_samples: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_shape: Option<ModuleShape>,
    #[serde(default)]
    pub grid: Grid,
    #[serde(default)]
    pub random: usize,
    pub ft_samples: usize,
    pub seed: u64,
    pub max_n: usize,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub timings: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            family: None,
            lemma: None,
            z: None,
            x: None,
            s: None,
            t_samples: Vec::new(),
            module_shape: None,
            grid: Grid::Default,
            random: 0,
            ft_samples: DEFAULT_FT_SAMPLES,
            seed: DEFAULT_SEED,
            max_n: DEFAULT_MAX_N,
            format: Format::Json,
            timings: false,
        }
    }
}

/// Parses `"[1, -1/2, 0]"` (brackets optional).
pub fn parse_rationals(s: &str) -> Result<Vec<Scalar>, String> {
    let inner = s.trim();
    let inner = inner.strip_prefix('[').unwrap_or(inner);
    let inner = inner.strip_suffix(']').unwrap_or(inner);
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Scalar>().map_err(|e| format!("bad rational {t:?}: {e}")))
        .collect()
}

pub fn parse_rational(s: &str) -> Result<Scalar, String> {
    s.trim()
        .parse::<Scalar>()
        .map_err(|e| format!("bad rational {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ahs_core::scalar::{frac, int};

    #[test]
    fn rational_lists() {
        assert_eq!(parse_rationals("[1, -1/2,0]").unwrap(), vec![int(1), frac(-1, 2), int(0)]);
        assert_eq!(parse_rationals("3").unwrap(), vec![int(3)]);
        assert!(parse_rationals("[1, x]").is_err());
        assert_eq!(parse_rationals("[]").unwrap(), vec![]);
    }

    #[test]
    fn config_round_trip() {
        let mut c = RunConfig::new(Command::Verify);
        c.family = Some(AlgebraFamily::Conformal { p: 1, q: 3 });
        c.lemma = Some(Lemma::ConformalNull);
        c.z = Some(Covector(vec![int(1), int(1), int(0), frac(1, 3)]));
        c.s = Some(frac(-2, 3));
        c.t_samples = vec![int(0), frac(1, 2)];
        c.module_shape = Some(ModuleShape::Lam2G1TensorSoGm1);
        c.random = 3;
        c.seed = 11;
        c.format = Format::Human;
        let text = serde_json::to_string(&c).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
