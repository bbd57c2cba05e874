use ahs_core::curvature::ModuleShape;
use ahs_core::{AlgebraFamily, Covector, Scalar, Vector};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{self, Command, Format, Grid, Lemma, RunConfig};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Projective,
    Conformal,
}

#[derive(Debug, Parser)]
#[command(name = "ahs", version, about = "Exact checks for higher order fixed points on projective and conformal models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Structural checks of the graded algebra.
    ValidateAlgebra(Common),
    /// Full check chain for one of the three algebraic lemmas.
    Verify(Common),
    /// Flow law on the default grid for explicit Z and X in T(Z).
    FlowVerify(Common),
    /// Classify the point exp(sX)·o for the flow of Z.
    Classify(Common),
    /// Chart coordinates of the flow through exp(sX)·o.
    Trajectory(Common),
    /// Every suite, over all families up to --max-n.
    VerifyAll(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    /// Covector as a JSON-style array, e.g. "[1,-1/2,0]".
    #[arg(long = "Z", allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Vector as a JSON-style array.
    #[arg(long = "X", allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Comma-separated t values for `trajectory` (default 0,1,2,3,4).
    #[arg(long, allow_hyphen_values = true)]
    pub t_samples: Option<String>,
    #[arg(long, value_enum)]
    pub lemma: Option<Lemma>,
    /// Extra seeded random Z per type for `verify`.
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    #[arg(long, default_value_t = config::DEFAULT_FT_SAMPLES)]
    pub ft_samples: usize,
    #[arg(long, default_value_t = config::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = config::DEFAULT_MAX_N)]
    pub max_n: usize,
    /// lam2g1_tensor_g1, lam2g1_tensor_sl_gm1 or lam2g1_tensor_so_gm1.
    #[arg(long)]
    pub module_shape: Option<String>,
    #[arg(long, value_enum, default_value_t = Grid::Default)]
    pub grid: Grid,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include wall time in the report (breaks byte-for-byte reproducibility).
    #[arg(long)]
    pub timings: bool,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl Common {
    fn family(&self) -> Result<Option<AlgebraFamily>, CliError> {
        let kind = match (self.family, self.lemma) {
            (Some(k), _) => Some(k),
            (None, Some(Lemma::Projective)) => Some(FamilyKind::Projective),
            (None, Some(_)) => Some(FamilyKind::Conformal),
            (None, None) if self.n.is_some() => Some(FamilyKind::Projective),
            (None, None) if self.p.is_some() || self.q.is_some() => Some(FamilyKind::Conformal),
            (None, None) => None,
        };
        Ok(match kind {
            None => None,
            Some(FamilyKind::Projective) => {
                let n = self.n.ok_or_else(|| usage("projective family needs --n"))?;
                Some(
                    AlgebraFamily::Projective { n }
                        .normalized(false)
                        .map_err(|e| usage(e.to_string()))?,
                )
            }
            Some(FamilyKind::Conformal) => {
                let (p, q) = self
                    .p
                    .zip(self.q)
                    .ok_or_else(|| usage("conformal family needs --p and --q"))?;
                Some(
                    AlgebraFamily::Conformal { p, q }
                        .normalized(false)
                        .map_err(|e| usage(e.to_string()))?,
                )
            }
        })
    }

    fn into_config(self, command: Command) -> Result<RunConfig, CliError> {
        let mut c = RunConfig::new(command);
        c.family = self.family()?;
        c.lemma = self.lemma;
        c.z = self
            .z
            .as_deref()
            .map(|s| config::parse_rationals(s).map(Covector).map_err(usage))
            .transpose()?;
        c.x = self
            .x
            .as_deref()
            .map(|s| config::parse_rationals(s).map(Vector).map_err(usage))
            .transpose()?;
        c.s = self
            .s
            .as_deref()
            .map(|s| config::parse_rational(s).map_err(usage))
            .transpose()?;
        c.t_samples = match self.t_samples.as_deref() {
            Some(s) => config::parse_rationals(s).map_err(usage)?,
            None => Vec::<Scalar>::new(),
        };
        c.module_shape = self
            .module_shape
            .as_deref()
            .map(|s| s.parse::<ModuleShape>().map_err(|e| usage(e.to_string())))
            .transpose()?;
        c.grid = self.grid;
        c.random = self.random;
        c.ft_samples = self.ft_samples;
        c.seed = self.seed;
        c.max_n = self.max_n;
        c.format = self.format;
        c.timings = self.timings;
        Ok(c)
    }
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let (cmd, common) = match self.command {
            Sub::ValidateAlgebra(c) => (Command::ValidateAlgebra, c),
            Sub::Verify(c) => (Command::Verify, c),
            Sub::FlowVerify(c) => (Command::FlowVerify, c),
            Sub::Classify(c) => (Command::Classify, c),
            Sub::Trajectory(c) => (Command::Trajectory, c),
            Sub::VerifyAll(c) => (Command::VerifyAll, c),
        };
        common.into_config(cmd)
    }
}

/// Parses argv into a [`RunConfig`]. Clap's own errors (help, version,
/// unknown flags) are returned untouched so the caller can print them.
pub fn parse_config<I, T>(argv: I) -> Result<Result<RunConfig, CliError>, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv).map(Cli::into_config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ahs_core::scalar::{frac, int};

    fn cfg(args: &[&str]) -> Result<RunConfig, CliError> {
        parse_config(std::iter::once("ahs").chain(args.iter().copied())).expect("clap accepts")
    }

    #[test]
    fn family_from_lemma() {
        let c = cfg(&["verify", "--lemma", "projective", "--n", "3"]).unwrap();
        assert_eq!(c.family, Some(AlgebraFamily::Projective { n: 3 }));
        let c = cfg(&["verify", "--lemma", "conformal-null", "--p", "1", "--q", "3"]).unwrap();
        assert_eq!(c.family, Some(AlgebraFamily::Conformal { p: 1, q: 3 }));
    }

    #[test]
    fn negative_and_fractional_arguments() {
        let c = cfg(&[
            "classify", "--family", "conformal", "--p", "1", "--q", "2", "--Z", "[1,1,0]", "--X", "[1,-1,0]", "--s", "-1/2",
        ])
        .unwrap();
        assert_eq!(c.x, Some(Vector(vec![int(1), int(-1), int(0)])));
        assert_eq!(c.s, Some(frac(-1, 2)));
    }

    #[test]
    fn bad_parameters_are_usage_errors() {
        let e = cfg(&["validate-algebra", "--family", "projective", "--n", "1"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("n >= 2"));
        assert!(cfg(&["verify", "--lemma", "projective", "--n", "3", "--Z", "[1,x,0]"]).is_err());
        assert!(cfg(&["verify", "--lemma", "conformal-null", "--p", "1"]).is_err());
        assert!(cfg(&["verify", "--n", "3", "--lemma", "projective", "--module-shape", "bogus"]).is_err());
    }

    #[test]
    fn unknown_flag_is_clap_error() {
        assert!(parse_config(["ahs", "verify", "--bogus"]).is_err());
    }
}
