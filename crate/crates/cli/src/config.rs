//! Experiment configuration files.
//!
//! A config is a JSON object `{"kind": ..., "seed": ..., "parameters": {...}}`
//! with an optional `"output"` path. The parameters are decoded against the
//! schema of the named kind before anything runs, so that every schema
//! violation surfaces as a `config-error` carrying the field path.

use std::path::PathBuf;

use rbound_core::integral::IntegralSearch;
use rbound_core::measure::LorentzForm;
use rbound_core::rademacher::RandomConfig;
use rbound_core::rbound::SearchConfig;
use rbound_core::scalar::serde_exponent;
use rbound_core::semigroup::DiagonalSemigroup;
use rbound_core::{BesovParams, GammaOperator, GridFunction, Matrix, NormedSpace, OperatorValuedStep, SharpnessConfig, StepFunction};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rademacher,
    Rbound,
    Type,
    Cotype,
    Lorentz,
    Besov,
    Integral,
    Gamma,
    Semigroup,
    Sharpness,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Rademacher => "rademacher",
            Kind::Rbound => "rbound",
            Kind::Type => "type",
            Kind::Cotype => "cotype",
            Kind::Lorentz => "lorentz",
            Kind::Besov => "besov",
            Kind::Integral => "integral",
            Kind::Gamma => "gamma",
            Kind::Semigroup => "semigroup",
            Kind::Sharpness => "sharpness",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: Kind,
    #[serde(default)]
    pub seed: u64,
    pub parameters: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn two() -> f64 {
    2.0
}

/// Monte-Carlo knobs shared by the kinds that take Rademacher averages;
/// the seed comes from the top level of the config.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sampling {
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_threshold")]
    pub exact_threshold: usize,
}

fn default_samples() -> usize {
    RandomConfig::default().samples
}

fn default_threshold() -> usize {
    RandomConfig::default().exact_threshold
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { samples: default_samples(), exact_threshold: default_threshold() }
    }
}

impl Sampling {
    pub fn with_seed(&self, seed: u64) -> RandomConfig {
        RandomConfig { seed, samples: self.samples, exact_threshold: self.exact_threshold }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RademacherParams {
    pub space: NormedSpace,
    pub vectors: Vec<Vec<f64>>,
    #[serde(default = "two", with = "serde_exponent")]
    pub p: f64,
    /// Gaussian instead of Rademacher coefficients.
    #[serde(default)]
    pub gaussian: bool,
    #[serde(default)]
    pub sampling: Sampling,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RboundParams {
    pub domain: NormedSpace,
    pub codomain: NormedSpace,
    pub operators: Vec<Matrix>,
    pub n: usize,
    #[serde(default)]
    pub search: SearchConfig,
    #[serde(default)]
    pub sampling: Sampling,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthParams {
    /// `ℓ^s_N` is used at each `N`.
    #[serde(with = "serde_exponent")]
    pub space_exponent: f64,
    pub ns: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeParams {
    pub space: NormedSpace,
    #[serde(with = "serde_exponent")]
    pub exponent: f64,
    pub n: usize,
    #[serde(default)]
    pub search: SearchConfig,
    #[serde(default)]
    pub sampling: Sampling,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LorentzParams {
    pub function: StepFunction,
    #[serde(with = "serde_exponent")]
    pub p: f64,
    #[serde(with = "serde_exponent")]
    pub q: f64,
    #[serde(default)]
    pub form: LorentzForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HolderParams {
    pub alpha: f64,
    pub r: f64,
    pub a: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BesovConfig {
    pub function: GridFunction,
    pub params: BesovParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holder: Option<HolderParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralParams {
    pub operator: OperatorValuedStep,
    pub r: f64,
    pub trials: usize,
    #[serde(default)]
    pub budget: IntegralSearch,
    /// Reference function of an equimeasurable family; when absent the
    /// unit ball of `L^{r'}` is sampled.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equidistributed: Option<StepFunction>,
    #[serde(default)]
    pub sampling: Sampling,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaParams {
    pub operators: Vec<GammaOperator>,
    pub vectors: Vec<Vec<f64>>,
    #[serde(default)]
    pub sampling: Sampling,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupParams {
    pub semigroup: DiagonalSemigroup<f64>,
    pub alpha: f64,
    pub p: f64,
    pub q: f64,
    pub n: usize,
    pub times: Vec<f64>,
    #[serde(default)]
    pub search: SearchConfig,
    #[serde(default)]
    pub sampling: Sampling,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    Rademacher(RademacherParams),
    Rbound(RboundParams),
    Type(TypeParams),
    Cotype(TypeParams),
    Lorentz(LorentzParams),
    Besov(BesovConfig),
    Integral(IntegralParams),
    Gamma(GammaParams),
    Semigroup(SemigroupParams),
    Sharpness(SharpnessConfig),
}

fn decode<T: DeserializeOwned>(value: &Value, prefix: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = if inner == "." { prefix.to_string() } else { format!("{prefix}.{inner}") };
        CliError::config(path, e.into_inner().to_string())
    })
}

fn check(cond: bool, path: impl Into<String>, message: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::config(path, message))
    }
}

fn check_lengths(vectors: &[Vec<f64>], dim: usize, field: &str) -> Result<()> {
    for (i, v) in vectors.iter().enumerate() {
        check(v.len() == dim, format!("parameters.{field}[{i}]"), format!("expected {dim} coordinates, got {}", v.len()))?;
    }
    Ok(())
}

impl ExperimentConfig {
    /// Parses and validates a config file's contents.
    pub fn parse(text: &str) -> Result<(ExperimentConfig, Params)> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| CliError::config("$", format!("malformed JSON: {e}")))?;
        let cfg: ExperimentConfig = decode(&value, "$")?;
        let params = cfg.params()?;
        Ok((cfg, params))
    }

    pub fn params(&self) -> Result<Params> {
        let v = &self.parameters;
        let at = "parameters";
        let params = match self.kind {
            Kind::Rademacher => {
                let p: RademacherParams = decode(v, at)?;
                check_lengths(&p.vectors, p.space.dim(), "vectors")?;
                check(!p.vectors.is_empty(), "parameters.vectors", "need at least one vector")?;
                Params::Rademacher(p)
            }
            Kind::Rbound => {
                let p: RboundParams = decode(v, at)?;
                check(p.n >= 1, "parameters.n", "must be positive")?;
                check(!p.operators.is_empty(), "parameters.operators", "need at least one operator")?;
                for (i, m) in p.operators.iter().enumerate() {
                    check(
                        m.rows() == p.codomain.dim() && m.cols() == p.domain.dim(),
                        format!("parameters.operators[{i}]"),
                        format!("expected a {}×{} matrix", p.codomain.dim(), p.domain.dim()),
                    )?;
                }
                Params::Rbound(p)
            }
            Kind::Type | Kind::Cotype => {
                let p: TypeParams = decode(v, at)?;
                check(p.n >= 1, "parameters.n", "must be positive")?;
                if self.kind == Kind::Type {
                    check((1.0..=2.0).contains(&p.exponent), "parameters.exponent", "type exponent must lie in [1, 2]")?;
                    Params::Type(p)
                } else {
                    check(p.exponent >= 2.0, "parameters.exponent", "cotype exponent must be at least 2")?;
                    Params::Cotype(p)
                }
            }
            Kind::Lorentz => Params::Lorentz(decode(v, at)?),
            Kind::Besov => {
                let p: BesovConfig = decode(v, at)?;
                p.params.validate().map_err(|e| CliError::config("parameters.params", e.to_string()))?;
                Params::Besov(p)
            }
            Kind::Integral => {
                let p: IntegralParams = decode(v, at)?;
                check(p.trials >= 1, "parameters.trials", "must be positive")?;
                check(p.r >= 1.0, "parameters.r", "must be at least 1")?;
                Params::Integral(p)
            }
            Kind::Gamma => {
                let p: GammaParams = decode(v, at)?;
                check(!p.operators.is_empty(), "parameters.operators", "need at least one operator")?;
                check(
                    p.vectors.len() == p.operators.len(),
                    "parameters.vectors",
                    format!("{} vectors for {} operators", p.vectors.len(), p.operators.len()),
                )?;
                check_lengths(&p.vectors, p.operators[0].h_dim(), "vectors")?;
                Params::Gamma(p)
            }
            Kind::Semigroup => {
                let p: SemigroupParams = decode(v, at)?;
                p.semigroup.validate().map_err(|e| CliError::config("parameters.semigroup", e.to_string()))?;
                check(p.n >= 1, "parameters.n", "must be positive")?;
                check(!p.times.is_empty(), "parameters.times", "need at least one time")?;
                Params::Semigroup(p)
            }
            Kind::Sharpness => {
                let p: SharpnessConfig = decode(v, at)?;
                check(p.n_values.len() >= 2, "parameters.n_values", "need at least two values of N")?;
                Params::Sharpness(p)
            }
        };
        Ok(params)
    }
}
