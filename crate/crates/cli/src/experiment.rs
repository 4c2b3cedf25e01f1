//! Dispatch of a validated config to the core library.

use rbound_core::besov::{besov_norm_detail, holder_hypothesis_check};
use rbound_core::gamma::verify_gamma_multiplier;
use rbound_core::integral::{verify_equidistributed_rbound, verify_integral_rbound, EquidistributionBall};
use rbound_core::measure::{lorentz_norm, lp_norm};
use rbound_core::rademacher::{gaussian_moment_coords, rademacher_moment_coords};
use rbound_core::rbound::{hilbert_rbound, rbound_lower, uniform_norm_lower};
use rbound_core::semigroup::{sharpness_experiment, thm_semigroup_experiment};
use rbound_core::typecotype::{cotype_constant_lower, growth_exponent, type_constant_lower, Inequality};
use rbound_core::{NormedSpace, OperatorFamily};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, Kind, Params};
use crate::emit::{canonical_json, csv_bytes, Table};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub kind: Kind,
    /// The config as run, with the effective seed.
    pub config: Value,
    pub result: Value,
    pub provenance: Value,
    /// Row-per-point table for CSV output, when the result has one.
    pub table: Option<Table>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Report {
    pub fn to_value(&self) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "config": self.config,
            "result": self.result,
            "provenance": self.provenance,
        })
    }

    pub fn emit(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => Ok(canonical_json(&self.to_value()).into_bytes()),
            Format::Csv => match &self.table {
                Some(t) => csv_bytes(t),
                None => csv_bytes(&Table::flatten(&self.result)),
            },
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn provenance(kind: Kind, seed: u64, methods: &[&str]) -> Value {
    json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "core_version": rbound_core::VERSION,
        "kind": kind.as_str(),
        "seed": seed,
        "methods": methods,
        "float_format": "17 significant digits",
    })
}

fn method_tag(m: rbound_core::rademacher::Method) -> &'static str {
    match m {
        rbound_core::rademacher::Method::Exact => "exact",
        rbound_core::rademacher::Method::MonteCarlo => "monte_carlo",
    }
}

/// Runs one experiment. The config must already have passed
/// [`ExperimentConfig::params`].
pub fn run_experiment(cfg: &ExperimentConfig, params: &Params) -> Result<Report> {
    let seed = cfg.seed;
    let mut table = None;
    let (result, methods): (Value, Vec<&str>) = match params {
        Params::Rademacher(p) => {
            let rc = p.sampling.with_seed(seed);
            let refs: Vec<&[f64]> = p.vectors.iter().map(|v| v.as_slice()).collect();
            let est = if p.gaussian {
                gaussian_moment_coords(&p.space, &refs, p.p, &rc)?
            } else {
                rademacher_moment_coords(&p.space, &refs, p.p, &rc)?
            };
            (to_value(&est), vec![method_tag(est.method)])
        }
        Params::Rbound(p) => {
            let rc = p.sampling.with_seed(seed);
            let family = OperatorFamily::new(p.domain.clone(), p.codomain.clone(), p.operators.clone())?;
            let est = rbound_lower(&family, p.n, &rc, &p.search)?;
            let result = json!({
                "estimate": to_value(&est),
                "hilbert_value": hilbert_rbound(&family),
                "uniform_norm_lower": uniform_norm_lower(&family, &rc),
            });
            (result, vec!["search"])
        }
        Params::Type(p) | Params::Cotype(p) => {
            let rc = p.sampling.with_seed(seed);
            let (inequality, rep) = if cfg.kind == Kind::Type {
                (Inequality::Type, type_constant_lower(&p.space, p.exponent, p.n, &rc, &p.search)?)
            } else {
                (Inequality::Cotype, cotype_constant_lower(&p.space, p.exponent, p.n, &rc, &p.search)?)
            };
            let mut result = json!({ "report": to_value(&rep) });
            if let Some(g) = &p.growth {
                let growth = growth_exponent(|n| NormedSpace::new(n, g.space_exponent), inequality, p.exponent, &g.ns, &rc, &p.search)?;
                result["growth"] = to_value(&growth);
            }
            (result, vec!["search"])
        }
        Params::Lorentz(p) => {
            let value = lorentz_norm(&p.function, p.p, p.q, p.form)?;
            let lp = lp_norm(&p.function, p.p)?;
            (json!({ "value": value, "lp_norm": lp }), vec!["exact"])
        }
        Params::Besov(p) => {
            let detail = besov_norm_detail(&p.function, &p.params)?;
            let mut result = json!({ "besov": to_value(&detail) });
            if let Some(h) = &p.holder {
                result["holder"] = to_value(&holder_hypothesis_check(&p.function, h.alpha, h.r, h.a)?);
            }
            (result, vec!["grid"])
        }
        Params::Integral(p) => {
            let rc = p.sampling.with_seed(seed);
            let rep = match &p.equidistributed {
                None => verify_integral_rbound(&p.operator, p.r, p.trials, &rc, &p.budget)?,
                Some(f0) => {
                    let ball = EquidistributionBall::new(f0.clone())?;
                    verify_equidistributed_rbound(&p.operator, &ball, p.r, p.trials, &rc, &p.budget)?
                }
            };
            (to_value(&rep), vec!["search"])
        }
        Params::Gamma(p) => {
            let rc = p.sampling.with_seed(seed);
            let rep = verify_gamma_multiplier(&p.operators, &p.vectors, &rc)?;
            let tag = if rep.exact { "exact" } else { "monte_carlo" };
            (to_value(&rep), vec![tag])
        }
        Params::Semigroup(p) => {
            let rc = p.sampling.with_seed(seed);
            let rep = thm_semigroup_experiment(&p.semigroup, p.alpha, p.p, p.q, p.n, &p.times, &rc, &p.search)?;
            (to_value(&rep), vec!["search"])
        }
        Params::Sharpness(p) => {
            let p = rbound_core::SharpnessConfig { seed, ..p.clone() };
            let rep = sharpness_experiment(&p)?;
            table = Some(Table {
                header: ["N", "Q_N", "log_fit", "slope", "expected_slope", "verdict"].map(String::from).to_vec(),
                rows: rep
                    .rows
                    .iter()
                    .map(|r| {
                        let fitted = rep.fit.intercept + rep.fit.slope * (r.n as f64).ln();
                        vec![
                            json!(r.n),
                            json!(r.q_n),
                            json!(fitted),
                            json!(rep.fit.slope),
                            json!(rep.expected_slope),
                            json!(rep.verdict.as_str()),
                        ]
                    })
                    .collect(),
            });
            (to_value(&rep), vec!["exact"])
        }
    };
    let echo = ExperimentConfig { output: None, ..cfg.clone() };
    Ok(Report { kind: cfg.kind, config: to_value(&echo), result, provenance: provenance(cfg.kind, seed, &methods), table })
}
