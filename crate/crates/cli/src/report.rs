//! JSON report types. Rationals and polynomials are written as strings so
//! that no value passes through floating point.

use logbs::arith::Rational;
use logbs::bsideal::{BsResult, Certificate, ChainTrace};
use logbs::frontend::JobSpec;
use logbs::groebner::CacheStats;
use logbs::support::{factor_linear, AffineFlat, StructuralReport, TorsionCoset};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA: &str = "logbs-report/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub command: String,
    pub job: JobEcho,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub flags: Vec<String>,
    pub results: serde_json::Value,
    pub certificates: Vec<CertificateOut>,
    pub checks: BTreeMap<String, CheckOut>,
    pub components: Vec<ComponentOut>,
    pub exp_components: Vec<CosetOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache: Option<CacheStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Flagged,
    Error,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobEcho {
    pub vars: Vec<String>,
    #[serde(rename = "F")]
    pub f: Vec<String>,
    #[serde(rename = "K")]
    pub k: Vec<Vec<u32>>,
    pub m: Vec<u32>,
    pub options: OptionsEcho,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OptionsEcho {
    pub window: u32,
    pub cap: u64,
    pub timeout: u64,
    pub kmax: u32,
    pub jmax: u32,
}

impl JobEcho {
    pub fn new(job: &JobSpec) -> Self {
        let o = &job.options;
        JobEcho {
            vars: job.vars.clone(),
            f: job.f.iter().map(|f| f.to_string()).collect(),
            k: job.k.clone(),
            m: job.m.clone(),
            options: OptionsEcho { window: o.window, cap: o.degree_cap, timeout: o.timeout_secs, kmax: o.kmax, jmax: o.jmax },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateOut {
    /// Which computation produced it, e.g. `B^K` or `tower j=2`.
    pub source: String,
    pub generator: String,
    pub lhs_shift: Vec<u32>,
    pub terms: Vec<TermOut>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermOut {
    pub operator: String,
    /// Exponent vector `v_j` of the monoid generator the operator multiplies.
    pub exponent: Vec<u32>,
}

impl CertificateOut {
    pub fn new(source: &str, c: &Certificate) -> Self {
        CertificateOut {
            source: source.to_string(),
            generator: c.generator.to_string(),
            lhs_shift: c.lhs_shift.clone(),
            terms: c.terms.iter().map(|(p, v)| TermOut { operator: p.to_string(), exponent: v.clone() }).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckOut {
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentOut {
    pub dimension: usize,
    pub equations: Vec<String>,
    pub text: String,
}

impl ComponentOut {
    pub fn new(f: &AffineFlat) -> Self {
        ComponentOut {
            dimension: f.dimension(),
            equations: f.normals().iter().map(|l| format!("{l} = 0")).collect(),
            text: f.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CosetOut {
    pub dimension: usize,
    pub lattice: Vec<Vec<i64>>,
    pub phases: Vec<String>,
    pub text: String,
}

impl CosetOut {
    pub fn new(c: &TorsionCoset) -> Self {
        CosetOut {
            dimension: c.dimension(),
            lattice: c.lattice().to_vec(),
            phases: c.phases().iter().map(rational).collect(),
            text: c.to_string(),
        }
    }
}

pub fn rational(q: &Rational) -> String {
    q.to_string()
}

/// `c·(l_1)^k_1·…·residual`, or the expanded polynomial when nothing splits off.
pub fn factored(p: &logbs::arith::MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    if p.is_constant() {
        return p.to_string();
    }
    let f = factor_linear(p);
    if f.factors.is_empty() {
        return p.to_string();
    }
    let mut parts = Vec::new();
    if f.unit != Rational::from_integer(1.into()) {
        parts.push(rational(&f.unit));
    }
    for (l, k) in &f.factors {
        parts.push(if *k == 1 { format!("({l})") } else { format!("({l})^{k}") });
    }
    if !f.residual.is_constant() {
        parts.push(format!("({})", f.residual));
    }
    parts.join("*")
}

pub fn chain_json(c: &ChainTrace) -> serde_json::Value {
    serde_json::json!({
        "m": c.m,
        "window": c.window,
        "k_star": c.k_star,
        "steps": c.steps.iter().map(|s| serde_json::json!({
            "k": s.k,
            "generators": s.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "truncation": s.truncation,
            "degree_stabilized": s.degree_stabilized,
        })).collect::<Vec<_>>(),
    })
}

pub fn bs_json(b: &BsResult) -> serde_json::Value {
    serde_json::json!({
        "generators": b.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "factored": b.generators.iter().map(factored).collect::<Vec<_>>(),
        "empty_locus": b.empty_locus,
        "chain": b.chain.as_ref().map(chain_json),
    })
}

pub fn checks_map(rep: &StructuralReport) -> BTreeMap<String, CheckOut> {
    rep.checks
        .iter()
        .map(|c| (c.name.to_string(), CheckOut { passed: c.passed, detail: c.detail.clone() }))
        .collect()
}
