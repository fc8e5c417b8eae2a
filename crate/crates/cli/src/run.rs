//! Runs one job for one command and assembles its report.

use crate::report::{
    bs_json, checks_map, factored, rational, CertificateOut, ComponentOut, CosetOut, JobEcho, Report, Status, SCHEMA,
};
use crate::{Mode, Options};
use logbs::arith::MultiPoly;
use logbs::bsideal::{
    ann_fs, b_function, bs_ideal, bs_ideal_localized, support_tower, AnnResult, BsError, BsResult, ChainConfig, Tower,
    TowerMode,
};
use logbs::frontend::{parse_job, JobSpec};
use logbs::groebner::{BasisCache, GbConfig, GroebnerError};
use logbs::monoid::{minimal_generators, MonoidIdeal};
use logbs::support::{factor_linear, structural_check, StructuralReport};
use serde_json::json;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Flags that make a result provisional.
const FLAGGING: [&str; 7] = [
    "capped",
    "residual",
    "no-stabilization",
    "heuristic-stabilization",
    "colon-truncated",
    "depends-on-inverted-s",
    "zero-ideal",
];

pub fn open_cache(dir: Option<&Path>) -> Result<Option<PathBuf>, String> {
    match dir {
        None => Ok(None),
        Some(d) => {
            std::fs::create_dir_all(d).map_err(|e| format!("cache directory {}: {e}", d.display()))?;
            Ok(Some(d.to_path_buf()))
        }
    }
}

pub fn load_job(path: &Path) -> Result<JobSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_job(&text).map_err(|e| format!("{}:{e}", path.display()))
}

struct Ctx<'a> {
    job: &'a JobSpec,
    cfg: GbConfig,
    chain: ChainConfig,
    jmax: u32,
    timings: BTreeMap<String, f64>,
}

impl Ctx<'_> {
    fn timed<T>(&mut self, stage: &str, f: impl FnOnce(&GbConfig, &ChainConfig) -> T) -> T {
        let t = Instant::now();
        let out = f(&self.cfg, &self.chain);
        *self.timings.entry(stage.to_string()).or_default() += t.elapsed().as_secs_f64();
        out
    }

    fn ideal(&self) -> Result<MonoidIdeal, String> {
        minimal_generators(self.job.r(), &self.job.k).map_err(|e| e.to_string())
    }

    fn localized(&self) -> bool {
        self.job.m.iter().any(|&x| x > 0)
    }
}

enum Failure {
    Capped(String),
    Error(String),
}

impl From<BsError> for Failure {
    fn from(e: BsError) -> Self {
        match e {
            BsError::Groebner(GroebnerError::Capped { .. }) => Failure::Capped(e.to_string()),
            e => Failure::Error(e.to_string()),
        }
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Error(e)
    }
}

pub fn execute(command: &str, mode: Option<Mode>, job: &JobSpec, opts: &Options, cache: Option<&PathBuf>) -> Report {
    let mut job = job.clone();
    let o = &mut job.options;
    if let Some(c) = opts.cap {
        o.degree_cap = c;
    }
    if let Some(w) = opts.window {
        o.window = w;
    }
    if let Some(t) = opts.timeout {
        o.timeout_secs = t;
    }
    if let Some(k) = opts.kmax {
        o.kmax = k;
    }
    if let Some(j) = opts.jmax {
        o.jmax = j;
    }
    let basis_cache = cache.and_then(|d| BasisCache::new(d).ok()).map(Arc::new);
    let cfg = GbConfig {
        degree_cap: job.options.degree_cap,
        cache: basis_cache.clone(),
        ..GbConfig::default()
    }
    .timeout(Some(Duration::from_secs(job.options.timeout_secs)));
    let chain = ChainConfig { window: job.options.window, kmax: job.options.kmax, ..ChainConfig::default() };
    let mut report = Report {
        schema: SCHEMA.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        job: JobEcho::new(&job),
        status: Status::Ok,
        error: None,
        flags: Vec::new(),
        results: json!({}),
        certificates: Vec::new(),
        checks: BTreeMap::new(),
        components: Vec::new(),
        exp_components: Vec::new(),
        cache: None,
        timings: None,
    };
    let mut ctx = Ctx { job: &job, cfg, chain, jmax: job.options.jmax, timings: BTreeMap::new() };
    let start = Instant::now();
    let outcome = dispatch(command, mode, &mut ctx, &mut report);
    match outcome {
        Ok(()) => {}
        Err(Failure::Capped(e)) => {
            report.flags.push("capped".into());
            report.error = Some(e);
        }
        Err(Failure::Error(e)) => {
            report.status = Status::Error;
            report.error = Some(e);
        }
    }
    report.flags.sort();
    report.flags.dedup();
    if report.status != Status::Error && report.flags.iter().any(|f| FLAGGING.iter().any(|p| f.starts_with(p))) {
        report.status = Status::Flagged;
    }
    report.cache = basis_cache.map(|c| c.stats());
    if opts.timings {
        ctx.timings.insert("total".into(), start.elapsed().as_secs_f64());
        report.timings = Some(ctx.timings);
    }
    report
}

fn dispatch(command: &str, mode: Option<Mode>, ctx: &mut Ctx, report: &mut Report) -> Result<(), Failure> {
    let job = ctx.job;
    if command == "bfun" {
        if job.r() != 1 {
            return Err(Failure::Error(format!("bfun needs exactly one polynomial, F has {}", job.r())));
        }
        let b = ctx.timed("bfun", |cfg, _| b_function(&job.vars, &job.f[0], cfg))?;
        let roots: Vec<_> = factor_linear(&b.b)
            .factors
            .iter()
            .map(|(l, k)| json!({ "root": rational(&-l.constant().clone()), "multiplicity": k }))
            .collect();
        report.results = json!({ "b": b.b.to_string(), "factored": factored(&b.b), "roots": roots });
        push_certificates(report, "b-function", &b.bs);
        return Ok(());
    }
    let ann = ctx.timed("ann", |cfg, _| ann_fs(&job.vars, &job.f, cfg))?;
    let ann_json: Vec<String> = ann.generators.iter().map(|g| g.to_string()).collect();
    // partial result, replaced once the command finishes
    report.results = json!({ "annihilator": ann_json });
    match command {
        "ann" => {}
        "bs" | "bs-local" | "locus" | "exp" => {
            let local = command == "bs-local" || (command != "bs" && ctx.localized());
            let b = bs_for(ctx, &ann, local)?;
            report.results = bs_json(&b);
            let rep = structural(ctx, &b, local);
            attach(report, &b, &rep, command != "bs" && command != "bs-local", command == "exp");
        }
        "tower" => {
            let t = tower(ctx, &ann, mode.unwrap_or(Mode::Power))?;
            report.results = tower_json(&t);
            for level in &t.levels {
                push_certificates(report, &format!("tower j={}", level.j), &level.result);
                report.flags.extend(level.result.flags.iter().cloned());
                if level.locus.is_none() {
                    report.flags.push("residual".into());
                }
            }
            if let Some(last) = t.levels.last() {
                report.components = last.locus.iter().flat_map(|l| l.components.iter()).map(ComponentOut::new).collect();
                report.exp_components = last.exp_components.iter().map(CosetOut::new).collect();
            }
        }
        "report" => {
            let local = ctx.localized();
            let b = bs_for(ctx, &ann, local)?;
            let rep = structural(ctx, &b, local);
            attach(report, &b, &rep, true, true);
            let mut results = json!({ "annihilator": ann_json, "bs": bs_json(&b) });
            if ctx.jmax > 0 {
                let t = tower(ctx, &ann, Mode::Power)?;
                for level in &t.levels {
                    push_certificates(report, &format!("tower j={}", level.j), &level.result);
                    report.flags.extend(level.result.flags.iter().cloned());
                }
                results["tower"] = tower_json(&t);
            }
            report.results = results;
        }
        other => return Err(Failure::Error(format!("unknown command `{other}`"))),
    }
    Ok(())
}

fn bs_for(ctx: &mut Ctx, ann: &AnnResult, local: bool) -> Result<BsResult, Failure> {
    let k = ctx.ideal()?;
    let m = ctx.job.m.clone();
    let b = if local {
        ctx.timed("bs", |cfg, chain| bs_ideal_localized(ann, &k, &m, chain, cfg))?
    } else {
        ctx.timed("bs", |cfg, _| bs_ideal(ann, &k, cfg))?
    };
    Ok(b)
}

fn structural(ctx: &mut Ctx, b: &BsResult, local: bool) -> StructuralReport {
    let r = ctx.job.r();
    let m = ctx.job.m.clone();
    ctx.timed("checks", |_, _| structural_check(b, r, local.then_some(m.as_slice())))
}

fn tower(ctx: &mut Ctx, ann: &AnnResult, mode: Mode) -> Result<Tower, Failure> {
    let k = ctx.ideal()?;
    let m = ctx.job.m.clone();
    let jmax = ctx.jmax.max(1);
    let mode = match mode {
        Mode::Scaled => TowerMode::Scaled,
        Mode::Power => TowerMode::Power,
    };
    Ok(ctx.timed("tower", |cfg, chain| support_tower(ann, &k, &m, jmax, mode, chain, cfg))?)
}

fn attach(report: &mut Report, b: &BsResult, rep: &StructuralReport, locus: bool, exp: bool) {
    push_certificates(report, "B^K", b);
    report.flags.extend(b.flags.iter().cloned());
    report.checks = checks_map(rep);
    if rep.check("conjecture-shape").is_some_and(|c| !c.passed) {
        report.flags.push("residual".into());
    }
    if locus {
        report.components = rep.locus.iter().flat_map(|l| l.components.iter()).map(ComponentOut::new).collect();
    }
    if exp {
        report.exp_components = rep.exp_components.iter().map(CosetOut::new).collect();
    }
}

fn push_certificates(report: &mut Report, source: &str, b: &BsResult) {
    report.certificates.extend(b.certificates.iter().map(|c| CertificateOut::new(source, c)));
}

fn tower_json(t: &Tower) -> serde_json::Value {
    json!({
        "mode": match t.mode { TowerMode::Scaled => "scaled", TowerMode::Power => "power" },
        "exp_constant": t.exp_constant,
        "levels": t.levels.iter().map(|l| json!({
            "j": l.j,
            "ideal": l.ideal.generators(),
            "generators": l.result.generators.iter().map(MultiPoly::to_string).collect::<Vec<_>>(),
            "factored": l.result.generators.iter().map(factored).collect::<Vec<_>>(),
            "components": l.locus.iter().flat_map(|x| x.components.iter()).map(ComponentOut::new).collect::<Vec<_>>(),
            "exp_components": l.exp_components.iter().map(CosetOut::new).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("{} [{}]", r.command, serde_json::to_value(r.status).unwrap().as_str().unwrap_or("")));
    if let Some(e) = &r.error {
        line(format!("error: {e}"));
    }
    let res = &r.results;
    if let Some(f) = res.get("factored").and_then(|v| v.as_str()) {
        line(format!("b(s) = {f}"));
    }
    if let Some(a) = res.get("annihilator").and_then(|v| v.as_array()) {
        line(format!("Ann F^s = <{}>", a.iter().filter_map(|x| x.as_str()).collect::<Vec<_>>().join(", ")));
    }
    let bs = res.get("bs").unwrap_or(res);
    if let Some(f) = bs.get("factored").and_then(|v| v.as_array()) {
        line(format!("B = <{}>", f.iter().filter_map(|x| x.as_str()).collect::<Vec<_>>().join(", ")));
    }
    if let Some(levels) = res.get("tower").unwrap_or(res).get("levels").and_then(|v| v.as_array()) {
        for l in levels {
            let gens: Vec<&str> =
                l["factored"].as_array().map(|a| a.iter().filter_map(|x| x.as_str()).collect()).unwrap_or_default();
            line(format!("level {}: <{}>", l["j"], gens.join(", ")));
        }
    }
    for c in &r.certificates {
        let terms: Vec<String> = c.terms.iter().map(|t| format!("({})*f^{:?}", t.operator, t.exponent)).collect();
        line(format!("certificate [{}] {}: {}", c.source, c.generator, terms.join(" + ")));
    }
    for c in &r.components {
        line(format!("component {}", c.text));
    }
    for c in &r.exp_components {
        line(format!("exp component {}", c.text));
    }
    for (name, c) in &r.checks {
        line(format!("check {name}: {}{}", if c.passed { "pass" } else { "FAIL" }, if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) }));
    }
    if !r.flags.is_empty() {
        line(format!("flags: {}", r.flags.join(", ")));
    }
    out
}
