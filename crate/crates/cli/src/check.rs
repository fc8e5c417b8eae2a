//! Replays a report: every certificate is re-applied to `F^s` and every
//! annihilator element must kill it.

use crate::report::{CertificateOut, Report};
use logbs::bsideal::{certify, Certificate};
use logbs::frontend::{parse_operator, parse_poly};
use logbs::weyl::{act_on_twisted, TwistContext, TwistedElement};
use serde_json::json;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

pub fn run(path: &Path) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    };
    let reports: Vec<Report> = match serde_json::from_str::<serde_json::Value>(&text) {
        Ok(v @ serde_json::Value::Array(_)) => serde_json::from_value(v),
        Ok(v) => serde_json::from_value(v).map(|r| vec![r]),
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    .unwrap_or_else(|e| {
        eprintln!("error: {}: not a report: {e}", path.display());
        Vec::new()
    });
    if reports.is_empty() {
        return ExitCode::from(1);
    }
    let mut failures = Vec::new();
    let (mut certs, mut anns) = (0, 0);
    for (i, r) in reports.iter().enumerate() {
        match replay(r) {
            Ok((c, a)) => {
                certs += c;
                anns += a;
            }
            Err(e) => failures.push(format!("report {i}: {e}")),
        }
    }
    let summary = json!({
        "schema": "logbs-check/1",
        "reports": reports.len(),
        "certificates": certs,
        "annihilator_elements": anns,
        "failures": failures,
    });
    println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn replay(r: &Report) -> Result<(usize, usize), String> {
    let vars: Arc<[String]> = r.job.vars.clone().into();
    let fs = r
        .job
        .f
        .iter()
        .map(|f| parse_poly(f, &vars).map_err(|e| format!("F entry `{f}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    let ctx = TwistContext::new(r.job.vars.clone(), &fs);
    for c in &r.certificates {
        let cert = rebuild(c, &ctx)?;
        if !certify(&cert, &ctx) {
            return Err(format!("certificate [{}] for {} fails", c.source, c.generator));
        }
    }
    let ann = r.results.get("annihilator").and_then(|v| v.as_array()).cloned().unwrap_or_default();
    let gen = TwistedElement::generator(&ctx);
    for a in &ann {
        let s = a.as_str().ok_or("annihilator entries must be strings")?;
        let op = parse_operator(s, ctx.profile()).map_err(|e| format!("operator `{s}`: {e}"))?;
        let out = act_on_twisted(&op, &gen).map_err(|e| e.to_string())?;
        if !out.is_zero() {
            return Err(format!("{s} does not annihilate F^s"));
        }
    }
    Ok((r.certificates.len(), ann.len()))
}

fn rebuild(c: &CertificateOut, ctx: &Arc<TwistContext>) -> Result<Certificate, String> {
    let svars: Arc<[String]> = ctx.profile().s_names().into();
    let generator = parse_poly(&c.generator, &svars).map_err(|e| format!("generator `{}`: {e}", c.generator))?;
    let terms = c
        .terms
        .iter()
        .map(|t| {
            parse_operator(&t.operator, ctx.profile())
                .map(|p| (p, t.exponent.clone()))
                .map_err(|e| format!("operator `{}`: {e}", t.operator))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Certificate { generator, lhs_shift: c.lhs_shift.clone(), terms })
}
