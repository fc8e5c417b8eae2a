//! Input language: polynomials and operators over named variables, and job
//! documents.
//!
//! Expressions use rational literals, variable names, `+ - * / ^` and
//! parentheses. Multiplication is explicit, `^` takes a non-negative integer
//! exponent and `/` only divides by a nonzero constant. A job document is a
//! sequence of `key = value` entries separated by newlines or `;`, with
//! `#` comments:
//!
//! ```text
//! vars = [x, y]
//! F = [x, y]
//! K = [[1, 1]]
//! m = [1, 0]
//! options = [window = 3, cap = 40, timeout = 600]
//! ```

use crate::arith::{MultiPoly, Rational};
use crate::weyl::{AlgebraProfile, WeylElement};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown variable `{name}`")]
    UnknownVariable { line: usize, col: usize, name: String },
    #[error("missing required entry `{0}`")]
    Missing(&'static str),
    #[error("{what}: expected length {expected}, got {got}")]
    Dimension { what: String, expected: usize, got: usize },
    #[error("invalid job: {0}")]
    Invalid(String),
}

impl FrontendError {
    fn shifted(self, text: &str, offset: usize) -> FrontendError {
        // errors from a sub-slice carry positions relative to that slice
        let fix = |line: usize, col: usize| {
            let base = &text[..offset];
            let base_line = base.matches('\n').count() + 1;
            let base_col = offset - base.rfind('\n').map_or(0, |i| i + 1) + 1;
            if line == 1 {
                (base_line, base_col + col - 1)
            } else {
                (base_line + line - 1, col)
            }
        };
        match self {
            FrontendError::Syntax { line, col, msg } => {
                let (line, col) = fix(line, col);
                FrontendError::Syntax { line, col, msg }
            }
            FrontendError::UnknownVariable { line, col, name } => {
                let (line, col) = fix(line, col);
                FrontendError::UnknownVariable { line, col, name }
            }
            other => other,
        }
    }
}

/// Ring elements the expression parser can build.
pub trait Parse: Clone + Sized {
    type Ctx;
    fn constant(ctx: &Self::Ctx, c: Rational) -> Self;
    fn variable(ctx: &Self::Ctx, name: &str) -> Option<Self>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn pow(&self, e: u32) -> Self;
    fn as_constant(&self) -> Option<Rational>;
}

impl Parse for MultiPoly {
    type Ctx = Arc<[String]>;
    fn constant(ctx: &Self::Ctx, c: Rational) -> Self {
        MultiPoly::constant(ctx.clone(), c)
    }
    fn variable(ctx: &Self::Ctx, name: &str) -> Option<Self> {
        ctx.iter().position(|v| v == name).map(|i| MultiPoly::var(ctx.clone(), i))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: u32) -> Self {
        MultiPoly::pow(self, e)
    }
    fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else {
            self.constant_value()
        }
    }
}

impl Parse for WeylElement {
    type Ctx = Arc<AlgebraProfile>;
    fn constant(ctx: &Self::Ctx, c: Rational) -> Self {
        WeylElement::constant(ctx, c)
    }
    fn variable(ctx: &Self::Ctx, name: &str) -> Option<Self> {
        ctx.slot_of(name).map(|i| WeylElement::var(ctx, i))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: u32) -> Self {
        WeylElement::pow(self, e)
    }
    fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return Some(self.terms()[0].1.clone());
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer, FrontendError> {
    let mut toks = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start = (line, col);
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            toks.push((Tok::Num(s.parse().expect("digits")), start.0, start.1));
            col += j - i;
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            toks.push((Tok::Ident(chars[i..j].iter().collect()), start.0, start.1));
            col += j - i;
            i = j;
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), line, col));
            col += 1;
            i += 1;
        } else {
            return Err(FrontendError::Syntax { line, col, msg: format!("unexpected character `{c}`") });
        }
    }
    toks.push((Tok::End, line, col));
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &(Tok, usize, usize) {
        &self.toks[self.pos]
    }
    fn next(&mut self) -> (Tok, usize, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }
    fn error(&self, msg: impl Into<String>) -> FrontendError {
        let (_, line, col) = self.peek();
        FrontendError::Syntax { line: *line, col: *col, msg: msg.into() }
    }
}

fn binding(op: char) -> Option<(u8, u8)> {
    match op {
        '+' | '-' => Some((1, 2)),
        '*' | '/' => Some((3, 4)),
        '^' => Some((7, 6)),
        _ => None,
    }
}

fn expr<T: Parse>(lx: &mut Lexer, ctx: &T::Ctx, min_bp: u8) -> Result<T, FrontendError> {
    let (tok, line, col) = lx.next();
    let mut lhs = match tok {
        Tok::Num(n) => T::constant(ctx, Rational::from_integer(n)),
        Tok::Ident(name) => T::variable(ctx, &name).ok_or(FrontendError::UnknownVariable { line, col, name })?,
        Tok::Op('(') => {
            let e = expr::<T>(lx, ctx, 0)?;
            match lx.next() {
                (Tok::Op(')'), _, _) => e,
                (_, line, col) => return Err(FrontendError::Syntax { line, col, msg: "expected `)`".into() }),
            }
        }
        // unary minus binds looser than `^` and tighter than `*`
        Tok::Op('-') => expr::<T>(lx, ctx, 5)?.neg(),
        Tok::Op('+') => expr::<T>(lx, ctx, 5)?,
        Tok::End => return Err(FrontendError::Syntax { line, col, msg: "unexpected end of input".into() }),
        Tok::Op(c) => return Err(FrontendError::Syntax { line, col, msg: format!("unexpected `{c}`") }),
    };
    loop {
        let op = match lx.peek() {
            (Tok::Op(c), _, _) if binding(*c).is_some() => *c,
            (Tok::End, _, _) | (Tok::Op(')'), _, _) => break,
            (Tok::Ident(_) | Tok::Num(_) | Tok::Op('('), _, _) => {
                return Err(lx.error("implicit multiplication is not allowed; use `*`"));
            }
            _ => return Err(lx.error("unexpected token")),
        };
        let (lbp, rbp) = binding(op).expect("binary operator");
        if lbp < min_bp {
            break;
        }
        lx.next();
        if op == '^' {
            let e = match lx.next() {
                (Tok::Num(n), line, col) => {
                    n.to_u32().ok_or(FrontendError::Syntax { line, col, msg: "exponent too large".into() })?
                }
                (_, line, col) => {
                    return Err(FrontendError::Syntax { line, col, msg: "exponent must be a non-negative integer".into() });
                }
            };
            lhs = lhs.pow(e);
            continue;
        }
        let (_, line, col) = lx.peek().clone();
        let rhs = expr::<T>(lx, ctx, rbp)?;
        lhs = match op {
            '+' => lhs.add(&rhs),
            '-' => lhs.sub(&rhs),
            '*' => lhs.mul(&rhs),
            '/' => match rhs.as_constant() {
                Some(c) if !c.is_zero() => lhs.mul(&T::constant(ctx, c.recip())),
                _ => return Err(FrontendError::Syntax { line, col, msg: "division only by a nonzero constant".into() }),
            },
            _ => unreachable!(),
        };
    }
    Ok(lhs)
}

/// Parses a full expression.
pub fn parse_expr<T: Parse>(text: &str, ctx: &T::Ctx) -> Result<T, FrontendError> {
    let mut lx = lex(text)?;
    let out = expr::<T>(&mut lx, ctx, 0)?;
    if lx.peek().0 != Tok::End {
        return Err(lx.error("unexpected trailing input"));
    }
    Ok(out)
}

pub fn parse_poly(text: &str, vars: &Arc<[String]>) -> Result<MultiPoly, FrontendError> {
    parse_expr::<MultiPoly>(text, vars)
}

pub fn parse_operator(text: &str, profile: &Arc<AlgebraProfile>) -> Result<WeylElement, FrontendError> {
    parse_expr::<WeylElement>(text, profile)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobOptions {
    pub window: u32,
    pub degree_cap: u64,
    pub timeout_secs: u64,
    pub kmax: u32,
    pub jmax: u32,
}

impl Default for JobOptions {
    fn default() -> Self {
        JobOptions { window: 3, degree_cap: 40, timeout_secs: 600, kmax: 12, jmax: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub vars: Vec<String>,
    pub f: Vec<MultiPoly>,
    pub k: Vec<Vec<u32>>,
    pub m: Vec<u32>,
    pub options: JobOptions,
}

impl JobSpec {
    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn r(&self) -> usize {
        self.f.len()
    }

    /// Canonical job text; parsing it gives back the same job.
    pub fn to_text(&self) -> String {
        let vecs = |vs: &[Vec<u32>]| vs.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(", ");
        let mut s = String::new();
        let _ = writeln!(s, "vars = [{}]", self.vars.join(", "));
        let _ = writeln!(s, "F = [{}]", self.f.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", "));
        let _ = writeln!(s, "K = [{}]", vecs(&self.k));
        let _ = writeln!(s, "m = {:?}", self.m);
        let o = &self.options;
        let _ = writeln!(
            s,
            "options = [window = {}, cap = {}, timeout = {}, kmax = {}, jmax = {}]",
            o.window, o.degree_cap, o.timeout_secs, o.kmax, o.jmax
        );
        s
    }
}

/// Splits at top-level occurrences of `seps` (outside brackets), keeping offsets.
fn split_top<'a>(text: &'a str, offset: usize, seps: &[char]) -> Vec<(&'a str, usize)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ if depth == 0 && seps.contains(&c) => {
                out.push((&text[start..i], offset + start));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((&text[start..], offset + start));
    out
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let base = &text[..offset];
    (base.matches('\n').count() + 1, offset - base.rfind('\n').map_or(0, |i| i + 1) + 1)
}

fn syntax(doc: &str, offset: usize, msg: impl Into<String>) -> FrontendError {
    let (line, col) = position(doc, offset);
    FrontendError::Syntax { line, col, msg: msg.into() }
}

/// Trims a slice and returns it with its adjusted offset.
fn trimmed(s: &str, offset: usize) -> (&str, usize) {
    let lead = s.len() - s.trim_start().len();
    (s.trim(), offset + lead)
}

/// Items of a bracketed list.
fn list_items<'a>(doc: &str, s: &'a str, offset: usize) -> Result<Vec<(&'a str, usize)>, FrontendError> {
    let (s, offset) = trimmed(s, offset);
    if !s.starts_with('[') || !s.ends_with(']') {
        return Err(syntax(doc, offset, "expected a bracketed list"));
    }
    let inner = &s[1..s.len() - 1];
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(split_top(inner, offset + 1, &[',']).into_iter().map(|(t, o)| trimmed(t, o)).collect())
}

fn nat_list(doc: &str, s: &str, offset: usize) -> Result<Vec<u32>, FrontendError> {
    list_items(doc, s, offset)?
        .into_iter()
        .map(|(t, o)| t.parse::<u32>().map_err(|_| syntax(doc, o, format!("expected a natural number, got `{t}`"))))
        .collect()
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| match l.find('#') {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l.len() - i)),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn parse_job(text: &str) -> Result<JobSpec, FrontendError> {
    let doc = strip_comments(text);
    let mut entries: BTreeMap<String, (&str, usize)> = BTreeMap::new();
    for (stmt, off) in split_top(&doc, 0, &['\n', ';']) {
        let (stmt, off) = trimmed(stmt, off);
        if stmt.is_empty() {
            continue;
        }
        let Some(eq) = stmt.find('=') else {
            return Err(syntax(&doc, off, "expected `key = value`"));
        };
        let key = stmt[..eq].trim().to_string();
        if !["vars", "F", "K", "m", "options"].contains(&key.as_str()) {
            return Err(syntax(&doc, off, format!("unknown entry `{key}`")));
        }
        if entries.insert(key.clone(), (&stmt[eq + 1..], off + eq + 1)).is_some() {
            return Err(syntax(&doc, off, format!("duplicate entry `{key}`")));
        }
    }
    let (vtext, voff) = *entries.get("vars").ok_or(FrontendError::Missing("vars"))?;
    let mut vars = Vec::new();
    for (name, o) in list_items(&doc, vtext, voff)? {
        let ok = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(syntax(&doc, o, format!("invalid variable name `{name}`")));
        }
        if vars.contains(&name.to_string()) {
            return Err(syntax(&doc, o, format!("repeated variable `{name}`")));
        }
        vars.push(name.to_string());
    }
    if vars.is_empty() {
        return Err(FrontendError::Invalid("at least one variable is required".into()));
    }
    let names: Arc<[String]> = vars.clone().into();
    let (ftext, foff) = *entries.get("F").ok_or(FrontendError::Missing("F"))?;
    let mut f = Vec::new();
    for (item, o) in list_items(&doc, ftext, foff)? {
        let p = parse_poly(item, &names).map_err(|e| e.shifted(&doc, o))?;
        if p.is_zero() {
            return Err(syntax(&doc, o, "F entries must be nonzero"));
        }
        f.push(p);
    }
    if f.is_empty() {
        return Err(FrontendError::Invalid("F must have at least one entry".into()));
    }
    let r = f.len();
    let (ktext, koff) = *entries.get("K").ok_or(FrontendError::Missing("K"))?;
    let mut k = Vec::new();
    for (item, o) in list_items(&doc, ktext, koff)? {
        let v = nat_list(&doc, item, o)?;
        if v.len() != r {
            return Err(FrontendError::Dimension { what: format!("K generator {v:?}"), expected: r, got: v.len() });
        }
        if v.iter().all(|&x| x == 0) {
            return Err(syntax(&doc, o, "K generators must be nonzero"));
        }
        k.push(v);
    }
    if k.is_empty() {
        return Err(FrontendError::Invalid("K needs at least one generator".into()));
    }
    let m = match entries.get("m") {
        None => vec![0; r],
        Some(&(t, o)) => {
            let m = nat_list(&doc, t, o)?;
            if m.len() != r {
                return Err(FrontendError::Dimension { what: "m".into(), expected: r, got: m.len() });
            }
            m
        }
    };
    let mut options = JobOptions::default();
    if let Some(&(t, o)) = entries.get("options") {
        for (item, io) in list_items(&doc, t, o)? {
            let Some(eq) = item.find('=') else {
                return Err(syntax(&doc, io, "expected `name = value`"));
            };
            let key = item[..eq].trim();
            let val = item[eq + 1..].trim();
            let num: u64 = val.parse().map_err(|_| syntax(&doc, io + eq + 1, format!("expected a number, got `{val}`")))?;
            let small = |x: u64| u32::try_from(x).map_err(|_| syntax(&doc, io, "value too large"));
            match key {
                "window" => options.window = small(num)?,
                "cap" => options.degree_cap = num,
                "timeout" => options.timeout_secs = num,
                "kmax" => options.kmax = small(num)?,
                "jmax" => options.jmax = small(num)?,
                _ => return Err(syntax(&doc, io, format!("unknown option `{key}`"))),
            }
        }
    }
    if options.window == 0 || options.jmax == 0 {
        return Err(FrontendError::Invalid("window and jmax must be positive".into()));
    }
    Ok(JobSpec { vars, f, k, m, options })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, var_names};

    #[test]
    fn poly_examples() {
        let v = var_names(&["x", "y"]);
        let x = MultiPoly::var(v.clone(), 0);
        let y = MultiPoly::var(v.clone(), 1);
        assert_eq!(parse_poly("x^2 + y^2", &v).unwrap(), &x.pow(2) + &y.pow(2));
        let p = parse_poly("3/4*x*y^3 - 1", &v).unwrap();
        assert_eq!(p, &(&x * &y.pow(3)).scale(&rat(3, 4)) - &MultiPoly::one(v.clone()));
        assert!(matches!(parse_poly("x + z", &v), Err(FrontendError::UnknownVariable { col: 5, .. })));
        assert_eq!(parse_poly("-x^2", &v).unwrap(), -&x.pow(2));
        assert_eq!(parse_poly("2^3*x", &v).unwrap(), x.scale(&int(8)));
        assert_eq!(parse_poly("(x - y)*(x + y)", &v).unwrap(), &x.pow(2) - &y.pow(2));
    }

    #[test]
    fn poly_errors() {
        let v = var_names(&["x", "y"]);
        assert!(matches!(parse_poly("2x", &v), Err(FrontendError::Syntax { col: 2, .. })));
        assert!(matches!(parse_poly("x/y", &v), Err(FrontendError::Syntax { .. })));
        assert!(matches!(parse_poly("x/0", &v), Err(FrontendError::Syntax { .. })));
        assert!(matches!(parse_poly("x^-1", &v), Err(FrontendError::Syntax { .. })));
        assert!(matches!(parse_poly("(x", &v), Err(FrontendError::Syntax { .. })));
        assert!(matches!(parse_poly("", &v), Err(FrontendError::Syntax { .. })));
    }

    #[test]
    fn operators() {
        let p = AlgebraProfile::dns(vec!["x".into()], 1);
        let e = parse_operator("dx*x - x*dx", &p).unwrap();
        assert_eq!(e, WeylElement::one(&p));
        let e = parse_operator("x^2 * dx^2 + 4 * x * dx + 2", &p).unwrap();
        assert_eq!(parse_operator(&e.to_string(), &p).unwrap(), e);
    }

    #[test]
    fn job_examples() {
        let j = parse_job("vars=[x,y]; F=[x, y]; K=[[1,1]]").unwrap();
        assert_eq!((j.r(), j.n()), (2, 2));
        assert_eq!(j.m, vec![0, 0]);
        assert_eq!(j.options, JobOptions::default());
        assert!(matches!(parse_job("vars=[x,y]; F=[x, y]; K=[[1,1,1]]"), Err(FrontendError::Dimension { .. })));
        assert!(matches!(parse_job("vars=[x,y]; F=[x, y]; K=[[0,0]]"), Err(FrontendError::Syntax { .. })));
        assert!(matches!(parse_job("vars=[x]; K=[[1]]"), Err(FrontendError::Missing("F"))));
        let j = parse_job("# node\nvars = [x, y]\nF = [x^2 + y^2]\nK = [[1]]\noptions = [window = 4, cap = 30]\n").unwrap();
        assert_eq!(j.options.window, 4);
        assert_eq!(j.options.degree_cap, 30);
        assert_eq!(parse_job(&j.to_text()).unwrap(), j);
    }

    #[test]
    fn job_error_positions() {
        let err = parse_job("vars = [x, y]\nF = [x + 2z]\nK = [[1]]").unwrap_err();
        assert_eq!(err, FrontendError::Syntax { line: 2, col: 11, msg: "implicit multiplication is not allowed; use `*`".into() });
        let err = parse_job("vars = [x]\nF = [x, w]\nK = [[1, 1]]").unwrap_err();
        assert!(matches!(err, FrontendError::UnknownVariable { line: 2, col: 9, .. }));
    }
}
