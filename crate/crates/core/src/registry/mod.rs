//! The executable catalog: every congruence and identity as a
//! `(domain, evaluator)` pair, plus the suite runner that turns them into reports.

mod checks;
pub mod context;
pub mod convolution;

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, ExactRational, Padic};
use crate::bernoulli::{BernoulliCache, BernoulliError};
use crate::combinatorics::CombError;

pub use checks::gessel_start;
pub use context::{bernoulli_bound, ContextError, PrimeContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CheckId(pub u8);

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{:02}", self.0)
    }
}

impl std::str::FromStr for CheckId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let digits = s.trim().trim_start_matches(['C', 'c']);
        let n: u8 = digits.parse().map_err(|_| format!("not a check id: {s}"))?;
        if (1..=50).contains(&n) {
            Ok(CheckId(n))
        } else {
            Err(format!("no such check: {s}"))
        }
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedHypothesis,
    Exploratory,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedHypothesis => "skipped-hypothesis",
            Status::Exploratory => "exploratory",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Int(i64),
    Text(&'static str),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Text(s) => f.write_str(s),
        }
    }
}

/// Ordered named parameters of one evaluation point.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params(pub Vec<(&'static str, Param)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn int(mut self, key: &'static str, v: impl TryInto<i64>) -> Self {
        self.0.push((key, Param::Int(v.try_into().ok().expect("parameter fits i64"))));
        self
    }

    pub fn text(mut self, key: &'static str, v: &'static str) -> Self {
        self.0.push((key, Param::Text(v)));
        self
    }

    pub fn get_int(&self, key: &str) -> i64 {
        match self.0.iter().find(|(k, _)| *k == key) {
            Some((_, Param::Int(v))) => *v,
            _ => panic!("missing integer parameter {key}"),
        }
    }

    pub fn get_text(&self, key: &str) -> &'static str {
        match self.0.iter().find(|(k, _)| *k == key) {
            Some((_, Param::Text(v))) => v,
            _ => panic!("missing text parameter {key}"),
        }
    }

    pub fn has(&self, key: &str) -> bool {
        self.0.iter().any(|(k, _)| *k == key)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(";"))
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            match v {
                Param::Int(i) => m.serialize_entry(k, i)?,
                Param::Text(t) => m.serialize_entry(k, t)?,
            }
        }
        m.end()
    }
}

/// One evaluated point of one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub id: CheckId,
    pub p: Option<u64>,
    pub params: Params,
    pub modulus: String,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Bernoulli(#[from] BernoulliError),
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error("digit 1 taken of a quantity with valuation {found}")]
    NotDivisible { found: i64 },
    #[error("expected valuation >= {needed}, found {found}")]
    Valuation { needed: i64, found: i64 },
}

/// What an evaluator hands back before it becomes a report.
pub enum Outcome {
    /// `lhs ≡ rhs (mod p^k)`.
    Congruence { k: u32, lhs: Padic, rhs: Padic },
    /// Equality of exact rationals.
    Exact { lhs: ExactRational, rhs: ExactRational },
    /// A yes/no statement (criteria, equivalences) with printable sides.
    Boolean { modulus: String, lhs: String, rhs: String, holds: bool },
    Skipped(String),
    /// An outcome with a remark for the report, e.g. an empty summation window.
    Noted(Box<Outcome>, String),
}

pub type Eval = Result<Outcome, EvalError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Cap on `2n` in every `n`-swept window.
    pub max_2n: Option<u64>,
    /// Largest order for the exact identities.
    pub max_order: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_2n: None, max_order: 40 }
    }
}

impl Limits {
    /// Even `2n` in `[lo, hi]`, clipped by the cap.
    pub fn two_n(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> {
        let hi = match self.max_2n {
            Some(c) => hi.min(c as i64),
            None => hi,
        };
        (lo..=hi).filter(|x| x % 2 == 0)
    }
}

pub type PrimeDomain = fn(&PrimeContext<'_>, &Limits) -> Vec<Params>;
pub type PrimeEval = fn(&PrimeContext<'_>, &Params) -> Eval;
pub type GlobalDomain = fn(&BernoulliCache, &Limits) -> Vec<Params>;
pub type GlobalEval = fn(&BernoulliCache, &Params) -> Eval;

#[derive(Clone, Copy)]
pub enum Scope {
    PerPrime { min_p: u64, domain: PrimeDomain, eval: PrimeEval },
    Global { domain: GlobalDomain, eval: GlobalEval },
}

#[derive(Clone, Copy)]
pub struct CheckDefinition {
    pub id: CheckId,
    pub title: &'static str,
    pub exploratory: bool,
    pub scope: Scope,
}

impl fmt::Debug for CheckDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CheckDefinition").field("id", &self.id).field("title", &self.title).finish()
    }
}

pub fn catalog() -> &'static [CheckDefinition] {
    checks::CATALOG
}

pub fn definition(id: CheckId) -> Option<&'static CheckDefinition> {
    catalog().iter().find(|d| d.id == id)
}

/// Params carrying a `form=..` whose name starts with `x-` are exploratory variants.
fn is_variant(params: &Params) -> bool {
    params.0.iter().any(|(k, v)| *k == "form" && matches!(v, Param::Text(t) if t.starts_with("x-")))
}

fn render(x: &Padic, k: u32) -> String {
    match x.scaled_residue(k) {
        Ok((0, r)) => r.to_string(),
        Ok((j, r)) => format!("{r}/{}^{j}", x.prime()),
        Err(_) => "?".to_string(),
    }
}

fn finish(def: &CheckDefinition, p: Option<u64>, params: Params, eval: Eval) -> CongruenceReport {
    if let Ok(Outcome::Noted(inner, note)) = eval {
        let mut r = finish(def, p, params, Ok(*inner));
        r.note = Some(match r.note {
            Some(n) => format!("{note}; {n}"),
            None => note,
        });
        return r;
    }
    let mut report = match eval {
        Ok(Outcome::Congruence { k, lhs, rhs }) => {
            let pr = lhs.prime();
            let (status, note) = match lhs.congruent(&rhs, k as i64) {
                Ok(true) => (Status::Pass, None),
                Ok(false) => (Status::Fail, None),
                Err(e) => (Status::Fail, Some(e.to_string())),
            };
            CongruenceReport {
                id: def.id,
                p,
                params,
                modulus: format!("{pr}^{k}"),
                lhs: render(&lhs, k),
                rhs: render(&rhs, k),
                status,
                note,
            }
        }
        Ok(Outcome::Exact { lhs, rhs }) => CongruenceReport {
            id: def.id,
            p,
            params,
            modulus: "exact".into(),
            status: if lhs == rhs { Status::Pass } else { Status::Fail },
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            note: None,
        },
        Ok(Outcome::Boolean { modulus, lhs, rhs, holds }) => CongruenceReport {
            id: def.id,
            p,
            params,
            modulus,
            lhs,
            rhs,
            status: if holds { Status::Pass } else { Status::Fail },
            note: None,
        },
        Ok(Outcome::Noted(..)) => unreachable!(),
        Ok(Outcome::Skipped(why)) => CongruenceReport {
            id: def.id,
            p,
            params,
            modulus: "-".into(),
            lhs: "-".into(),
            rhs: "-".into(),
            status: Status::SkippedHypothesis,
            note: Some(why),
        },
        Err(e) => CongruenceReport {
            id: def.id,
            p,
            params,
            modulus: "-".into(),
            lhs: "-".into(),
            rhs: "-".into(),
            status: Status::Fail,
            note: Some(e.to_string()),
        },
    };
    if (def.exploratory || is_variant(&report.params)) && report.status != Status::SkippedHypothesis {
        let agrees = report.status == Status::Pass;
        report.status = Status::Exploratory;
        let verdict = if agrees { "agrees" } else { "differs" };
        report.note = Some(match report.note.take() {
            Some(n) => format!("{verdict}; {n}"),
            None => verdict.to_string(),
        });
    }
    report
}

/// Evaluates one point of a per-prime check.
pub fn run_check(id: CheckId, ctx: &PrimeContext<'_>, params: Params) -> CongruenceReport {
    let def = definition(id).expect("catalogued id");
    match def.scope {
        Scope::PerPrime { min_p, eval, .. } => {
            let out = if ctx.p < min_p {
                Ok(Outcome::Skipped(format!("needs p >= {min_p}")))
            } else {
                eval(ctx, &params)
            };
            finish(def, Some(ctx.p), params, out)
        }
        Scope::Global { .. } => panic!("{id} does not depend on a prime; use run_global_check"),
    }
}

pub fn run_global_check(id: CheckId, cache: &BernoulliCache, params: Params) -> CongruenceReport {
    let def = definition(id).expect("catalogued id");
    match def.scope {
        Scope::Global { eval, .. } => {
            let out = eval(cache, &params);
            finish(def, None, params, out)
        }
        Scope::PerPrime { .. } => panic!("{id} needs a prime context"),
    }
}

/// All points of the selected per-prime checks for one prime, in domain order.
pub fn run_prime(ctx: &PrimeContext<'_>, ids: &[CheckId], limits: &Limits) -> Vec<CongruenceReport> {
    let mut out = Vec::new();
    for def in catalog().iter().filter(|d| ids.contains(&d.id)) {
        if let Scope::PerPrime { min_p, domain, .. } = def.scope {
            if ctx.p < min_p {
                out.push(finish(def, Some(ctx.p), Params::new(), Ok(Outcome::Skipped(format!("needs p >= {min_p}")))));
                continue;
            }
            for params in domain(ctx, limits) {
                out.push(run_check(def.id, ctx, params));
            }
        }
    }
    out
}

/// All points of the selected prime-independent checks.
pub fn run_global(cache: &BernoulliCache, ids: &[CheckId], limits: &Limits) -> Vec<CongruenceReport> {
    let mut out = Vec::new();
    for def in catalog().iter().filter(|d| ids.contains(&d.id)) {
        if let Scope::Global { domain, .. } = def.scope {
            for params in domain(cache, limits) {
                out.push(run_global_check(def.id, cache, params));
            }
        }
    }
    out
}

/// Stable order: check id, then prime (prime-free records first), then domain order.
pub fn normalize(records: &mut [CongruenceReport]) {
    records.sort_by_key(|r| (r.id, r.p));
}

/// Sequential suite over a list of primes.
pub fn run_suite(
    cache: &BernoulliCache,
    primes: &[u64],
    ids: &[CheckId],
    k: u32,
    limits: &Limits,
) -> Result<Vec<CongruenceReport>, ContextError> {
    let mut records = run_global(cache, ids, limits);
    for &p in primes {
        let ctx = PrimeContext::new(cache, p, k)?;
        records.extend(run_prime(&ctx, ids, limits));
    }
    normalize(&mut records);
    Ok(records)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub exploratory: usize,
}

pub fn summarize(records: &[CongruenceReport]) -> BTreeMap<String, Counts> {
    let mut m: BTreeMap<String, Counts> = BTreeMap::new();
    for r in records {
        let c = m.entry(r.id.to_string()).or_default();
        match r.status {
            Status::Pass => c.pass += 1,
            Status::Fail => c.fail += 1,
            Status::SkippedHypothesis => c.skipped += 1,
            Status::Exploratory => c.exploratory += 1,
        }
    }
    m
}

/// C25 readings that pass on every evaluated point.
pub fn winning_readings(records: &[CongruenceReport]) -> Vec<&'static str> {
    let mut seen: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.id == CheckId(25) && r.params.has("reading")) {
        let e = seen.entry(r.params.get_text("reading")).or_default();
        match r.status {
            Status::Pass => e.0 += 1,
            Status::Fail => e.1 += 1,
            _ => {}
        }
    }
    seen.into_iter().filter(|(_, (ok, bad))| *ok > 0 && *bad == 0).map(|(k, _)| k).collect()
}

pub use checks::C25_READINGS;

/// How C34 splits the cubic-convolution expansion into rows; printed in report headers.
pub const ROW_ASSUMPTION: &str =
    "r3 = multiple-harmonic terms, r2 = u-weighted binomial convolution, r1 = remaining harmonic term";
