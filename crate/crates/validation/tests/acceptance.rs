//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use congruence_core::arith::{valuation, PadicResidue};
use congruence_core::bernoulli::{primes_in, von_staudt_denominator, BernoulliCache};
use congruence_core::combinatorics::{generalized, mhs, mhs_newton};
use congruence_core::hensel::lift_root;
use congruence_core::registry::{
    gessel_start, run_check, run_global, CheckId, CongruenceReport, Limits, Params, PrimeContext, Status,
    C25_READINGS,
};
use congruence_lab::config::RunConfig;
use congruence_lab::report::Report;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn of(records: &[CongruenceReport], id: u8) -> impl Iterator<Item = &CongruenceReport> {
    records.iter().filter(move |r| r.id == CheckId(id))
}

fn exact_identities() -> Verdict {
    let start = Instant::now();
    let cache = BernoulliCache::new(48);
    let records = run_global(&cache, &[CheckId(8), CheckId(9)], &Limits::default());
    let miki_orders: Vec<i64> = of(&records, 8).map(|r| r.params.get_int("m")).collect();
    let miki_ok = miki_orders == (4..=40).step_by(2).collect::<Vec<_>>()
        && of(&records, 8).all(|r| r.status == Status::Pass);
    let Some(g) = gessel_start(&cache, 40) else {
        return verdict(false, "no start order for the C09 identity");
    };
    let gessel: Vec<&CongruenceReport> = of(&records, 9).filter(|r| r.params.get_int("n") >= g as i64).collect();
    let gessel_ok = !gessel.is_empty()
        && gessel.iter().all(|r| r.status == Status::Pass)
        && gessel.last().map(|r| r.params.get_int("n")) == Some(40);
    let took = start.elapsed();
    verdict(
        miki_ok && gessel_ok && took < Duration::from_secs(10),
        format!("C08 m=4..40 {miki_ok}, C09 from n={g} through 40 {gessel_ok}, {:.2}s", took.as_secs_f64()),
    )
}

fn spot_residues() -> Verdict {
    let cache = BernoulliCache::new(60);
    let ctx = PrimeContext::new(&cache, 7, 5).expect("context for p=7");
    let sides = |id: u8, params: Params| {
        let r = run_check(CheckId(id), &ctx, params);
        (r.lhs, r.rhs, r.status)
    };
    let pair = |s: &str| (s.to_string(), s.to_string(), Status::Pass);
    let c01 = sides(1, Params::new().int("t", 2)) == pair("4");
    let c19 = sides(19, Params::new().text("form", "wilson")) == pair("2");
    let c21 = sides(21, Params::new().text("form", "convolution")) == pair("6");
    let lift = lift_root(5, 2, &PadicResidue::from_i64(-1, 5, 2), 2).map(|r| r.value().to_string());
    let teich = lift.as_deref() == Ok("7");
    verdict(c01 && c19 && c21 && teich, format!("C01 {c01}, C19 {c19}, C21 {c21}, lift(5,2,2)=7 {teich}"))
}

fn full_sweep(records: &[CongruenceReport], took: Duration) -> Verdict {
    let fails: Vec<&CongruenceReport> = records.iter().filter(|r| r.status == Status::Fail).collect();
    let mut ids: Vec<String> = fails.iter().map(|r| r.id.to_string()).collect();
    ids.dedup();
    verdict(
        fails.is_empty() && took < Duration::from_secs(600),
        format!("{} records, {} failures in [{}], {:.1}s", records.len(), fails.len(), ids.join(","), took.as_secs_f64()),
    )
}

fn oracle_equivalences(records: &[CongruenceReport]) -> Verdict {
    let c36: Vec<&CongruenceReport> = of(records, 36).collect();
    let primes: std::collections::BTreeSet<u64> = c36.iter().filter_map(|r| r.p).collect();
    let c36_ok = primes.len() == primes_in(11, 97).len()
        && c36.iter().all(|r| r.status == Status::Pass && r.modulus.ends_with("^3"));
    let mut mhs_ok = true;
    for n in 1..=30u64 {
        for k in 1..=n as usize {
            mhs_ok &= mhs(k, n) == mhs_newton(k, n);
        }
    }
    verdict(c36_ok && mhs_ok, format!("C36 {} points mod p^3 {c36_ok}, mhs vs Newton n<=30 {mhs_ok}", c36.len()))
}

fn structural(records: &[CongruenceReport]) -> Verdict {
    let cache = BernoulliCache::new(400);
    let vsc = (2..=400).step_by(2).all(|n| cache.bernoulli(n).denom() == &von_staudt_denominator(n));
    let wolst = primes_in(11, 97).into_iter().all(|p| {
        valuation(&generalized(p - 1, 1), p).at_least(2) && valuation(&generalized(p - 1, 2), p).at_least(1)
    });
    let c02: Vec<&CongruenceReport> = of(records, 2).collect();
    let criterion = !c02.is_empty() && c02.iter().all(|r| r.status == Status::Pass);
    let pair = c02
        .iter()
        .any(|r| r.p == Some(37) && r.params.get_int("t") == 32 && r.rhs == "irregular" && r.lhs == "0");
    verdict(
        vsc && wolst && criterion && pair,
        format!("von Staudt-Clausen 2n<=400 {vsc}, Wolstenholme {wolst}, irregular criterion {criterion}, (37,32) {pair}"),
    )
}

fn c25_readings(records: &[CongruenceReport]) -> Verdict {
    let c25: Vec<&CongruenceReport> = of(records, 25).filter(|r| r.params.has("reading")).collect();
    let mut points: std::collections::BTreeMap<(u64, i64), bool> = Default::default();
    let mut per_reading = Vec::new();
    for reading in C25_READINGS {
        let rows: Vec<&&CongruenceReport> = c25.iter().filter(|r| r.params.get_text("reading") == reading).collect();
        let pass = rows.iter().filter(|r| r.status == Status::Pass).count();
        per_reading.push(format!("{reading} {pass}/{}", rows.len()));
        for r in rows {
            *points.entry((r.p.unwrap_or(0), r.params.get_int("2n"))).or_default() |= r.status == Status::Pass;
        }
    }
    let covered = points.values().filter(|&&v| v).count();
    let same = C25_READINGS.iter().any(|reading| {
        let rows: Vec<_> = c25.iter().filter(|r| r.params.get_text("reading") == *reading).collect();
        !rows.is_empty() && rows.iter().all(|r| r.status == Status::Pass)
    });
    verdict(
        same && covered == points.len(),
        format!("points with some passing reading {covered}/{}, uniform reading {same}; {}", points.len(), per_reading.join(", ")),
    )
}

fn record_bytes(records: &[CongruenceReport]) -> Vec<u8> {
    serde_json::to_vec(records).expect("records serialize")
}

fn determinism(first: &Report, second: &Report) -> Verdict {
    let same = record_bytes(&first.records) == record_bytes(&second.records);
    verdict(same, format!("{} records, byte-identical {same}", first.records.len()))
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let single = RunConfig { workers: 1, ..cfg.clone() };

    let t0 = Instant::now();
    let first = congruence_lab::verify(&single).expect("default run");
    let took = t0.elapsed();
    let second = congruence_lab::verify(&cfg).expect("second default run");

    let results = [
        exact_identities(),
        spot_residues(),
        full_sweep(&first.records, took),
        oracle_equivalences(&first.records),
        structural(&first.records),
        c25_readings(&first.records),
        determinism(&first, &second),
    ];
    let mut all = true;
    for (i, v) in results.iter().enumerate() {
        all &= v.ok;
        println!("criterion {} {}: {}", i + 1, if v.ok { "pass" } else { "FAIL" }, v.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
