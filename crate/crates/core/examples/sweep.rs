//! Runs the whole catalog over a prime window and prints per-check counts.
//!
//! `cargo run --release -p congruence-core --example sweep -- 11 97`

use std::time::Instant;

use congruence_core::bernoulli::{primes_in, BernoulliCache};
use congruence_core::registry::{bernoulli_bound, catalog, run_suite, summarize, Limits, Status};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (lo, hi) = (args.first().copied().unwrap_or(11), args.get(1).copied().unwrap_or(97));
    let start = Instant::now();
    let primes = primes_in(lo, hi);
    let cache = BernoulliCache::new(bernoulli_bound(hi.max(5)));
    let ids: Vec<_> = catalog().iter().map(|d| d.id).collect();
    let records = run_suite(&cache, &primes, &ids, 5, &Limits::default()).expect("context");
    for (id, c) in summarize(&records) {
        println!("{id}: pass {} fail {} skipped {} exploratory {}", c.pass, c.fail, c.skipped, c.exploratory);
    }
    for r in records.iter().filter(|r| r.status == Status::Fail).take(40) {
        println!("FAIL {} p={:?} {} {} vs {} {:?}", r.id, r.p, r.params, r.lhs, r.rhs, r.note);
    }
    eprintln!("{} records in {:.1?}", records.len(), start.elapsed());
}
