use congruence_core::bernoulli::BernoulliCache;
use congruence_core::registry::{
    bernoulli_bound, catalog, run_check, run_suite, summarize, CheckId, Limits, Params, PrimeContext, Status,
};

fn ids(range: std::ops::RangeInclusive<u8>) -> Vec<CheckId> {
    range.map(CheckId).collect()
}

#[test]
fn classical_checks_pass_on_small_primes() {
    let cache = BernoulliCache::new(bernoulli_bound(31));
    let primes = [11, 13, 17, 19, 23, 29, 31];
    let records = run_suite(&cache, &primes, &ids(1..=5), 2, &Limits::default()).unwrap();
    assert!(!records.is_empty());
    let bad: Vec<_> = records.iter().filter(|r| r.status == Status::Fail).collect();
    assert!(bad.is_empty(), "{bad:?}");
    let counts = summarize(&records);
    assert_eq!(counts.len(), 5);
}

#[test]
fn empty_prime_list_runs_nothing() {
    let cache = BernoulliCache::new(10);
    let records = run_suite(&cache, &[], &ids(1..=5), 5, &Limits::default()).unwrap();
    assert!(records.is_empty());
}

#[test]
fn c49_is_always_exploratory() {
    let cache = BernoulliCache::new(bernoulli_bound(29));
    let records = run_suite(&cache, &[11, 13, 29], &[CheckId(49)], 5, &Limits::default()).unwrap();
    assert!(!records.is_empty());
    assert!(records.iter().all(|r| r.status == Status::Exploratory));
}

#[test]
fn spot_residues_at_seven() {
    let cache = BernoulliCache::new(bernoulli_bound(7));
    let ctx = PrimeContext::new(&cache, 7, 5).unwrap();
    let c01 = run_check(CheckId(1), &ctx, Params::new().int("t", 2));
    assert_eq!((c01.lhs.as_str(), c01.rhs.as_str()), ("4", "4"));
    for form in ["wilson", "digits", "closed"] {
        let r = run_check(CheckId(19), &ctx, Params::new().text("form", form));
        assert_eq!((r.lhs.as_str(), r.rhs.as_str(), r.status), ("2", "2", Status::Pass), "{form}");
    }
    for form in ["convolution", "em", "closed"] {
        let r = run_check(CheckId(21), &ctx, Params::new().text("form", form));
        assert_eq!((r.lhs.as_str(), r.rhs.as_str(), r.status), ("6", "6", Status::Pass), "{form}");
    }
}

#[test]
fn out_of_hypothesis_points_are_skipped() {
    let cache = BernoulliCache::new(bernoulli_bound(11));
    let ctx = PrimeContext::new(&cache, 11, 3).unwrap();
    let r = run_check(CheckId(1), &ctx, Params::new().int("t", 3));
    assert_eq!(r.status, Status::SkippedHypothesis);
    let small = PrimeContext::new(&cache, 7, 3).unwrap();
    let r = run_check(CheckId(25), &small, Params::new().int("2n", 4).text("reading", "digit-of-sum"));
    assert_eq!(r.status, Status::SkippedHypothesis);
}

#[test]
fn too_small_cache_is_rejected() {
    let cache = BernoulliCache::new(20);
    assert!(PrimeContext::new(&cache, 13, 3).is_err());
}

#[test]
fn max_2n_caps_swept_windows() {
    let cache = BernoulliCache::new(bernoulli_bound(31));
    let capped = Limits { max_2n: Some(6), ..Limits::default() };
    let records = run_suite(&cache, &[31], &[CheckId(25)], 3, &capped).unwrap();
    assert!(records.iter().all(|r| r.params.get_int("2n") <= 6));
    assert_eq!(records.len(), 2 * 6);
}

#[test]
fn catalog_is_complete_and_ordered() {
    let ids: Vec<u8> = catalog().iter().map(|d| d.id.0).collect();
    assert_eq!(ids, (1..=50).collect::<Vec<_>>());
    assert_eq!(catalog().iter().filter(|d| d.exploratory).count(), 1);
    assert_eq!("c5".parse::<CheckId>().unwrap().to_string(), "C05");
    assert!("C51".parse::<CheckId>().is_err());
}
