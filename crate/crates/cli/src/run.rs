//! Orchestration: one shared Bernoulli cache, one worker batch per prime.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use congruence_core::bernoulli::{primes_in, BernoulliCache, CacheError};
use congruence_core::registry::{
    bernoulli_bound, catalog, normalize, run_global, run_prime, CheckId, CongruenceReport, ContextError, Limits,
    PrimeContext, Scope,
};
use thiserror::Error;

use crate::config::RunConfig;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("cache {path}: {source}")]
    Cache {
        path: String,
        #[source]
        source: CacheError,
    },
    #[error("cannot write cache {path}: {source}")]
    CacheWrite {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write report {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("prime {p}: {source}")]
    Context {
        p: u64,
        #[source]
        source: ContextError,
    },
}

/// Bernoulli cache holding at least `need` entries. A file that is too short is rebuilt and rewritten.
pub fn load_cache(path: Option<&Path>, need: usize) -> Result<BernoulliCache, RunError> {
    let Some(path) = path else {
        return Ok(BernoulliCache::new(need));
    };
    let shown = || path.display().to_string();
    let loaded = match File::open(path) {
        Ok(f) => Some(BernoulliCache::load(BufReader::new(f)).map_err(|source| RunError::Cache { path: shown(), source })?),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
        Err(e) => return Err(RunError::Cache { path: shown(), source: CacheError::Io(e) }),
    };
    if let Some(cache) = loaded {
        if cache.max_index() >= need {
            return Ok(cache);
        }
    }
    let cache = BernoulliCache::new(need);
    let f = File::create(path).map_err(|source| RunError::CacheWrite { path: shown(), source })?;
    cache.dump(BufWriter::new(f)).map_err(|source| RunError::CacheWrite { path: shown(), source })?;
    Ok(cache)
}

pub fn limits(cfg: &RunConfig) -> Limits {
    Limits { max_2n: cfg.max_2n, max_order: cfg.max_order }
}

/// Largest Bernoulli index the run touches.
pub fn cache_need(cfg: &RunConfig) -> usize {
    bernoulli_bound(cfg.p_max).max(cfg.max_order as usize + 2)
}

fn has_per_prime(ids: &[CheckId]) -> bool {
    catalog().iter().any(|d| ids.contains(&d.id) && matches!(d.scope, Scope::PerPrime { .. }))
}

/// Runs every selected check. The record order does not depend on the worker count.
pub fn collect_records(cfg: &RunConfig, cache: &BernoulliCache) -> Result<Vec<CongruenceReport>, RunError> {
    let lim = limits(cfg);
    let mut records = run_global(cache, &cfg.checks, &lim);
    let primes = if has_per_prime(&cfg.checks) { primes_in(cfg.p_min, cfg.p_max) } else { Vec::new() };
    let workers = cfg.workers.clamp(1, primes.len().max(1));
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(u64, Result<Vec<CongruenceReport>, ContextError>)>();

    let batches = std::thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let (next, primes, lim) = (&next, &primes, &lim);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&p) = primes.get(i) else { break };
                let batch = PrimeContext::new(cache, p, cfg.k).map(|ctx| run_prime(&ctx, &cfg.checks, lim));
                if tx.send((p, batch)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        rx.into_iter().collect::<Vec<_>>()
    });

    let mut batches = batches;
    batches.sort_by_key(|(p, _)| *p);
    for (p, batch) in batches {
        records.extend(batch.map_err(|source| RunError::Context { p, source })?);
    }
    normalize(&mut records);
    Ok(records)
}
