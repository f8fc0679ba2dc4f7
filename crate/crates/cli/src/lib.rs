//! Command-line front end: parse a run, fan primes out to workers, write one report.

pub mod config;
pub mod report;
pub mod run;
pub mod tables;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use config::{Invocation, ParseFailure, RunConfig};
use report::Report;
use run::RunError;

pub use config::{parse_config, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Full verify run, returned for callers that want the report itself.
pub fn verify(cfg: &RunConfig) -> Result<Report, RunError> {
    let cache = run::load_cache(cfg.cache.as_deref(), run::cache_need(cfg))?;
    let records = run::collect_records(cfg, &cache)?;
    Ok(Report::build(cfg, &cache, records))
}

/// Runs a validated config and writes its report. Returns the process exit code.
pub fn execute(cfg: &RunConfig) -> i32 {
    let report = match verify(cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_IO;
        }
    };
    if let Err(e) = emit(cfg.out.as_deref(), |w| report.write(cfg.format, w)) {
        eprintln!("error: {e}");
        return EXIT_IO;
    }
    let fails = report.failures();
    if fails > 0 {
        eprintln!("{fails} failing record(s)");
        EXIT_FAILURES
    } else {
        EXIT_OK
    }
}

/// Writes to `out`, or stdout when absent.
pub fn emit<F>(out: Option<&Path>, f: F) -> Result<(), RunError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match out {
        Some(path) => {
            let err = |source| RunError::Output { path: path.display().to_string(), source };
            let file = File::create(path).map_err(err)?;
            let mut w = BufWriter::new(file);
            f(&mut w).map_err(err)?;
            w.flush().map_err(err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            match f(&mut w) {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(|source| RunError::Output { path: "<stdout>".into(), source }),
            }
        }
    }
}

/// Entry point shared by the binary and the tests.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_config(argv, config::env_cache()) {
        Ok(Invocation::Verify(cfg)) => execute(&cfg),
        Ok(Invocation::Tables(args)) => tables::tables(&args),
        Ok(Invocation::Bernoulli(args)) => tables::bernoulli(&args),
        Err(ParseFailure::Clap(e)) => {
            let code = e.exit_code();
            let _ = e.print();
            code
        }
        Err(ParseFailure::Config(e)) => {
            eprintln!("error: {e}");
            match e {
                config::ConfigError::Usage(_) => EXIT_USAGE,
                _ => EXIT_IO,
            }
        }
    }
}
