//! Argument parsing and the optional TOML config file. Flags win over file values.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use congruence_core::registry::{catalog, CheckId};
use serde::Deserialize;
use thiserror::Error;

pub const CACHE_ENV: &str = "CONGRUENCE_LAB_CACHE";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{0}")]
    Usage(String),
    #[error("failed to read config {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config {path}: {source}")]
    Toml {
        path: String,
        #[source]
        source: toml::de::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// An inclusive prime window `A..B`, or a single prime `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeWindow {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for PrimeWindow {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (a, b.trim_start_matches('=')),
            None => (s, s),
        };
        let parse = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("bad prime bound `{x}` in `{s}`"));
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo > hi {
            return Err(format!("empty prime window {lo}..{hi}"));
        }
        if lo < 5 {
            return Err(format!("prime window must start at 5 or above, got {lo}"));
        }
        Ok(PrimeWindow { lo, hi })
    }
}

/// `all`, or a comma-separated list of ids such as `C01,C5,c12`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSelection(pub Vec<CheckId>);

impl FromStr for CheckSelection {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(CheckSelection(catalog().iter().map(|d| d.id).collect()));
        }
        let mut ids = s
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(CheckId::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        if ids.is_empty() {
            return Err("no checks selected".into());
        }
        ids.sort();
        ids.dedup();
        Ok(CheckSelection(ids))
    }
}

#[derive(Debug, Parser)]
#[command(name = "congruence-lab", version, about = "Verify Bernoulli-number congruences over ranges of primes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the congruence suite and write a report.
    Verify(VerifyArgs),
    /// Dump q_a, 𝔇_i and the Stirling row for one prime.
    Tables(TablesArgs),
    /// Print exact B_n and 𝔅_n.
    Bernoulli(BernoulliArgs),
}

#[derive(Debug, Default, Args)]
pub struct VerifyArgs {
    /// Prime window `A..B` (inclusive).
    #[arg(long)]
    pub primes: Option<PrimeWindow>,
    /// Modulus exponent K.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
    pub precision: Option<u32>,
    /// `all` or a comma-separated list of check ids.
    #[arg(long)]
    pub checks: Option<CheckSelection>,
    /// Cap on 2n in swept windows.
    #[arg(long = "max-2n")]
    pub max_2n: Option<u64>,
    /// Largest order for the exact identities.
    #[arg(long = "max-order")]
    pub max_order: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    /// Bernoulli cache file, read if present and rewritten when extended.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// TOML file with the same keys as the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long)]
    pub prime: u64,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..=8))]
    pub precision: u32,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    pub format: TableFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BernoulliArgs {
    /// Largest index printed.
    #[arg(long, default_value_t = 20)]
    pub max: usize,
    /// Skip zero odd-index values.
    #[arg(long)]
    pub even: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    pub format: TableFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Text,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    primes: Option<String>,
    precision: Option<u32>,
    checks: Option<StringOrList>,
    #[serde(alias = "max_2n")]
    max_2n: Option<u64>,
    #[serde(alias = "max_order")]
    max_order: Option<u64>,
    format: Option<Format>,
    out: Option<PathBuf>,
    workers: Option<u64>,
    cache: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum StringOrList {
    One(String),
    Many(Vec<String>),
}

/// A validated `verify` invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub p_min: u64,
    pub p_max: u64,
    pub k: u32,
    pub checks: Vec<CheckId>,
    pub max_2n: Option<u64>,
    pub max_order: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub workers: usize,
    pub cache: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p_min: 11,
            p_max: 97,
            k: 5,
            checks: catalog().iter().map(|d| d.id).collect(),
            max_2n: None,
            max_order: 40,
            out: None,
            format: Format::Json,
            workers: default_workers(),
            cache: None,
        }
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn usage(msg: impl Into<String>) -> ConfigError {
    ConfigError::Usage(msg.into())
}

fn read_file_config(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ConfigError::Read { path: path.display().to_string(), source })?;
    toml::from_str(&text).map_err(|source| ConfigError::Toml { path: path.display().to_string(), source })
}

/// Merges flags over the config file over defaults, then validates.
/// `env_cache` is the value of the cache environment variable, which wins over both.
pub fn resolve(args: VerifyArgs, env_cache: Option<PathBuf>) -> Result<RunConfig, ConfigError> {
    let file = match &args.config {
        Some(path) => read_file_config(path)?,
        None => FileConfig::default(),
    };
    let mut cfg = RunConfig::default();

    let window = match (args.primes, file.primes) {
        (Some(w), _) => Some(w),
        (None, Some(s)) => Some(s.parse::<PrimeWindow>().map_err(usage)?),
        (None, None) => None,
    };
    if let Some(w) = window {
        cfg.p_min = w.lo;
        cfg.p_max = w.hi;
    }

    if let Some(k) = args.precision.or(file.precision) {
        cfg.k = k;
    }

    let checks = match (args.checks, file.checks) {
        (Some(c), _) => Some(c),
        (None, Some(StringOrList::One(s))) => Some(s.parse::<CheckSelection>().map_err(usage)?),
        (None, Some(StringOrList::Many(v))) => Some(v.join(",").parse::<CheckSelection>().map_err(usage)?),
        (None, None) => None,
    };
    if let Some(c) = checks {
        cfg.checks = c.0;
    }

    cfg.max_2n = args.max_2n.or(file.max_2n);
    if let Some(m) = args.max_order.or(file.max_order) {
        cfg.max_order = m;
    }
    if let Some(f) = args.format.or(file.format) {
        cfg.format = f;
    }
    cfg.out = args.out.or(file.out);
    if let Some(w) = args.workers.or(file.workers) {
        cfg.workers = w as usize;
    }
    cfg.cache = env_cache.or(args.cache).or(file.cache);

    validate(&cfg)?;
    Ok(cfg)
}

pub fn validate(cfg: &RunConfig) -> Result<(), ConfigError> {
    if cfg.p_min < 5 {
        return Err(usage(format!("p_min must be at least 5, got {}", cfg.p_min)));
    }
    if cfg.p_min > cfg.p_max {
        return Err(usage(format!("empty prime window {}..{}", cfg.p_min, cfg.p_max)));
    }
    if !(1..=8).contains(&cfg.k) {
        return Err(usage(format!("precision must be in 1..=8, got {}", cfg.k)));
    }
    if cfg.checks.is_empty() {
        return Err(usage("no checks selected"));
    }
    if cfg.workers == 0 {
        return Err(usage("workers must be positive"));
    }
    if cfg.max_order < 4 {
        return Err(usage("max-order must be at least 4"));
    }
    Ok(())
}

/// The cache path from the environment, ignoring an empty value.
pub fn env_cache() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// What a parsed command line asks for.
#[derive(Debug)]
pub enum Invocation {
    Verify(RunConfig),
    Tables(TablesArgs),
    Bernoulli(BernoulliArgs),
}

/// Parses `argv` (program name first). With no subcommand the default `verify` runs.
pub fn parse_config<I, T>(argv: I, env_cache: Option<PathBuf>) -> Result<Invocation, ParseFailure>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(ParseFailure::Clap)?;
    match cli.command {
        None => resolve(VerifyArgs::default(), env_cache).map(Invocation::Verify).map_err(ParseFailure::Config),
        Some(Command::Verify(args)) => resolve(args, env_cache).map(Invocation::Verify).map_err(ParseFailure::Config),
        Some(Command::Tables(mut args)) => {
            if args.prime < 5 || !congruence_core::bernoulli::is_prime(args.prime) {
                return Err(ParseFailure::Config(usage(format!("{} is not a prime >= 5", args.prime))));
            }
            args.precision = args.precision.max(1);
            Ok(Invocation::Tables(args))
        }
        Some(Command::Bernoulli(mut args)) => {
            args.cache = env_cache.or(args.cache);
            Ok(Invocation::Bernoulli(args))
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseFailure {
    #[error(transparent)]
    Clap(clap::Error),
    #[error(transparent)]
    Config(ConfigError),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify(args: &[&str]) -> Result<RunConfig, ParseFailure> {
        let argv = std::iter::once("congruence-lab").chain(args.iter().copied());
        match parse_config(argv, None)? {
            Invocation::Verify(cfg) => Ok(cfg),
            other => panic!("expected verify, got {other:?}"),
        }
    }

    #[test]
    fn two_checks_csv() {
        let cfg = verify(&["verify", "--primes", "11..31", "--checks", "C01,C05", "--format", "csv"]).unwrap();
        assert_eq!(cfg.checks, vec![CheckId(1), CheckId(5)]);
        assert_eq!((cfg.p_min, cfg.p_max), (11, 31));
        assert_eq!(cfg.format, Format::Csv);
    }

    #[test]
    fn no_args_means_defaults() {
        let cfg = verify(&[]).unwrap();
        let want = RunConfig::default();
        assert_eq!(cfg, want);
        assert_eq!((cfg.p_min, cfg.p_max, cfg.k, cfg.format), (11, 97, 5, Format::Json));
        assert_eq!(cfg.checks.len(), 50);
    }

    #[test]
    fn reversed_window_is_usage_error() {
        let err = verify(&["verify", "--primes", "7..5"]).unwrap_err();
        assert!(matches!(err, ParseFailure::Clap(_)));
        assert!(verify(&["verify", "--primes", "3..11"]).is_err());
        assert!(verify(&["verify", "--precision", "9"]).is_err());
        assert!(verify(&["verify", "--checks", "C51"]).is_err());
    }

    #[test]
    fn flags_override_file_and_env_overrides_flag() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "primes = \"13..19\"\nprecision = 3\nchecks = [\"C02\", \"C03\"]\ncache = \"file.cache\"\n").unwrap();
        let p = path.to_str().unwrap();
        let cfg = verify(&["verify", "--config", p, "--precision", "4"]).unwrap();
        assert_eq!((cfg.p_min, cfg.p_max, cfg.k), (13, 19, 4));
        assert_eq!(cfg.checks, vec![CheckId(2), CheckId(3)]);
        assert_eq!(cfg.cache, Some(PathBuf::from("file.cache")));

        let argv = ["congruence-lab", "verify", "--cache", "flag.cache"];
        match parse_config(argv, Some(PathBuf::from("env.cache"))).unwrap() {
            Invocation::Verify(cfg) => assert_eq!(cfg.cache, Some(PathBuf::from("env.cache"))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_file_window_is_usage() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "primes = \"7..5\"\n").unwrap();
        let err = verify(&["verify", "--config", path.to_str().unwrap()]).unwrap_err();
        assert!(matches!(err, ParseFailure::Config(ConfigError::Usage(_))));
    }
}
