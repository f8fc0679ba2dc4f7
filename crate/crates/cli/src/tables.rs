//! The `tables` and `bernoulli` subcommands.

use std::io::{self, Write};

use congruence_core::arith::{reduce_mod, ExactRational};
use congruence_core::bernoulli::{agoh_giuga, BernoulliCache, EmResidueTable};
use congruence_core::combinatorics::stirling_row;
use congruence_core::quotients::QuotientTable;
use serde::Serialize;

use crate::config::{BernoulliArgs, TableFormat, TablesArgs};
use crate::{emit, run, EXIT_IO, EXIT_OK};

#[derive(Debug, Serialize)]
pub struct PrimeTables {
    pub p: u64,
    #[serde(rename = "K")]
    pub k: u32,
    /// `q_a mod p^K` for `a = 1..p-1`.
    pub fermat_quotients: Vec<String>,
    pub wilson_quotient: String,
    pub agoh_giuga: String,
    /// `(i, 𝔇_i)` for even `i` in `[2, p-3]`.
    pub em_residues: Vec<(usize, u64)>,
    /// `[p; s]` for `s = 0..=p`.
    pub stirling: Vec<String>,
}

pub fn prime_tables(p: u64, k: u32) -> PrimeTables {
    let cache = BernoulliCache::new(2 * p as usize);
    let q = QuotientTable::new(p);
    let md = congruence_core::arith::pow_p(p, k);
    let modk = |x: &num_bigint::BigInt| num_integer::Integer::mod_floor(x, &md).to_string();
    let em = EmResidueTable::new(&cache, p).expect("Kummer holds for primes >= 5");
    let ag = reduce_mod(&agoh_giuga(&cache, p), p, k).expect("p-integral");
    PrimeTables {
        p,
        k,
        fermat_quotients: (1..p).map(|a| modk(q.q(a))).collect(),
        wilson_quotient: modk(q.wilson()),
        agoh_giuga: ag.to_string(),
        em_residues: em.entries().collect(),
        stirling: stirling_row(p).coefficients().iter().map(|c| c.to_string()).collect(),
    }
}

fn write_prime_tables<W: Write + ?Sized>(t: &PrimeTables, format: TableFormat, w: &mut W) -> io::Result<()> {
    match format {
        TableFormat::Json => {
            serde_json::to_writer_pretty(&mut *w, t)?;
            writeln!(w)
        }
        TableFormat::Text => {
            writeln!(w, "p={} K={}", t.p, t.k)?;
            writeln!(w, "w_p {}", t.wilson_quotient)?;
            writeln!(w, "AG {}", t.agoh_giuga)?;
            for (a, q) in t.fermat_quotients.iter().enumerate() {
                writeln!(w, "q_{} {q}", a + 1)?;
            }
            for (i, d) in &t.em_residues {
                writeln!(w, "D_{i} {d}")?;
            }
            for (s, c) in t.stirling.iter().enumerate() {
                writeln!(w, "stirling_{s} {c}")?;
            }
            Ok(())
        }
    }
}

pub fn tables(args: &TablesArgs) -> i32 {
    let t = prime_tables(args.prime, args.precision);
    match emit(args.out.as_deref(), |w| write_prime_tables(&t, args.format, w)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}

#[derive(Debug, Serialize)]
struct BernoulliRow {
    n: usize,
    b: String,
    /// `B_n / n`, absent for `n = 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    divided: Option<String>,
}

fn fraction(x: &ExactRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn bernoulli(args: &BernoulliArgs) -> i32 {
    let cache = match run::load_cache(args.cache.as_deref(), args.max) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_IO;
        }
    };
    let rows: Vec<BernoulliRow> = (0..=args.max)
        .filter(|&n| !args.even || n % 2 == 0 || n == 1)
        .map(|n| BernoulliRow {
            n,
            b: fraction(cache.bernoulli(n)),
            divided: (n > 0).then(|| fraction(&cache.divided(n))),
        })
        .collect();
    let written = emit(args.out.as_deref(), |w| match args.format {
        TableFormat::Json => {
            serde_json::to_writer_pretty(&mut *w, &rows)?;
            writeln!(w)
        }
        TableFormat::Text => {
            for r in &rows {
                writeln!(w, "{} {} {}", r.n, r.b, r.divided.as_deref().unwrap_or("-"))?;
            }
            Ok(())
        }
    });
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}
