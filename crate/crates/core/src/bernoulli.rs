//! Exact Bernoulli numbers (`B_1 = -1/2`), divided Bernoulli numbers `𝔅_t = B_t / t`,
//! the Ernvall–Metsänkylä residues `𝔇_i` and the Agoh–Giuga quotient.

use std::io::{self, BufRead, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{int, rat, reduce_mod, valuation, ArithError, ExactRational, Padic, PadicResidue};

#[derive(Debug, Error)]
pub enum BernoulliError {
    #[error("Kummer congruence failed for p={p}, i={i}: 𝔅_(p-1+i) - 𝔅_i is a unit")]
    KummerViolation { p: u64, i: usize },
    #[error("index {i} outside the window of 𝔇 for p={p}")]
    OutOfWindow { p: u64, i: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] io::Error),
    #[error("cache line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Tangent numbers `T_1..T_n` (1, 2, 16, 272, ...), integer-only.
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * (k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
        }
    }
    t
}

/// Memoized table `B_0..B_max`, built once and shared read-only.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliCache {
    table: Vec<ExactRational>,
}

impl BernoulliCache {
    pub fn new(max_index: usize) -> Self {
        let half = max_index / 2;
        let tangent = tangent_numbers(half);
        let mut table = vec![ExactRational::zero(); max_index + 1];
        table[0] = int(1);
        if max_index >= 1 {
            table[1] = rat(-1, 2);
        }
        let mut four_k = BigInt::one();
        for k in 1..=half {
            four_k *= 4;
            let num = &tangent[k] * (2 * k);
            let den = &four_k * (&four_k - 1u32);
            let b = ExactRational::new(num, den);
            table[2 * k] = if k % 2 == 1 { b } else { -b };
        }
        BernoulliCache { table }
    }

    pub fn max_index(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&ExactRational> {
        self.table.get(n)
    }

    pub fn bernoulli(&self, n: usize) -> &ExactRational {
        self.table
            .get(n)
            .unwrap_or_else(|| panic!("B_{n} beyond cache (max {})", self.max_index()))
    }

    /// `𝔅_t = B_t / t` for `t >= 1`.
    pub fn divided(&self, t: usize) -> ExactRational {
        assert!(t >= 1, "𝔅_0 is undefined");
        self.bernoulli(t) / int(t as u64)
    }

    /// Rebuilds when the table is too short; returns `self` otherwise.
    pub fn ensure(self, max_index: usize) -> Self {
        if self.max_index() >= max_index {
            self
        } else {
            BernoulliCache::new(max_index)
        }
    }

    /// Writes one `n numerator/denominator` line per index.
    pub fn dump<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (n, b) in self.table.iter().enumerate() {
            writeln!(w, "{n} {}/{}", b.numer(), b.denom())?;
        }
        w.flush()
    }

    /// Reads a dump. Indices must run contiguously from 0.
    pub fn load<R: BufRead>(r: R) -> Result<Self, CacheError> {
        let mut table = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| CacheError::Parse { line: lineno + 1, msg: msg.to_string() };
            let (idx, frac) = line.split_once(' ').ok_or_else(|| bad("expected `n num/den`"))?;
            let idx: usize = idx.parse().map_err(|_| bad("bad index"))?;
            if idx != table.len() {
                return Err(bad("indices must be contiguous from 0"));
            }
            let (n, d) = frac.split_once('/').ok_or_else(|| bad("expected num/den"))?;
            let n: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            table.push(ExactRational::new(n, d));
        }
        if table.is_empty() {
            return Err(CacheError::Parse { line: 0, msg: "empty cache".into() });
        }
        Ok(BernoulliCache { table })
    }
}

/// Product of the primes `q` with `(q-1) | 2n`: the von Staudt–Clausen denominator.
pub fn von_staudt_denominator(two_n: usize) -> BigInt {
    assert!(two_n >= 2 && two_n % 2 == 0);
    let mut d = BigInt::one();
    for dv in 1..=two_n {
        if two_n % dv == 0 && is_prime((dv + 1) as u64) {
            d *= dv + 1;
        }
    }
    d
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// `𝔇_i = (𝔅_{p-1+i} - 𝔅_i)_1`, after checking the difference is divisible by `p`.
pub fn em_residue(cache: &BernoulliCache, p: u64, i: usize) -> Result<u64, BernoulliError> {
    let pu = p as usize;
    if i < 2 || i % 2 == 1 || i + 3 > pu {
        return Err(BernoulliError::OutOfWindow { p, i });
    }
    let diff = cache.divided(pu - 1 + i) - cache.divided(i);
    if !valuation(&diff, p).at_least(1) {
        return Err(BernoulliError::KummerViolation { p, i });
    }
    Ok(crate::arith::hensel_digit(&diff, p, 1)?)
}

/// All `𝔇_i` for even `i` in `[2, p-3]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmResidueTable {
    p: u64,
    residues: Vec<u64>,
}

impl EmResidueTable {
    pub fn new(cache: &BernoulliCache, p: u64) -> Result<Self, BernoulliError> {
        let mut residues = vec![0; p as usize];
        for i in (2..=(p as usize).saturating_sub(3)).step_by(2) {
            residues[i] = em_residue(cache, p, i)?;
        }
        Ok(EmResidueTable { p, residues })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize) -> u64 {
        assert!(i >= 2 && i % 2 == 0 && i + 3 <= self.p as usize, "𝔇_{i} undefined for p={}", self.p);
        self.residues[i]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        (2..=(self.p as usize).saturating_sub(3)).step_by(2).map(move |i| (i, self.residues[i]))
    }
}

/// The Agoh–Giuga quotient `(1 + pB_{p-1}) / p`, exactly.
///
/// Written `(pB_{p-1})_1` in the literature. It is its own quantity and not the
/// Hensel digit of `pB_{p-1}`.
pub fn agoh_giuga(cache: &BernoulliCache, p: u64) -> ExactRational {
    let pb = cache.bernoulli(p as usize - 1) * int(p);
    (int(1) + pb) / int(p)
}

pub fn agoh_giuga_residue(cache: &BernoulliCache, p: u64, k: u32) -> Result<PadicResidue, ArithError> {
    reduce_mod(&agoh_giuga(cache, p), p, k)
}

/// Every `𝔅_t` (and `B_t`) reduced p-adically; `𝔅_{k(p-1)}` keeps its pole.
#[derive(Debug, Clone)]
pub struct BernoulliReductions {
    pub divided: Vec<Padic>,
    pub plain: Vec<Padic>,
}

impl BernoulliReductions {
    pub fn new(cache: &BernoulliCache, p: u64, max_index: usize, digits: i64) -> Self {
        let plain: Vec<Padic> =
            (0..=max_index).map(|n| Padic::from_rational(cache.bernoulli(n), p, digits)).collect();
        let mut divided = vec![Padic::exact_zero(p)];
        for t in 1..=max_index {
            let b = &plain[t];
            divided.push(b.mul_rational(&ExactRational::new(BigInt::one(), BigInt::from(t))));
        }
        BernoulliReductions { divided, plain }
    }
}

/// Numerator divisibility behind the irregular-pair criterion.
pub fn numerator_divisible(x: &ExactRational, p: u64) -> bool {
    x.numer().is_multiple_of(&BigInt::from(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let c = BernoulliCache::new(20);
        assert_eq!(c.bernoulli(0), &int(1));
        assert_eq!(c.bernoulli(1), &rat(-1, 2));
        assert_eq!(c.bernoulli(2), &rat(1, 6));
        assert_eq!(c.bernoulli(12), &rat(-691, 2730));
        assert_eq!(c.bernoulli(3), &int(0));
        assert_eq!(c.divided(2), rat(1, 12));
        assert_eq!(c.divided(3), int(0));
        assert_eq!(c.divided(6), rat(1, 252));
    }

    #[test]
    fn tangent_prefix() {
        let t = tangent_numbers(5);
        let want = [0, 1, 2, 16, 272, 7936];
        for (a, b) in t.iter().zip(want) {
            assert_eq!(a, &BigInt::from(b));
        }
    }

    #[test]
    fn em_examples() {
        let c = BernoulliCache::new(40);
        assert_eq!(em_residue(&c, 5, 2).unwrap(), 3);
        assert_eq!(em_residue(&c, 7, 2).unwrap(), 2);
        assert!(matches!(em_residue(&c, 7, 6), Err(BernoulliError::OutOfWindow { .. })));
    }

    #[test]
    fn agoh_giuga_examples() {
        let c = BernoulliCache::new(20);
        assert_eq!(agoh_giuga_residue(&c, 5, 1).unwrap().value(), &BigInt::from(1));
        assert_eq!(agoh_giuga_residue(&c, 7, 1).unwrap().value(), &BigInt::from(6));
    }

    #[test]
    fn dump_load_roundtrip() {
        let c = BernoulliCache::new(30);
        let mut buf = Vec::new();
        c.dump(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("0 1/1\n1 -1/2\n2 1/6\n"));
        let back = BernoulliCache::load(&buf[..]).unwrap();
        assert_eq!(back, c);
        assert!(BernoulliCache::load(&b"0 1/1\n2 1/6\n"[..]).is_err());
    }
}
