//! Harmonic numbers, generalized harmonic sums, multiple harmonic sums, the
//! unsigned Stirling row of `x(x-1)...(x-n+1)`, and binomial helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{int, reduce_mod, ArithError, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("parameters outside the hypothesis window: {0}")]
    HypothesisOutOfRange(String),
    #[error("shift congruence failed: {lhs} vs {rhs}")]
    ShiftMismatch { lhs: u64, rhs: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `ℋ_t = Σ_{i<=t} 1/i`.
pub fn harmonic(t: u64) -> ExactRational {
    generalized(t, 1)
}

/// `ℋ_{n,k} = Σ_{x<=n} 1/x^k`.
pub fn generalized(n: u64, k: u32) -> ExactRational {
    (1..=n).fold(ExactRational::zero(), |acc, x| {
        acc + ExactRational::new(BigInt::one(), num_traits::pow(BigInt::from(x), k as usize))
    })
}

/// Prefix tables of `ℋ_t` and `ℋ_{t,2}` for `t <= max`.
#[derive(Debug, Clone)]
pub struct HarmonicTable {
    h1: Vec<ExactRational>,
    h2: Vec<ExactRational>,
}

impl HarmonicTable {
    pub fn new(max: u64) -> Self {
        let mut h1 = vec![ExactRational::zero()];
        let mut h2 = vec![ExactRational::zero()];
        for x in 1..=max {
            let r = ExactRational::new(BigInt::one(), BigInt::from(x));
            h1.push(&h1[x as usize - 1] + &r);
            h2.push(&h2[x as usize - 1] + &r * &r);
        }
        HarmonicTable { h1, h2 }
    }

    pub fn h(&self, t: u64) -> &ExactRational {
        &self.h1[t as usize]
    }

    pub fn h2(&self, t: u64) -> &ExactRational {
        &self.h2[t as usize]
    }

    /// `𝔄_{2,n} = (ℋ_n² - ℋ_{n,2}) / 2`.
    pub fn mhs2(&self, n: u64) -> ExactRational {
        let h = self.h(n);
        (h * h - self.h2(n)) / int(2)
    }

    /// `Σ_{j=lo}^{hi} 1/j` (empty when `lo > hi`).
    pub fn range(&self, lo: u64, hi: u64) -> ExactRational {
        if lo > hi {
            ExactRational::zero()
        } else {
            self.h(hi) - self.h(lo - 1)
        }
    }
}

/// `𝔄_{k,n}`: degree-`k` elementary symmetric function of `1/1, ..., 1/n`,
/// by expanding `Π (1 + X/i)` one factor at a time.
pub fn mhs(k: usize, n: u64) -> ExactRational {
    assert!(k as u64 <= n || k == 0, "depth exceeds order");
    let mut e = vec![ExactRational::zero(); k + 1];
    e[0] = int(1);
    for i in 1..=n {
        let r = ExactRational::new(BigInt::one(), BigInt::from(i));
        for j in (1..=k.min(i as usize)).rev() {
            let add = &e[j - 1] * &r;
            e[j] += add;
        }
    }
    e.swap_remove(k)
}

/// The same quantity rebuilt from power sums `ℋ_{n,j}` with Newton's identities.
pub fn mhs_newton(k: usize, n: u64) -> ExactRational {
    let power: Vec<ExactRational> =
        (0..=k).map(|j| if j == 0 { ExactRational::zero() } else { generalized(n, j as u32) }).collect();
    let mut e = vec![int(1)];
    for m in 1..=k {
        let mut s = ExactRational::zero();
        for i in 1..=m {
            let term = &e[m - i] * &power[i];
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        e.push(s / int(m as u64));
    }
    e.swap_remove(k)
}

/// Unsigned Stirling numbers of the first kind `[n; s]`, `s = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingRow {
    n: u64,
    coeffs: Vec<BigInt>,
}

impl StirlingRow {
    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn get(&self, s: usize) -> &BigInt {
        &self.coeffs[s]
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Evaluates `Σ_s (-1)^{n-s} [n;s] x^s`, which is the falling factorial.
    pub fn falling_factorial_at(&self, x: i64) -> BigInt {
        let n = self.n as usize;
        let mut acc = BigInt::zero();
        for (s, c) in self.coeffs.iter().enumerate() {
            let term = c * num_traits::pow(BigInt::from(x), s);
            if (n - s) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
}

/// Coefficients of `x(x+1)...(x+n-1)`.
pub fn stirling_row(n: u64) -> StirlingRow {
    let mut c = vec![BigInt::one()];
    for k in 0..n {
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i + 1] += v;
            next[i] += v * k;
        }
        c = next;
    }
    StirlingRow { n, coeffs: c }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C(2(p-1)-2n, s) ≡ C(p-1-2n, s)(1 + s/(2n+1)) (mod p)` for even `s <= p-3-2n`.
/// Returns the common residue.
pub fn binom_shift_residue(p: u64, n: u64, s: u64) -> Result<u64, CombError> {
    if s % 2 == 1 || 2 * n + 3 + s > p {
        return Err(CombError::HypothesisOutOfRange(format!("p={p}, 2n={}, s={s}", 2 * n)));
    }
    let lhs = reduce_mod(&int(binomial(2 * (p - 1) - 2 * n, s)), p, 1)?;
    let factor = int(1) + ExactRational::new(BigInt::from(s), BigInt::from(2 * n + 1));
    let rhs = reduce_mod(&(int(binomial(p - 1 - 2 * n, s)) * factor), p, 1)?;
    let (l, r) = (lhs.digit(0)?, rhs.digit(0)?);
    if l == r {
        Ok(l)
    } else {
        Err(CombError::ShiftMismatch { lhs: l, rhs: r })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(4), rat(25, 12));
        assert_eq!(generalized(4, 2), rat(205, 144));
        assert_eq!(harmonic(0), int(0));
        let t = HarmonicTable::new(6);
        assert_eq!(t.h(4), &rat(25, 12));
        assert_eq!(t.range(3, 4), rat(7, 12));
        assert_eq!(t.range(5, 4), int(0));
    }

    #[test]
    fn mhs_examples() {
        assert_eq!(mhs(2, 4), rat(35, 24));
        assert_eq!(mhs(0, 9), int(1));
        assert_eq!(mhs(1, 7), harmonic(7));
        assert_eq!(mhs(5, 5), rat(1, 120));
        assert_eq!(HarmonicTable::new(4).mhs2(4), rat(35, 24));
    }

    #[test]
    fn stirling_examples() {
        let r = stirling_row(5);
        let want = [0, 24, 50, 35, 10, 1];
        for (a, b) in r.coefficients().iter().zip(want) {
            assert_eq!(a, &BigInt::from(b));
        }
        for x in 0..5 {
            assert_eq!(r.falling_factorial_at(x), BigInt::zero());
        }
        assert_eq!(r.falling_factorial_at(6), BigInt::from(720));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(binom_shift_residue(11, 1, 4), Ok(2));
        assert!(binom_shift_residue(13, 2, 2).is_ok());
        assert_eq!(binom_shift_residue(13, 2, 0), Ok(1));
        assert!(matches!(binom_shift_residue(13, 2, 3), Err(CombError::HypothesisOutOfRange(_))));
    }
}
