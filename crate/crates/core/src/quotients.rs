//! Fermat and Wilson quotients, power sums `S_m(n)`, and the weighted sums
//! `Σ a^t q_a^m` over `a = 1..p-1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{mod_inverse, pow_p, PadicResidue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("base {a} outside [1, {max}]")]
    BaseOutOfRange { a: u64, max: u64 },
}

/// `q_a = (a^{p-1} - 1) / p`.
pub fn fermat_quotient(p: u64, a: u64) -> Result<BigInt, QuotientError> {
    if a == 0 || a >= p {
        return Err(QuotientError::BaseOutOfRange { a, max: p - 1 });
    }
    let x = num_traits::pow(BigInt::from(a), (p - 1) as usize) - 1u32;
    let (q, r) = x.div_rem(&BigInt::from(p));
    debug_assert!(r.is_zero(), "Fermat's little theorem");
    Ok(q)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `w_p = ((p-1)! + 1) / p`.
pub fn wilson_quotient(p: u64) -> BigInt {
    let (q, r) = (factorial(p - 1) + 1u32).div_rem(&BigInt::from(p));
    debug_assert!(r.is_zero(), "Wilson's theorem");
    q
}

/// `S_m(n) = 1^m + 2^m + ... + (n-1)^m`.
pub fn power_sum(m: u32, n: u64) -> BigInt {
    (1..n).map(|a| num_traits::pow(BigInt::from(a), m as usize)).sum()
}

pub fn power_sum_mod(m: u32, n: u64, p: u64, k: u32) -> PadicResidue {
    let md = pow_p(p, k);
    let e = BigInt::from(m);
    let s: BigInt = (1..n).map(|a| BigInt::from(a).modpow(&e, &md)).sum();
    PadicResidue::new(&s, p, k)
}

/// Exact `q_a` for every base and the Wilson quotient of one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientTable {
    p: u64,
    q: Vec<BigInt>,
    w: BigInt,
}

impl QuotientTable {
    pub fn new(p: u64) -> Self {
        let mut q = vec![BigInt::zero()];
        q.extend((1..p).map(|a| fermat_quotient(p, a).expect("in range")));
        QuotientTable { p, q, w: wilson_quotient(p) }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn q(&self, a: u64) -> &BigInt {
        assert!(a >= 1 && a < self.p, "base {a} out of range");
        &self.q[a as usize]
    }

    pub fn wilson(&self) -> &BigInt {
        &self.w
    }

    /// `Σ_{a=1}^{p-1} a^t q_a^m mod p^K`; a negative `t` means inverse powers.
    pub fn weighted_sum(&self, t: i64, m: u32, k: u32) -> PadicResidue {
        let p = self.p;
        let md = pow_p(p, k);
        let mut acc = BigInt::zero();
        for a in 1..p {
            let base = if t >= 0 {
                BigInt::from(a)
            } else {
                mod_inverse(&BigInt::from(a), p, k).expect("a prime to p").value().clone()
            };
            let at = base.modpow(&BigInt::from(t.unsigned_abs()), &md);
            let qm = self.q[a as usize].modpow(&BigInt::from(m), &md);
            acc += at * qm;
        }
        PadicResidue::new(&acc, p, k)
    }
}

/// Free-function form of [`QuotientTable::weighted_sum`].
pub fn weighted_power_sum(p: u64, t: i64, m: u32, k: u32) -> PadicResidue {
    QuotientTable::new(p).weighted_sum(t, m, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_examples() {
        assert_eq!(fermat_quotient(5, 1).unwrap(), BigInt::from(0));
        assert_eq!(fermat_quotient(5, 2).unwrap(), BigInt::from(3));
        assert_eq!(fermat_quotient(7, 3).unwrap(), BigInt::from(104));
        assert!(fermat_quotient(7, 7).is_err());
        assert_eq!(wilson_quotient(5), BigInt::from(5));
        assert_eq!(wilson_quotient(7), BigInt::from(103));
        assert_eq!(wilson_quotient(11), BigInt::from(329891));
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum(0, 5), BigInt::from(4));
        assert_eq!(power_sum(2, 4), BigInt::from(14));
        assert_eq!(power_sum_mod(4, 7, 7, 3).value(), &(power_sum(4, 7) % 343));
    }

    #[test]
    fn weighted_examples() {
        assert_eq!(weighted_power_sum(7, 2, 1, 1).value(), &BigInt::from(4));
        assert_eq!(weighted_power_sum(7, 0, 2, 1).value(), &BigInt::from(2));
        assert_eq!(weighted_power_sum(7, 2, 2, 1).value(), &BigInt::from(6));
        // literal sum 306072 behind the first example
        let t = QuotientTable::new(7);
        let lit: BigInt = (1..7u64).map(|a| t.q(a) * a * a).sum();
        assert_eq!(lit, BigInt::from(306072));
    }
}
