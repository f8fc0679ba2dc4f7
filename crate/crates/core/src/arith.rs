//! Exact integers and rationals, residues in `Z/p^K`, valuations and Hensel digits.
//!
//! Two residue types live here. [`PadicResidue`] is the strict one: a value in
//! `[0, p^K)` that can only be built from a p-integral quantity. [`Padic`] is a
//! p-adic number carried with its valuation and a certified absolute precision,
//! so sums that pass through a pole (the `1/p` in `𝔅_{p-1}`) stay rigorous: every
//! operation shrinks the certified precision by exactly what it consumes, and
//! asking for a digit beyond it is an error instead of a wrong answer.

use std::cmp::{max, min};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Exact fraction in lowest terms with positive denominator.
pub type ExactRational = BigRational;

/// Precision used for values that are known exactly (zero times anything, exact scalars).
const EXACT: i64 = i64::MAX / 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("value is not {p}-integral")]
    NonIntegral { p: u64 },
    #[error("{p}-adic digit {index} requested but only {available} digits are certified")]
    PrecisionExceeded { p: u64, index: i64, available: i64 },
    #[error("{a} is not a unit modulo {p}")]
    NotAUnit { p: u64, a: String },
}

/// p-adic valuation of a rational; `Infinite` only for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn at_least(self, k: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

pub fn rat(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(n.into())
}

pub fn pow_p(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Strips every factor `p` from a nonzero integer, returning `(count, cofactor)`.
fn split_p(x: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&pb);
        if !r.is_zero() {
            return (v, y);
        }
        y = q;
        v += 1;
    }
}

pub fn valuation_int(x: &BigInt, p: u64) -> Valuation {
    if x.is_zero() {
        Valuation::Infinite
    } else {
        Valuation::Finite(split_p(x, p).0)
    }
}

/// `v_p(numerator) - v_p(denominator)`, `+inf` for zero.
pub fn valuation(x: &ExactRational, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let (a, _) = split_p(x.numer(), p);
    let (b, _) = split_p(x.denom(), p);
    Valuation::Finite(a - b)
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    a.mod_floor(m).modinv(m)
}

/// An element of `Z/p^K`, stored as its canonical representative in `[0, p^K)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicResidue {
    prime: u64,
    precision: u32,
    value: BigInt,
}

impl PadicResidue {
    pub fn new(value: &BigInt, p: u64, k: u32) -> Self {
        assert!(p >= 2 && k >= 1, "residue ring needs p >= 2 and K >= 1");
        PadicResidue { prime: p, precision: k, value: value.mod_floor(&pow_p(p, k)) }
    }

    pub fn from_i64(value: i64, p: u64, k: u32) -> Self {
        Self::new(&BigInt::from(value), p, k)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> BigInt {
        pow_p(self.prime, self.precision)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Coefficient of `p^i`; digits at or beyond the precision are not known.
    pub fn digit(&self, i: u32) -> Result<u64, ArithError> {
        if i >= self.precision {
            return Err(ArithError::PrecisionExceeded {
                p: self.prime,
                index: i as i64,
                available: self.precision as i64,
            });
        }
        let d = (&self.value / pow_p(self.prime, i)) % BigInt::from(self.prime);
        Ok(d.to_u64().expect("digit below p"))
    }

    pub fn digits(&self) -> Vec<u64> {
        (0..self.precision).map(|i| self.digit(i).expect("in range")).collect()
    }

    pub fn truncate(&self, k: u32) -> Self {
        assert!(k <= self.precision, "cannot truncate upward");
        Self::new(&self.value, self.prime, k)
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        mod_inverse(&self.value, self.prime, self.precision)
    }

    pub fn pow(&self, e: u64) -> Self {
        let v = self.value.modpow(&BigInt::from(e), &self.modulus());
        PadicResidue { value: v, ..self.clone() }
    }

    fn same_ring(&self, o: &Self) {
        assert!(
            self.prime == o.prime && self.precision == o.precision,
            "mixed residue rings: {}^{} vs {}^{}",
            self.prime,
            self.precision,
            o.prime,
            o.precision
        );
    }
}

impl fmt::Display for PadicResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for &PadicResidue {
    type Output = PadicResidue;
    fn add(self, o: &PadicResidue) -> PadicResidue {
        self.same_ring(o);
        PadicResidue::new(&(&self.value + &o.value), self.prime, self.precision)
    }
}

impl Sub for &PadicResidue {
    type Output = PadicResidue;
    fn sub(self, o: &PadicResidue) -> PadicResidue {
        self.same_ring(o);
        PadicResidue::new(&(&self.value - &o.value), self.prime, self.precision)
    }
}

impl Mul for &PadicResidue {
    type Output = PadicResidue;
    fn mul(self, o: &PadicResidue) -> PadicResidue {
        self.same_ring(o);
        PadicResidue::new(&(&self.value * &o.value), self.prime, self.precision)
    }
}

impl Neg for &PadicResidue {
    type Output = PadicResidue;
    fn neg(self) -> PadicResidue {
        PadicResidue::new(&-&self.value, self.prime, self.precision)
    }
}

/// Reduces a p-integral rational into `Z/p^K`, inverting the denominator.
pub fn reduce_mod(x: &ExactRational, p: u64, k: u32) -> Result<PadicResidue, ArithError> {
    let m = pow_p(p, k);
    let inv = inverse_mod(x.denom(), &m).ok_or(ArithError::NonIntegral { p })?;
    Ok(PadicResidue::new(&(x.numer() * inv), p, k))
}

pub fn mod_inverse(a: &BigInt, p: u64, k: u32) -> Result<PadicResidue, ArithError> {
    let m = pow_p(p, k);
    match inverse_mod(a, &m) {
        Some(v) => Ok(PadicResidue::new(&v, p, k)),
        None => Err(ArithError::NotAUnit { p, a: a.to_string() }),
    }
}

/// `(x)_i` for a p-integral rational.
pub fn hensel_digit(x: &ExactRational, p: u64, i: u32) -> Result<u64, ArithError> {
    reduce_mod(x, p, i + 1)?.digit(i)
}

/// A p-adic number `p^val * unit` known modulo `p^prec`.
///
/// `unit` is prime to `p` and lies in `[0, p^(prec - val))`. Zero known to
/// precision `prec` is stored as `val == prec`, `unit == 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Padic {
    p: u64,
    val: i64,
    unit: BigInt,
    prec: i64,
}

impl Padic {
    pub fn zero(p: u64, prec: i64) -> Self {
        let prec = min(prec, EXACT);
        Padic { p, val: prec, unit: BigInt::zero(), prec }
    }

    /// Zero that is known exactly; the neutral start of every accumulation.
    pub fn exact_zero(p: u64) -> Self {
        Self::zero(p, EXACT)
    }

    fn normalize(p: u64, mut val: i64, s: BigInt, prec: i64) -> Self {
        if s.is_zero() || val >= prec {
            return Self::zero(p, prec);
        }
        let (v, u) = split_p(&s, p);
        val += v;
        if val >= prec {
            return Self::zero(p, prec);
        }
        let m = pow_p(p, (prec - val) as u32);
        Padic { p, val, unit: u.mod_floor(&m), prec }
    }

    /// Reduction of an exact rational, certified to absolute precision `prec`.
    pub fn from_rational(x: &ExactRational, p: u64, prec: i64) -> Self {
        if x.is_zero() {
            return Self::zero(p, prec);
        }
        let (a, n) = split_p(x.numer(), p);
        let (b, d) = split_p(x.denom(), p);
        let val = a - b;
        if val >= prec {
            return Self::zero(p, prec);
        }
        let m = pow_p(p, (prec - val) as u32);
        let inv = inverse_mod(&d, &m).expect("cofactor prime to p");
        Padic { p, val, unit: (n * inv).mod_floor(&m), prec }
    }

    pub fn from_int(x: &BigInt, p: u64, prec: i64) -> Self {
        Self::normalize(p, 0, x.clone(), prec)
    }

    pub fn from_i64(x: i64, p: u64, prec: i64) -> Self {
        Self::from_int(&BigInt::from(x), p, prec)
    }

    /// A residue mod `p^K` read as a p-adic integer known to `K` digits.
    pub fn from_residue(r: &PadicResidue) -> Self {
        Self::from_int(r.value(), r.prime(), r.precision() as i64)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Certified absolute precision: the value is known modulo `p^precision`.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Valuation of a nonzero value; for a zero this is a lower bound (its precision).
    pub fn valuation_lower_bound(&self) -> i64 {
        self.val
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.val)
        }
    }

    pub fn is_integral(&self) -> bool {
        self.val >= 0
    }

    fn check_prime(&self, o: &Padic) {
        assert_eq!(self.p, o.p, "mixed primes in p-adic arithmetic");
    }

    /// Multiplies by an exact rational; precision moves with its valuation.
    pub fn mul_rational(&self, q: &ExactRational) -> Self {
        if q.is_zero() {
            return Self::exact_zero(self.p);
        }
        let (a, n) = split_p(q.numer(), self.p);
        let (b, d) = split_p(q.denom(), self.p);
        let vq = a - b;
        if self.is_zero() {
            return Self::zero(self.p, self.prec.saturating_add(vq));
        }
        let val = self.val + vq;
        let prec = self.prec + vq;
        let m = pow_p(self.p, (prec - val) as u32);
        let inv = inverse_mod(&d, &m).expect("cofactor prime to p");
        Padic { p: self.p, val, unit: (&self.unit * n * inv).mod_floor(&m), prec }
    }

    pub fn mul_i64(&self, c: i64) -> Self {
        self.mul_rational(&int(c))
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        self.mul_rational(&int(c.clone()))
    }

    /// Exact division by `p^j`.
    pub fn div_p(&self, j: i64) -> Self {
        Padic { val: self.val - j, prec: self.prec - j, ..self.clone() }.clamp_zero()
    }

    pub fn mul_p(&self, j: i64) -> Self {
        self.div_p(-j)
    }

    fn clamp_zero(self) -> Self {
        if self.is_zero() {
            Self::zero(self.p, self.prec)
        } else {
            self
        }
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::NotAUnit { p: self.p, a: "0".into() });
        }
        let r = self.prec - self.val;
        let m = pow_p(self.p, r as u32);
        let u = inverse_mod(&self.unit, &m).expect("unit");
        Ok(Padic { p: self.p, val: -self.val, unit: u, prec: r - self.val })
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            assert!(self.prec < EXACT, "0^0 of an exact zero has no finite precision");
            return Self::from_i64(1, self.p, self.prec);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = &acc * self;
        }
        acc
    }

    /// Canonical residue modulo `p^k`.
    pub fn residue(&self, k: u32) -> Result<PadicResidue, ArithError> {
        if self.prec < k as i64 {
            return Err(ArithError::PrecisionExceeded {
                p: self.p,
                index: k as i64 - 1,
                available: self.prec,
            });
        }
        if self.is_zero() || self.val >= k as i64 {
            return Ok(PadicResidue::from_i64(0, self.p, k));
        }
        if self.val < 0 {
            return Err(ArithError::NonIntegral { p: self.p });
        }
        let v = &self.unit * pow_p(self.p, self.val as u32);
        Ok(PadicResidue::new(&v, self.p, k))
    }

    /// Hensel digit `(x)_i`.
    pub fn digit(&self, i: u32) -> Result<u64, ArithError> {
        self.residue(i + 1)?.digit(i)
    }

    /// Whether `self ≡ o (mod p^k)`. Errors if the certified precision cannot decide it.
    pub fn congruent(&self, o: &Padic, k: i64) -> Result<bool, ArithError> {
        let d = self - o;
        if !d.is_zero() && d.val < k {
            return Ok(false);
        }
        if d.prec < k {
            return Err(ArithError::PrecisionExceeded { p: self.p, index: k - 1, available: d.prec });
        }
        Ok(true)
    }

    /// `p^j * self` as an integer mod `p^(k + j)`, where `j = max(0, -val)`.
    /// Used to print values that are not p-integral.
    pub fn scaled_residue(&self, k: u32) -> Result<(u32, PadicResidue), ArithError> {
        let j = max(0, -self.val) as u32;
        let scaled = self.mul_p(j as i64);
        Ok((j, scaled.residue(k + j)?))
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O({}^{})", self.p, self.prec);
        }
        write!(f, "{}*{}^{} + O({}^{})", self.unit, self.p, self.val, self.p, self.prec)
    }
}

impl Add for &Padic {
    type Output = Padic;
    fn add(self, o: &Padic) -> Padic {
        self.check_prime(o);
        let prec = min(self.prec, o.prec);
        if self.is_zero() && o.is_zero() {
            return Padic::zero(self.p, prec);
        }
        let vm = min(self.val, o.val);
        if vm >= prec {
            return Padic::zero(self.p, prec);
        }
        let lift = |x: &Padic| -> BigInt {
            if x.is_zero() || x.val >= prec {
                BigInt::zero()
            } else {
                &x.unit * pow_p(x.p, (x.val - vm) as u32)
            }
        };
        let m = pow_p(self.p, (prec - vm) as u32);
        let s = (lift(self) + lift(o)).mod_floor(&m);
        Padic::normalize(self.p, vm, s, prec)
    }
}

impl Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        let m = pow_p(self.p, (self.prec - self.val) as u32);
        Padic { unit: (&m - &self.unit).mod_floor(&m), ..self.clone() }
    }
}

impl Sub for &Padic {
    type Output = Padic;
    fn sub(self, o: &Padic) -> Padic {
        self + &(-o)
    }
}

impl Mul for &Padic {
    type Output = Padic;
    fn mul(self, o: &Padic) -> Padic {
        self.check_prime(o);
        let prec = min(self.prec.saturating_add(o.val), o.prec.saturating_add(self.val));
        if self.is_zero() || o.is_zero() {
            return Padic::zero(self.p, prec);
        }
        let val = self.val + o.val;
        if val >= prec {
            return Padic::zero(self.p, prec);
        }
        let m = pow_p(self.p, (prec - val) as u32);
        Padic { p: self.p, val, unit: (&self.unit * &o.unit).mod_floor(&m), prec }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Padic {
            type Output = Padic;
            fn $f(self, o: Padic) -> Padic { (&self).$f(&o) }
        }
        impl $tr<&Padic> for Padic {
            type Output = Padic;
            fn $f(self, o: &Padic) -> Padic { (&self).$f(o) }
        }
        impl $tr<Padic> for &Padic {
            type Output = Padic;
            fn $f(self, o: Padic) -> Padic { self.$f(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        -&self
    }
}

impl AddAssign<&Padic> for Padic {
    fn add_assign(&mut self, o: &Padic) {
        *self = &*self + o;
    }
}

impl AddAssign for Padic {
    fn add_assign(&mut self, o: Padic) {
        *self = &*self + &o;
    }
}

impl SubAssign<&Padic> for Padic {
    fn sub_assign(&mut self, o: &Padic) {
        *self = &*self - o;
    }
}

impl SubAssign for Padic {
    fn sub_assign(&mut self, o: Padic) {
        *self = &*self - &o;
    }
}

/// `Σ` over an iterator of p-adics, starting from an exact zero.
pub fn padic_sum<I: IntoIterator<Item = Padic>>(p: u64, items: I) -> Padic {
    items.into_iter().fold(Padic::exact_zero(p), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_mod(&rat(1, 12), 7, 1).unwrap().value(), &BigInt::from(3));
        assert_eq!(reduce_mod(&rat(0, 1), 11, 3).unwrap().value(), &BigInt::from(0));
        assert_eq!(reduce_mod(&rat(-1, 6), 5, 2).unwrap().value(), &BigInt::from(4));
        assert_eq!(reduce_mod(&rat(1, 7), 7, 2), Err(ArithError::NonIntegral { p: 7 }));
    }

    #[test]
    fn digit_examples() {
        assert_eq!(hensel_digit(&rat(25, 12), 5, 0), Ok(0));
        assert_eq!(hensel_digit(&rat(25, 12), 5, 2), Ok(3));
        assert_eq!(hensel_digit(&int(7), 7, 1), Ok(1));
        let r = PadicResidue::from_i64(7, 7, 2);
        assert!(matches!(r.digit(2), Err(ArithError::PrecisionExceeded { .. })));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat(25, 12), 5), Valuation::Finite(2));
        assert_eq!(valuation(&rat(-5, 63), 5), Valuation::Finite(1));
        assert_eq!(valuation(&rat(0, 1), 13), Valuation::Infinite);
        assert_eq!(valuation(&rat(3, 50), 5), Valuation::Finite(-2));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(&BigInt::from(2), 5, 1).unwrap().value(), &BigInt::from(3));
        assert_eq!(mod_inverse(&BigInt::from(6), 5, 2).unwrap().value(), &BigInt::from(21));
        assert_eq!(mod_inverse(&BigInt::from(1), 97, 4).unwrap().value(), &BigInt::from(1));
        assert!(matches!(mod_inverse(&BigInt::from(10), 5, 2), Err(ArithError::NotAUnit { .. })));
    }

    #[test]
    fn padic_pole_cancels() {
        // (1/7 + 1/2) - 1/7 = 1/2, through a value of valuation -1
        let p = 7;
        let a = Padic::from_rational(&rat(1, 7), p, 6);
        let b = Padic::from_rational(&rat(1, 2), p, 6);
        let s = &(&a + &b) - &a;
        assert_eq!(s.residue(5).unwrap(), reduce_mod(&rat(1, 2), p, 5).unwrap());
        assert!(s.residue(6).is_ok());
        assert!(!a.is_integral());
        assert_eq!(a.residue(1), Err(ArithError::NonIntegral { p: 7 }));
    }

    #[test]
    fn padic_precision_shrinks_under_pole_products() {
        let p = 5;
        let pole = Padic::from_rational(&rat(1, 5), p, 4);
        let x = Padic::from_rational(&rat(3, 7), p, 4);
        let prod = &pole * &x;
        assert_eq!(prod.precision(), 3);
        let back = prod.mul_p(1);
        assert_eq!(back.residue(4).unwrap(), reduce_mod(&rat(3, 7), p, 4).unwrap());
        assert!(matches!(back.residue(5), Err(ArithError::PrecisionExceeded { .. })));
    }

    #[test]
    fn padic_congruence_reports_undecidable() {
        let p = 11;
        let a = Padic::from_rational(&rat(2, 3), p, 2);
        let b = Padic::from_rational(&(rat(2, 3) + int(121)), p, 5);
        assert_eq!(a.congruent(&b, 2), Ok(true));
        assert!(a.congruent(&b, 3).is_err());
        let c = Padic::from_rational(&rat(5, 3), p, 2);
        assert_eq!(a.congruent(&c, 4), Ok(false));
    }

    #[test]
    fn padic_inverse_roundtrip() {
        let p = 13;
        let x = Padic::from_rational(&rat(26, 5), p, 8);
        let y = x.inverse().unwrap();
        let one = &x * &y;
        assert_eq!(one.residue(6).unwrap().value(), &BigInt::from(1));
    }
}
