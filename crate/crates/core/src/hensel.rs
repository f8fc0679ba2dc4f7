//! Hensel lifts of the roots of `X^{p-1} + c` for the three constants
//! `c = -1` (Teichmüller), `c = (p-1)!` and `c = pB_{p-1}`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::{int, mod_inverse, pow_p, reduce_mod, ArithError, ExactRational, PadicResidue};
use crate::bernoulli::{agoh_giuga, BernoulliCache};
use crate::quotients::{factorial, QuotientTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HenselError {
    #[error("{a} is not a root mod {p}")]
    NotARoot { p: u64, a: u64 },
    #[error("{a} is not a simple root mod {p}")]
    NotSimpleRoot { p: u64, a: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    /// `X^{p-1} - 1`, roots `ω(a)`, corrections `v_a`.
    Teichmuller,
    /// `X^{p-1} + (p-1)!`, roots `Ω_a`, corrections `w_a`.
    WilsonAnalog,
    /// `X^{p-1} + pB_{p-1}`, roots `γ_a`, corrections `z_a`.
    BernoulliAnalog,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 3] = [FamilyTag::Teichmuller, FamilyTag::WilsonAnalog, FamilyTag::BernoulliAnalog];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Teichmuller => "teichmuller",
            FamilyTag::WilsonAnalog => "wilson_analog",
            FamilyTag::BernoulliAnalog => "bernoulli_analog",
        }
    }

    /// Constant term `c` of `X^{p-1} + c`.
    pub fn constant(self, p: u64, cache: &BernoulliCache) -> ExactRational {
        match self {
            FamilyTag::Teichmuller => int(-1),
            FamilyTag::WilsonAnalog => int(factorial(p - 1)),
            FamilyTag::BernoulliAnalog => cache.bernoulli(p as usize - 1) * int(p),
        }
    }
}

/// Newton iteration on `X^{p-1} + c` from `a`, doubling the precision each step.
pub fn lift_root(p: u64, a: u64, c: &PadicResidue, k: u32) -> Result<PadicResidue, HenselError> {
    assert_eq!(c.prime(), p);
    assert!(c.precision() >= k, "constant known to fewer digits than requested");
    let e = BigInt::from(p - 1);
    let pm = pow_p(p, 1);
    let f0 = BigInt::from(a).modpow(&e, &pm) + c.value();
    if !(f0 % &pm).is_zero() {
        return Err(HenselError::NotARoot { p, a });
    }
    if a % p == 0 {
        return Err(HenselError::NotSimpleRoot { p, a });
    }
    let mut x = BigInt::from(a);
    let mut prec = 1;
    while prec < k {
        prec = (2 * prec).min(k);
        let m = pow_p(p, prec);
        let f = x.modpow(&e, &m) + c.value();
        let df = (&e * x.modpow(&BigInt::from(p - 2), &m)) % &m;
        let inv = mod_inverse(&df, p, prec).map_err(|_| HenselError::NotSimpleRoot { p, a })?;
        x = (&x - f * inv.value()) % &m;
        if x < BigInt::zero() {
            x += &m;
        }
    }
    Ok(PadicResidue::new(&x, p, k))
}

/// The `p-1` lifted roots of one family with their corrections `(root - a)/p`.
#[derive(Debug, Clone)]
pub struct LiftFamily {
    p: u64,
    k: u32,
    tag: FamilyTag,
    roots: Vec<PadicResidue>,
    corrections: Vec<PadicResidue>,
}

impl LiftFamily {
    pub fn new(p: u64, tag: FamilyTag, k: u32, cache: &BernoulliCache) -> Result<Self, HenselError> {
        assert!(k >= 2, "corrections need at least two digits");
        let c = reduce_mod(&tag.constant(p, cache), p, k)?;
        let mut roots = Vec::with_capacity(p as usize - 1);
        let mut corrections = Vec::with_capacity(p as usize - 1);
        for a in 1..p {
            let r = lift_root(p, a, &c, k)?;
            let corr = (r.value() - BigInt::from(a)) / BigInt::from(p);
            corrections.push(PadicResidue::new(&corr, p, k - 1));
            roots.push(r);
        }
        Ok(LiftFamily { p, k, tag, roots, corrections })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.k
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    pub fn root(&self, a: u64) -> &PadicResidue {
        &self.roots[a as usize - 1]
    }

    /// `v_a`, `w_a` or `z_a` according to the family, known mod `p^{K-1}`.
    pub fn correction(&self, a: u64) -> &PadicResidue {
        &self.corrections[a as usize - 1]
    }

    pub fn roots(&self) -> &[PadicResidue] {
        &self.roots
    }
}

pub fn correction_residues(family: &LiftFamily) -> Vec<PadicResidue> {
    family.corrections.clone()
}

/// Power sums `s_t` and elementary symmetric functions `σ_t` of the roots.
#[derive(Debug, Clone)]
pub struct SymmetricReport {
    pub modulus_power: u32,
    /// `σ_t` for `t = 0..=p-1`.
    pub sigma: Vec<PadicResidue>,
    /// `s_t` for `t = 0..=2(p-1)`.
    pub power: Vec<PadicResidue>,
}

impl SymmetricReport {
    /// Indices `t` in `1..=p-2` where `σ_t`, `s_t` or `s_{p-1+t}` is nonzero.
    pub fn failures(&self) -> Vec<(&'static str, usize)> {
        let n = self.sigma.len() - 1;
        let mut out = Vec::new();
        for t in 1..n {
            if !self.sigma[t].is_zero() {
                out.push(("sigma", t));
            }
            if !self.power[t].is_zero() {
                out.push(("s", t));
            }
            if !self.power[n + t].is_zero() {
                out.push(("s_shift", t));
            }
        }
        out
    }
}

pub fn newton_symmetric_check(family: &LiftFamily, k: u32) -> SymmetricReport {
    let p = family.p;
    let n = p as usize - 1;
    let roots: Vec<PadicResidue> = family.roots.iter().map(|r| r.truncate(k)).collect();
    let zero = PadicResidue::from_i64(0, p, k);
    let mut sigma = vec![zero.clone(); n + 1];
    sigma[0] = PadicResidue::from_i64(1, p, k);
    for r in &roots {
        for j in (1..=n).rev() {
            sigma[j] = &sigma[j] + &(&sigma[j - 1] * r);
        }
    }
    let mut power = vec![zero; 2 * n + 1];
    let mut pw: Vec<PadicResidue> = vec![PadicResidue::from_i64(1, p, k); n];
    for slot in power.iter_mut() {
        *slot = pw.iter().fold(PadicResidue::from_i64(0, p, k), |acc, x| &acc + x);
        for (x, r) in pw.iter_mut().zip(&roots) {
            *x = &*x * r;
        }
    }
    SymmetricReport { modulus_power: k, sigma, power }
}

/// One base of the second-order formula for `z_a`.
#[derive(Debug, Clone)]
pub struct ZCorrectionRow {
    pub a: u64,
    pub lift: PadicResidue,
    pub formula: PadicResidue,
}

impl ZCorrectionRow {
    pub fn holds(&self) -> bool {
        self.lift == self.formula
    }
}

/// Compares `z_a` from the lift with `a(q_a+AG) + a p (1+AG)(q_a+AG)` mod `p^2`.
pub fn z_correction_check(family: &LiftFamily, quotients: &QuotientTable, cache: &BernoulliCache) -> Result<Vec<ZCorrectionRow>, HenselError> {
    assert_eq!(family.tag, FamilyTag::BernoulliAnalog);
    assert!(family.k >= 3, "z_a needs two digits");
    let p = family.p;
    let ag = reduce_mod(&agoh_giuga(cache, p), p, 2)?;
    let one = PadicResidue::from_i64(1, p, 2);
    let pr = PadicResidue::from_i64(p as i64, p, 2);
    let mut rows = Vec::new();
    for a in 1..p {
        let ar = PadicResidue::from_i64(a as i64, p, 2);
        let q = PadicResidue::new(quotients.q(a), p, 2);
        let s = &q + &ag;
        let first = &ar * &s;
        let second = &(&(&ar * &pr) * &(&one + &ag)) * &s;
        rows.push(ZCorrectionRow { a, lift: family.correction(a).truncate(2), formula: &first + &second });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn teich(p: u64, a: u64, k: u32) -> PadicResidue {
        lift_root(p, a, &PadicResidue::from_i64(-1, p, k), k).unwrap()
    }

    #[test]
    fn lift_examples() {
        assert_eq!(teich(5, 2, 2).value(), &BigInt::from(7));
        assert_eq!(teich(5, 4, 2).value(), &BigInt::from(24));
        for k in 1..6 {
            assert_eq!(teich(11, 1, k).value(), &BigInt::from(1));
        }
    }

    #[test]
    fn not_a_root() {
        let c = PadicResidue::from_i64(3, 7, 3);
        assert!(matches!(lift_root(7, 2, &c, 3), Err(HenselError::NotARoot { .. })));
    }

    #[test]
    fn newton_examples() {
        let cache = BernoulliCache::new(10);
        let f5 = LiftFamily::new(5, FamilyTag::Teichmuller, 3, &cache).unwrap();
        let r5 = newton_symmetric_check(&f5, 3);
        assert!(r5.power[1].is_zero());
        assert_eq!(r5.power[4].value(), &BigInt::from(4));
        let f7 = LiftFamily::new(7, FamilyTag::Teichmuller, 2, &cache).unwrap();
        let r7 = newton_symmetric_check(&f7, 2);
        assert!(r7.sigma[3].is_zero());
        assert!(r7.failures().is_empty());
    }

    #[test]
    fn z_correction_small_primes() {
        let cache = BernoulliCache::new(20);
        for p in [5u64, 7, 11, 13] {
            let fam = LiftFamily::new(p, FamilyTag::BernoulliAnalog, 3, &cache).unwrap();
            let rows = z_correction_check(&fam, &QuotientTable::new(p), &cache).unwrap();
            assert!(rows.iter().all(ZCorrectionRow::holds), "p={p}");
        }
    }
}
