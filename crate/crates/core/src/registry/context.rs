use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{int, pow_p, ExactRational, Padic};
use crate::bernoulli::{agoh_giuga, BernoulliCache, BernoulliError, BernoulliReductions, EmResidueTable};
use crate::combinatorics::{stirling_row, HarmonicTable, StirlingRow};
use crate::hensel::{newton_symmetric_check, FamilyTag, HenselError, LiftFamily, SymmetricReport};
use crate::quotients::QuotientTable;

use super::EvalError;

/// Everything the evaluators need for one prime, built once and then read-only.
pub struct PrimeContext<'a> {
    pub p: u64,
    /// Requested precision `K`.
    pub k: u32,
    /// Certified digits every reduction starts with.
    pub digits: i64,
    pub lift_k: u32,
    pub cache: &'a BernoulliCache,
    red: BernoulliReductions,
    pub quotients: QuotientTable,
    q: Vec<Padic>,
    q_pow: Vec<[BigInt; 4]>,
    pow_pos: Vec<Vec<BigInt>>,
    pow_neg: Vec<Vec<BigInt>>,
    w: Padic,
    ag: Padic,
    pub ag_exact: ExactRational,
    pub em: EmResidueTable,
    pub harmonic: HarmonicTable,
    pub stirling: StirlingRow,
    families: Vec<LiftFamily>,
    pascal: Vec<Vec<BigInt>>,
    conv: OnceLock<ConvTables>,
    symmetric: OnceLock<SymmetricReport>,
}

/// Full-window convolutions of every order up to `2(p-1)`.
pub struct ConvTables {
    pub cb: Vec<Padic>,
    pub bcb: Vec<Padic>,
    pub mb3: Vec<Padic>,
    pub b3: Vec<Padic>,
}

#[derive(Debug, thiserror::Error)]
pub enum ContextError {
    #[error(transparent)]
    Bernoulli(#[from] BernoulliError),
    #[error(transparent)]
    Hensel(#[from] HenselError),
    #[error("Bernoulli cache holds {have} entries, p={p} needs {need}")]
    CacheTooSmall { p: u64, have: usize, need: usize },
}

/// Largest Bernoulli index any check touches for `p`.
pub fn bernoulli_bound(p: u64) -> usize {
    5 * (p as usize - 1)
}

impl<'a> PrimeContext<'a> {
    pub fn new(cache: &'a BernoulliCache, p: u64, k: u32) -> Result<Self, ContextError> {
        let need = bernoulli_bound(p);
        if cache.max_index() < need {
            return Err(ContextError::CacheTooSmall { p, have: cache.max_index(), need });
        }
        let lift_k = k.max(4);
        let digits = (k as i64 + 4).max(12);
        let md = pow_p(p, digits as u32);
        let red = BernoulliReductions::new(cache, p, need, digits);
        let quotients = QuotientTable::new(p);
        let mut q = vec![Padic::exact_zero(p)];
        let mut q_pow = vec![[BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::zero()]];
        for a in 1..p {
            let qa = quotients.q(a).mod_floor(&md);
            q.push(Padic::from_int(&qa, p, digits));
            let q2 = (&qa * &qa).mod_floor(&md);
            let q3 = (&q2 * &qa).mod_floor(&md);
            q_pow.push([BigInt::one(), qa, q2, q3]);
        }
        let span = 2 * p as usize + 4;
        let mut pow_pos = vec![Vec::new()];
        let mut pow_neg = vec![Vec::new()];
        for a in 1..p {
            let ab = BigInt::from(a);
            let inv = ab.modinv(&md).expect("unit");
            let mut pp = vec![BigInt::one()];
            let mut pn = vec![BigInt::one()];
            for e in 1..=span {
                pp.push((&pp[e - 1] * &ab).mod_floor(&md));
                pn.push((&pn[e - 1] * &inv).mod_floor(&md));
            }
            pow_pos.push(pp);
            pow_neg.push(pn);
        }
        let w = Padic::from_int(quotients.wilson(), p, digits);
        let ag_exact = agoh_giuga(cache, p);
        let ag = Padic::from_rational(&ag_exact, p, digits);
        let em = EmResidueTable::new(cache, p)?;
        let harmonic = HarmonicTable::new(2 * p + 2);
        let stirling = stirling_row(p);
        let families = FamilyTag::ALL
            .iter()
            .map(|&tag| LiftFamily::new(p, tag, lift_k, cache))
            .collect::<Result<Vec<_>, _>>()?;
        let rows = 2 * p as usize + 2;
        let mut pascal: Vec<Vec<BigInt>> = Vec::with_capacity(rows + 1);
        for n in 0..=rows {
            let mut row = vec![BigInt::one(); n + 1];
            for j in 1..n {
                row[j] = &pascal[n - 1][j - 1] + &pascal[n - 1][j];
            }
            pascal.push(row);
        }
        Ok(PrimeContext {
            p,
            k,
            digits,
            lift_k,
            cache,
            red,
            quotients,
            q,
            q_pow,
            pow_pos,
            pow_neg,
            w,
            ag,
            ag_exact,
            em,
            harmonic,
            stirling,
            families,
            pascal,
            conv: OnceLock::new(),
            symmetric: OnceLock::new(),
        })
    }

    pub fn pu(&self) -> usize {
        self.p as usize
    }

    pub fn zero(&self) -> Padic {
        Padic::exact_zero(self.p)
    }

    /// An integer value as a p-adic, certified to the working precision.
    pub fn int(&self, n: i64) -> Padic {
        Padic::from_i64(n, self.p, self.digits)
    }

    pub fn big(&self, n: &BigInt) -> Padic {
        Padic::from_int(n, self.p, self.digits)
    }

    pub fn rat(&self, x: &ExactRational) -> Padic {
        Padic::from_rational(x, self.p, self.digits)
    }

    pub fn frac(&self, n: i64, d: i64) -> Padic {
        self.rat(&crate::arith::rat(n, d))
    }

    /// `𝔅_t`.
    pub fn db(&self, t: usize) -> &Padic {
        &self.red.divided[t]
    }

    /// `B_t`.
    pub fn b(&self, t: usize) -> &Padic {
        &self.red.plain[t]
    }

    /// Exact `B_t`.
    pub fn bx(&self, t: usize) -> &ExactRational {
        self.cache.bernoulli(t)
    }

    /// Exact `𝔅_t`.
    pub fn dbx(&self, t: usize) -> ExactRational {
        self.cache.divided(t)
    }

    /// `𝔇_i` as the integer digit it is.
    pub fn d(&self, i: usize) -> Padic {
        self.int(self.em.get(i) as i64)
    }

    pub fn q(&self, a: u64) -> &Padic {
        &self.q[a as usize]
    }

    pub fn w(&self) -> &Padic {
        &self.w
    }

    pub fn ag(&self) -> &Padic {
        &self.ag
    }

    /// `a^e` with negative `e` meaning inverse powers.
    pub fn apow(&self, a: u64, e: i64) -> Padic {
        Padic::from_int(self.apow_raw(a, e), self.p, self.digits)
    }

    fn apow_raw(&self, a: u64, e: i64) -> &BigInt {
        let idx = e.unsigned_abs() as usize;
        if e >= 0 {
            &self.pow_pos[a as usize][idx]
        } else {
            &self.pow_neg[a as usize][idx]
        }
    }

    /// `Σ_a a^t q_a^m`.
    pub fn sq(&self, t: i64, m: usize) -> Padic {
        let md = pow_p(self.p, self.digits as u32);
        let mut acc = BigInt::zero();
        for a in 1..self.p {
            acc += self.apow_raw(a, t) * &self.q_pow[a as usize][m];
        }
        Padic::from_int(&acc.mod_floor(&md), self.p, self.digits)
    }

    pub fn family(&self, tag: FamilyTag) -> &LiftFamily {
        &self.families[FamilyTag::ALL.iter().position(|&t| t == tag).expect("known tag")]
    }

    pub fn root(&self, tag: FamilyTag, a: u64) -> Padic {
        Padic::from_residue(self.family(tag).root(a))
    }

    pub fn correction(&self, tag: FamilyTag, a: u64) -> Padic {
        Padic::from_residue(self.family(tag).correction(a))
    }

    pub fn binomial(&self, n: usize, k: usize) -> &BigInt {
        &self.pascal[n][k]
    }

    pub fn binom(&self, n: usize, k: usize) -> Padic {
        if k > n {
            return self.zero();
        }
        self.big(&self.pascal[n][k])
    }

    pub fn h(&self, t: u64) -> Padic {
        self.rat(self.harmonic.h(t))
    }

    pub fn h2(&self, t: u64) -> Padic {
        self.rat(self.harmonic.h2(t))
    }

    /// `(x)_1` of a quantity that must vanish mod `p`, as an integer digit.
    pub fn digit1(&self, x: &Padic) -> Result<Padic, EvalError> {
        if !x.is_zero() && x.valuation_lower_bound() < 1 {
            return Err(EvalError::NotDivisible { found: x.valuation_lower_bound() });
        }
        Ok(self.int(x.digit(1)? as i64))
    }

    /// `(x)_i` of a p-integral quantity, as an integer digit.
    pub fn digit(&self, x: &Padic, i: u32) -> Result<Padic, EvalError> {
        Ok(self.int(x.digit(i)? as i64))
    }

    /// `Σ_{k=lo}^{p-3} 𝔅_k 𝔅_{order-k}`, empty when `lo > p-3`.
    pub fn tcb(&self, lo: usize, order: usize) -> Padic {
        let mut acc = self.zero();
        let hi = self.pu() - 3;
        for k in (lo..=hi).filter(|k| k % 2 == 0) {
            acc += self.db(k) * self.db(order - k);
        }
        acc
    }

    pub fn conv(&self) -> &ConvTables {
        self.conv.get_or_init(|| ConvTables::build(self))
    }

    pub fn cb(&self, s: usize) -> &Padic {
        &self.conv().cb[s]
    }

    pub fn bcb(&self, s: usize) -> &Padic {
        &self.conv().bcb[s]
    }

    pub fn mb3(&self, s: usize) -> &Padic {
        &self.conv().mb3[s]
    }

    pub fn b3(&self, s: usize) -> &Padic {
        &self.conv().b3[s]
    }

    /// Newton sums and elementary symmetric functions of the Teichmüller roots mod `p^K`.
    pub fn symmetric(&self) -> &SymmetricReport {
        self.symmetric
            .get_or_init(|| newton_symmetric_check(self.family(FamilyTag::Teichmuller), self.k))
    }

    /// `pB_t` exactly, for the closed forms that divide by `p^j`.
    pub fn pbx(&self, t: usize) -> ExactRational {
        self.bx(t) * int(self.p)
    }
}

impl ConvTables {
    fn build(ctx: &PrimeContext<'_>) -> Self {
        let top = 2 * (ctx.pu() - 1);
        let mut cb = vec![ctx.zero(); top + 1];
        let mut bcb = vec![ctx.zero(); top + 1];
        for s in 4..=top {
            for i in (2..=s - 2).filter(|i| i % 2 == 0 && (s - i) % 2 == 0) {
                let prod = ctx.db(i) * ctx.db(s - i);
                bcb[s] += ctx.binom(s, i) * &prod;
                cb[s] += prod;
            }
        }
        let mut mb3 = vec![ctx.zero(); top + 1];
        let mut b3 = vec![ctx.zero(); top + 1];
        for s in 6..=top {
            for i in (2..=s - 4).filter(|i| i % 2 == 0 && s % 2 == 0) {
                mb3[s] += ctx.binom(s, i) * ctx.db(i) * &bcb[s - i];
                b3[s] += ctx.db(i) * &cb[s - i];
            }
        }
        ConvTables { cb, bcb, mb3, b3 }
    }
}
