//! Stand-alone convolution calculators over Bernoulli and divided Bernoulli numbers.
//!
//! Pure families return exact rationals. Families that involve `𝔇_i` return a
//! residue mod `p`, because `𝔇_i` only exists there.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::{int, reduce_mod, ArithError, ExactRational, PadicResidue};
use crate::bernoulli::{BernoulliCache, EmResidueTable};
use crate::combinatorics::binomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `𝒞𝔅(s) = Σ_{i=2}^{s-2} 𝔅_i 𝔅_{s-i}`.
    Cb,
    /// `b𝒞𝔅(s)`, binomially weighted.
    Bcb,
    /// `m𝔅³(s)`, multinomially weighted triple sum over `i, j, k >= 2`.
    Mb3,
    /// `𝔅³(s)`, plain triple sum over `i, j, k >= 2`.
    B3,
    /// `𝒯𝒞𝔅`: `Σ_{k=lo}^{hi} 𝔅_k 𝔅_{s-k}`.
    Tcb,
    /// `𝒞B𝔇(s) = Σ_{i even, 2..s-4} B_i 𝔇_{s-i}`.
    Cbd,
    /// `𝒯𝒞B𝔇`: `Σ_{i=lo}^{hi} B_i 𝔇_{s-i}`.
    Tcbd,
    /// `𝒞𝔅𝔇(s) = Σ_{i even, 2..s-4} 𝔅_i 𝔇_{s-i}`.
    Cdbd,
    /// `𝒯𝒞𝔅𝔇`: `Σ_{i=lo}^{hi} 𝔅_i 𝔇_{s-i}`.
    Tcdbd,
}

impl Family {
    pub fn involves_em(self) -> bool {
        matches!(self, Family::Cbd | Family::Tcbd | Family::Cdbd | Family::Tcdbd)
    }

    pub fn truncated(self) -> bool {
        matches!(self, Family::Tcb | Family::Tcbd | Family::Tcdbd)
    }
}

/// Which convolution to compute. `window` is required for truncated families and
/// overrides the default one for full 𝔇-families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvolutionSpec {
    pub family: Family,
    pub order: usize,
    pub window: Option<(usize, usize)>,
}

impl ConvolutionSpec {
    pub fn full(family: Family, order: usize) -> Self {
        ConvolutionSpec { family, order, window: None }
    }

    pub fn truncated(family: Family, order: usize, lo: usize, hi: usize) -> Self {
        ConvolutionSpec { family, order, window: Some((lo, hi)) }
    }

    /// The `(p+1-2n, p-3)` window of order `2(p-1)-2n`.
    pub fn tail(family: Family, p: u64, two_n: usize) -> Self {
        let p = p as usize;
        Self::truncated(family, 2 * (p - 1) - two_n, p + 1 - two_n, p - 3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvolutionValue {
    Exact(ExactRational),
    Residue(PadicResidue),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convolution {
    pub value: ConvolutionValue,
    /// The index window held no terms; the value is the empty sum.
    pub empty_window: bool,
}

#[derive(Debug, Error)]
pub enum ConvolutionError {
    #[error("invalid window for {family:?} of order {order}: {why}")]
    WindowInvalid { family: Family, order: usize, why: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn invalid(spec: &ConvolutionSpec, why: impl Into<String>) -> ConvolutionError {
    ConvolutionError::WindowInvalid { family: spec.family, order: spec.order, why: why.into() }
}

fn divided(cache: &BernoulliCache, t: usize) -> ExactRational {
    cache.divided(t)
}

pub fn cb_exact(cache: &BernoulliCache, s: usize) -> ExactRational {
    (2..=s.saturating_sub(2)).fold(ExactRational::zero(), |acc, i| acc + divided(cache, i) * divided(cache, s - i))
}

pub fn bcb_exact(cache: &BernoulliCache, s: usize) -> ExactRational {
    (2..=s.saturating_sub(2)).fold(ExactRational::zero(), |acc, i| {
        acc + int(binomial(s as u64, i as u64)) * divided(cache, i) * divided(cache, s - i)
    })
}

pub fn b3_exact(cache: &BernoulliCache, s: usize) -> ExactRational {
    (2..=s.saturating_sub(4)).fold(ExactRational::zero(), |acc, i| acc + divided(cache, i) * cb_exact(cache, s - i))
}

pub fn mb3_exact(cache: &BernoulliCache, s: usize) -> ExactRational {
    (2..=s.saturating_sub(4)).fold(ExactRational::zero(), |acc, i| {
        acc + int(binomial(s as u64, i as u64)) * divided(cache, i) * bcb_exact(cache, s - i)
    })
}

pub fn tcb_exact(cache: &BernoulliCache, s: usize, lo: usize, hi: usize) -> ExactRational {
    (lo..=hi).fold(ExactRational::zero(), |acc, k| acc + divided(cache, k) * divided(cache, s - k))
}

/// Evaluates one convolution. 𝔇-families need the residue table of their prime.
pub fn convolution(
    spec: &ConvolutionSpec,
    cache: &BernoulliCache,
    em: Option<&EmResidueTable>,
) -> Result<Convolution, ConvolutionError> {
    let s = spec.order;
    if s > cache.max_index() {
        return Err(invalid(spec, format!("order beyond the Bernoulli cache ({})", cache.max_index())));
    }
    let (lo, hi) = match (spec.window, spec.family.truncated()) {
        (Some(w), _) => w,
        (None, true) => return Err(invalid(spec, "truncated family needs a window")),
        (None, false) if spec.family.involves_em() => (2, s.saturating_sub(4)),
        (None, false) => (2, s.saturating_sub(2)),
    };
    if lo < 2 || (lo <= hi && hi + 2 > s) {
        return Err(invalid(spec, format!("window [{lo}, {hi}] does not keep both indices >= 2")));
    }
    let empty_window = lo > hi;
    let value = if spec.family.involves_em() {
        let em = em.ok_or_else(|| invalid(spec, "𝔇 needs a prime context"))?;
        let p = em.prime();
        let mut acc = PadicResidue::from_i64(0, p, 1);
        for i in (lo..=hi).filter(|i| i % 2 == 0) {
            let partner = s - i;
            if partner < 2 || partner % 2 == 1 || partner + 3 > p as usize {
                return Err(invalid(spec, format!("𝔇_{partner} undefined for p={p}")));
            }
            let coeff = match spec.family {
                Family::Cbd | Family::Tcbd => cache.bernoulli(i).clone(),
                _ => divided(cache, i),
            };
            let d = PadicResidue::from_i64(em.get(partner) as i64, p, 1);
            acc = &acc + &(&reduce_mod(&coeff, p, 1)? * &d);
        }
        ConvolutionValue::Residue(acc)
    } else {
        ConvolutionValue::Exact(match spec.family {
            Family::Cb | Family::Bcb if spec.window.is_some() => {
                return Err(invalid(spec, "full family takes no window"));
            }
            Family::Cb => cb_exact(cache, s),
            Family::Bcb => bcb_exact(cache, s),
            Family::B3 => b3_exact(cache, s),
            Family::Mb3 => mb3_exact(cache, s),
            Family::Tcb => tcb_exact(cache, s, lo, hi),
            _ => unreachable!(),
        })
    };
    Ok(Convolution { value, empty_window })
}

/// Multinomial coefficient `s! / (i! j! k!)`.
pub fn multinomial(i: u64, j: u64, k: u64) -> BigInt {
    binomial(i + j + k, i) * binomial(j + k, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn exact(c: Convolution) -> ExactRational {
        match c.value {
            ConvolutionValue::Exact(x) => x,
            ConvolutionValue::Residue(_) => panic!("expected an exact value"),
        }
    }

    #[test]
    fn worked_examples() {
        let cache = BernoulliCache::new(40);
        let cb6 = convolution(&ConvolutionSpec::full(Family::Cb, 6), &cache, None).unwrap();
        assert_eq!(exact(cb6), rat(-1, 720));
        let bcb4 = convolution(&ConvolutionSpec::full(Family::Bcb, 4), &cache, None).unwrap();
        assert_eq!(exact(bcb4), rat(1, 24));
        let t = convolution(&ConvolutionSpec::tail(Family::Tcb, 11, 2), &cache, None).unwrap();
        assert!(t.empty_window);
        assert_eq!(exact(t), int(0));
    }

    #[test]
    fn triple_sums_match_brute_force() {
        let cache = BernoulliCache::new(30);
        for s in (6..=20).step_by(2) {
            let mut plain = ExactRational::zero();
            let mut multi = ExactRational::zero();
            for i in 2..=s - 4 {
                for j in 2..=s - i - 2 {
                    let k = s - i - j;
                    let prod = cache.divided(i) * cache.divided(j) * cache.divided(k);
                    multi += int(multinomial(i as u64, j as u64, k as u64)) * &prod;
                    plain += prod;
                }
            }
            assert_eq!(b3_exact(&cache, s), plain, "s={s}");
            assert_eq!(mb3_exact(&cache, s), multi, "s={s}");
        }
    }

    #[test]
    fn em_families_need_context() {
        let cache = BernoulliCache::new(60);
        let spec = ConvolutionSpec::full(Family::Cdbd, 10);
        assert!(convolution(&spec, &cache, None).is_err());
        let em = EmResidueTable::new(&cache, 13).unwrap();
        let c = convolution(&spec, &cache, Some(&em)).unwrap();
        assert!(matches!(c.value, ConvolutionValue::Residue(_)));
        let bad = ConvolutionSpec::full(Family::Cdbd, 14);
        assert!(convolution(&bad, &cache, Some(&em)).is_err());
    }
}
