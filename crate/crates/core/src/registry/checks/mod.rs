//! Domains and evaluators for C01..C50.
//!
//! Every evaluator re-checks its hypotheses and answers `Skipped` outside them,
//! so a hand-built parameter set can never produce a spurious failure.

mod classical;
mod harmonic;
mod lifts;
mod convolutions;

use super::context::PrimeContext;
use super::{CheckDefinition, CheckId, Eval, EvalError, Limits, Outcome, Params, Scope};
use crate::arith::Padic;

pub use classical::gessel_start;
pub use convolutions::C25_READINGS;

macro_rules! require {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Ok($crate::registry::Outcome::Skipped(format!($($msg)*)));
        }
    };
}
pub(crate) use require;

pub(super) fn cong(k: u32, lhs: Padic, rhs: Padic) -> Eval {
    Ok(Outcome::Congruence { k, lhs, rhs })
}

/// Attaches a remark when a summation window held no terms.
pub(super) fn flag_empty(empty: bool, out: Eval) -> Eval {
    match out {
        Ok(o) if empty => Ok(Outcome::Noted(Box::new(o), "empty window".into())),
        other => other,
    }
}

/// `Σ_{a=1}^{p-1} f(a)`.
pub(super) fn sum_a(ctx: &PrimeContext<'_>, f: impl Fn(u64) -> Padic) -> Padic {
    let mut acc = ctx.zero();
    for a in 1..ctx.p {
        acc += f(a);
    }
    acc
}

/// `Σ f(i)` over even `i` in `[lo, hi]`.
pub(super) fn sum_even(ctx: &PrimeContext<'_>, lo: usize, hi: usize, f: impl Fn(usize) -> Padic) -> Padic {
    let mut acc = ctx.zero();
    for i in (lo..=hi).filter(|i| i % 2 == 0) {
        acc += f(i);
    }
    acc
}

/// Fallible version of [`sum_even`].
pub(super) fn try_sum_even(
    ctx: &PrimeContext<'_>,
    lo: usize,
    hi: usize,
    f: impl Fn(usize) -> Result<Padic, EvalError>,
) -> Result<Padic, EvalError> {
    let mut acc = ctx.zero();
    for i in (lo..=hi).filter(|i| i % 2 == 0) {
        acc += f(i)?;
    }
    Ok(acc)
}

/// `(𝔅_hi - 𝔅_lo)_1`, the first digit of a Kummer difference.
pub(super) fn kd(ctx: &PrimeContext<'_>, hi: usize, lo: usize) -> Result<Padic, EvalError> {
    ctx.digit1(&(ctx.db(hi) - ctx.db(lo)))
}

pub(super) fn points(key: &'static str, values: impl IntoIterator<Item = i64>) -> Vec<Params> {
    values.into_iter().map(|v| Params::new().int(key, v)).collect()
}

pub(super) fn evens(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).filter(|x| x % 2 == 0)
}

pub(super) fn odds(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).filter(|x| x % 2 != 0)
}

/// Every base point crossed with every form name.
pub(super) fn with_forms(base: Vec<Params>, forms: &[&'static str]) -> Vec<Params> {
    let mut out = Vec::with_capacity(base.len() * forms.len());
    for b in base {
        for f in forms {
            out.push(b.clone().text("form", f));
        }
    }
    out
}

pub(super) fn forms(forms: &[&'static str]) -> Vec<Params> {
    with_forms(vec![Params::new()], forms)
}

pub(super) fn single(_: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    vec![Params::new()]
}

pub(super) fn bases(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    points("a", 1..ctx.p as i64)
}

pub(super) fn even_t_4(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    points("t", evens(4, ctx.p as i64 - 3))
}

pub(super) fn odd_t_5(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    points("t", odds(5, ctx.p as i64 - 2))
}

/// `2n` in `[4, p-7]`, the window of the second-order expansions.
pub(super) fn two_n_4_7(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    points("2n", lim.two_n(4, ctx.p as i64 - 7))
}

pub(super) fn two_n_2_5(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    points("2n", lim.two_n(2, ctx.p as i64 - 5))
}

/// `(2n, m, M)` with `m = p-1-2n` and `M = 2(p-1)-2n`.
pub(super) fn orders(ctx: &PrimeContext<'_>, prm: &Params) -> (usize, usize, usize) {
    let two_n = prm.get_int("2n") as usize;
    let p = ctx.pu();
    (two_n, p - 1 - two_n, 2 * (p - 1) - two_n)
}

pub(super) fn in_even_window(prm: &Params, key: &str, lo: i64, hi: i64) -> bool {
    let v = prm.get_int(key);
    v % 2 == 0 && (lo..=hi).contains(&v)
}

const fn per_prime(
    id: u8,
    title: &'static str,
    min_p: u64,
    domain: super::PrimeDomain,
    eval: super::PrimeEval,
) -> CheckDefinition {
    CheckDefinition { id: CheckId(id), title, exploratory: false, scope: Scope::PerPrime { min_p, domain, eval } }
}

const fn global(id: u8, title: &'static str, domain: super::GlobalDomain, eval: super::GlobalEval) -> CheckDefinition {
    CheckDefinition { id: CheckId(id), title, exploratory: false, scope: Scope::Global { domain, eval } }
}

const fn exploratory(def: CheckDefinition) -> CheckDefinition {
    CheckDefinition { exploratory: true, ..def }
}

use classical as c;
use harmonic as h;
use lifts as l;
use convolutions as t;

pub static CATALOG: &[CheckDefinition] = &[
    per_prime(1, "Friedmann-Tamarkine sum of q_a a^t", 5, c::c01_domain, c::c01),
    per_prime(2, "irregular-pair criterion", 5, c::c02_domain, c::c02),
    per_prime(3, "Lehmer odd-power quotient sum", 5, c::c0304_domain, c::c03),
    per_prime(4, "Lehmer even-power quotient sum", 5, c::c0304_domain, c::c04),
    per_prime(5, "Ernvall-Metsankyla shift of divided Bernoulli numbers", 5, even_t_4, c::c05),
    per_prime(6, "divided Bernoulli numbers from Teichmuller corrections", 5, even_t_4, c::c06),
    per_prime(7, "Miki congruence mod p^2", 5, c::c07_domain, c::c07),
    global(8, "Miki identity", c::c08_domain, c::c08),
    global(9, "Gessel identity", c::c09_domain, c::c09),
    per_prime(10, "per-base Fermat quotient expansion", 5, bases, c::c10),
    per_prime(11, "harmonic-weighted convolution at order p-1", 5, single, t::c11),
    per_prime(12, "harmonic-weighted mixed convolutions", 5, t::c12_domain, t::c12),
    per_prime(13, "odd-power squared quotient sum", 5, odd_t_5, t::c13),
    per_prime(14, "squared vs plain quotient sums, odd t", 5, odd_t_5, t::c14),
    per_prime(15, "quotient sum with Teichmuller correction, odd t", 5, odd_t_5, t::c15),
    per_prime(16, "divided Bernoulli number as squared quotient sum", 5, even_t_4, t::c16),
    per_prime(17, "cubic quotient sum, full window", 5, t::c17_domain, t::c17),
    per_prime(18, "cubic quotient sum, window from 2", 7, t::c18_domain, t::c18),
    per_prime(19, "sum of squared Fermat quotients", 5, t::c19_domain, t::c19),
    per_prime(20, "pB_{k(p-1)} mod p^2", 5, t::c20_domain, t::c20),
    per_prime(21, "sum of q_a^2 a^2", 5, t::c21_domain, t::c21),
    per_prime(22, "sum of q_a^3 a^(-2n)", 7, t::c22_domain, t::c22),
    per_prime(23, "tail convolution with Ernvall-Metsankyla residues", 11, t::c23_domain, t::c23),
    per_prime(24, "double sum of divided Bernoulli numbers and q_a^2", 7, single, t::c24),
    per_prime(25, "tail convolution of B_i with Ernvall-Metsankyla residues", 11, t::c25_domain, t::c25),
    per_prime(26, "weighted sums of lifted roots mod p^3", 5, t::c26_domain, t::c26),
    per_prime(27, "shifted multiple harmonic sum", 11, two_n_4_7, h::c27),
    per_prime(28, "binomial times divided Bernoulli pole", 11, h::c28_domain, h::c28),
    per_prime(29, "multiple harmonic sum reflection", 11, two_n_4_7, h::c29),
    per_prime(30, "auxiliary convolution and quotient-sum lemmas", 7, h::c30_domain, h::c30),
    per_prime(31, "multiple harmonic sum from the Stirling row mod p^4", 7, h::c31_domain, h::c31),
    per_prime(32, "shift of the multinomial cubic convolution", 11, two_n_4_7, h::c32),
    per_prime(33, "pieces of the shifted multinomial cubic convolution", 11, h::c33_domain, h::c33),
    per_prime(34, "row decomposition of the shifted cubic convolution mod p^4", 11, h::c34_domain, h::c34),
    per_prime(35, "shifted cubic convolution mod p^3", 11, two_n_4_7, h::c35),
    per_prime(36, "power sum expansion mod p^3", 5, l::c36_domain, l::c36),
    per_prime(37, "odd-power Teichmuller correction sums", 5, l::c37_domain, l::c37),
    per_prime(38, "Glaisher per-base congruence", 5, bases, l::c38),
    per_prime(39, "cubic quotient sum through squared sums", 7, two_n_2_5, l::c39),
    per_prime(40, "Wilson-analog lift sums mod p^2", 5, l::c40_domain, l::c40),
    per_prime(41, "second-order Bernoulli-analog correction", 5, bases, l::c41),
    per_prime(42, "Gessel identity at order p-1 mod p", 7, single, l::c42),
    per_prime(43, "cubic convolution at order p-1 from (p-1)!", 7, single, l::c43),
    per_prime(44, "depth-two harmonic sum at p-1 mod p^3", 7, l::c44_domain, l::c44),
    per_prime(45, "harmonic shift congruences", 7, l::c45_domain, l::c45),
    per_prime(46, "binomial shift congruence", 11, l::c46_domain, l::c46),
    per_prime(47, "Kummer congruence", 5, even_t_4, l::c47),
    per_prime(48, "Wolstenholme", 5, l::c48_domain, l::c48),
    exploratory(per_prime(49, "Voronoi-weighted sum (bracket read as floor)", 5, l::c49_domain, l::c49)),
    per_prime(50, "Newton sums of Teichmuller roots mod p^K", 5, l::c50_domain, l::c50),
];
