//! Lehmer, Friedmann-Tamarkine, Ernvall-Metsänkylä and Miki: C01..C10.

use super::{cong, evens, flag_empty, points, require, sum_a, PrimeContext};
use crate::arith::{int, rat, ExactRational};
use crate::bernoulli::{numerator_divisible, BernoulliCache};
use crate::combinatorics::HarmonicTable;
use crate::hensel::FamilyTag;
use crate::registry::convolution::{b3_exact, bcb_exact, cb_exact, mb3_exact};
use crate::registry::{Eval, Limits, Outcome, Params};

pub fn c01_domain(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    points("t", evens(0, 2 * (ctx.p as i64 - 1)))
}

pub fn c01(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    let p1 = ctx.p as i64 - 1;
    require!(t % 2 == 0 && (0..=2 * p1).contains(&t), "t={t} outside even [0, 2(p-1)]");
    let rhs = if t % p1 == 0 { ctx.w().clone() } else { -ctx.db(t as usize) };
    cong(1, ctx.sq(t, 1), rhs)
}

pub fn c02_domain(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    points("t", evens(2, ctx.p as i64 - 3))
}

pub fn c02(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!(t % 2 == 0 && (2..=ctx.p as i64 - 3).contains(&t), "t={t} outside even [2, p-3]");
    let sum = ctx.sq(t, 1).residue(1)?;
    let irregular = numerator_divisible(&ctx.dbx(t as usize), ctx.p);
    Ok(Outcome::Boolean {
        modulus: format!("{}^1", ctx.p),
        lhs: sum.to_string(),
        rhs: if irregular { "irregular" } else { "regular" }.into(),
        holds: sum.is_zero() == irregular,
    })
}

pub fn c0304_domain(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    points("2t", evens(2, 2 * (ctx.p as i64 - 1)))
}

fn lehmer_guard(ctx: &PrimeContext<'_>, prm: &Params) -> Result<usize, String> {
    let t2 = prm.get_int("2t");
    let p1 = ctx.p as i64 - 1;
    if t2 % 2 != 0 || !(2..=2 * p1).contains(&t2) {
        return Err(format!("2t={t2} outside even [2, 2(p-1)]"));
    }
    if t2 % p1 == 0 || t2 % p1 == 2 {
        return Err(format!("2t={t2} is 0 or 2 mod p-1"));
    }
    Ok(t2 as usize)
}

pub fn c03(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t2 = match lehmer_guard(ctx, prm) {
        Ok(v) => v,
        Err(why) => return Ok(Outcome::Skipped(why)),
    };
    cong(2, ctx.sq(t2 as i64 + 1, 1), ctx.b(t2).mul_i64(-(ctx.p as i64)))
}

pub fn c04(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t2 = match lehmer_guard(ctx, prm) {
        Ok(v) => v,
        Err(why) => return Ok(Outcome::Skipped(why)),
    };
    cong(2, ctx.sq(t2 as i64, 1), ctx.b(ctx.pu() - 1 + t2) - ctx.b(t2))
}

fn even_t_guard(ctx: &PrimeContext<'_>, t: i64) -> bool {
    t % 2 == 0 && (4..=ctx.p as i64 - 3).contains(&t)
}

pub fn c05(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!(even_t_guard(ctx, t), "t={t} outside even [4, p-3]");
    let tu = t as usize;
    let rhs = ctx.db(tu) - ctx.sq(t, 2).mul_rational(&rat(ctx.p as i64, 2));
    cong(2, ctx.db(ctx.pu() - 1 + tu).clone(), rhs)
}

pub fn c06(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!(even_t_guard(ctx, t), "t={t} outside even [4, p-3]");
    let v = |a| ctx.correction(FamilyTag::Teichmuller, a);
    let s1 = sum_a(ctx, |a| ctx.apow(a, t - 1) * v(a));
    let s2 = sum_a(ctx, |a| {
        let va = v(a);
        ctx.apow(a, t - 2) * &va * &va
    });
    let rhs = -s1 - s2.mul_rational(&rat((t - 1) * ctx.p as i64, 2));
    cong(2, ctx.db(t as usize).clone(), rhs)
}

pub fn c07_domain(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    super::with_forms(points("t", evens(4, ctx.p as i64 - 3)), &["ag", "x-literal"])
}

/// `t·c` enters as `(1 - AG)t`; the literal `(1 - pB_{p-1})t` is the exploratory form.
pub fn c07(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!(even_t_guard(ctx, t), "t={t} outside even [4, p-3]");
    let (p, tu) = (ctx.pu(), t as usize);
    let two_n = p - 1 - tu;
    let c = match prm.get_text("form") {
        "ag" => ctx.int(1) - ctx.ag(),
        _ => ctx.rat(&(int(1) - ctx.pbx(p - 1))),
    };
    let lo = p + 1 - two_n;
    let tail = ctx.tcb(lo, 2 * (p - 1) - two_n);
    let bracket = (ctx.ag() + c.mul_i64(t) + ctx.h(t as u64)) * ctx.db(tu)
        + ctx.cb(tu).mul_rational(&rat(t - 2, 2))
        + ctx.bcb(tu).mul_rational(&rat(1, 2))
        + tail.mul_rational(&rat(t - 1, 2));
    let rhs = -ctx.db(tu) + bracket.mul_i64(ctx.p as i64);
    flag_empty(lo > p - 3, cong(2, ctx.sq(t, 1), rhs))
}

pub fn c08_domain(_: &BernoulliCache, lim: &Limits) -> Vec<Params> {
    points("m", evens(4, lim.max_order as i64))
}

pub fn c08(cache: &BernoulliCache, prm: &Params) -> Eval {
    let m = prm.get_int("m");
    require!(m >= 4 && m % 2 == 0, "m={m} must be even and >= 4");
    let m = m as usize;
    require!(m <= cache.max_index(), "m={m} beyond the Bernoulli cache");
    let h = HarmonicTable::new(m as u64);
    let rhs = bcb_exact(cache, m) + int(2) * h.h(m as u64) * cache.divided(m);
    Ok(Outcome::Exact { lhs: cb_exact(cache, m), rhs })
}

pub fn c09_domain(_: &BernoulliCache, lim: &Limits) -> Vec<Params> {
    points("n", evens(2, lim.max_order as i64))
}

fn gessel_sides(cache: &BernoulliCache, n: usize) -> (ExactRational, ExactRational) {
    let h = HarmonicTable::new(n as u64);
    let lhs = mb3_exact(cache, n)
        + int(3) * h.h(n as u64) * bcb_exact(cache, n)
        + int(6) * h.mhs2(n as u64) * cache.divided(n);
    let ni = n as i64;
    let rhs = b3_exact(cache, n) + rat(ni * ni - 3 * ni + 5, 4) * cache.divided(n - 2);
    (lhs, rhs)
}

pub fn c09(cache: &BernoulliCache, prm: &Params) -> Eval {
    let n = prm.get_int("n");
    require!(n >= 3, "n={n}: the identity involves 𝔅_(n-2), undefined for n=2");
    let n = n as usize;
    require!(n <= cache.max_index(), "n={n} beyond the Bernoulli cache");
    let (lhs, rhs) = gessel_sides(cache, n);
    Ok(Outcome::Exact { lhs, rhs })
}

/// Smallest `n >= 3` from which the Gessel identity holds for every `n' <= max`.
pub fn gessel_start(cache: &BernoulliCache, max: u64) -> Option<u64> {
    let mut start = None;
    for n in (3..=max as usize).rev() {
        let (l, r) = gessel_sides(cache, n);
        if l != r {
            break;
        }
        start = Some(n as u64);
    }
    start
}

pub fn c10(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let a = prm.get_int("a");
    require!((1..ctx.p as i64).contains(&a), "a={a} outside [1, p-1]");
    let (a, p) = (a as u64, ctx.pu());
    let mut tail = ctx.zero();
    for k in 1..=p - 3 {
        let c = ctx.binomial(p, k) / num_bigint::BigInt::from(ctx.p);
        tail += ctx.b(k).mul_int(&c) * ctx.apow(a, (p - k) as i64);
    }
    let rhs = ctx.int(-1) + (ctx.int(1) - ctx.ag()).mul_i64(a as i64) - tail;
    cong(1, ctx.q(a).mul_i64(a as i64), rhs)
}
