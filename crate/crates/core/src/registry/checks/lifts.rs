//! Power sums, Teichmüller and Wilson-analog corrections, harmonic baselines: C36..C50.

use num_bigint::BigInt;

use super::{cong, evens, forms, in_even_window, kd, odds, orders, points, require, sum_a, with_forms, PrimeContext};
use crate::arith::{int, rat, ExactRational, Padic};
use crate::hensel::FamilyTag;
use crate::quotients::{factorial, power_sum_mod};
use crate::registry::{Eval, EvalError, Limits, Params};

pub fn c36_domain(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    points("t", 1..=4 * (ctx.p as i64 - 1))
}

pub fn c36(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!((1..=4 * (ctx.p as i64 - 1)).contains(&t), "t={t} outside [1, 4(p-1)]");
    let tu = t as usize;
    let p = ctx.p;
    let lhs = Padic::from_residue(&power_sum_mod(t as u32, p, p, ctx.digits as u32));
    let pi = p as i64;
    let mut rhs = ctx.pbx(tu) + rat(pi * pi, 2) * int(t) * ctx.bx(tu - 1);
    if tu >= 2 {
        rhs += rat(pi * pi * pi, 6) * int(t * (t - 1)) * ctx.bx(tu - 2);
    }
    cong(3, lhs, ctx.rat(&rhs))
}

pub fn c37_domain(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    with_forms(points("t", odds(5, ctx.p as i64 - 2)), &["a", "b", "c", "d"])
}

fn v(ctx: &PrimeContext<'_>, a: u64) -> Padic {
    ctx.correction(FamilyTag::Teichmuller, a)
}

/// `Σ_a v_a^k a^e`.
fn vsum(ctx: &PrimeContext<'_>, tag: FamilyTag, k: u32, e: i64) -> Padic {
    sum_a(ctx, |a| ctx.correction(tag, a).pow(k) * ctx.apow(a, e))
}

pub fn c37(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!(t % 2 == 1 && (5..=ctx.p as i64 - 2).contains(&t), "t={t} outside odd [5, p-2]");
    let tu = t as usize;
    let pi = ctx.p as i64;
    let p = ctx.pu();
    let te = FamilyTag::Teichmuller;
    match prm.get_text("form") {
        "a" => {
            let lhs = ctx.b(tu - 1).mul_rational(&rat(pi * pi * t, 2));
            let rhs = -vsum(ctx, te, 1, t - 1).mul_i64(t * pi)
                - vsum(ctx, te, 2, t - 2).mul_rational(&rat(pi * pi * t * (t - 1), 2));
            cong(3, lhs, rhs)
        }
        "b" => {
            let lhs = ctx.b(tu - 1).mul_rational(&rat(pi, 2));
            let rhs = -vsum(ctx, te, 1, t - 1) - vsum(ctx, te, 2, t - 2).mul_rational(&rat(pi * (t - 1), 2));
            cong(2, lhs, rhs)
        }
        "c" => {
            let lhs = ctx.b(p - 2 + tu).mul_rational(&rat(pi, 2));
            let rhs = -vsum(ctx, te, 1, pi - 2 + t) - vsum(ctx, te, 2, t - 2).mul_rational(&rat(pi * (t - 2), 2));
            cong(2, lhs, rhs)
        }
        _ => {
            let lhs = sum_a(ctx, |a| ctx.apow(a, t - 1) * v(ctx, a)).mul_i64(pi);
            let rhs = -ctx.b(tu - 1).mul_rational(&rat(pi * pi, 2))
                - ctx.sq(t, 2).mul_rational(&rat(pi * pi * (t - 1), 2));
            cong(3, lhs, rhs)
        }
    }
}

pub fn c38(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let a = prm.get_int("a");
    require!((1..ctx.p as i64).contains(&a), "a={a} outside [1, p-1]");
    let a = a as u64;
    let mut lhs = ctx.zero();
    for i in 1..=ctx.pu() - 3 {
        if i == 1 || i % 2 == 0 {
            lhs += ctx.db(i) * ctx.apow(a, -(i as i64));
        }
    }
    cong(1, lhs, ctx.w() + ctx.q(a))
}

pub fn c39(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    require!(in_even_window(prm, "2n", 2, ctx.p as i64 - 5), "2n outside even [2, p-5]");
    let (two_n, m, big_m) = orders(ctx, prm);
    let p = ctx.pu();
    let (tail, empty) = super::convolutions::tail_digits(ctx, two_n)?;
    let rhs = -super::convolutions::head_digits(ctx, two_n)?.mul_i64(2)
        + (ctx.sq(2, 2) - ctx.frac(1, 2)) * ctx.db(p - 3 - two_n)
        + ctx.sq(0, 2) * ctx.db(m)
        + (ctx.w() * kd(ctx, big_m, m)?).mul_i64(2)
        - tail.mul_i64(2);
    super::flag_empty(empty, cong(1, ctx.sq(-(two_n as i64), 3), rhs))
}

pub fn c40_domain(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    let p = ctx.p as i64;
    let even = points("t", evens(4, p - 3));
    let mut out = with_forms(even.clone(), &["closed", "quotients"]);
    out.extend(with_forms(points("t", odds(5, p - 2)), &["odd"]));
    out.extend(with_forms(even, &["em"]));
    out.extend(with_forms(points("a", 1..p), &["pw"]));
    out
}

pub fn c40(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let pi = ctx.p as i64;
    let p = ctx.pu();
    let wa = FamilyTag::WilsonAnalog;
    let form = prm.get_text("form");
    if form == "pw" {
        let a = prm.get_int("a");
        require!((1..pi).contains(&a), "a={a} outside [1, p-1]");
        let au = a as u64;
        let lhs = ctx.correction(wa, au).mul_i64(pi);
        let rhs = (ctx.int(1) + ctx.big(&factorial(ctx.p - 1)) + ctx.q(au).mul_i64(pi)).mul_i64(a);
        return cong(2, lhs, rhs);
    }
    let t = prm.get_int("t");
    let tu = t as usize;
    if form == "odd" {
        require!(t % 2 == 1 && (5..=pi - 2).contains(&t), "t={t} outside odd [5, p-2]");
        return cong(2, vsum(ctx, wa, 1, t - 1), ctx.b(tu - 1).mul_i64(-pi));
    }
    require!(t % 2 == 0 && (4..=pi - 3).contains(&t), "t={t} outside even [4, p-3]");
    let s1 = vsum(ctx, wa, 1, t - 1);
    let w = ctx.w();
    match form {
        "closed" => {
            let rhs = ctx.db(p - 1 + tu).mul_i64(t - 1) - ctx.db(tu).mul_i64(t) + (w * ctx.db(tu)).mul_i64(pi * (t - 1));
            cong(2, s1, rhs)
        }
        "quotients" => {
            let rhs = -ctx.sq(t, 2).mul_rational(&rat(pi * (t - 1), 2)) - (w * ctx.sq(t, 1)).mul_i64(pi * (t - 1));
            cong(2, ctx.db(tu) + s1, rhs)
        }
        _ => {
            let rhs = -s1 - vsum(ctx, wa, 2, t - 2).mul_rational(&rat(pi * (t - 1), 2));
            cong(2, ctx.db(tu).clone(), rhs)
        }
    }
}

pub fn c41(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let a = prm.get_int("a");
    require!((1..ctx.p as i64).contains(&a), "a={a} outside [1, p-1]");
    let au = a as u64;
    let s = ctx.q(au) + ctx.ag();
    let rhs = s.mul_i64(a) + ((ctx.int(1) + ctx.ag()) * &s).mul_i64(a * ctx.p as i64);
    cong(2, ctx.correction(FamilyTag::BernoulliAnalog, au), rhs)
}

pub fn c42(ctx: &PrimeContext<'_>, _: &Params) -> Eval {
    let p = ctx.pu();
    let mut conv = ctx.zero();
    for i in (2..=p - 5).filter(|i| i % 2 == 0) {
        conv += ctx.db(i) * ctx.bcb(p - 1 - i);
    }
    let a2 = ctx.rat(&ctx.harmonic.mhs2(ctx.p - 1));
    let rhs = conv + (ctx.db(p - 1) * a2).mul_i64(6) - ctx.db(p - 3).mul_rational(&rat(9, 4));
    cong(1, ctx.b3(p - 1).clone(), rhs)
}

pub fn c43(ctx: &PrimeContext<'_>, _: &Params) -> Eval {
    let p = ctx.pu();
    let cb = ctx.cb(p - 1);
    let x = -ctx.big(&factorial(ctx.p - 1)).mul_i64(6)
        + ctx.digit(cb, 1)?.mul_i64(3).mul_p(3)
        + ctx.digit(cb, 0)?.mul_i64(3).mul_p(2)
        - ctx.db(p - 1).mul_i64(6).mul_p(1)
        - ctx.db(p - 3).mul_rational(&rat(15, 4)).mul_p(3);
    if !x.is_zero() && x.valuation_lower_bound() < 3 {
        return Err(EvalError::Valuation { needed: 3, found: x.valuation_lower_bound() });
    }
    cong(1, ctx.b3(p - 1).clone(), ctx.digit(&x, 3)?)
}

pub fn c44_domain(_: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    forms(&["a", "b"])
}

pub fn c44(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let p = ctx.pu();
    let lhs = ctx.rat(&ctx.harmonic.mhs2(ctx.p - 1));
    let rhs = match prm.get_text("form") {
        "a" => ctx.rat(&(ctx.harmonic.h(ctx.p - 1) / int(ctx.p))),
        _ => -(ctx.db(2 * p - 4) - ctx.db(p - 3).mul_i64(2)).mul_p(1),
    };
    cong(3, lhs, rhs)
}

pub fn c45_domain(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    with_forms(points("2n", lim.two_n(2, ctx.p as i64 - 5)), &["a", "b", "c", "u"])
}

pub fn c45(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    require!(in_even_window(prm, "2n", 2, ctx.p as i64 - 5), "2n outside even [2, p-5]");
    let (two_n, m, big_m) = orders(ctx, prm);
    let hm = &ctx.harmonic;
    let pr = int(ctx.p);
    let (n2, o, p) = (two_n as u64, two_n as u64 + 1, ctx.p);
    let (k, lhs, rhs): (u32, ExactRational, ExactRational) = match prm.get_text("form") {
        "a" => (2, hm.h(m as u64).clone(), &pr * hm.h2(n2) + hm.h(n2)),
        "b" => (2, hm.h(p - 2 - n2).clone(), &pr * hm.h2(o) + hm.h(o)),
        "c" => (1, hm.h2(p - 2 - n2).clone(), -hm.h2(o)),
        _ => {
            let u = hm.range(p - n2, p - 1) + hm.range(p + 1, big_m as u64);
            let oi = o as i64;
            (2, u, rat(1, oi) + &pr * (rat(1, oi * oi) + hm.h2(o)))
        }
    };
    cong(k, ctx.rat(&lhs), ctx.rat(&rhs))
}

pub fn c46_domain(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    let p = ctx.p as i64;
    let mut out = Vec::new();
    for two_n in lim.two_n(4, p - 7) {
        for s in evens(0, p - 3 - two_n) {
            out.push(Params::new().int("2n", two_n).int("s", s));
        }
    }
    out
}

pub fn c46(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    require!(in_even_window(prm, "2n", 4, ctx.p as i64 - 7), "2n outside even [4, p-7]");
    let (two_n, m, big_m) = orders(ctx, prm);
    let s = prm.get_int("s");
    require!(s % 2 == 0 && s >= 0 && s as usize + 3 + two_n <= ctx.pu(), "s={s} outside even [0, p-3-2n]");
    let su = s as usize;
    let rhs = ctx.binom(m, su).mul_rational(&(int(1) + rat(s, two_n as i64 + 1)));
    cong(1, ctx.binom(big_m, su), rhs)
}

pub fn c47(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!(t % 2 == 0 && (4..=ctx.p as i64 - 3).contains(&t), "t={t} outside even [4, p-3]");
    let tu = t as usize;
    cong(1, ctx.db(ctx.pu() - 1 + tu).clone(), ctx.db(tu).clone())
}

pub fn c48_domain(_: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    forms(&["h1", "h2"])
}

pub fn c48(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let hm = &ctx.harmonic;
    match prm.get_text("form") {
        "h1" => cong(2, ctx.rat(hm.h(ctx.p - 1)), ctx.zero()),
        _ => cong(1, ctx.rat(hm.h2(ctx.p - 1)), ctx.zero()),
    }
}

pub fn c49_domain(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    points("i", evens(2, ctx.p as i64 - 3))
}

/// `Σ_a a^{i-1} Σ_b ⌊b̄a/p⌋ b^{-(i-1)}`, with `b̄` the inverse of `b` in `[1, p-1]`.
pub fn c49(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let i = prm.get_int("i");
    require!(i % 2 == 0 && (2..=ctx.p as i64 - 3).contains(&i), "i={i} outside even [2, p-3]");
    let p = ctx.p;
    let pb = BigInt::from(p);
    let inv: Vec<u64> = (0..p)
        .map(|b| if b == 0 { 0 } else { u64::try_from(BigInt::from(b).modinv(&pb).expect("unit")).expect("fits") })
        .collect();
    let pw = |x: u64, e: u64| (0..e).fold(1u64, |acc, _| acc * x % p);
    let e = (i - 1) as u64;
    let inv_pow: Vec<u64> = inv.iter().map(|&b| pw(b, e)).collect();
    let mut tot = 0u64;
    for a in 1..p {
        let mut inner = 0u64;
        for b in 1..p as usize {
            inner = (inner + (inv[b] * a / p) % p * inv_pow[b]) % p;
        }
        tot = (tot + inner * pw(a, e)) % p;
    }
    cong(1, ctx.int(tot as i64), ctx.db(i as usize).clone())
}

pub fn c50_domain(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    with_forms(points("t", 1..=ctx.p as i64 - 2), &["sigma", "s", "s_shift"])
}

pub fn c50(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!((1..=ctx.p as i64 - 2).contains(&t), "t={t} outside [1, p-2]");
    let tu = t as usize;
    let rep = ctx.symmetric();
    let n = ctx.pu() - 1;
    let x = match prm.get_text("form") {
        "sigma" => &rep.sigma[tu],
        "s" => &rep.power[tu],
        _ => &rep.power[n + tu],
    };
    cong(ctx.k, Padic::from_residue(x), ctx.zero())
}
