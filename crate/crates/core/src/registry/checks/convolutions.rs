//! Harmonic-weighted convolutions, quotient-power sums and Hensel root sums: C11..C26.

use super::{cong, flag_empty, forms, kd, orders, points, require, sum_a, sum_even, try_sum_even, with_forms, PrimeContext};
use crate::arith::{int, rat, ExactRational, Padic};
use crate::hensel::FamilyTag;
use crate::registry::{Eval, EvalError, Limits, Params};

pub fn c11(ctx: &PrimeContext<'_>, _: &Params) -> Eval {
    let p = ctx.pu();
    let lhs = sum_even(ctx, 2, p - 3, |i| ctx.db(i) * ctx.db(p - 1 - i) * ctx.h((p - 1 - i) as u64));
    cong(1, lhs, ctx.db(p - 3).mul_i64(2))
}

pub fn c12_domain(_: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    forms(&["a", "b"])
}

pub fn c12(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let p = ctx.pu();
    let lhs = match prm.get_text("form") {
        "a" => sum_even(ctx, 2, p - 3, |i| ctx.h(i as u64) * ctx.b(i) * ctx.db(p - 1 - i)),
        _ => sum_even(ctx, 2, p - 3, |i| ctx.h(i as u64) * ctx.db(i) * ctx.b(p - 1 - i)),
    };
    cong(1, lhs, -ctx.db(p - 3))
}

fn odd_t_guard(ctx: &PrimeContext<'_>, t: i64) -> bool {
    t % 2 == 1 && (5..=ctx.p as i64 - 2).contains(&t)
}

pub fn c13(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!(odd_t_guard(ctx, t), "t={t} outside odd [5, p-2]");
    let tu = t as usize;
    cong(1, ctx.b(ctx.pu() - 2 + tu) - ctx.b(tu - 1), -ctx.sq(t, 2))
}

pub fn c14(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!(odd_t_guard(ctx, t), "t={t} outside odd [5, p-2]");
    cong(1, ctx.sq(t, 2), -ctx.sq(t - 1, 1))
}

pub fn c15(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!(odd_t_guard(ctx, t), "t={t} outside odd [5, p-2]");
    let lhs = sum_a(ctx, |a| {
        ctx.q(a) * ctx.apow(a, t - 1) * (ctx.int(1) + ctx.correction(FamilyTag::Teichmuller, a))
    });
    cong(1, lhs, ctx.zero())
}

pub fn c16(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!(t % 2 == 0 && (4..=ctx.p as i64 - 3).contains(&t), "t={t} outside even [4, p-3]");
    cong(1, ctx.db(t as usize).clone(), ctx.sq(t + 1, 2))
}

pub fn c17_domain(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    points("2n", lim.two_n(0, ctx.p as i64 - 1))
}

/// `Σ_{i=lo}^{p-3} 𝔅_i Σ_a a^{-i-2n} q_a^2`.
fn bq2(ctx: &PrimeContext<'_>, lo: usize, two_n: i64) -> Padic {
    let mut acc = ctx.zero();
    for i in lo..=ctx.pu() - 3 {
        if i == 1 || i % 2 == 0 {
            acc += ctx.db(i) * ctx.sq(-(i as i64) - two_n, 2);
        }
    }
    acc
}

fn c17_rhs(ctx: &PrimeContext<'_>, two_n: i64) -> Padic {
    ctx.w() * ctx.sq(-two_n, 2) + ctx.sq(-two_n, 3)
}

pub fn c17(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let two_n = prm.get_int("2n");
    require!(two_n % 2 == 0 && (0..=ctx.p as i64 - 1).contains(&two_n), "2n={two_n} outside even [0, p-1]");
    cong(1, bq2(ctx, 1, two_n), c17_rhs(ctx, two_n))
}

pub fn c18_domain(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    points("2n", lim.two_n(0, ctx.p as i64 - 7))
}

pub fn c18(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let two_n = prm.get_int("2n");
    require!(two_n % 2 == 0 && (0..=ctx.p as i64 - 7).contains(&two_n), "2n={two_n} outside even [0, p-7]");
    let rhs = c17_rhs(ctx, two_n) + ctx.db(ctx.pu() - 3 - two_n as usize).mul_rational(&rat(1, 2));
    cong(1, bq2(ctx, 2, two_n), rhs)
}

pub fn c19_domain(_: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    forms(&["wilson", "digits", "closed"])
}

/// `(2p𝔅_{2(p-1)} - p²𝔅_{p-1}²)_2`.
fn pole_digit(ctx: &PrimeContext<'_>) -> Result<Padic, EvalError> {
    let p = ctx.pu();
    let pi = ctx.p as i64;
    let x = ctx.db(2 * (p - 1)).mul_i64(2 * pi) - (ctx.db(p - 1) * ctx.db(p - 1)).mul_i64(pi * pi);
    ctx.digit(&x, 2)
}

pub fn c19(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let p = ctx.pu();
    let w = ctx.w();
    let rhs = match prm.get_text("form") {
        "wilson" => -(w * w) - ctx.cb(p - 1),
        "digits" => {
            let g = ctx.ag() - ctx.int(1);
            -(&g * &g) - pole_digit(ctx)?
        }
        _ => {
            let x = ctx.pbx(2 * (p - 1)) - int(2) * ctx.pbx(p - 1) + int(ctx.p - 1);
            ctx.rat(&(x / int(ctx.p * ctx.p)))
        }
    };
    cong(1, ctx.sq(0, 2), rhs)
}

pub fn c20_domain(_: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    with_forms(points("k", 2..=5), &["sun", "inductive"])
}

pub fn c20(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let k = prm.get_int("k");
    require!((2..=5).contains(&k), "k={k} outside [2, 5]");
    let p1 = ctx.pu() - 1;
    let ku = k as usize;
    let lhs = ctx.pbx(ku * p1);
    let rhs = match prm.get_text("form") {
        "sun" => int(-(k - 1) * p1 as i64) + int(k) * ctx.pbx(p1),
        _ => {
            let mut s = ExactRational::from_integer(0.into());
            for l in 1..ku {
                let term = int(crate::combinatorics::binomial(k as u64, l as u64)) * ctx.pbx(p1 * (ku - l));
                if l % 2 == 1 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            let sign = if ku % 2 == 0 { -1 } else { 1 };
            s + int(sign * p1 as i64)
        }
    };
    cong(2, ctx.rat(&lhs), ctx.rat(&rhs))
}

pub fn c21_domain(_: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    forms(&["convolution", "em", "closed"])
}

pub fn c21(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let p = ctx.pu();
    let pi = ctx.p as i64;
    let rhs = match prm.get_text("form") {
        "convolution" => ctx.w().mul_rational(&rat(1, 6)) - ctx.frac(1, 4) - ctx.tcb(4, p + 1),
        "em" => -ctx.d(2).mul_i64(2) - ctx.frac(1, 2),
        _ => {
            let x = int(6) * ctx.pbx(2 * p) - int(12) * ctx.pbx(p + 1) + int(pi * (pi - 1) * (2 * pi - 1));
            ctx.rat(&(x / int(6 * pi * pi)))
        }
    };
    cong(1, ctx.sq(2, 2), rhs)
}

/// `pB_{4(p-1)-2n} - 3pB_{3(p-1)-2n} + 3pB_{2(p-1)-2n} - pB_{p-1-2n}`, exactly.
pub(super) fn x_closed(ctx: &PrimeContext<'_>, two_n: usize) -> ExactRational {
    let p1 = ctx.pu() - 1;
    ctx.pbx(4 * p1 - two_n) - int(3) * ctx.pbx(3 * p1 - two_n) + int(3) * ctx.pbx(2 * p1 - two_n) - ctx.pbx(p1 - two_n)
}

/// `Σ_{i even=2}^{p-5-2n} 𝔅_i (𝔅_{M-i} - 𝔅_{m-i})_1`.
pub(super) fn head_digits(ctx: &PrimeContext<'_>, two_n: usize) -> Result<Padic, EvalError> {
    let p = ctx.pu();
    let (m, big_m) = (p - 1 - two_n, 2 * (p - 1) - two_n);
    try_sum_even(ctx, 2, p - 5 - two_n, |i| Ok(ctx.db(i) * kd(ctx, big_m - i, m - i)?))
}

/// `Σ_{i=p+1-2n}^{p-3} 𝔅_i (𝔅_{3(p-1)-2n-i} - 𝔅_{M-i})_1`, with its emptiness.
pub(super) fn tail_digits(ctx: &PrimeContext<'_>, two_n: usize) -> Result<(Padic, bool), EvalError> {
    let p = ctx.pu();
    let big_m = 2 * (p - 1) - two_n;
    let lo = p + 1 - two_n;
    let s = try_sum_even(ctx, lo, p - 3, |i| Ok(ctx.db(i) * kd(ctx, 3 * (p - 1) - two_n - i, big_m - i)?))?;
    Ok((s, lo > p - 3))
}

pub fn c22_domain(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    let mut out = forms(&["wilson", "cb"]);
    out.extend(with_forms(points("2n", lim.two_n(0, ctx.p as i64 - 5)), &["digits", "closed"]));
    out
}

pub fn c22(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let p = ctx.pu();
    let form = prm.get_text("form");
    match form {
        "wilson" => return cong(1, ctx.w().clone(), ctx.ag() - ctx.int(1)),
        "cb" => return cong(1, ctx.cb(p - 1).clone(), pole_digit(ctx)?),
        _ => {}
    }
    let two_n = prm.get_int("2n");
    require!(two_n % 2 == 0 && (0..=ctx.p as i64 - 5).contains(&two_n), "2n={two_n} outside even [0, p-5]");
    let (two_n, m, big_m) = orders(ctx, prm);
    let w = ctx.w();
    let wcb = w * w + ctx.cb(p - 1);
    let one_2d2 = ctx.int(1) + ctx.d(2).mul_i64(2);
    let lhs = ctx.sq(-(two_n as i64), 3);
    let pi = ctx.p;
    if two_n == 0 {
        let rhs = match form {
            "digits" => -(&one_2d2 * ctx.db(p - 3)) + w * &wcb - head_digits(ctx, 0)?.mul_i64(2),
            _ => {
                let x = ctx.pbx(3 * (p - 1)) - int(3) * ctx.pbx(2 * (p - 1)) + int(3) * ctx.pbx(p - 1) - int(pi - 1);
                ctx.rat(&(x / int(pi * pi * pi))) - ctx.db(p - 3)
            }
        };
        return cong(1, lhs, rhs);
    }
    match form {
        "digits" => {
            let (tail, empty) = tail_digits(ctx, two_n)?;
            let rhs = -head_digits(ctx, two_n)?.mul_i64(2) + (w * kd(ctx, big_m, m)?).mul_i64(2)
                - &one_2d2 * ctx.db(p - 3 - two_n)
                - &wcb * ctx.db(m)
                - tail.mul_i64(2);
            flag_empty(empty, cong(1, lhs, rhs))
        }
        _ => {
            let rhs = ctx.rat(&(x_closed(ctx, two_n) / int(pi * pi * pi))) - ctx.db(p - 3 - two_n);
            cong(1, lhs, rhs)
        }
    }
}

pub fn c23_domain(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    with_forms(points("2n", lim.two_n(4, ctx.p as i64 - 7)), &["long", "x-short"])
}

/// `Σ_{i even=2}^{top} c_i 𝔇_{m-i}` with `c` either `𝔅` or `B`.
fn em_conv(ctx: &PrimeContext<'_>, m: usize, top: usize, plain: bool) -> Padic {
    sum_even(ctx, 2, top, |i| {
        let c = if plain { ctx.b(i) } else { ctx.db(i) };
        c * ctx.d(m - i)
    })
}

/// `Σ_{i even=p+1-2n}^{p-3} c_i 𝔇_{M-i}`.
fn em_tail(ctx: &PrimeContext<'_>, two_n: usize, plain: bool) -> Padic {
    let p = ctx.pu();
    let big_m = 2 * (p - 1) - two_n;
    sum_even(ctx, p + 1 - two_n, p - 3, |i| {
        let c = if plain { ctx.b(i) } else { ctx.db(i) };
        c * ctx.d(big_m - i)
    })
}

pub fn c23(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    require!(super::in_even_window(prm, "2n", 4, ctx.p as i64 - 7), "2n outside even [4, p-7]");
    let p = ctx.pu();
    let (two_n, m, big_m) = orders(ctx, prm);
    let top = if prm.get_text("form") == "long" { m - 2 } else { m - 4 };
    let w = ctx.w();
    let pi = ctx.p;
    let rhs = -em_conv(ctx, m, top, false) + w * kd(ctx, big_m, m)?
        - (w * w + ctx.cb(p - 1)).mul_rational(&rat(1, 2)) * ctx.db(m)
        - ctx.rat(&(x_closed(ctx, two_n) / int(2 * pi * pi * pi)));
    cong(1, em_tail(ctx, two_n, false), rhs)
}

pub fn c24(ctx: &PrimeContext<'_>, _: &Params) -> Eval {
    let p = ctx.pu();
    let pi = ctx.p;
    let mut s = ctx.zero();
    for k in (2..=p - 5).filter(|k| k % 2 == 0) {
        s += ctx.db(k) * ctx.sq(-(k as i64), 2);
    }
    let lhs = s.mul_rational(&rat(-1, 2));
    let w = ctx.w();
    let x = ctx.pbx(3 * (p - 1)) - int(3) * ctx.pbx(2 * (p - 1)) + int(3) * ctx.pbx(p - 1) - int(pi - 1);
    let rhs = -(ctx.d(2) * ctx.db(p - 3)) + (w * (w * w + ctx.cb(p - 1))).mul_rational(&rat(1, 2))
        - ctx.rat(&(x / int(2 * pi * pi * pi)));
    cong(1, lhs, rhs)
}

/// Readings of the nested digit term in C25, in report order.
pub const C25_READINGS: [&str; 6] =
    ["digit-of-sum", "no-outer-digit", "digit-of-exact", "digit-first-term", "wilson-in-place", "second-digit"];

pub fn c25_domain(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    let base = points("2n", lim.two_n(4, ctx.p as i64 - 7));
    let mut out = Vec::new();
    for b in base {
        for r in C25_READINGS {
            out.push(b.clone().text("reading", r));
        }
    }
    out
}

fn c25_reading(ctx: &PrimeContext<'_>, name: &str, m: usize, big_m: usize) -> Result<Padic, EvalError> {
    let y = (ctx.ag().mul_i64(2) - ctx.int(1)) * ctx.db(m);
    let dm = kd(ctx, big_m, m)?;
    let diff = ctx.db(big_m) - ctx.db(m);
    Ok(match name {
        "digit-of-sum" => ctx.digit(&(&y + dm.mul_i64(2)), 1)?,
        "no-outer-digit" => y + dm.mul_i64(2),
        "digit-of-exact" => ctx.digit(&(&y + diff.mul_i64(2)), 1)?,
        "digit-first-term" => ctx.digit(&y, 1)? + dm.mul_i64(2),
        "wilson-in-place" => (ctx.ag() - ctx.int(1)).mul_i64(2) * ctx.db(m) + dm.mul_i64(2),
        _ => ctx.digit(&y, 1)? + ctx.digit(&diff, 2)?.mul_i64(2),
    })
}

pub fn c25(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    require!(super::in_even_window(prm, "2n", 4, ctx.p as i64 - 7), "2n outside even [4, p-7]");
    let p = ctx.pu();
    let pi = ctx.p as i64;
    let (two_n, m, big_m) = orders(ctx, prm);
    let n2 = two_n as i64;
    let w = ctx.w();
    let lhs = em_tail(ctx, two_n, true);

    let conv = -em_conv(ctx, m, m - 4, true) + em_conv(ctx, m, m - 4, false);
    let t3 = ctx.digit(&(ctx.cb(m) + ctx.tcb(p + 1 - two_n, big_m)), 1)?.mul_rational(&rat(1, 2));
    let second = ctx.db(3 * (p - 1) - two_n) - ctx.db(big_m).mul_i64(2) + ctx.db(m);
    let t4 = ctx.digit(&second, 2)?.mul_i64(n2) - ctx.digit(&(ctx.db(big_m) - ctx.db(m)), 2)?;
    let reading = c25_reading(ctx, prm.get_text("reading"), m, big_m)?;
    let t6 = -(w * kd(ctx, big_m, m)?);
    let pole = ctx.b(p - 1).mul_i64(pi) - ctx.int(pi)
        + (ctx.db(p - 1) * ctx.db(p - 1)).mul_rational(&rat(pi * pi, 2))
        + ctx.db(p - 1).mul_i64(pi)
        - ctx.db(2 * (p - 1)).mul_i64(pi);
    let brace = ctx.cb(p - 1).mul_rational(&rat(2 * n2 + 1, 2))
        + w * (ctx.int(n2 - 1) + w.mul_rational(&rat(n2 + 1, 2)))
        + ctx.digit(&pole, 2)?.mul_i64(n2);
    let last = ctx.rat(&(x_closed(ctx, two_n) * rat(n2 + 1, 2) / int(pi * pi * pi)));
    let rhs = conv + t3 + t4 - reading.mul_rational(&rat(1, 2)) + t6 + brace * ctx.db(m) + last;
    cong(1, lhs, rhs)
}

pub fn c26_domain(ctx: &PrimeContext<'_>, _: &Limits) -> Vec<Params> {
    with_forms(points("t", 4..=ctx.p as i64 - 2), &["i", "ii", "iii"])
}

pub fn c26(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let t = prm.get_int("t");
    require!((4..=ctx.p as i64 - 2).contains(&t), "t={t} outside [4, p-2]");
    let (tag, extra) = match prm.get_text("form") {
        "i" => (FamilyTag::Teichmuller, None),
        "ii" => (FamilyTag::WilsonAnalog, Some(ctx.w().clone())),
        _ => (FamilyTag::BernoulliAnalog, Some(ctx.ag().clone())),
    };
    let lhs = sum_a(ctx, |a| ctx.apow(a, t - 1) * ctx.root(tag, a));
    let pi = ctx.p as i64;
    let tu = t as usize;
    let rhs = if t % 2 == 0 {
        let mut inner = ctx.db(ctx.pu() - 1 + tu).clone();
        if let Some(c) = extra {
            inner += (c * ctx.db(tu)).mul_i64(pi);
        }
        inner.mul_i64(pi * (t - 1))
    } else {
        ctx.b(tu - 1).mul_rational(&rat(pi * pi * (t - 2), 2))
    };
    cong(3, lhs, rhs)
}

