//! Multiple harmonic sums, the cubic convolutions and their shifts: C27..C35.

use super::{cong, in_even_window, orders, points, require, with_forms, PrimeContext};
use crate::arith::{int, rat, ExactRational, Padic};
use crate::registry::{Eval, Limits, Params};

macro_rules! window_4_7 {
    ($ctx:expr, $prm:expr) => {
        require!(in_even_window($prm, "2n", 4, $ctx.p as i64 - 7), "2n outside even [4, p-7]");
    };
}

fn inv(n: usize) -> ExactRational {
    rat(1, n as i64)
}

pub fn c27(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    window_4_7!(ctx, prm);
    let (two_n, m, big_m) = orders(ctx, prm);
    let hm = &ctx.harmonic;
    let o = two_n as u64 + 1;
    let pr = int(ctx.p);
    let lhs = &pr * hm.mhs2(big_m as u64);
    let rhs = &pr * (hm.mhs2(m as u64) + int(2) * hm.h2(o) + hm.h(o) * (inv(ctx.pu()) + inv(o as usize)));
    cong(2, ctx.rat(&lhs), ctx.rat(&rhs))
}

pub fn c28_domain(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    let p = ctx.p as i64;
    let mut out = Vec::new();
    for two_n in lim.two_n(4, p - 7) {
        for i in 0..=p - 3 - two_n {
            out.push(Params::new().int("2n", two_n).int("i", i));
        }
    }
    out
}

pub fn c28(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    window_4_7!(ctx, prm);
    let (two_n, _, big_m) = orders(ctx, prm);
    let i = prm.get_int("i");
    require!(i >= 0 && i as usize + 3 + two_n <= ctx.pu(), "i={i} outside [0, p-3-2n]");
    let i = i as usize;
    let lhs = ctx.binom(big_m - i, ctx.pu() - 1) * ctx.db(ctx.pu() - 1);
    cong(1, lhs, ctx.frac(-1, (two_n + 1 + i) as i64))
}

pub fn c29(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    window_4_7!(ctx, prm);
    let (two_n, m, _) = orders(ctx, prm);
    let hm = &ctx.harmonic;
    let h = hm.h(two_n as u64);
    let rhs = -hm.mhs2(two_n as u64) + h * h;
    cong(1, ctx.rat(&hm.mhs2(m as u64)), ctx.rat(&rhs))
}

pub fn c30_domain(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    let mut out = super::forms(&["l3", "l4"]);
    out.extend(with_forms(points("2n", lim.two_n(2, ctx.p as i64 - 5)), &["l5a", "l5b", "l6"]));
    out
}

pub fn c30(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    let p = ctx.pu();
    let form = prm.get_text("form");
    match form {
        "l3" => {
            let rhs = ctx.d(2).mul_i64(2) + ctx.frac(1, 12) + ctx.ag().mul_rational(&rat(1, 6));
            return cong(1, ctx.tcb(4, p + 1), rhs);
        }
        "l4" => {
            let rhs = ctx.frac(7, 720) + ctx.d(4).mul_i64(2) - ctx.ag().mul_rational(&rat(1, 60));
            return cong(1, ctx.tcb(6, p + 3), rhs);
        }
        _ => {}
    }
    require!(in_even_window(prm, "2n", 2, ctx.p as i64 - 5), "2n outside even [2, p-5]");
    let (two_n, m, big_m) = orders(ctx, prm);
    let n2 = two_n as i64;
    let (lo, hi, plain) = match form {
        "l5a" => (2, p - 5 - two_n, true),
        "l5b" => (p + 1 - two_n, p - 3, true),
        _ => (2, p - 5 - two_n, false),
    };
    let tail = form == "l5b";
    let mut lhs = ctx.zero();
    let mut rhs = ctx.zero();
    for i in (lo..=hi).filter(|i| i % 2 == 0) {
        let c = if plain { ctx.b(i) } else { ctx.db(i) };
        lhs += c * ctx.sq(-(i as i64) - n2, 2);
        let diff = if tail {
            ctx.db(3 * (p - 1) - two_n - i) - ctx.db(big_m - i)
        } else {
            ctx.db(big_m - i) - ctx.db(m - i)
        };
        rhs += c * diff.div_p(1);
    }
    super::flag_empty(lo > hi, cong(1, lhs, rhs.mul_i64(-2)))
}

pub fn c31_domain(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    points("2n", lim.two_n(2, ctx.p as i64 - 5))
}

pub fn c31(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    require!(in_even_window(prm, "2n", 2, ctx.p as i64 - 5), "2n outside even [2, p-5]");
    let (two_n, m, _) = orders(ctx, prm);
    let pi = ctx.p as i64;
    let fact = crate::quotients::factorial(ctx.p - 1);
    let lhs = ExactRational::new(ctx.stirling.get(two_n + 1).clone(), fact);
    let pw = ctx.w().mul_i64(pi);
    let one = ctx.int(1);
    let o = two_n as i64 + 1;
    let rhs = ctx.b3(m).mul_rational(&rat(pi * pi * pi, 6))
        + (&one + &pw * (&one + &pw)).mul_i64(pi) * ctx.db(m)
        + ctx.db(m - 2).mul_rational(&(rat(4 * o * o + 6 * o + 5, 24) * int(pi * pi * pi)))
        - ((&one + &pw) * ctx.cb(m)).mul_rational(&rat(pi * pi, 2));
    cong(4, ctx.rat(&lhs), rhs)
}

pub fn c32(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    window_4_7!(ctx, prm);
    let (two_n, m, big_m) = orders(ctx, prm);
    let o = two_n as i64 + 1;
    let lhs = ctx.mb3(big_m) - ctx.mb3(m);
    let rhs = ctx.cb(m).mul_rational(&rat(-3, o)) + (ctx.h(two_n as u64) * ctx.db(m)).mul_rational(&rat(6, o));
    cong(1, lhs, rhs)
}

pub fn c33_domain(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    with_forms(points("2n", lim.two_n(4, ctx.p as i64 - 7)), &["s3", "s21", "s22", "s23", "s1", "s2", "sum"])
}

/// `Σ_{i=lo}^{hi} C(M,i) 𝔅_i b𝒞𝔅(M-i)`.
fn s_range(ctx: &PrimeContext<'_>, big_m: usize, lo: usize, hi: usize) -> Padic {
    let mut acc = ctx.zero();
    for i in (lo..=hi).filter(|i| i % 2 == 0) {
        acc += ctx.binom(big_m, i) * ctx.db(i) * ctx.bcb(big_m - i);
    }
    acc
}

fn s1(ctx: &PrimeContext<'_>, m: usize, big_m: usize) -> Padic {
    let p = ctx.pu();
    ctx.binom(big_m, p - 1) * ctx.db(p - 1) * ctx.bcb(m)
}

fn s2(ctx: &PrimeContext<'_>, big_m: usize) -> Padic {
    s_range(ctx, big_m, 2, ctx.pu() - 3)
}

fn s3(ctx: &PrimeContext<'_>, big_m: usize) -> Padic {
    s_range(ctx, big_m, ctx.pu() + 1, big_m - 4)
}

fn s21(ctx: &PrimeContext<'_>, two_n: usize, big_m: usize) -> Padic {
    let p = ctx.pu();
    let pi = ctx.p as i64;
    (ctx.db(p - 1) * ctx.db(2) * ctx.binom(big_m, p - 3 - two_n) * ctx.db(p - 3 - two_n)).mul_i64((pi + 1) * pi)
}

fn s22(ctx: &PrimeContext<'_>, two_n: usize, m: usize, big_m: usize) -> Padic {
    let p = ctx.pu();
    let mut acc = ctx.zero();
    for i in (2..=p - 5 - two_n).filter(|i| i % 2 == 0) {
        acc += ctx.binom(big_m, i) * ctx.db(i) * ctx.binom(big_m - i, p - 1) * ctx.db(p - 1) * ctx.db(m - i);
    }
    acc.mul_i64(2)
}

fn s23(ctx: &PrimeContext<'_>, two_n: usize, big_m: usize) -> Padic {
    let p = ctx.pu();
    let mut acc = ctx.zero();
    for i in (2..=p - 5 - two_n).filter(|i| i % 2 == 0) {
        let mut inner = ctx.zero();
        for j in (2..=p - 3 - two_n - i).filter(|j| j % 2 == 0) {
            inner += ctx.binom(big_m - i, j) * ctx.db(j) * ctx.db(big_m - i - j);
        }
        acc += ctx.binom(big_m, i) * ctx.db(i) * inner;
    }
    acc.mul_i64(2)
}

pub fn c33(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    window_4_7!(ctx, prm);
    let (two_n, m, big_m) = orders(ctx, prm);
    let p = ctx.pu();
    let n = two_n as i64 / 2;
    let o = two_n as i64 + 1;
    let mbm = ctx.mb3(m);
    let tail = ctx.db(p - 3 - two_n);
    let (lhs, rhs) = match prm.get_text("form") {
        "s3" => (s3(ctx, big_m) - mbm, mbm.mul_rational(&rat(-2, 3))),
        "s21" => (s21(ctx, two_n, big_m), tail.mul_rational(&rat(-(n + 1), 6))),
        "s22" => (
            s22(ctx, two_n, m, big_m),
            tail.mul_rational(&rat(n + 1, 6)) - ctx.bcb(m).mul_rational(&rat(2, o)),
        ),
        "s23" => (s23(ctx, two_n, big_m), mbm.mul_rational(&rat(2, 3))),
        "s1" => (s1(ctx, m, big_m), ctx.bcb(m).mul_rational(&rat(-1, o))),
        "s2" => (s2(ctx, big_m), s21(ctx, two_n, big_m) + s22(ctx, two_n, m, big_m) + s23(ctx, two_n, big_m)),
        _ => (s1(ctx, m, big_m) + s2(ctx, big_m) + s3(ctx, big_m), ctx.mb3(big_m).clone()),
    };
    cong(1, lhs, rhs)
}

pub fn c34_domain(ctx: &PrimeContext<'_>, lim: &Limits) -> Vec<Params> {
    with_forms(points("2n", lim.two_n(4, ctx.p as i64 - 7)), &["eq", "r3", "r1", "r2"])
}

fn cubic_shift(ctx: &PrimeContext<'_>, m: usize, big_m: usize) -> Padic {
    ctx.b3(big_m) - ctx.b3(m)
}

pub fn c34(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    window_4_7!(ctx, prm);
    let (two_n, m, big_m) = orders(ctx, prm);
    let p = ctx.pu();
    let n2 = two_n as i64;
    let o = (two_n + 1) as u64;
    let hm = &ctx.harmonic;
    let p3 = |x: Padic| x.mul_p(3);
    let p2 = |x: Padic| x.mul_p(2);
    let a2 = |k: usize| ctx.rat(&hm.mhs2(k as u64));
    let r3_sides = || (a2(big_m) * ctx.db(big_m) - a2(m) * ctx.db(m)).mul_i64(6);
    let r1_sides = || (ctx.h(m as u64) * (ctx.bcb(big_m) - ctx.bcb(m))).mul_i64(3);
    let u = ctx.rat(&(hm.range(p as u64 - two_n as u64, p as u64 - 1) + hm.range(p as u64 + 1, big_m as u64)));
    match prm.get_text("form") {
        "eq" => {
            let hsum = ctx.rat(&hm.range(p as u64 - two_n as u64, big_m as u64));
            let r9 = (ctx.mb3(big_m) - ctx.mb3(m)) - ctx.db(p - 3 - two_n).mul_rational(&rat(n2 + 3, 2))
                + r1_sides()
                + (hsum * ctx.bcb(big_m)).mul_i64(3)
                + r3_sides();
            cong(4, p3(cubic_shift(ctx, m, big_m)), p3(r9))
        }
        "r3" => {
            let c = ctx.rat(&(hm.h(o) / int(o) + int(2) * hm.h2(o)));
            let rhs = p3((c * ctx.db(m)).mul_i64(6)) + p2((ctx.h(o) * ctx.db(big_m)).mul_i64(6));
            cong(4, p3(r3_sides()), rhs)
        }
        "r1" => {
            let rhs = p3((ctx.h(two_n as u64) * ctx.db(m)).mul_rational(&rat(-6, o as i64)));
            cong(4, p3(r1_sides()), rhs)
        }
        _ => c34_r2(ctx, two_n, m, big_m, u),
    }
}

fn c34_r2(ctx: &PrimeContext<'_>, two_n: usize, m: usize, big_m: usize, u: Padic) -> Eval {
    let p = ctx.pu();
    let pi = ctx.p as i64;
    let o = two_n as i64 + 1;
    let ou = o as u64;
    let bcb_m = ctx.bcb(big_m);
    let lhs = (bcb_m.div_p(1).mul_i64(3) + (u * bcb_m).mul_i64(3)).mul_p(3);
    let cbm = ctx.cb(m);
    let tcb = ctx.tcb(p + 1 - two_n, big_m);
    let mut dsum = ctx.zero();
    for i in (2..=p - 5 - two_n).filter(|i| i % 2 == 0) {
        dsum += ctx.db(i) * ctx.sq(-(i as i64) - two_n as i64, 2);
    }
    let dsum_res = ctx.digit(&dsum, 0)?;
    let g = (ctx.ag() - ctx.int(1)).mul_i64(2) * ctx.db(m) - ctx.sq(-(two_n as i64), 2);
    let hm = &ctx.harmonic;
    let hh = ctx.rat(&(int(2) * hm.h2(ou) + hm.h(ou) / int(ou)));
    let rhs = cbm.mul_rational(&rat(3, o)).mul_p(3)
        + cbm.mul_i64(3).mul_p(2)
        + ctx.digit(&(cbm + &tcb), 1)?.mul_i64(3).mul_p(3)
        + ctx.digit(&g, 0)?.mul_i64(3).mul_p(2)
        - dsum_res.mul_i64(3).mul_p(3)
        + ((ctx.db(p - 1).mul_p(1) - hh.mul_p(2)) * ctx.db(m)).mul_i64(6).mul_p(1)
        + (ctx.d(2) * ctx.db(p - 3 - two_n)).mul_i64(6).mul_p(3)
        - ((ctx.int(1) + ctx.h(ou).mul_i64(pi)) * ctx.db(big_m)).mul_i64(6).mul_p(1);
    cong(4, lhs, rhs)
}

pub fn c35(ctx: &PrimeContext<'_>, prm: &Params) -> Eval {
    window_4_7!(ctx, prm);
    let (_, m, big_m) = orders(ctx, prm);
    cong(3, cubic_shift(ctx, m, big_m).mul_p(3), ctx.cb(m).mul_i64(3).mul_p(2))
}
