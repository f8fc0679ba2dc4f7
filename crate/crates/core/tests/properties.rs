use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use congruence_core::arith::{hensel_digit, pow_p, rat, reduce_mod, valuation, ExactRational, Padic, PadicResidue};
use congruence_core::bernoulli::{is_prime, numerator_divisible, von_staudt_denominator, BernoulliCache};
use congruence_core::combinatorics::{generalized, mhs, mhs_newton};
use congruence_core::hensel::{lift_root, LiftFamily, FamilyTag};
use congruence_core::quotients::{fermat_quotient, QuotientTable};

const PRIMES: [u64; 10] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.to_vec())
}

/// A rational whose denominator is prime to `p`.
fn integral(p: u64) -> impl Strategy<Value = ExactRational> {
    (-100_000i64..100_000, 1i64..500).prop_map(move |(n, d)| {
        let d = if d % p as i64 == 0 { d + 1 } else { d };
        rat(n, d)
    })
}

fn with_prime() -> impl Strategy<Value = (u64, ExactRational, ExactRational)> {
    prime().prop_flat_map(|p| (Just(p), integral(p), integral(p)))
}

proptest! {
    #[test]
    fn digits_rebuild_the_residue((p, x, _) in with_prime(), k in 1u32..7) {
        let r = reduce_mod(&x, p, k).unwrap();
        let mut acc = BigInt::zero();
        for i in (0..k).rev() {
            let d = hensel_digit(&x, p, i).unwrap();
            prop_assert!(d < p);
            acc = acc * p + d;
        }
        prop_assert_eq!(&acc, r.value());
    }

    #[test]
    fn reduction_is_a_ring_homomorphism((p, x, y) in with_prime(), k in 1u32..7) {
        let (rx, ry) = (reduce_mod(&x, p, k).unwrap(), reduce_mod(&y, p, k).unwrap());
        prop_assert_eq!(reduce_mod(&(&x + &y), p, k).unwrap(), &rx + &ry);
        prop_assert_eq!(reduce_mod(&(&x * &y), p, k).unwrap(), &rx * &ry);
        prop_assert_eq!(reduce_mod(&(&x - &y), p, k).unwrap(), &rx - &ry);
    }

    #[test]
    fn low_digits_ignore_higher_multiples((p, x, y) in with_prime(), i in 0u32..5) {
        let shift = &y * ExactRational::from_integer(pow_p(p, i + 1));
        for j in 0..=i {
            prop_assert_eq!(hensel_digit(&x, p, j).unwrap(), hensel_digit(&(&x + &shift), p, j).unwrap());
        }
    }

    #[test]
    fn padic_tracks_exact_arithmetic((p, x, y) in with_prime(), a in -3i64..3, k in 1u32..6) {
        let scale = if a >= 0 {
            ExactRational::from_integer(pow_p(p, a as u32))
        } else {
            ExactRational::new(BigInt::one(), pow_p(p, (-a) as u32))
        };
        let xs = &x * &scale;
        let prec = 12;
        let px = Padic::from_rational(&xs, p, prec);
        let py = Padic::from_rational(&y, p, prec);
        let sum = &px + &py;
        let prod = &px * &py;
        let exact_sum = Padic::from_rational(&(&xs + &y), p, prec);
        let exact_prod = Padic::from_rational(&(&xs * &y), p, prec);
        prop_assert!(sum.congruent(&exact_sum, k as i64).unwrap_or(true));
        prop_assert!(prod.congruent(&exact_prod, k as i64).unwrap_or(true));
        if valuation(&xs, p).at_least(0) {
            prop_assert_eq!(px.residue(k).unwrap(), reduce_mod(&xs, p, k).unwrap());
        }
    }

    #[test]
    fn fermat_quotients_are_integers(p in prime(), a0 in 1u64..200) {
        let a = 1 + a0 % (p - 1);
        let q = fermat_quotient(p, a).unwrap();
        let back = q * p + 1u32;
        prop_assert_eq!(back, num_traits::pow(BigInt::from(a), p as usize - 1));
    }

    #[test]
    fn product_quotient_rule(p in prime(), a0 in 1u64..40, b0 in 1u64..40) {
        let (a, b) = (1 + a0 % (p - 1), 1 + b0 % (p - 1));
        let table = QuotientTable::new(p);
        let direct = (num_traits::pow(BigInt::from(a * b), p as usize - 1) - 1u32) / p;
        let modp = BigInt::from(p);
        prop_assert_eq!(direct.mod_floor(&modp), (table.q(a) + table.q(b)).mod_floor(&modp));
    }

    #[test]
    fn lifts_are_roots_and_telescope(p in prime(), a0 in 1u64..37, k in 2u32..8) {
        let a = 1 + (a0 - 1) % (p - 1);
        let c = PadicResidue::from_i64(-1, p, k);
        let r = lift_root(p, a, &c, k).unwrap();
        let m = pow_p(p, k);
        prop_assert!((r.value().modpow(&BigInt::from(p - 1), &m) - BigInt::one()).mod_floor(&m).is_zero());
        prop_assert_eq!(r.digit(0).unwrap(), a);
        for j in 1..k {
            let lower = lift_root(p, a, &PadicResidue::from_i64(-1, p, j), j).unwrap();
            prop_assert_eq!(r.truncate(j), lower);
        }
        let again = lift_root(p, r.value().mod_floor(&BigInt::from(p)).try_into().unwrap(), &c, k).unwrap();
        prop_assert_eq!(again, r);
    }
}

#[test]
fn von_staudt_clausen_to_400() {
    let cache = BernoulliCache::new(400);
    for n in (2..=400).step_by(2) {
        assert_eq!(cache.bernoulli(n).denom(), &von_staudt_denominator(n), "2n={n}");
    }
}

#[test]
fn kummer_congruence() {
    let cache = BernoulliCache::new(200);
    for p in PRIMES {
        for t in (2..=p as usize - 3).step_by(2) {
            for j in 1..=2usize {
                let shifted = cache.divided(t + j * (p as usize - 1));
                let d = reduce_mod(&(shifted - cache.divided(t)), p, 1).unwrap();
                assert!(d.is_zero(), "p={p} t={t} j={j}");
            }
        }
    }
}

#[test]
fn irregular_pairs_below_100() {
    let cache = BernoulliCache::new(100);
    let mut pairs = Vec::new();
    for p in (5..100).filter(|&p| is_prime(p)) {
        let q = QuotientTable::new(p);
        for t in (2..=p - 3).step_by(2) {
            let by_numerator = numerator_divisible(&cache.divided(t as usize), p);
            let by_sum = q.weighted_sum(t as i64, 1, 1).is_zero();
            assert_eq!(by_numerator, by_sum, "p={p} t={t}");
            if by_numerator {
                pairs.push((p, t));
            }
        }
    }
    assert_eq!(pairs, vec![(37, 32), (59, 44), (67, 58)]);
}

#[test]
fn mhs_matches_newton_reconstruction() {
    for n in 1..=30u64 {
        for k in 0..=n as usize {
            assert_eq!(mhs(k, n), mhs_newton(k, n), "k={k} n={n}");
        }
    }
}

#[test]
fn wolstenholme() {
    for p in PRIMES {
        assert!(valuation(&generalized(p - 1, 1), p).at_least(2), "p={p}");
        assert!(valuation(&generalized(p - 1, 2), p).at_least(1), "p={p}");
    }
}

#[test]
fn lift_families_build_for_all_tags() {
    let cache = BernoulliCache::new(40);
    for tag in FamilyTag::ALL {
        let fam = LiftFamily::new(11, tag, 4, &cache).unwrap();
        assert_eq!(fam.roots().len(), 10);
        for a in 1..11 {
            assert_eq!(fam.root(a).digit(0).unwrap(), a);
        }
    }
}
