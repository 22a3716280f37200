//! Property tests for the arithmetic kernels: ring laws of the modular
//! layer, homomorphism of the exact reduction, and the algebraic identities
//! the summation code relies on.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;

use supercong::oracle::{
    big_ratio, binomial, central_binomial, pochhammer, reduce_mod, sum_truncated,
};
use supercong::padic::{fermat_quotient, PadicCtx, ValUnit};

static PRIMES: [u64; 6] = [3, 5, 7, 31, 97, 1999];

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.as_slice())
}

fn exponent() -> impl Strategy<Value = u32> {
    1u32..=5
}

fn rational() -> impl Strategy<Value = Rational64> {
    (-40i64..=40, 1i64..=40).prop_map(|(n, d)| Rational64::new(n, d))
}

fn p_unit(p: u64) -> impl Strategy<Value = Rational64> {
    rational().prop_filter("p-unit", move |x| {
        *x != Rational64::default()
            && x.numer().unsigned_abs() % p != 0
            && x.denom().unsigned_abs() % p != 0
    })
}

proptest! {
    #[test]
    fn reduction_is_a_ring_homomorphism(
        (p, k) in (small_prime(), exponent()),
        a in rational(),
        b in rational(),
    ) {
        let ctx = PadicCtx::new(p, k).unwrap();
        let ab = (big_ratio(a), big_ratio(b));
        prop_assume!(a.denom().unsigned_abs() % p != 0 && b.denom().unsigned_abs() % p != 0);
        let (ra, rb) = (reduce_mod(&ab.0, ctx).unwrap(), reduce_mod(&ab.1, ctx).unwrap());
        prop_assert_eq!(reduce_mod(&(&ab.0 + &ab.1), ctx).unwrap(), ra + rb);
        prop_assert_eq!(reduce_mod(&(&ab.0 * &ab.1), ctx).unwrap(), ra * rb);
        prop_assert_eq!(reduce_mod(&(-&ab.0), ctx).unwrap(), -ra);
    }

    #[test]
    fn fermat_quotient_is_a_logarithm(
        p in prop::sample::select(&PRIMES[1..]),
        xy in (1i64..=30, 1i64..=30, 1i64..=30, 1i64..=30),
    ) {
        let x = Rational64::new(xy.0, xy.1);
        let y = Rational64::new(xy.2, xy.3);
        let coprime = |r: Rational64| {
            !r.numer().unsigned_abs().is_multiple_of(p) && !r.denom().unsigned_abs().is_multiple_of(p)
        };
        prop_assume!(coprime(x) && coprime(y));
        let qx = fermat_quotient(x, p).unwrap().value;
        let qy = fermat_quotient(y, p).unwrap().value;
        let qxy = fermat_quotient(x * y, p).unwrap().value;
        prop_assert_eq!(qxy, (qx + qy) % p, "q_p multiplicativity at p={}", p);
    }

    #[test]
    fn pochhammer_splits_additively(
        x in rational(),
        m in 0u64..=25,
        n in 0u64..=25,
    ) {
        let xb = big_ratio(x);
        let split = pochhammer(&xb, m) * pochhammer(&(xb.clone() + BigRational::from(BigInt::from(m))), n);
        prop_assert_eq!(pochhammer(&xb, m + n), split);
    }

    #[test]
    fn truncated_sum_is_linear_in_the_weight(
        w in (-9i64..=9, -9i64..=9, -9i64..=9),
        top in 1u64..=12,
    ) {
        let h = Rational64::new(1, 2);
        let one = Rational64::new(1, 1);
        let num = [h, h, h];
        let den = [one, one, one];
        let z = Rational64::new(-8, 1);
        let combined = sum_truncated(&num, &den, w, z, top);
        let parts = BigRational::from(BigInt::from(w.0))
            * sum_truncated(&num, &den, (1, 0, 0), z, top)
            + BigRational::from(BigInt::from(w.1)) * sum_truncated(&num, &den, (0, 1, 0), z, top)
            + BigRational::from(BigInt::from(w.2)) * sum_truncated(&num, &den, (0, 0, 1), z, top);
        prop_assert_eq!(combined, parts);
    }

    #[test]
    fn val_unit_multiplication_tracks_integers(
        (p, k) in (small_prime(), exponent()),
        a in -500i64..=500,
        b in -500i64..=500,
    ) {
        prop_assume!(a != 0 && b != 0);
        let ctx = PadicCtx::new(p, k).unwrap();
        let prod = ValUnit::from_int(ctx, a).mul(ValUnit::from_int(ctx, b));
        prop_assert_eq!(prod.to_residue(), ValUnit::from_int(ctx, a * b).to_residue());
    }

    #[test]
    fn val_unit_division_inverts_multiplication(
        (p, k) in (small_prime(), exponent()),
        a in -500i64..=500,
        b in -500i64..=500,
    ) {
        prop_assume!(a != 0 && b != 0);
        let ctx = PadicCtx::new(p, k).unwrap();
        let a_unit = ValUnit::from_int(ctx, a);
        let back = a_unit.mul(ValUnit::from_int(ctx, b)).div(ValUnit::from_int(ctx, b)).unwrap();
        prop_assert_eq!(back.to_residue(), a_unit.to_residue());
    }

    #[test]
    fn central_binomial_matches_binomial(n in 0u64..=300) {
        prop_assert_eq!(central_binomial(n), binomial(2 * n, n));
    }

    #[test]
    fn legendre_symbol_is_multiplicative(
        p in prop::sample::select(&PRIMES[1..]),
        a in 1i64..=200,
        b in 1i64..=200,
    ) {
        prop_assume!(!(a as u64).is_multiple_of(p) && !(b as u64).is_multiple_of(p));
        let l = |n| supercong::padic::legendre(n, 1, p).unwrap();
        prop_assert_eq!(l(a * b), l(a) * l(b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fermat_quotient_matches_exact_definition(
        p in prop::sample::select(&PRIMES[1..4]),
        x in p_unit(7).prop_filter("unit at all small primes", |x| {
            [3u64, 5, 7, 31].iter().all(|q| {
                x.numer().unsigned_abs() % q != 0 && x.denom().unsigned_abs() % q != 0
            })
        }),
    ) {
        let q = fermat_quotient(x, p).unwrap().value;
        let xb = big_ratio(x);
        let exact = (num_traits::pow(xb, (p - 1) as usize) - BigRational::from(BigInt::from(1)))
            / BigRational::from(BigInt::from(p as i64));
        let ctx = PadicCtx::new(p, 1).unwrap();
        prop_assert_eq!(reduce_mod(&exact, ctx).unwrap().residue(), q as u128);
    }
}
