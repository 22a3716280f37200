//! Double-entry bookkeeping: the fast modular route and the all-exact
//! rational route must produce bit-for-bit identical results for every
//! registered check at every small prime.

use num_bigint::BigInt;
use num_rational::BigRational;

use supercong::hypersum::spec;
use supercong::oracle::{reduce_mod, sum_exact};
use supercong::padic::PadicCtx;
use supercong::suite::{oracle_check, primes_in, registry, run_check};

#[test]
fn dual_routes_agree_bit_for_bit_up_to_31() {
    let mut compared = 0u32;
    for check in registry() {
        for p in primes_in(3, 31) {
            let fast = run_check(check.id, p).unwrap();
            let exact = oracle_check(check.id, p).unwrap();
            assert_eq!(fast.lhs, exact.lhs, "{} p={} lhs", check.id, p);
            assert_eq!(fast.rhs, exact.rhs, "{} p={} rhs", check.id, p);
            assert_eq!(fast.pass, exact.pass, "{} p={} verdict", check.id, p);
            assert_eq!(
                fast.skipped.is_some(),
                exact.skipped.is_some(),
                "{} p={} skip",
                check.id,
                p
            );
            if fast.skipped.is_none() {
                assert!(fast.pass, "{} p={} must pass", check.id, p);
                compared += 1;
            }
        }
    }
    assert!(compared > 300, "only {compared} live comparisons");
}

#[test]
fn half_sum_anchor_at_p_5() {
    let s = spec("J1").unwrap();
    let sum = sum_exact(s, 5);
    assert_eq!(sum, BigRational::new(BigInt::from(285), BigInt::from(32)));
    let r = reduce_mod(&sum, PadicCtx::new(5, 3).unwrap()).unwrap();
    assert_eq!(r.residue(), 5);
    assert_eq!(r.ctx().modulus(), 125);
}

#[test]
fn oracle_path_anchor_at_p_3() {
    let s = spec("zu5").unwrap();
    assert_eq!(
        sum_exact(s, 3),
        BigRational::new(BigInt::from(9135), BigInt::from(1024))
    );
    let r = run_check("zu5", 3).unwrap();
    assert!(
        r.via_oracle,
        "p = 3 divides den(z); must reroute through the oracle"
    );
    assert_eq!((r.lhs, r.rhs), (Some(9), Some(9)));
    assert!(r.pass);
    assert_eq!(r.modulus, 27);
}
