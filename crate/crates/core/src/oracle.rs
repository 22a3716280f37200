//! Exact-rational ground truth for every truncated sum and finite identity.
//!
//! Everything here is brute force over `BigRational`: no reductions happen
//! until the final residue, so these values arbitrate whenever the fast
//! modular path needs a cross-check or must skip a prime.

use crate::hypersum::CongruenceSpec;
use crate::padic::{PadicCtx, PadicError, PadicInt};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn big_ratio(q: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

/// Rising factorial (a)_n = ∏_{j=0}^{n−1}(a+j); the empty product is 1.
pub fn pochhammer(a: &BigRational, n: u64) -> BigRational {
    let mut r = BigRational::one();
    let mut f = a.clone();
    for _ in 0..n {
        r *= &f;
        f += BigRational::one();
    }
    r
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

pub fn central_binomial(n: u64) -> BigInt {
    binomial(2 * n, n)
}

/// Reduces a p-integral rational mod p^k.
pub fn reduce_mod(x: &BigRational, ctx: PadicCtx) -> Result<PadicInt, PadicError> {
    let p = BigInt::from(ctx.p());
    if x.denom().is_multiple_of(&p) {
        return Err(PadicError::NotPIntegral(ctx.p()));
    }
    let pk = BigInt::from(ctx.modulus());
    let to_res = |v: &BigInt| -> PadicInt {
        ctx.residue(v.mod_floor(&pk).to_u128().expect("residue below p^k"))
    };
    let num = to_res(x.numer());
    let den = to_res(x.denom()).inv().expect("denominator coprime to p");
    Ok(num * den)
}

/// p-adic valuation of a rational, None for zero.
pub fn valuation(x: &BigRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |v: &BigInt| {
        let mut v = v.abs();
        let mut c = 0i64;
        while v.is_multiple_of(&p) {
            v /= &p;
            c += 1;
        }
        c
    };
    Some(count(x.numer()) - count(x.denom()))
}

/// Σ_{n=0}^{top} W(n)·∏(a_i)_n/∏(b_j)_n·z^n as an exact rational.
pub fn sum_truncated(
    num_params: &[Rational64],
    den_params: &[Rational64],
    weight: (i64, i64, i64),
    z: Rational64,
    top: u64,
) -> BigRational {
    let (w0, w1, w2) = weight;
    let zb = big_ratio(z);
    let mut term = BigRational::one();
    let mut acc = BigRational::zero();
    for n in 0..=top {
        let ni = n as i64;
        acc += BigRational::from(BigInt::from(w0 + w1 * ni + w2 * ni * ni)) * &term;
        if n == top {
            break;
        }
        for a in num_params {
            term *= big_ratio(*a) + BigRational::from(BigInt::from(ni));
        }
        for b in den_params {
            term /= big_ratio(*b) + BigRational::from(BigInt::from(ni));
        }
        term *= &zb;
    }
    acc
}

/// Exact value of a registered truncated sum at p.
pub fn sum_exact(spec: &CongruenceSpec, p: u64) -> BigRational {
    sum_truncated(
        spec.num_params,
        spec.den_params,
        spec.weight,
        spec.z,
        spec.limit.top(p),
    )
}

/// Failing case of a finite-identity sweep, with both exact sides.
#[derive(Debug, Clone)]
pub struct IdentityFailure {
    pub at: u64,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub id: &'static str,
    pub cases: u64,
    pub pass: bool,
    pub failure: Option<IdentityFailure>,
}

fn identity_sweep(
    id: &'static str,
    cases: impl Iterator<Item = u64>,
    sides: impl Fn(u64) -> (BigRational, BigRational),
) -> IdentityReport {
    let mut count = 0;
    for case in cases {
        count += 1;
        let (lhs, rhs) = sides(case);
        if lhs != rhs {
            return IdentityReport {
                id,
                cases: count,
                pass: false,
                failure: Some(IdentityFailure { at: case, lhs, rhs }),
            };
        }
    }
    IdentityReport {
        id,
        cases: count,
        pass: true,
        failure: None,
    }
}

/// Σ_{n=1}^{N} C(2n,n)/n = (N+1)/3·C(2N+1,N)·Σ_{n=1}^{N} 1/(n²·C(N,n)²) for N ≤ n_max.
pub fn staver_identity_check(n_max: u64) -> IdentityReport {
    identity_sweep("staver", 1..=n_max, |n_cap| {
        let lhs: BigRational = (1..=n_cap)
            .map(|n| BigRational::new(central_binomial(n), BigInt::from(n)))
            .sum();
        let inner: BigRational = (1..=n_cap)
            .map(|n| {
                let c = binomial(n_cap, n);
                BigRational::new(BigInt::one(), BigInt::from(n * n) * (&c * &c))
            })
            .sum();
        let pre = BigRational::new(BigInt::from(n_cap + 1), BigInt::from(3u32))
            * BigRational::from(binomial(2 * n_cap + 1, n_cap));
        (lhs, pre * inner)
    })
}

/// Σ_{n=1}^{N} C(2n,n)·n²/(4N⁴+n⁴)·∏_{k=1}^{n−1}(N⁴−k⁴)/(4N⁴+k⁴) = 2/(5N²) for N ≤ n_max.
pub fn ag_identity_check(n_max: u64) -> IdentityReport {
    identity_sweep("almkvist-granville", 1..=n_max, |n_cap| {
        let n4 = |j: u64| BigInt::from(j).pow(4);
        let four_n4 = BigInt::from(4u32) * n4(n_cap);
        let mut lhs = BigRational::zero();
        let mut prod = BigRational::one();
        for n in 1..=n_cap {
            if n > 1 {
                let k = n - 1;
                prod *= BigRational::new(n4(n_cap) - n4(k), &four_n4 + n4(k));
            }
            lhs += BigRational::from(central_binomial(n))
                * BigRational::new(BigInt::from(n * n), &four_n4 + n4(n))
                * &prod;
        }
        let rhs = BigRational::new(BigInt::from(2u32), BigInt::from(5 * n_cap * n_cap));
        (lhs, rhs)
    })
}

/// Σ_{n=0}^{(m−3)/2} ((1−m)/2)_n/(n!·(2n+1)) = −(−1)^((m−1)/2)/m + ((m−1)/2)!/(m·(1/2)_((m−1)/2))
/// for odd 3 ≤ m ≤ m_max.
pub fn chu_vandermonde_check(m_max: u64) -> IdentityReport {
    identity_sweep("chu-vandermonde", (3..=m_max).step_by(2), |m| {
        let base = BigRational::new(BigInt::from(1i64 - m as i64), BigInt::from(2u32));
        let lhs: BigRational = (0..=(m - 3) / 2)
            .map(|n| {
                pochhammer(&base, n)
                    / (pochhammer(&BigRational::one(), n)
                        * BigRational::from(BigInt::from(2 * n + 1)))
            })
            .sum();
        let half = (m - 1) / 2;
        let sign = if half % 2 == 0 { 1i64 } else { -1 };
        let rhs = BigRational::new(BigInt::from(-sign), BigInt::from(m))
            + pochhammer(&BigRational::one(), half)
                / (BigRational::from(BigInt::from(m))
                    * pochhammer(&BigRational::new(BigInt::one(), BigInt::from(2u32)), half));
        (lhs, rhs)
    })
}
