//! Exact verification of the four WZ certificate pairs and their telescoped
//! boundary identities.
//!
//! A pair (F, G) must satisfy F(n,k−1) − F(n,k) = G(n+1,k) − G(n,k) at every
//! grid point; everything is evaluated in arbitrary-precision rationals so a
//! grid pass is an exact statement, not an approximation. G(n,k) carries the
//! convention G(0,k) = 0.

use crate::oracle::{big_ratio, pochhammer};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WzPairId {
    Lemma3,
    J1,
    J2,
    J4,
}

impl WzPairId {
    pub fn as_str(self) -> &'static str {
        match self {
            WzPairId::Lemma3 => "LEMMA3",
            WzPairId::J1 => "J1",
            WzPairId::J2 => "J2",
            WzPairId::J4 => "J4",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WzError {
    #[error("LEMMA3 requires a parameter x outside {{0, 1}}")]
    BadParameter,
    #[error("pair {0} takes no parameter")]
    UnexpectedParameter(&'static str),
}

/// One certificate pair; LEMMA3 carries its rational parameter x.
#[derive(Debug, Clone, Copy)]
pub struct WzPair {
    pub id: WzPairId,
    pub x: Option<Rational64>,
}

fn big(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn pow_big(base: &BigRational, e: u64) -> BigRational {
    num_traits::pow(base.clone(), e as usize)
}

/// (1/2 + k) as an exact rational.
fn half_plus(k: i64) -> BigRational {
    BigRational::new(BigInt::from(1 + 2 * k), BigInt::from(2))
}

pub fn lemma3_f(x: &BigRational, n: u64, k: u64) -> BigRational {
    let base = BigRational::new(BigInt::from(1 - 2 * k as i64), BigInt::from(2));
    pochhammer(&base, n) / pochhammer(&BigRational::one(), n) * pow_big(x, n)
        / pow_big(&(BigRational::one() - x), k)
}

pub fn lemma3_g(x: &BigRational, n: u64, k: u64) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    let base = BigRational::new(BigInt::from(3 - 2 * k as i64), BigInt::from(2));
    -pochhammer(&base, n - 1) / pochhammer(&BigRational::one(), n - 1) * pow_big(x, n)
        / pow_big(&(BigRational::one() - x), k)
}

impl WzPair {
    pub fn lemma3(x: Rational64) -> Result<WzPair, WzError> {
        if x == Rational64::zero() || x == Rational64::one() {
            return Err(WzError::BadParameter);
        }
        Ok(WzPair {
            id: WzPairId::Lemma3,
            x: Some(x),
        })
    }

    pub fn j1() -> WzPair {
        WzPair {
            id: WzPairId::J1,
            x: None,
        }
    }

    pub fn j2() -> WzPair {
        WzPair {
            id: WzPairId::J2,
            x: None,
        }
    }

    pub fn j4() -> WzPair {
        WzPair {
            id: WzPairId::J4,
            x: None,
        }
    }

    pub fn f(&self, n: u64, k: u64) -> BigRational {
        let (ni, ki) = (n as i64, k as i64);
        let one = BigRational::one();
        match self.id {
            WzPairId::Lemma3 => lemma3_f(&big_ratio(self.x.expect("LEMMA3 carries x")), n, k),
            WzPairId::J1 => {
                big(3 * ni + 2 * ki + 1)
                    * pochhammer(&half_plus(0), n)
                    * pow_big(&pochhammer(&half_plus(ki), n), 2)
                    / pow_big(&pochhammer(&one, n), 3)
                    * pow_big(&big(4), n)
            }
            WzPairId::J2 => {
                big(10 * ni * ni + 12 * ni * ki + 4 * ki * ki + 6 * ni + 4 * ki + 1)
                    * pochhammer(&half_plus(0), n)
                    * pow_big(&pochhammer(&half_plus(ki), n), 4)
                    / pow_big(&pochhammer(&one, n), 5)
                    * pow_big(&big(-4), n)
            }
            WzPairId::J4 => {
                big(3 * ni + 2 * ki + 1)
                    * pochhammer(&half_plus(0), n)
                    * pow_big(&pochhammer(&half_plus(ki), n), 2)
                    * pochhammer(&half_plus(0), k)
                    / (pow_big(&pochhammer(&one, n), 2)
                        * pochhammer(&big(1 + 2 * ki), n)
                        * pochhammer(&one, k))
                    * pow_big(&big(-8), n)
            }
        }
    }

    pub fn g(&self, n: u64, k: u64) -> BigRational {
        if n == 0 {
            return BigRational::zero();
        }
        let (ni, ki) = (n as i64, k as i64);
        let one = BigRational::one();
        let sign = if n.is_multiple_of(2) { big(1) } else { big(-1) };
        match self.id {
            WzPairId::Lemma3 => lemma3_g(&big_ratio(self.x.expect("LEMMA3 carries x")), n, k),
            WzPairId::J1 => {
                -(pochhammer(&half_plus(0), n) * pow_big(&pochhammer(&half_plus(ki), n - 1), 2)
                    / pow_big(&pochhammer(&one, n - 1), 3)
                    * pow_big(&big(4), n))
            }
            WzPairId::J2 => {
                big(ni + 2 * ki - 1)
                    * pochhammer(&half_plus(0), n)
                    * pow_big(&pochhammer(&half_plus(ki), n - 1), 4)
                    / pow_big(&pochhammer(&one, n - 1), 5)
                    * sign
                    * pow_big(&big(2), 2 * n + 1)
            }
            WzPairId::J4 => {
                pochhammer(&half_plus(0), n)
                    * pow_big(&pochhammer(&half_plus(ki), n - 1), 2)
                    * pochhammer(&half_plus(0), k)
                    / (pow_big(&pochhammer(&one, n - 1), 2)
                        * pochhammer(&big(1 + 2 * ki), n - 1)
                        * pochhammer(&one, k))
                    * sign
                    * pow_big(&big(2), 3 * n - 2)
            }
        }
    }
}

/// Exhaustive pair-relation check over 0 ≤ n ≤ n_max, 1 ≤ k ≤ k_max.
#[derive(Debug, Clone)]
pub struct GridReport {
    pub id: WzPairId,
    pub x: Option<Rational64>,
    pub n_max: u64,
    pub k_max: u64,
    pub pass: bool,
    pub counterexample: Option<(u64, u64)>,
}

pub fn check_pair(pair: &WzPair, n_max: u64, k_max: u64) -> GridReport {
    let mut counterexample = None;
    'outer: for n in 0..=n_max {
        for k in 1..=k_max {
            let lhs = pair.f(n, k - 1) - pair.f(n, k);
            let rhs = pair.g(n + 1, k) - pair.g(n, k);
            if lhs != rhs {
                counterexample = Some((n, k));
                break 'outer;
            }
        }
    }
    GridReport {
        id: pair.id,
        x: pair.x,
        n_max,
        k_max,
        pass: counterexample.is_none(),
        counterexample,
    }
}

/// Telescoped boundary identity of the parameterized pair, for odd m:
/// Σ_{n=1}^{m−1} F(n,0) = −F(0,0) + Σ_{n=0}^{m−1} F(n,(m+1)/2) + Σ_{k=1}^{(m+1)/2} G(m,k).
/// Holds for any odd m ≥ 3 and any x with x ≠ 1 (x = 0 degenerates to 0 = 0).
pub fn telescoped_lemma3(m: u64, x: Rational64) -> bool {
    assert!(m >= 3 && m % 2 == 1, "m must be odd and >= 3");
    let xb = big_ratio(x);
    let top = m.div_ceil(2);
    let lhs: BigRational = (1..m).map(|n| lemma3_f(&xb, n, 0)).sum::<BigRational>();
    let rhs = -lemma3_f(&xb, 0, 0)
        + (0..m).map(|n| lemma3_f(&xb, n, top)).sum::<BigRational>()
        + (1..=top).map(|k| lemma3_g(&xb, m, k)).sum::<BigRational>();
    lhs == rhs
}

/// Column-telescoped identity of the J1 pair, for odd m and every
/// 1 ≤ k ≤ (m−1)/2: Σ_{n=0}^{(m−1)/2} [F(n,k−1) − F(n,k)] = G((m+1)/2, k).
pub fn telescoped_j1(m: u64) -> bool {
    assert!(m >= 3 && m % 2 == 1, "m must be odd and >= 3");
    let pair = WzPair::j1();
    (1..=(m - 1) / 2).all(|k| {
        let lhs: BigRational = (0..=(m - 1) / 2)
            .map(|n| pair.f(n, k - 1) - pair.f(n, k))
            .sum();
        lhs == pair.g(m.div_ceil(2), k)
    })
}

/// Row-telescoped identity of the J4 pair, for odd m:
/// Σ_{n=0}^{m−1} F(n,0) = Σ_{n=0}^{m−1} F(n,(m−1)/2) + Σ_{k=1}^{(m−1)/2} G(m,k).
pub fn telescoped_j4(m: u64) -> bool {
    assert!(m >= 3 && m % 2 == 1, "m must be odd and >= 3");
    let pair = WzPair::j4();
    let half = (m - 1) / 2;
    let lhs: BigRational = (0..m).map(|n| pair.f(n, 0)).sum();
    let rhs = (0..m).map(|n| pair.f(n, half)).sum::<BigRational>()
        + (1..=half).map(|k| pair.g(m, k)).sum::<BigRational>();
    lhs == rhs
}
