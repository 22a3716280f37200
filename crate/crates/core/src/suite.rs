//! Data-driven registry of every congruence check, with per-prime runners and
//! range sweeps.
//!
//! Each check runs along two independent routes: `run_check` uses the fast
//! valuation-tracked modular path (falling back to the exact oracle for primes
//! the recurrence must skip), while `oracle_check` recomputes everything from
//! exact rationals. Sweeps iterate either route over a prime range, in
//! parallel when the `parallel` feature is enabled.

use crate::hypersum::{self, CongruenceSpec, EvalError, Status, SPECS};
use crate::oracle;
use crate::padic::{fermat_quotient, PadicCtx, PadicError, PadicInt, ValUnit};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::One;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use std::sync::OnceLock;
use std::time::{Duration, Instant};
use thiserror::Error;

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Closed-form lemma congruences, keyed by their registry ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaKind {
    /// st1: Σ_{n=1}^{(p−1)/2} C(2n,n)/n ≡ 0 (mod p)
    St1,
    /// st2: Σ_{n=1}^{(p−1)/2} (−1)^n C(2n,n)/n² ≡ 0 (mod p)
    St2,
    /// st3: Σ_{n=0}^{(p−3)/2} C(2n,n)/(4^n(2n+1)) ≡ −(−1)^((p−1)/2) q_p(2) (mod p)
    St3,
    /// st3-3: C(p−1,(p−1)/2)·2^(1−p) ≡ (−1)^((p−1)/2)·2^(p−1) (mod p²)
    Morley,
    /// st4: Σ_{n=1}^{p−1} (−2)^n C(2n,n)/n ≡ −4 q_p(2) (mod p)
    St4,
    /// st5: 3 Σ_{n=1}^{p−1} (−2)^n C(2n,n) ≡ −4(2^(p−1)−1) (mod p²)
    St5,
    /// st4-1: Σ_{n=1}^{p−1} (−1)^n C(2n,n)/(n·m^n) ≡ (2/m)(m^p − V_p(m))/p (mod p)
    St41 { m: Rational64 },
    /// M0: Σ_{n=1}^{p−1} C(2n,n)(x/4)^n ≡ p·x/(2(1−x))·(−q_p(x)+(y+1)q_p(y+1)−(y−1)q_p(y−1)) (mod p²), y² = 1−x
    M0 { x: Rational64, y: Rational64 },
    /// M1: Σ_{n=1}^{p−1} x^n/n ≡ (1 − x^p − (1−x)^p)/p (mod p)
    M1 { x: Rational64 },
    /// M2: Σ_{k=1}^{(p−1)/2} x^(2k−1)/(2k−1) ≡ ((1+x)^p − (1−x)^p − 2x^p)/(2p) (mod p)
    M2 { x: Rational64 },
    /// H_{p−1} ≡ 0 (mod p)
    Harmonic,
    /// (1/2−k)_p ≡ p!/2 (mod p²) for k = 1..(p−1)/2
    ResidueSystem,
}

#[derive(Debug, Clone, Copy)]
pub enum CheckBody {
    Hyper(&'static CongruenceSpec),
    Lemma(LemmaKind),
}

#[derive(Debug, Clone, Copy)]
pub struct RegisteredCheck {
    pub id: &'static str,
    pub status: Status,
    pub mod_exp: u32,
    pub p_min: u64,
    /// Default upper sweep bound for expensive checks; None means unlimited.
    pub sweep_cap: Option<u64>,
    pub body: CheckBody,
}

fn lemma(
    id: &'static str,
    kind: LemmaKind,
    mod_exp: u32,
    p_min: u64,
    sweep_cap: Option<u64>,
) -> RegisteredCheck {
    RegisteredCheck {
        id,
        status: Status::Proven,
        mod_exp,
        p_min,
        sweep_cap,
        body: CheckBody::Lemma(kind),
    }
}

/// All registered checks: the 15 truncated-sum congruences followed by the
/// 22 lemma congruences.
pub fn registry() -> &'static [RegisteredCheck] {
    static REGISTRY: OnceLock<Vec<RegisteredCheck>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut v: Vec<RegisteredCheck> = SPECS
            .iter()
            .map(|s| RegisteredCheck {
                id: s.id,
                status: s.status,
                mod_exp: s.mod_exp,
                p_min: s.p_min,
                sweep_cap: None,
                body: CheckBody::Hyper(s),
            })
            .collect();
        v.extend([
            lemma("st1", LemmaKind::St1, 1, 5, None),
            lemma("st2", LemmaKind::St2, 1, 7, None),
            lemma("st3", LemmaKind::St3, 1, 3, None),
            lemma("st3-3", LemmaKind::Morley, 2, 3, None),
            lemma("st4", LemmaKind::St4, 1, 3, None),
            lemma("st5", LemmaKind::St5, 2, 3, None),
            lemma("st4-1@m=1", LemmaKind::St41 { m: r(1, 1) }, 1, 3, Some(500)),
            lemma("st4-1@m=2", LemmaKind::St41 { m: r(2, 1) }, 1, 3, Some(500)),
            lemma("st4-1@m=3", LemmaKind::St41 { m: r(3, 1) }, 1, 3, Some(500)),
            lemma(
                "st4-1@m=1/2",
                LemmaKind::St41 { m: r(1, 2) },
                1,
                3,
                Some(500),
            ),
            lemma(
                "M0@x=-8",
                LemmaKind::M0 {
                    x: r(-8, 1),
                    y: r(3, 1),
                },
                2,
                5,
                Some(500),
            ),
            lemma(
                "M0@x=-3",
                LemmaKind::M0 {
                    x: r(-3, 1),
                    y: r(2, 1),
                },
                2,
                5,
                Some(500),
            ),
            lemma(
                "M0@x=8/9",
                LemmaKind::M0 {
                    x: r(8, 9),
                    y: r(1, 3),
                },
                2,
                5,
                Some(500),
            ),
            lemma(
                "M0@x=5/9",
                LemmaKind::M0 {
                    x: r(5, 9),
                    y: r(2, 3),
                },
                2,
                5,
                Some(500),
            ),
            lemma("M1@x=2", LemmaKind::M1 { x: r(2, 1) }, 1, 3, Some(200)),
            lemma("M1@x=1/3", LemmaKind::M1 { x: r(1, 3) }, 1, 3, Some(200)),
            lemma("M1@x=-8", LemmaKind::M1 { x: r(-8, 1) }, 1, 3, Some(200)),
            lemma("M2@x=2", LemmaKind::M2 { x: r(2, 1) }, 1, 3, Some(200)),
            lemma("M2@x=1/3", LemmaKind::M2 { x: r(1, 3) }, 1, 3, Some(200)),
            lemma("M2@x=-8", LemmaKind::M2 { x: r(-8, 1) }, 1, 3, Some(200)),
            lemma("harmonic", LemmaKind::Harmonic, 1, 5, Some(500)),
            lemma("residue-system", LemmaKind::ResidueSystem, 2, 3, Some(100)),
        ]);
        v
    })
}

pub fn find_check(id: &str) -> Option<&'static RegisteredCheck> {
    registry().iter().find(|c| c.id == id)
}

/// Outcome of one check at one prime. Exactly one of pass/fail/skip holds:
/// `skipped` carries the reason and suppresses any pass claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub id: &'static str,
    pub p: u64,
    pub mod_exp: u32,
    pub modulus: u128,
    pub lhs: Option<u128>,
    pub rhs: Option<u128>,
    pub pass: bool,
    pub skipped: Option<String>,
    pub via_oracle: bool,
}

impl CheckResult {
    pub fn failed(&self) -> bool {
        !self.pass && self.skipped.is_none()
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown check id: {0}")]
    UnknownCheckId(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

fn modulus(p: u64, k: u32) -> u128 {
    (0..k).fold(1u128, |m, _| m * p as u128)
}

fn skip(check: &RegisteredCheck, p: u64, reason: String) -> CheckResult {
    CheckResult {
        id: check.id,
        p,
        mod_exp: check.mod_exp,
        modulus: modulus(p, check.mod_exp),
        lhs: None,
        rhs: None,
        pass: false,
        skipped: Some(reason),
        via_oracle: false,
    }
}

fn from_pairs(
    check: &RegisteredCheck,
    p: u64,
    pairs: &[(PadicInt, PadicInt)],
    via_oracle: bool,
) -> CheckResult {
    let (mut lhs, mut rhs) = pairs[0];
    let mut pass = true;
    for &(l, rh) in pairs {
        if l != rh {
            (lhs, rhs, pass) = (l, rh, false);
            break;
        }
    }
    CheckResult {
        id: check.id,
        p,
        mod_exp: check.mod_exp,
        modulus: modulus(p, check.mod_exp),
        lhs: Some(lhs.residue()),
        rhs: Some(rhs.residue()),
        pass,
        skipped: None,
        via_oracle,
    }
}

fn p_min_reason(p_min: u64) -> String {
    match p_min {
        3 => "p>2".into(),
        5 => "p>3".into(),
        7 => "p>5".into(),
        _ => format!("p>={}", p_min),
    }
}

fn unit_at(p: u64, q: Rational64) -> bool {
    !q.numer().unsigned_abs().is_multiple_of(p) && !q.denom().unsigned_abs().is_multiple_of(p)
}

/// Admissibility beyond the p_min bound; returns a skip reason when the
/// check's rational parameters collide with p.
fn lemma_skip_reason(kind: &LemmaKind, p: u64) -> Option<String> {
    let collision = match kind {
        LemmaKind::St41 { m } => !unit_at(p, *m),
        LemmaKind::M0 { x, y } => {
            !unit_at(p, *x)
                || !unit_at(p, Rational64::one() - x)
                || !unit_at(p, y + Rational64::one())
                || (*y - Rational64::one() != Rational64::from_integer(0)
                    && !unit_at(p, *y - Rational64::one()))
        }
        LemmaKind::M1 { x } | LemmaKind::M2 { x } => x.denom().unsigned_abs() % p == 0,
        _ => false,
    };
    collision.then(|| "p divides a check parameter".to_string())
}

/// Runs a registered check at p along the fast modular route, falling back to
/// the exact oracle when the recurrence is inadmissible at p.
pub fn run_check(id: &str, p: u64) -> Result<CheckResult, SuiteError> {
    let check = find_check(id).ok_or_else(|| SuiteError::UnknownCheckId(id.to_string()))?;
    run_entry(check, p)
}

pub(crate) fn run_entry(check: &RegisteredCheck, p: u64) -> Result<CheckResult, SuiteError> {
    if p < check.p_min {
        return Ok(skip(check, p, p_min_reason(check.p_min)));
    }
    match check.body {
        CheckBody::Hyper(spec) => {
            let rhs = hypersum::rhs_residue(spec, p).map_err(eval_to_suite)?;
            match hypersum::eval_sum_mod(spec, p) {
                Ok(lhs) => Ok(from_pairs(check, p, &[(lhs, rhs)], false)),
                Err(EvalError::NotPIntegralParams(_)) => {
                    let ctx = PadicCtx::new(p, spec.mod_exp)?;
                    match oracle::reduce_mod(&oracle::sum_exact(spec, p), ctx) {
                        Ok(lhs) => Ok(from_pairs(check, p, &[(lhs, rhs)], true)),
                        Err(PadicError::NotPIntegral(_)) => {
                            Ok(skip(check, p, "sum not p-integral".into()))
                        }
                        Err(e) => Err(e.into()),
                    }
                }
                Err(EvalError::Padic(e)) => Err(e.into()),
            }
        }
        CheckBody::Lemma(kind) => {
            if let Some(reason) = lemma_skip_reason(&kind, p) {
                return Ok(skip(check, p, reason));
            }
            let pairs = lemma_sides_mod(&kind, p, check.mod_exp)?;
            Ok(from_pairs(check, p, &pairs, false))
        }
    }
}

/// Recomputes a check at p entirely from exact rationals.
pub fn oracle_check(id: &str, p: u64) -> Result<CheckResult, SuiteError> {
    let check = find_check(id).ok_or_else(|| SuiteError::UnknownCheckId(id.to_string()))?;
    if p < check.p_min {
        return Ok(skip(check, p, p_min_reason(check.p_min)));
    }
    match check.body {
        CheckBody::Hyper(spec) => {
            let ctx = PadicCtx::new(p, spec.mod_exp)?;
            let rhs = hypersum::rhs_residue(spec, p).map_err(eval_to_suite)?;
            match oracle::reduce_mod(&oracle::sum_exact(spec, p), ctx) {
                Ok(lhs) => Ok(from_pairs(check, p, &[(lhs, rhs)], true)),
                Err(PadicError::NotPIntegral(_)) => Ok(skip(check, p, "sum not p-integral".into())),
                Err(e) => Err(e.into()),
            }
        }
        CheckBody::Lemma(kind) => {
            if let Some(reason) = lemma_skip_reason(&kind, p) {
                return Ok(skip(check, p, reason));
            }
            let pairs = lemma_sides_oracle(&kind, p, check.mod_exp)?;
            Ok(from_pairs(check, p, &pairs, true))
        }
    }
}

fn eval_to_suite(e: EvalError) -> SuiteError {
    match e {
        EvalError::Padic(pe) => SuiteError::Padic(pe),
        EvalError::NotPIntegralParams(p) => SuiteError::Padic(PadicError::NotPIntegral(p)),
    }
}

/// Advances C(2(n−1),n−1) to C(2n,n).
fn cb_step(cb: ValUnit, n: u64) -> ValUnit {
    let ni = n as i64;
    cb.mul_int(2 * (2 * ni - 1))
        .div_int(ni)
        .expect("central binomial stays integral")
}

fn two_pow(ctx: PadicCtx, e: u64) -> PadicInt {
    ctx.int(2).pow(e)
}

fn half_parity_sign(p: u64) -> i64 {
    if ((p - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Exact right-hand side of st4-1: (2/m)(m^p − V_p(m))/p reduced mod p, where
/// V_0 = 2, V_1 = m, V_j = m(V_{j−1} + V_{j−2}).
fn st41_rhs(m: Rational64, p: u64) -> Result<PadicInt, PadicError> {
    let ctx = PadicCtx::new(p, 1)?;
    let mb = oracle::big_ratio(m);
    let mut v0 = BigRational::from(BigInt::from(2));
    let mut v1 = mb.clone();
    for _ in 2..=p {
        let v2 = &mb * (&v0 + &v1);
        v0 = v1;
        v1 = v2;
    }
    let num = num_traits::pow(mb.clone(), p as usize) - v1;
    debug_assert!(oracle::valuation(&num, p).is_none_or(|v| v >= 1));
    let value = BigRational::new(BigInt::from(2), BigInt::one()) / mb * num
        / BigRational::from(BigInt::from(p));
    oracle::reduce_mod(&value, ctx)
}

fn lemma_sides_mod(
    kind: &LemmaKind,
    p: u64,
    k: u32,
) -> Result<Vec<(PadicInt, PadicInt)>, PadicError> {
    let ctx = PadicCtx::new(p, k)?;
    let half = (p - 1) / 2;
    Ok(match kind {
        LemmaKind::St1 => {
            let mut acc = ctx.zero();
            let mut cb = ValUnit::one(ctx);
            for n in 1..=half {
                cb = cb_step(cb, n);
                acc = acc + cb.div_int(n as i64)?.to_residue();
            }
            vec![(acc, ctx.zero())]
        }
        LemmaKind::St2 => {
            let mut acc = ctx.zero();
            let mut cb = ValUnit::one(ctx);
            for n in 1..=half {
                cb = cb_step(cb, n);
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let ni = n as i64;
                acc = acc + cb.mul_int(sign).div_int(ni * ni)?.to_residue();
            }
            vec![(acc, ctx.zero())]
        }
        LemmaKind::St3 => {
            let mut acc = ctx.zero();
            let mut cb = ValUnit::one(ctx);
            let mut inv4 = ValUnit::one(ctx);
            for n in 0..=(p - 3) / 2 {
                if n > 0 {
                    cb = cb_step(cb, n);
                    inv4 = inv4.div_int(4)?;
                }
                acc = acc + cb.mul(inv4).div_int(2 * n as i64 + 1)?.to_residue();
            }
            let q = fermat_quotient(r(2, 1), p)?.value;
            vec![(acc, ctx.int(-half_parity_sign(p) * q as i64))]
        }
        LemmaKind::Morley => {
            let mut cb = ValUnit::one(ctx);
            for n in 1..=half {
                cb = cb_step(cb, n);
            }
            let lhs = cb.to_residue() * two_pow(ctx, p - 1).inv()?;
            let rhs = two_pow(ctx, p - 1) * ctx.int(half_parity_sign(p));
            vec![(lhs, rhs)]
        }
        LemmaKind::St4 => {
            let mut acc = ctx.zero();
            let mut cb = ValUnit::one(ctx);
            let mut zpow = ValUnit::one(ctx);
            for n in 1..=p - 1 {
                cb = cb_step(cb, n);
                zpow = zpow.mul_int(-2);
                acc = acc + cb.mul(zpow).div_int(n as i64)?.to_residue();
            }
            let q = fermat_quotient(r(2, 1), p)?.value;
            vec![(acc, ctx.int(-4 * q as i64))]
        }
        LemmaKind::St5 => {
            let mut acc = ctx.zero();
            let mut cb = ValUnit::one(ctx);
            let mut zpow = ValUnit::one(ctx);
            for n in 1..=p - 1 {
                cb = cb_step(cb, n);
                zpow = zpow.mul_int(-2);
                acc = acc + cb.mul(zpow).to_residue();
            }
            let rhs = -(ctx.int(4) * (two_pow(ctx, p - 1) - ctx.one()));
            vec![(acc * ctx.int(3), rhs)]
        }
        LemmaKind::St41 { m } => {
            let mut acc = ctx.zero();
            let mut cb = ValUnit::one(ctx);
            let mut zpow = ValUnit::one(ctx);
            for n in 1..=p - 1 {
                cb = cb_step(cb, n);
                zpow = zpow.mul_int(-m.denom()).div_int(*m.numer())?;
                acc = acc + cb.mul(zpow).div_int(n as i64)?.to_residue();
            }
            vec![(acc, st41_rhs(*m, p)?)]
        }
        LemmaKind::M0 { x, y } => {
            let xq = x / r(4, 1);
            let mut acc = ctx.zero();
            let mut cb = ValUnit::one(ctx);
            let mut zpow = ValUnit::one(ctx);
            for n in 1..=p - 1 {
                cb = cb_step(cb, n);
                zpow = zpow.mul_int(*xq.numer()).div_int(*xq.denom())?;
                acc = acc + cb.mul(zpow).to_residue();
            }
            let ctx1 = PadicCtx::new(p, 1)?;
            let yp = *y + Rational64::one();
            let ym = *y - Rational64::one();
            let qx = ctx1.int(fermat_quotient(*x, p)?.value as i64);
            let qyp = ctx1.int(fermat_quotient(yp, p)?.value as i64);
            let qym = ctx1.int(fermat_quotient(ym, p)?.value as i64);
            let combo = -qx + ctx1.from_ratio(yp)? * qyp - ctx1.from_ratio(ym)? * qym;
            let pref = ctx1.from_ratio(*x / (r(2, 1) * (Rational64::one() - x)))?;
            let rhs = ctx.residue(p as u128 * (pref * combo).residue());
            vec![(acc, rhs)]
        }
        LemmaKind::M1 { x } => {
            let mut acc = ctx.zero();
            let mut zpow = ValUnit::one(ctx);
            for n in 1..=p - 1 {
                zpow = zpow.mul_int(*x.numer()).div_int(*x.denom())?;
                acc = acc + zpow.div_int(n as i64)?.to_residue();
            }
            let ctx2 = PadicCtx::new(p, 2)?;
            let t = ctx2.one()
                - ctx2.from_ratio(*x)?.pow(p)
                - ctx2.from_ratio(Rational64::one() - x)?.pow(p);
            vec![(acc, t.exact_div_by_p()?)]
        }
        LemmaKind::M2 { x } => {
            let mut acc = ctx.zero();
            let x2 = x * x;
            let mut zpow = ValUnit::from_int(ctx, *x.numer()).div_int(*x.denom())?;
            for j in 1..=half {
                acc = acc + zpow.div_int(2 * j as i64 - 1)?.to_residue();
                zpow = zpow.mul_int(*x2.numer()).div_int(*x2.denom())?;
            }
            let ctx2 = PadicCtx::new(p, 2)?;
            let t = ctx2.from_ratio(Rational64::one() + x)?.pow(p)
                - ctx2.from_ratio(Rational64::one() - x)?.pow(p)
                - ctx2.int(2) * ctx2.from_ratio(*x)?.pow(p);
            let rhs = t.exact_div_by_p()? * PadicCtx::new(p, 1)?.int(2).inv()?;
            vec![(acc, rhs)]
        }
        LemmaKind::Harmonic => {
            let mut acc = ctx.zero();
            for n in 1..=p - 1 {
                acc = acc + ctx.int(n as i64).inv()?;
            }
            vec![(acc, ctx.zero())]
        }
        LemmaKind::ResidueSystem => {
            let mut fact = ValUnit::one(ctx);
            for j in 1..=p {
                fact = fact.mul_int(j as i64);
            }
            let rhs = fact.div_int(2)?.to_residue();
            let mut poch = ValUnit::one(ctx);
            for j in 0..p {
                poch = poch.mul_int(2 * j as i64 - 1);
            }
            poch = poch.div(ValUnit::from_int(ctx, 2).pow(p as u32))?;
            let mut pairs = Vec::with_capacity(half as usize);
            pairs.push((poch.to_residue(), rhs));
            for j in 1..half {
                let ji = j as i64;
                poch = poch
                    .mul_int(-(2 * ji + 1))
                    .div_int(2 * p as i64 - 2 * ji - 1)?;
                pairs.push((poch.to_residue(), rhs));
            }
            pairs
        }
    })
}

/// Exact Fermat quotient (x^(p−1) − 1)/p as a rational.
fn fq_exact(x: Rational64, p: u64) -> BigRational {
    (num_traits::pow(oracle::big_ratio(x), (p - 1) as usize) - BigRational::one())
        / BigRational::from(BigInt::from(p))
}

fn lemma_sides_oracle(
    kind: &LemmaKind,
    p: u64,
    k: u32,
) -> Result<Vec<(PadicInt, PadicInt)>, PadicError> {
    let ctx = PadicCtx::new(p, k)?;
    let half = (p - 1) / 2;
    let big = |n: i64| BigRational::from(BigInt::from(n));
    let cb = |n: u64| BigRational::from(oracle::central_binomial(n));
    let zx = |x: Rational64, n: u64| num_traits::pow(oracle::big_ratio(x), n as usize);
    Ok(match kind {
        LemmaKind::St1 => {
            let s: BigRational = (1..=half).map(|n| cb(n) / big(n as i64)).sum();
            vec![(oracle::reduce_mod(&s, ctx)?, ctx.zero())]
        }
        LemmaKind::St2 => {
            let s: BigRational = (1..=half)
                .map(|n| zx(r(-1, 1), n) * cb(n) / big((n * n) as i64))
                .sum();
            vec![(oracle::reduce_mod(&s, ctx)?, ctx.zero())]
        }
        LemmaKind::St3 => {
            let s: BigRational = (0..=(p - 3) / 2)
                .map(|n| cb(n) / (zx(r(4, 1), n) * big(2 * n as i64 + 1)))
                .sum();
            let q = oracle::reduce_mod(&fq_exact(r(2, 1), p), ctx)?;
            let rhs = ctx.int(-half_parity_sign(p)) * q;
            vec![(oracle::reduce_mod(&s, ctx)?, rhs)]
        }
        LemmaKind::Morley => {
            let lhs = cb(half) / zx(r(2, 1), p - 1);
            let rhs = zx(r(2, 1), p - 1) * oracle::big_ratio(r(half_parity_sign(p), 1));
            vec![(
                oracle::reduce_mod(&lhs, ctx)?,
                oracle::reduce_mod(&rhs, ctx)?,
            )]
        }
        LemmaKind::St4 => {
            let s: BigRational = (1..=p - 1)
                .map(|n| zx(r(-2, 1), n) * cb(n) / big(n as i64))
                .sum();
            let rhs = ctx.int(-4) * oracle::reduce_mod(&fq_exact(r(2, 1), p), ctx)?;
            vec![(oracle::reduce_mod(&s, ctx)?, rhs)]
        }
        LemmaKind::St5 => {
            let s: BigRational = (1..=p - 1).map(|n| zx(r(-2, 1), n) * cb(n)).sum();
            let rhs = big(-4) * (zx(r(2, 1), p - 1) - BigRational::one());
            vec![(
                oracle::reduce_mod(&(s * big(3)), ctx)?,
                oracle::reduce_mod(&rhs, ctx)?,
            )]
        }
        LemmaKind::St41 { m } => {
            let s: BigRational = (1..=p - 1)
                .map(|n| zx(r(-1, 1), n) * cb(n) / (big(n as i64) * zx(*m, n)))
                .sum();
            vec![(oracle::reduce_mod(&s, ctx)?, st41_rhs(*m, p)?)]
        }
        LemmaKind::M0 { x, y } => {
            let s: BigRational = (1..=p - 1).map(|n| cb(n) * zx(*x / r(4, 1), n)).sum();
            let ctx1 = PadicCtx::new(p, 1)?;
            let yp = *y + Rational64::one();
            let ym = *y - Rational64::one();
            let qx = oracle::reduce_mod(&fq_exact(*x, p), ctx1)?;
            let qyp = oracle::reduce_mod(&fq_exact(yp, p), ctx1)?;
            let qym = oracle::reduce_mod(&fq_exact(ym, p), ctx1)?;
            let combo = -qx + ctx1.from_ratio(yp)? * qyp - ctx1.from_ratio(ym)? * qym;
            let pref = ctx1.from_ratio(*x / (r(2, 1) * (Rational64::one() - x)))?;
            let rhs = ctx.residue(p as u128 * (pref * combo).residue());
            vec![(oracle::reduce_mod(&s, ctx)?, rhs)]
        }
        LemmaKind::M1 { x } => {
            let s: BigRational = (1..=p - 1).map(|n| zx(*x, n) / big(n as i64)).sum();
            let rhs =
                (BigRational::one() - zx(*x, p) - zx(Rational64::one() - x, p)) / big(p as i64);
            vec![(oracle::reduce_mod(&s, ctx)?, oracle::reduce_mod(&rhs, ctx)?)]
        }
        LemmaKind::M2 { x } => {
            let s: BigRational = (1..=half)
                .map(|j| zx(*x, 2 * j - 1) / big(2 * j as i64 - 1))
                .sum();
            let rhs =
                (zx(Rational64::one() + x, p) - zx(Rational64::one() - x, p) - big(2) * zx(*x, p))
                    / big(2 * p as i64);
            vec![(oracle::reduce_mod(&s, ctx)?, oracle::reduce_mod(&rhs, ctx)?)]
        }
        LemmaKind::Harmonic => {
            let s: BigRational = (1..=p - 1).map(|n| big(1) / big(n as i64)).sum();
            vec![(oracle::reduce_mod(&s, ctx)?, ctx.zero())]
        }
        LemmaKind::ResidueSystem => {
            let target = oracle::pochhammer(&BigRational::one(), p) / big(2);
            let rhs = oracle::reduce_mod(&target, ctx)?;
            (1..=half)
                .map(|kk| {
                    let base = BigRational::new(BigInt::from(1 - 2 * kk as i64), BigInt::from(2));
                    Ok((oracle::reduce_mod(&oracle::pochhammer(&base, p), ctx)?, rhs))
                })
                .collect::<Result<Vec<_>, PadicError>>()?
        }
    })
}

/// Cross-check tying the st4 and st5 sums together mod p²:
/// (3/4)·Σ(−2)^n C(2n,n) + (p/4)·Σ(−2)^n C(2n,n)/n ≡ 2(1 − 2^(p−1)).
pub fn st4_st5_consistency(p: u64) -> Result<(PadicInt, PadicInt), PadicError> {
    let ctx = PadicCtx::new(p, 2)?;
    let mut s = ctx.zero();
    let mut sp = ctx.zero();
    let mut cbv = ValUnit::one(ctx);
    let mut zpow = ValUnit::one(ctx);
    for n in 1..=p - 1 {
        cbv = cb_step(cbv, n);
        zpow = zpow.mul_int(-2);
        let t = cbv.mul(zpow);
        s = s + t.to_residue();
        sp = sp + t.div_int(n as i64)?.to_residue();
    }
    let inv4 = ctx.int(4).inv()?;
    let lhs = s * ctx.int(3) * inv4 + sp * ctx.int(p as i64) * inv4;
    let rhs = ctx.int(2) * (ctx.one() - two_pow(ctx, p - 1));
    Ok((lhs, rhs))
}

/// Primes in [lo, hi] by plain sieve.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let n = hi as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (lo.max(2)..=hi).filter(|&p| sieve[p as usize]).collect()
}

/// Aggregate of one check swept over a prime range.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub id: &'static str,
    pub status: Status,
    pub p_lo: u64,
    pub p_hi: u64,
    pub results: Vec<CheckResult>,
    pub passes: u64,
    pub failures: u64,
    pub skips: u64,
    pub wall: Duration,
}

fn aggregate(
    check: &RegisteredCheck,
    p_lo: u64,
    p_hi: u64,
    mut results: Vec<CheckResult>,
    wall: Duration,
) -> SweepReport {
    results.sort_by_key(|r| r.p);
    let skips = results.iter().filter(|r| r.skipped.is_some()).count() as u64;
    let failures = results.iter().filter(|r| r.failed()).count() as u64;
    let passes = results.len() as u64 - skips - failures;
    SweepReport {
        id: check.id,
        status: check.status,
        p_lo,
        p_hi,
        results,
        passes,
        failures,
        skips,
        wall,
    }
}

/// Runs one check over every prime in [p_lo, p_hi]. An empty range yields an
/// empty report. With the `parallel` feature the primes are partitioned
/// across threads; results are sorted by p either way.
pub fn sweep(id: &str, p_lo: u64, p_hi: u64, parallel: bool) -> Result<SweepReport, SuiteError> {
    let check = find_check(id).ok_or_else(|| SuiteError::UnknownCheckId(id.to_string()))?;
    let start = Instant::now();
    let primes = primes_in(p_lo, p_hi);
    let results = run_over(check, &primes, parallel)?;
    Ok(aggregate(check, p_lo, p_hi, results, start.elapsed()))
}

#[cfg(feature = "parallel")]
fn run_over(
    check: &RegisteredCheck,
    primes: &[u64],
    parallel: bool,
) -> Result<Vec<CheckResult>, SuiteError> {
    if parallel {
        primes.par_iter().map(|&p| run_entry(check, p)).collect()
    } else {
        primes.iter().map(|&p| run_entry(check, p)).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn run_over(
    check: &RegisteredCheck,
    primes: &[u64],
    _parallel: bool,
) -> Result<Vec<CheckResult>, SuiteError> {
    primes.iter().map(|&p| run_entry(check, p)).collect()
}

/// Sweeps every registered check from p = 3 up to min(p_hi, per-check cap).
pub fn verify_all(p_hi: u64, parallel: bool) -> Result<Vec<SweepReport>, SuiteError> {
    registry()
        .iter()
        .map(|check| {
            let hi = check.sweep_cap.map_or(p_hi, |cap| cap.min(p_hi));
            sweep(check.id, 3, hi, parallel)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_shape() {
        let reg = registry();
        assert_eq!(reg.len(), 37);
        for (i, c) in reg.iter().enumerate() {
            assert!(
                reg.iter().skip(i + 1).all(|d| d.id != c.id),
                "duplicate id {}",
                c.id
            );
        }
        assert!(find_check("st3-3").is_some());
        assert!(find_check("nope").is_none());
    }

    #[test]
    fn run_check_worked_examples() {
        let r1 = run_check("st1", 7).unwrap();
        assert!(r1.pass, "{:?}", r1);
        let r2 = run_check("st3", 5).unwrap();
        assert_eq!((r2.lhs, r2.rhs), (Some(2), Some(2)));
        let r3 = run_check("st3-3", 5).unwrap();
        assert_eq!((r3.lhs, r3.rhs), (Some(16), Some(16)));
        let r4 = run_check("M0@x=-8", 7).unwrap();
        assert_eq!((r4.lhs, r4.rhs, r4.pass), (Some(14), Some(14), true));
        let r5 = run_check("st4", 5).unwrap();
        assert_eq!((r5.lhs, r5.rhs), (Some(3), Some(3)));
        let r6 = run_check("st4-1@m=1", 5).unwrap();
        assert_eq!((r6.lhs, r6.rhs, r6.pass), (Some(1), Some(1), true));
        let r7 = run_check("st5", 3).unwrap();
        assert_eq!((r7.lhs, r7.rhs, r7.pass), (Some(6), Some(6), true));
    }

    #[test]
    fn oracle_route_for_inadmissible_primes() {
        let r = run_check("zu5", 3).unwrap();
        assert!(r.via_oracle);
        assert_eq!((r.lhs, r.rhs, r.pass), (Some(9), Some(9), true));
        let r = run_check("5F4-zu4", 3).unwrap();
        assert!(r.via_oracle);
        assert_eq!((r.lhs, r.rhs, r.pass), (Some(81), Some(81), true));
    }

    #[test]
    fn skip_reasons() {
        let r = run_check("st2", 5).unwrap();
        assert_eq!(r.skipped.as_deref(), Some("p>5"));
        assert!(!r.pass);
        let r = run_check("harmonic", 3).unwrap();
        assert_eq!(r.skipped.as_deref(), Some("p>3"));
        let r = run_check("st4-1@m=3", 3).unwrap();
        assert_eq!(r.skipped.as_deref(), Some("p divides a check parameter"));
        let r = run_check("M0@x=5/9", 5).unwrap();
        assert_eq!(r.skipped.as_deref(), Some("p divides a check parameter"));
        let r = run_check("M1@x=1/3", 3).unwrap();
        assert_eq!(r.skipped.as_deref(), Some("p divides a check parameter"));
    }

    #[test]
    fn sweep_counts() {
        let rep = sweep("J1a", 3, 100, true).unwrap();
        assert_eq!(rep.results.len(), 24);
        assert_eq!((rep.passes, rep.failures, rep.skips), (24, 0, 0));
        let rep = sweep("st2", 3, 20, false).unwrap();
        assert_eq!(rep.failures, 0);
        let skipped: Vec<u64> = rep
            .results
            .iter()
            .filter(|r| r.skipped.is_some())
            .map(|r| r.p)
            .collect();
        assert_eq!(skipped, vec![3, 5]);
        let rep = sweep("J1a", 100, 10, true).unwrap();
        assert!(rep.results.is_empty());
        assert!(matches!(
            sweep("NOPE", 3, 10, true),
            Err(SuiteError::UnknownCheckId(_))
        ));
    }

    #[test]
    fn parallel_and_serial_agree() {
        let a = sweep("zu2", 3, 200, true).unwrap();
        let b = sweep("zu2", 3, 200, false).unwrap();
        assert_eq!(a.results, b.results);
    }

    #[test]
    fn lemma_sweeps_small() {
        for id in [
            "st1",
            "st2",
            "st3",
            "st3-3",
            "st4",
            "st5",
            "st4-1@m=1",
            "st4-1@m=2",
            "st4-1@m=3",
            "st4-1@m=1/2",
            "M0@x=-8",
            "M0@x=-3",
            "M0@x=8/9",
            "M0@x=5/9",
            "M1@x=2",
            "M1@x=1/3",
            "M1@x=-8",
            "M2@x=2",
            "M2@x=1/3",
            "M2@x=-8",
            "harmonic",
            "residue-system",
        ] {
            let rep = sweep(id, 3, 60, true).unwrap();
            assert_eq!(rep.failures, 0, "{}: {:?}", id, rep.results);
            assert!(rep.passes > 0, "{}", id);
        }
    }

    #[test]
    fn oracle_check_matches_run_check_spot() {
        for (id, p) in [
            ("st4", 13),
            ("M0@x=8/9", 11),
            ("residue-system", 13),
            ("J2", 7),
        ] {
            let fast = run_check(id, p).unwrap();
            let exact = oracle_check(id, p).unwrap();
            assert_eq!(
                (fast.lhs, fast.rhs, fast.pass),
                (exact.lhs, exact.rhs, exact.pass),
                "{}",
                id
            );
        }
    }

    #[test]
    fn st4_st5_consistency_sweep() {
        for p in primes_in(3, 500) {
            let (lhs, rhs) = st4_st5_consistency(p).unwrap();
            assert_eq!(lhs, rhs, "p={}", p);
        }
    }

    #[test]
    fn verify_all_small() {
        let reports = verify_all(40, true).unwrap();
        assert_eq!(reports.len(), 37);
        for rep in &reports {
            assert_eq!(rep.failures, 0, "{}", rep.id);
        }
    }

    #[test]
    fn primes_in_examples() {
        assert_eq!(primes_in(3, 20), vec![3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_in(100, 10), Vec::<u64>::new());
        assert_eq!(primes_in(2, 2), vec![2]);
    }
}
