//! Arithmetic modulo odd prime powers p^k with explicit valuation tracking.
//!
//! Residues live in `u128`. Products take a single-word fast path whenever the
//! modulus fits in a `u64` and fall back to multi-word arithmetic above that,
//! so results stay exact over the whole supported range (p <= 10^5, k <= 5,
//! moduli up to 10^25).

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use thiserror::Error;

/// Errors raised by modulus construction and unit arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("p = {0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("exponent k = {0} outside 1..=5")]
    BadExponent(u32),
    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(u128, u64),
    #[error("denominator divisible by p = {0}")]
    BadDenominator(u64),
    #[error("division by p-adic zero")]
    DivByZero,
    #[error("negative valuation in division")]
    NegativeValuation,
    #[error("value is not p-integral at p = {0}")]
    NotPIntegral(u64),
}

/// Deterministic trial-division primality test; cheap over the supported range.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Modulus context p^k for an odd prime p and exponent 1 <= k <= 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicCtx {
    p: u64,
    k: u32,
    pk: u128,
}

impl PadicCtx {
    pub fn new(p: u64, k: u32) -> Result<Self, PadicError> {
        if !is_odd_prime(p) {
            return Err(PadicError::NotAnOddPrime(p));
        }
        if !(1..=5).contains(&k) {
            return Err(PadicError::BadExponent(k));
        }
        let pk = (0..k).fold(1u128, |m, _| m * p as u128);
        Ok(PadicCtx { p, k, pk })
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn k(self) -> u32 {
        self.k
    }

    pub fn modulus(self) -> u128 {
        self.pk
    }

    /// Canonical residue of a signed integer.
    pub fn int(self, v: i64) -> PadicInt {
        let m = self.pk;
        let r = (v as i128).rem_euclid(m as i128) as u128;
        PadicInt { ctx: self, r }
    }

    /// Canonical residue of an unsigned value already below any bound.
    pub fn residue(self, r: u128) -> PadicInt {
        PadicInt {
            ctx: self,
            r: r % self.pk,
        }
    }

    pub fn zero(self) -> PadicInt {
        PadicInt { ctx: self, r: 0 }
    }

    pub fn one(self) -> PadicInt {
        PadicInt {
            ctx: self,
            r: 1 % self.pk,
        }
    }

    /// num/den reduced mod p^k; the denominator must be a p-unit.
    pub fn from_rational(self, num: i64, den: i64) -> Result<PadicInt, PadicError> {
        if den == 0 {
            return Err(PadicError::DivByZero);
        }
        if den.unsigned_abs().is_multiple_of(self.p) {
            return Err(PadicError::BadDenominator(self.p));
        }
        Ok(self.int(num) * self.int(den).inv().expect("denominator is a unit"))
    }

    pub fn from_ratio(self, q: Rational64) -> Result<PadicInt, PadicError> {
        self.from_rational(*q.numer(), *q.denom())
    }
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(a < m && b < m);
    if m <= u64::MAX as u128 {
        (a * b) % m
    } else {
        let r = BigUint::from(a) * BigUint::from(b) % BigUint::from(m);
        r.to_u128().expect("remainder fits the u128 modulus")
    }
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i64) as u64
}

/// Canonical residue in [0, p^k).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicInt {
    ctx: PadicCtx,
    r: u128,
}

impl PadicInt {
    pub fn ctx(self) -> PadicCtx {
        self.ctx
    }

    pub fn residue(self) -> u128 {
        self.r
    }

    pub fn is_zero(self) -> bool {
        self.r == 0
    }

    pub fn pow(self, mut e: u64) -> PadicInt {
        let m = self.ctx.pk;
        let mut base = self.r;
        let mut acc = 1u128 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, base, m);
            }
            base = mul_mod(base, base, m);
            e >>= 1;
        }
        PadicInt {
            ctx: self.ctx,
            r: acc,
        }
    }

    /// Multiplicative inverse: extended Euclid mod p, then Newton lift to p^k.
    pub fn inv(self) -> Result<PadicInt, PadicError> {
        let p = self.ctx.p;
        if self.r.is_multiple_of(p as u128) {
            return Err(PadicError::NotAUnit(self.r, p));
        }
        let m = self.ctx.pk;
        let mut x = inv_mod_p((self.r % p as u128) as u64, p) as u128;
        // three lifts give correctness mod p^8, covering k <= 5
        for _ in 0..3 {
            let ax = mul_mod(self.r % m, x, m);
            let t = (2 + m - ax) % m;
            x = mul_mod(x, t, m);
        }
        debug_assert_eq!(mul_mod(self.r, x, m), 1 % m);
        Ok(PadicInt {
            ctx: self.ctx,
            r: x,
        })
    }

    /// Exact division by p: maps a residue divisible by p mod p^k to mod p^(k-1).
    pub fn exact_div_by_p(self) -> Result<PadicInt, PadicError> {
        let p = self.ctx.p;
        if !self.r.is_multiple_of(p as u128) {
            return Err(PadicError::NotPIntegral(p));
        }
        let ctx = PadicCtx::new(p, self.ctx.k - 1)?;
        Ok(ctx.residue(self.r / p as u128))
    }
}

impl std::ops::Add for PadicInt {
    type Output = PadicInt;
    fn add(self, rhs: PadicInt) -> PadicInt {
        assert_eq!(self.ctx, rhs.ctx, "mixed moduli");
        let m = self.ctx.pk;
        let mut r = self.r + rhs.r;
        if r >= m {
            r -= m;
        }
        PadicInt { ctx: self.ctx, r }
    }
}

impl std::ops::Sub for PadicInt {
    type Output = PadicInt;
    fn sub(self, rhs: PadicInt) -> PadicInt {
        assert_eq!(self.ctx, rhs.ctx, "mixed moduli");
        let m = self.ctx.pk;
        let r = if self.r >= rhs.r {
            self.r - rhs.r
        } else {
            self.r + m - rhs.r
        };
        PadicInt { ctx: self.ctx, r }
    }
}

impl std::ops::Mul for PadicInt {
    type Output = PadicInt;
    fn mul(self, rhs: PadicInt) -> PadicInt {
        assert_eq!(self.ctx, rhs.ctx, "mixed moduli");
        PadicInt {
            ctx: self.ctx,
            r: mul_mod(self.r, rhs.r, self.ctx.pk),
        }
    }
}

impl std::ops::Neg for PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        let r = if self.r == 0 { 0 } else { self.ctx.pk - self.r };
        PadicInt { ctx: self.ctx, r }
    }
}

impl std::fmt::Display for PadicInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.r, self.ctx.pk)
    }
}

/// Legendre symbol (a/p) of a rational a = num/den via Euler's criterion.
pub fn legendre(num: i64, den: i64, p: u64) -> Result<i32, PadicError> {
    let ctx = PadicCtx::new(p, 1)?;
    if den == 0 {
        return Err(PadicError::DivByZero);
    }
    if den.unsigned_abs().is_multiple_of(p) {
        return Err(PadicError::BadDenominator(p));
    }
    let r = ctx.from_rational(num, den)?;
    if r.is_zero() {
        return Ok(0);
    }
    let e = r.pow((p - 1) / 2).residue();
    Ok(if e == 1 { 1 } else { -1 })
}

/// Fermat quotient value q_p(x) in [0, p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fq {
    pub p: u64,
    pub value: u64,
}

/// q_p(x) = (x^(p-1) - 1)/p mod p for a rational x with x and 1/x p-integral.
pub fn fermat_quotient(x: Rational64, p: u64) -> Result<Fq, PadicError> {
    let ctx = PadicCtx::new(p, 2)?;
    if x.numer().unsigned_abs().is_multiple_of(p) {
        return Err(PadicError::NotAUnit(x.numer().unsigned_abs() as u128, p));
    }
    if x.denom().unsigned_abs().is_multiple_of(p) {
        return Err(PadicError::NotAUnit(x.denom().unsigned_abs() as u128, p));
    }
    let r = ctx.from_ratio(x)?;
    let t = r.pow(p - 1) - ctx.one();
    let q = t.exact_div_by_p().expect("Fermat's little theorem");
    Ok(Fq {
        p,
        value: q.residue() as u64,
    })
}

/// p-adic valuation with an infinity sentinel for exact zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

/// A p-adic number p^v * u with the unit part tracked mod p^k.
///
/// Keeping the unit to full precision p^k (instead of p^(k-v)) means the
/// represented value is known mod p^(k+v), so `to_residue` is always exact.
#[derive(Debug, Clone, Copy)]
pub struct ValUnit {
    ctx: PadicCtx,
    val: Valuation,
    unit: u128,
}

impl ValUnit {
    pub fn one(ctx: PadicCtx) -> ValUnit {
        ValUnit {
            ctx,
            val: Valuation::Finite(0),
            unit: 1 % ctx.pk,
        }
    }

    pub fn zero(ctx: PadicCtx) -> ValUnit {
        ValUnit {
            ctx,
            val: Valuation::Infinite,
            unit: 1 % ctx.pk,
        }
    }

    /// Splits a signed integer into p-valuation and unit part.
    pub fn from_int(ctx: PadicCtx, n: i64) -> ValUnit {
        if n == 0 {
            return ValUnit::zero(ctx);
        }
        let (v, u) = split_p(ctx, n);
        ValUnit {
            ctx,
            val: Valuation::Finite(v),
            unit: u,
        }
    }

    pub fn ctx(self) -> PadicCtx {
        self.ctx
    }

    pub fn valuation(self) -> Valuation {
        self.val
    }

    pub fn is_zero(self) -> bool {
        self.val == Valuation::Infinite
    }

    /// Unit part as a residue mod p^k (1 for exact zero).
    pub fn unit(self) -> PadicInt {
        PadicInt {
            ctx: self.ctx,
            r: self.unit,
        }
    }

    // Named methods rather than std::ops: div is fallible and mul panics on
    // mixed moduli, so the pair stays symmetric and explicit.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: ValUnit) -> ValUnit {
        assert_eq!(self.ctx, rhs.ctx, "mixed moduli");
        match (self.val, rhs.val) {
            (Valuation::Finite(a), Valuation::Finite(b)) => ValUnit {
                ctx: self.ctx,
                val: Valuation::Finite(a + b),
                unit: mul_mod(self.unit, rhs.unit, self.ctx.pk),
            },
            _ => ValUnit::zero(self.ctx),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(self, rhs: ValUnit) -> Result<ValUnit, PadicError> {
        assert_eq!(self.ctx, rhs.ctx, "mixed moduli");
        let Valuation::Finite(vb) = rhs.val else {
            return Err(PadicError::DivByZero);
        };
        let Valuation::Finite(va) = self.val else {
            return Ok(ValUnit::zero(self.ctx));
        };
        if va < vb {
            return Err(PadicError::NegativeValuation);
        }
        let inv = rhs.unit().inv().expect("unit part is invertible");
        Ok(ValUnit {
            ctx: self.ctx,
            val: Valuation::Finite(va - vb),
            unit: mul_mod(self.unit, inv.r, self.ctx.pk),
        })
    }

    pub fn mul_int(self, n: i64) -> ValUnit {
        self.mul(ValUnit::from_int(self.ctx, n))
    }

    pub fn div_int(self, n: i64) -> Result<ValUnit, PadicError> {
        self.div(ValUnit::from_int(self.ctx, n))
    }

    pub fn pow(self, e: u32) -> ValUnit {
        match self.val {
            Valuation::Infinite => {
                if e == 0 {
                    ValUnit::one(self.ctx)
                } else {
                    ValUnit::zero(self.ctx)
                }
            }
            Valuation::Finite(v) => ValUnit {
                ctx: self.ctx,
                val: Valuation::Finite(v * e),
                unit: self.unit().pow(e as u64).r,
            },
        }
    }

    /// Collapses to the canonical residue p^v * u mod p^k (zero once v >= k).
    pub fn to_residue(self) -> PadicInt {
        match self.val {
            Valuation::Infinite => self.ctx.zero(),
            Valuation::Finite(v) if v >= self.ctx.k => self.ctx.zero(),
            Valuation::Finite(v) => {
                let pv = (0..v).fold(1u128, |m, _| m * self.ctx.p as u128);
                PadicInt {
                    ctx: self.ctx,
                    r: mul_mod(pv, self.unit, self.ctx.pk),
                }
            }
        }
    }
}

fn split_p(ctx: PadicCtx, n: i64) -> (u32, u128) {
    debug_assert!(n != 0);
    let p = ctx.p;
    let mut a = n.unsigned_abs();
    let mut v = 0u32;
    while a.is_multiple_of(p) {
        a /= p;
        v += 1;
    }
    let mut u = a as u128 % ctx.pk;
    if n < 0 {
        u = ctx.pk - u;
    }
    (v, u)
}
