//! Incremental evaluation of truncated hypergeometric sums modulo p^K.
//!
//! Each congruence instance is a data entry: Pochhammer parameters, a
//! quadratic weight, the argument z, the truncation limit, and the expected
//! right-hand side A·(D/p)·p^e. The evaluator walks the term-ratio recurrence
//! term_{n+1} = term_n·∏(a_i+n)/∏(b_j+n)·z in valuation-tracked form, so a
//! single pass yields the exact residue.

use crate::padic::{legendre, PadicCtx, PadicError, PadicInt, ValUnit, Valuation};
use num_rational::Rational64;
use thiserror::Error;

pub(crate) const fn r64(n: i64, d: i64) -> Rational64 {
    Rational64::new_raw(n, d)
}

/// Truncation bound of the sum: n ≤ p−1 or n ≤ (p−1)/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Full,
    Half,
}

impl Limit {
    pub fn top(self, p: u64) -> u64 {
        match self {
            Limit::Full => p - 1,
            Limit::Half => (p - 1) / 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Proven,
    Conjectural,
}

/// Expected residue A·(D/p)·p^e, with Legendre factor 1 when D is absent.
#[derive(Debug, Clone, Copy)]
pub struct Rhs {
    pub a: Rational64,
    pub disc: Option<Rational64>,
    pub e: u32,
}

/// One truncated-sum congruence: Σ W(n)·∏(a_i)_n/∏(b_j)_n·z^n ≡ rhs (mod p^K).
#[derive(Debug, Clone, Copy)]
pub struct CongruenceSpec {
    pub id: &'static str,
    pub num_params: &'static [Rational64],
    pub den_params: &'static [Rational64],
    pub weight: (i64, i64, i64),
    pub z: Rational64,
    pub mod_exp: u32,
    pub rhs: Rhs,
    pub p_min: u64,
    pub limit: Limit,
    pub status: Status,
}

const H: Rational64 = r64(1, 2);
const H3: [Rational64; 3] = [H, H, H];
const H5: [Rational64; 5] = [H, H, H, H, H];
const HQ: [Rational64; 3] = [H, r64(1, 4), r64(3, 4)];
const HT: [Rational64; 3] = [H, r64(1, 3), r64(2, 3)];
const HTQ: [Rational64; 5] = [H, r64(1, 3), r64(2, 3), r64(1, 4), r64(3, 4)];
const ONE3: [Rational64; 3] = [r64(1, 1), r64(1, 1), r64(1, 1)];
const ONE5: [Rational64; 5] = [r64(1, 1); 5];

const fn rhs(a: i64, disc: Option<Rational64>, e: u32) -> Rhs {
    Rhs {
        a: r64(a, 1),
        disc,
        e,
    }
}

/// The registered congruence instances.
pub static SPECS: [CongruenceSpec; 15] = [
    CongruenceSpec {
        id: "J1a",
        num_params: &H3,
        den_params: &ONE3,
        weight: (1, 3, 0),
        z: r64(4, 1),
        mod_exp: 3,
        rhs: rhs(1, None, 1),
        p_min: 3,
        limit: Limit::Full,
        status: Status::Proven,
    },
    CongruenceSpec {
        id: "J1",
        num_params: &H3,
        den_params: &ONE3,
        weight: (1, 3, 0),
        z: r64(4, 1),
        mod_exp: 3,
        rhs: rhs(1, None, 1),
        p_min: 3,
        limit: Limit::Half,
        status: Status::Proven,
    },
    CongruenceSpec {
        id: "J2a",
        num_params: &H5,
        den_params: &ONE5,
        weight: (1, 6, 10),
        z: r64(-4, 1),
        mod_exp: 5,
        rhs: rhs(1, None, 2),
        p_min: 5,
        limit: Limit::Full,
        status: Status::Proven,
    },
    CongruenceSpec {
        id: "J2",
        num_params: &H5,
        den_params: &ONE5,
        weight: (1, 6, 10),
        z: r64(-4, 1),
        mod_exp: 5,
        rhs: rhs(1, None, 2),
        p_min: 5,
        limit: Limit::Half,
        status: Status::Proven,
    },
    CongruenceSpec {
        id: "zu3",
        num_params: &H3,
        den_params: &ONE3,
        weight: (1, 3, 0),
        z: r64(-8, 1),
        mod_exp: 3,
        rhs: rhs(1, Some(r64(-1, 1)), 1),
        p_min: 3,
        limit: Limit::Full,
        status: Status::Proven,
    },
    CongruenceSpec {
        id: "zu3-half",
        num_params: &H3,
        den_params: &ONE3,
        weight: (1, 3, 0),
        z: r64(-8, 1),
        mod_exp: 3,
        rhs: rhs(1, Some(r64(-1, 1)), 1),
        p_min: 3,
        limit: Limit::Half,
        status: Status::Proven,
    },
    // same sum as zu3; the sign (−1)^((p−1)/2) equals the symbol (−1/p)
    CongruenceSpec {
        id: "J4",
        num_params: &H3,
        den_params: &ONE3,
        weight: (1, 3, 0),
        z: r64(-8, 1),
        mod_exp: 3,
        rhs: rhs(1, Some(r64(-1, 1)), 1),
        p_min: 3,
        limit: Limit::Full,
        status: Status::Proven,
    },
    CongruenceSpec {
        id: "zu2",
        num_params: &H3,
        den_params: &ONE3,
        weight: (8, 21, 0),
        z: r64(64, 1),
        mod_exp: 3,
        rhs: rhs(8, None, 1),
        p_min: 3,
        limit: Limit::Full,
        status: Status::Proven,
    },
    CongruenceSpec {
        id: "zu2-half",
        num_params: &H3,
        den_params: &ONE3,
        weight: (8, 21, 0),
        z: r64(64, 1),
        mod_exp: 3,
        rhs: rhs(8, None, 1),
        p_min: 3,
        limit: Limit::Half,
        status: Status::Proven,
    },
    CongruenceSpec {
        id: "zu4",
        num_params: &HQ,
        den_params: &ONE3,
        weight: (1, 5, 0),
        z: r64(-16, 9),
        mod_exp: 3,
        rhs: rhs(1, Some(r64(-3, 1)), 1),
        p_min: 5,
        limit: Limit::Full,
        status: Status::Conjectural,
    },
    CongruenceSpec {
        id: "zun",
        num_params: &HQ,
        den_params: &ONE3,
        weight: (8, 35, 0),
        z: r64(256, 81),
        mod_exp: 3,
        rhs: rhs(8, None, 1),
        p_min: 5,
        limit: Limit::Full,
        status: Status::Conjectural,
    },
    CongruenceSpec {
        id: "zu5",
        num_params: &HT,
        den_params: &ONE3,
        weight: (3, 11, 0),
        z: r64(27, 16),
        mod_exp: 3,
        rhs: rhs(3, None, 1),
        p_min: 3,
        limit: Limit::Full,
        status: Status::Conjectural,
    },
    CongruenceSpec {
        id: "5F4-zu2",
        num_params: &H5,
        den_params: &ONE5,
        weight: (32, 160, 205),
        z: r64(-1024, 1),
        mod_exp: 5,
        rhs: rhs(32, None, 2),
        p_min: 5,
        limit: Limit::Full,
        status: Status::Conjectural,
    },
    CongruenceSpec {
        id: "5F4-zu2-half",
        num_params: &H5,
        den_params: &ONE5,
        weight: (32, 160, 205),
        z: r64(-1024, 1),
        mod_exp: 5,
        rhs: rhs(32, None, 2),
        p_min: 5,
        limit: Limit::Half,
        status: Status::Conjectural,
    },
    CongruenceSpec {
        id: "5F4-zu4",
        num_params: &HTQ,
        den_params: &ONE5,
        weight: (9, 75, 172),
        z: r64(-27, 16),
        mod_exp: 5,
        rhs: rhs(9, None, 2),
        p_min: 3,
        limit: Limit::Full,
        status: Status::Conjectural,
    },
];

/// Full/half sibling ids whose residues must agree mod p^K.
pub const HALF_FULL_PAIRS: [(&str, &str); 5] = [
    ("J1a", "J1"),
    ("J2a", "J2"),
    ("zu2", "zu2-half"),
    ("zu3", "zu3-half"),
    ("5F4-zu2", "5F4-zu2-half"),
];

pub fn spec(id: &str) -> Option<&'static CongruenceSpec> {
    SPECS.iter().find(|s| s.id == id)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// p divides a parameter denominator or the numerator/denominator of z;
    /// the fast recurrence cannot run and the caller must use the exact oracle.
    #[error("parameters not p-integral at p = {0}")]
    NotPIntegralParams(u64),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

fn admissible(spec: &CongruenceSpec, p: u64) -> bool {
    let div = |v: i64| v.unsigned_abs().is_multiple_of(p);
    spec.num_params
        .iter()
        .chain(spec.den_params)
        .all(|a| !div(*a.denom()))
        && !div(*spec.z.numer())
        && !div(*spec.z.denom())
}

/// Truncated sum mod p^K via the term-ratio recurrence.
///
/// Terms have non-decreasing valuation (all divisions within the range are by
/// p-units), so the loop stops as soon as the valuation reaches K.
pub fn eval_sum_mod(spec: &CongruenceSpec, p: u64) -> Result<PadicInt, EvalError> {
    let ctx = PadicCtx::new(p, spec.mod_exp)?;
    if !admissible(spec, p) {
        return Err(EvalError::NotPIntegralParams(p));
    }
    let (w0, w1, w2) = spec.weight;
    let top = spec.limit.top(p);
    let mut term = ValUnit::one(ctx);
    let mut acc = ctx.zero();
    let mut prev_val = Valuation::Finite(0);
    for n in 0..=top {
        debug_assert!(
            term.valuation() >= prev_val,
            "term valuation must not decrease"
        );
        prev_val = term.valuation();
        match term.valuation() {
            Valuation::Infinite => break,
            Valuation::Finite(v) if v >= spec.mod_exp => break,
            _ => {}
        }
        let ni = n as i64;
        let w = w0 + w1 * ni + w2 * ni * ni;
        acc = acc + term.to_residue() * ctx.int(w);
        if n == top {
            break;
        }
        for a in spec.num_params {
            term = term
                .mul_int(a.numer() + ni * a.denom())
                .div_int(*a.denom())
                .expect("unit");
        }
        let mut cached: Option<(i64, ValUnit)> = None;
        for b in spec.den_params {
            let f = b.numer() + ni * b.denom();
            let inv = match cached {
                Some((g, inv)) if g == f => inv,
                _ => {
                    let inv = ValUnit::one(ctx)
                        .div(ValUnit::from_int(ctx, f))
                        .expect("recurrence divides by p-units only");
                    cached = Some((f, inv));
                    inv
                }
            };
            term = term.mul(inv).mul_int(*b.denom());
        }
        term = term
            .mul_int(*spec.z.numer())
            .div_int(*spec.z.denom())
            .expect("unit");
    }
    Ok(acc)
}

/// Expected residue A·(D/p)·p^e mod p^K.
pub fn rhs_residue(spec: &CongruenceSpec, p: u64) -> Result<PadicInt, EvalError> {
    let ctx = PadicCtx::new(p, spec.mod_exp)?;
    let a = ctx.from_ratio(spec.rhs.a)?;
    let pe = ctx.int(p as i64).pow(spec.rhs.e as u64);
    let sign = match spec.rhs.disc {
        Some(d) => legendre(*d.numer(), *d.denom(), p)?,
        None => 1,
    };
    Ok(a * pe * ctx.int(sign as i64))
}

/// True when a full/half sibling pair reduces to the same residue at p.
pub fn half_full_agree(
    full: &CongruenceSpec,
    half: &CongruenceSpec,
    p: u64,
) -> Result<bool, EvalError> {
    Ok(eval_sum_mod(full, p)? == eval_sum_mod(half, p)?)
}
