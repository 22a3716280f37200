//! Numerical series laboratory.
//!
//! Two registered series are evaluated to arbitrary decimal precision: a
//! convergent 1/π² series at z = −1/4 and a unit-circle series over ℚ(√−7)
//! whose limit is √7/π. Term generation is exact rational arithmetic; only
//! the accumulation (and the Wynn acceleration table for |z| = 1) runs in
//! fixed-point. The module also checks the quadratic hypergeometric
//! transformation numerically and implements the τ-duality on parameter
//! points.

pub mod fixed;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::oracle::big_ratio;
use fixed::{pi, pow10, sqrt_int, FixedComplex, FixedPoint};

/// Exact element u + v·√−7 of the field ℚ(√−7).
#[derive(Clone, Debug, PartialEq)]
pub struct QAdj7 {
    pub u: BigRational,
    pub v: BigRational,
}

impl QAdj7 {
    pub fn new(u: BigRational, v: BigRational) -> QAdj7 {
        QAdj7 { u, v }
    }

    pub fn rational(u: Rational64) -> QAdj7 {
        QAdj7 {
            u: big_ratio(u),
            v: BigRational::zero(),
        }
    }

    pub fn zero() -> QAdj7 {
        QAdj7 {
            u: BigRational::zero(),
            v: BigRational::zero(),
        }
    }

    pub fn one() -> QAdj7 {
        QAdj7 {
            u: BigRational::one(),
            v: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.v.is_zero()
    }

    pub fn add(&self, o: &QAdj7) -> QAdj7 {
        QAdj7 {
            u: &self.u + &o.u,
            v: &self.v + &o.v,
        }
    }

    pub fn mul(&self, o: &QAdj7) -> QAdj7 {
        QAdj7 {
            u: &self.u * &o.u - BigRational::from(BigInt::from(7)) * &self.v * &o.v,
            v: &self.u * &o.v + &self.v * &o.u,
        }
    }

    pub fn scale(&self, r: &BigRational) -> QAdj7 {
        QAdj7 {
            u: &self.u * r,
            v: &self.v * r,
        }
    }

    /// Squared complex modulus u² + 7v².
    pub fn norm_sqr(&self) -> BigRational {
        &self.u * &self.u + BigRational::from(BigInt::from(7)) * &self.v * &self.v
    }

    fn to_fixed_with(&self, scale: usize, sqrt7: &FixedPoint) -> FixedComplex {
        FixedComplex {
            re: FixedPoint::from_ratio(&self.u, scale),
            im: sqrt7.mul_ratio(&self.v),
        }
    }

    pub fn to_fixed(&self, scale: usize) -> FixedComplex {
        if self.v.is_zero() {
            return FixedComplex::real(FixedPoint::from_ratio(&self.u, scale));
        }
        self.to_fixed_with(scale, &sqrt_int(7, scale))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetTag {
    EightOverPi2,
    Sqrt7OverPi,
}

/// A weighted hypergeometric series Σ_n (a + bn + cn²)·A_n·zⁿ where
/// A_{n+1}/A_n = ∏(num_i + n)/∏(den_j + n).
#[derive(Clone, Debug)]
pub struct SeriesSpec {
    pub id: &'static str,
    pub num_params: Vec<Rational64>,
    pub den_params: Vec<Rational64>,
    pub weight: (QAdj7, QAdj7, QAdj7),
    pub z: QAdj7,
    pub alternating: bool,
    pub target: TargetTag,
}

pub const SERIES_IDS: [&str; 2] = ["guillera-8pi2", "sqrt7-pi"];

fn q7(un: i64, ud: i64, vn: i64, vd: i64) -> QAdj7 {
    QAdj7::new(
        BigRational::new(BigInt::from(un), BigInt::from(ud)),
        BigRational::new(BigInt::from(vn), BigInt::from(vd)),
    )
}

pub fn series_spec(id: &str) -> Option<SeriesSpec> {
    let h = Rational64::new(1, 2);
    let one = Rational64::one();
    match id {
        "guillera-8pi2" => Some(SeriesSpec {
            id: "guillera-8pi2",
            num_params: vec![h; 5],
            den_params: vec![one; 5],
            weight: (q7(1, 1, 0, 1), q7(8, 1, 0, 1), q7(20, 1, 0, 1)),
            z: q7(-1, 4, 0, 1),
            alternating: true,
            target: TargetTag::EightOverPi2,
        }),
        "sqrt7-pi" => Some(SeriesSpec {
            id: "sqrt7-pi",
            num_params: vec![h; 3],
            den_params: vec![one; 3],
            weight: (q7(49, 64, -13, 64), q7(105, 32, -21, 32), QAdj7::zero()),
            z: q7(47, 128, 45, 128),
            alternating: false,
            target: TargetTag::Sqrt7OverPi,
        }),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("acceleration did not reach the requested tolerance")]
    NoConvergence,
    #[error("duality undefined where 4·tau² = (k+1)²")]
    SingularDuality,
}

#[derive(Clone, Debug)]
pub struct SeriesValue {
    /// Computed limit, carried at a few guard digits beyond the request.
    pub value: FixedComplex,
    /// Estimated absolute error, including the output rounding allowance.
    pub error: f64,
    pub terms: usize,
}

/// Values are returned at this scale so the guard digits keep the output
/// rounding well below the requested 10^(-digits) error budget.
fn out_scale(digits: usize) -> usize {
    digits + 6
}

fn rounding_allowance(digits: usize) -> f64 {
    2.0 * 10f64.powi(-(out_scale(digits).min(300) as i32))
}

fn param_ratio(spec: &SeriesSpec, n: u64) -> BigRational {
    let nb = BigRational::from(BigInt::from(n));
    let mut r = BigRational::one();
    for a in &spec.num_params {
        r *= big_ratio(*a) + &nb;
    }
    for b in &spec.den_params {
        r /= big_ratio(*b) + &nb;
    }
    r
}

fn weight_at(spec: &SeriesSpec, n: u64) -> QAdj7 {
    let nb = BigRational::from(BigInt::from(n));
    let n2 = &nb * &nb;
    spec.weight
        .0
        .add(&spec.weight.1.scale(&nb))
        .add(&spec.weight.2.scale(&n2))
}

/// Evaluate a registered series to the requested number of decimal digits.
/// |z| < 1 runs the direct exact-term sum with a geometric tail bound;
/// |z| = 1 (z ≠ 1) runs Wynn-epsilon acceleration on exact partial sums.
pub fn eval_series(spec: &SeriesSpec, digits: usize) -> Result<SeriesValue, SeriesError> {
    assert!(digits >= 1, "need at least one digit");
    let n2 = spec.z.norm_sqr();
    assert!(n2 <= BigRational::one(), "|z| <= 1 required");
    if n2 == BigRational::one() {
        if spec.z == QAdj7::one() {
            return Err(SeriesError::NoConvergence);
        }
        eval_accelerated(spec, digits)
    } else {
        Ok(eval_direct(spec, digits))
    }
}

fn eval_direct(spec: &SeriesSpec, digits: usize) -> SeriesValue {
    let thresh = BigRational::new(BigInt::one(), pow10(digits + 6));
    let thresh2 = &thresh * &thresh;
    let zmag = spec.z.norm_sqr();
    let mut sum = QAdj7::zero();
    let mut core = QAdj7::one();
    let mut n = 0u64;
    let mut tail = 0.0f64;
    loop {
        sum = sum.add(&weight_at(spec, n).mul(&core));
        core = core.mul(&spec.z).scale(&param_ratio(spec, n));
        n += 1;
        if core.is_zero() {
            break;
        }
        let next = weight_at(spec, n).mul(&core);
        let next2 = next.norm_sqr();
        if n >= 8 && !next2.is_zero() && next2 < thresh2 {
            // successive term ratios decrease toward |z| here, so the first
            // omitted term bounds the tail geometrically
            let after = weight_at(spec, n + 1)
                .mul(&core.mul(&spec.z).scale(&param_ratio(spec, n)))
                .norm_sqr();
            let rho = ratio_f64(&after, &next2).sqrt().max(to_f64(&zmag).sqrt());
            if rho < 0.995 {
                tail = to_f64(&next2).sqrt() / (1.0 - rho);
                break;
            }
        }
        assert!(n < 1_000_000, "series failed to converge numerically");
    }
    SeriesValue {
        value: sum.to_fixed(out_scale(digits)),
        error: tail.max(1e-300) + rounding_allowance(digits),
        terms: n as usize,
    }
}

fn to_f64(r: &BigRational) -> f64 {
    FixedPoint::from_ratio(r, 320).to_f64()
}

fn ratio_f64(a: &BigRational, b: &BigRational) -> f64 {
    to_f64(&(a / b))
}

fn eval_accelerated(spec: &SeriesSpec, digits: usize) -> Result<SeriesValue, SeriesError> {
    let scale = digits + 30;
    let n_sums = 360u64;
    let mut partials = Vec::with_capacity(n_sums as usize);
    let mut acc = QAdj7::zero();
    let mut core = QAdj7::one();
    for n in 0..n_sums {
        acc = acc.add(&weight_at(spec, n).mul(&core));
        partials.push(acc.clone());
        core = core.mul(&spec.z).scale(&param_ratio(spec, n));
    }
    let sqrt7 = sqrt_int(7, scale);
    let sums: Vec<FixedComplex> = partials
        .iter()
        .map(|q| q.to_fixed_with(scale, &sqrt7))
        .collect();

    // Wynn epsilon table, kept one anti-diagonal at a time; the even columns
    // of the final diagonal are the accelerated limits
    let mut last: Vec<FixedComplex> = Vec::new();
    for (m, sm) in sums.iter().enumerate() {
        let mut cur = vec![sm.clone()];
        // a zero denominator (perfect agreement at working precision) stops
        // the column growth; later rows stay capped at that depth
        for k in 1..=m.min(last.len()) {
            let denom = cur[k - 1].sub(&last[k - 1]);
            if denom.is_zero() {
                break;
            }
            let prev = if k >= 2 {
                last[k - 2].clone()
            } else {
                FixedComplex::zero(scale)
            };
            cur.push(prev.add(&denom.recip()));
        }
        last = cur;
    }

    // pick the even column agreeing best with its predecessor
    let mut best: Option<(FixedPoint, usize)> = None;
    for k in (2..last.len()).step_by(2) {
        let d = last[k].sub(&last[k - 2]).norm_sqr();
        if best
            .as_ref()
            .is_none_or(|(bd, _)| d.cmp_abs(bd) == std::cmp::Ordering::Less)
        {
            best = Some((d, k));
        }
    }
    let (agree2, k_best) = best.ok_or(SeriesError::NoConvergence)?;
    let agreement = agree2.to_f64().max(0.0).sqrt();
    let floor = 10f64.powi(-(scale.min(300) as i32 - 6));
    let est = 10.0 * agreement + floor;
    if est > 1e-6 {
        return Err(SeriesError::NoConvergence);
    }
    Ok(SeriesValue {
        value: last[k_best].rescale(out_scale(digits)),
        error: est + rounding_allowance(digits),
        terms: n_sums as usize,
    })
}

/// High-precision value of a registered limit.
pub fn target_value(tag: TargetTag, digits: usize) -> FixedPoint {
    let work = digits + 8;
    match tag {
        TargetTag::EightOverPi2 => {
            let p = pi(work);
            FixedPoint::from_int(8, work)
                .div(&p.mul(&p))
                .rescale(digits)
        }
        TargetTag::Sqrt7OverPi => sqrt_int(7, work).div(&pi(work)).rescale(digits),
    }
}

fn gauss_sum(num: &[Rational64], den: &[Rational64], z: &BigRational, scale: usize) -> FixedPoint {
    let mut t = FixedPoint::one(scale);
    let mut s = FixedPoint::zero(scale);
    let mut n = 0i64;
    loop {
        s = &s + &t;
        let mut r = z.clone();
        for a in num {
            r *= big_ratio(*a) + BigRational::from(BigInt::from(n));
        }
        for b in den {
            r /= big_ratio(*b) + BigRational::from(BigInt::from(n));
        }
        r /= BigRational::from(BigInt::from(n + 1));
        t = t.mul_ratio(&r);
        n += 1;
        if n > 8 && t.to_f64().abs() < 1e-25 {
            break;
        }
        assert!(n < 400_000, "hypergeometric sum failed to converge");
    }
    s
}

/// Check ₃F₂(½,½,½;1,1;z) = (1−z)^(−1/2) ₃F₂(¼,½,¾;1,1;−4z/(1−z)²)
/// numerically for −1 < z < 0, to better than 1e−12.
pub fn quadratic_transform_check(z: Rational64) -> bool {
    assert!(
        z < Rational64::zero() && z > Rational64::new(-1, 1),
        "need -1 < z < 0"
    );
    let scale = 30usize;
    let h = Rational64::new(1, 2);
    let q = Rational64::new(1, 4);
    let tq = Rational64::new(3, 4);
    let one = Rational64::one();
    let zb = big_ratio(z);
    let lhs = gauss_sum(&[h, h, h], &[one, one], &zb, scale);
    let omz = BigRational::one() - &zb;
    let w = BigRational::from(BigInt::from(-4)) * &zb / (&omz * &omz);
    let fac = FixedPoint::one(scale).div(&FixedPoint::from_ratio(&omz, scale).sqrt());
    let rhs = fac.mul(&gauss_sum(&[q, h, tq], &[one, one], &w, scale));
    (&lhs - &rhs).to_f64().abs() < 1e-12
}

/// A (τ, k, z; a, b, c) parameter point of the duality, normalized so that
/// the series Σ A_n (a + bn + cn²) zⁿ has limit 1/π² and τ² = c²/(1 + z).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualityPoint {
    pub tau: f64,
    pub k: f64,
    pub z: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl DualityPoint {
    pub fn normalization_consistent(&self) -> bool {
        (self.tau * self.tau - self.c * self.c / (1.0 + self.z)).abs() < 1e-12
    }
}

/// Pairing identity between a point and its dual: (k₁+1)(k₂+1) + 8 = 4τ₁τ₂.
pub fn ktau_identity(p1: &DualityPoint, p2: &DualityPoint) -> bool {
    ((p1.k + 1.0) * (p2.k + 1.0) + 8.0 - 4.0 * p1.tau * p2.tau).abs() < 1e-12
}

/// Map a parameter point to its dual under z ↦ 1/z.
pub fn duality_map(src: &DualityPoint) -> Result<DualityPoint, SeriesError> {
    assert!(src.z > 0.0, "z must be positive");
    let kp = src.k + 1.0;
    let den = 4.0 * src.tau * src.tau - kp * kp;
    if den.abs() < 1e-9 {
        return Err(SeriesError::SingularDuality);
    }
    let k2p = 8.0 * kp / den;
    let tau2 = k2p * src.tau / kp;
    let r = tau2 / src.tau;
    let sz = src.z.sqrt();
    let dst = DualityPoint {
        tau: tau2,
        k: k2p - 1.0,
        z: 1.0 / src.z,
        a: r * (src.c - 2.0 * src.b + 4.0 * src.a) / (4.0 * sz),
        b: r * (src.c - src.b) / sz,
        c: r * src.c / sz,
    };
    debug_assert!(ktau_identity(src, &dst));
    Ok(dst)
}

/// The τ=√5 point and its dual carry quadratic weights whose scaled forms
/// are the integer polynomials 20n²+8n+1 and 10n²+6n+1; checked exactly.
pub fn duality_weight_identity() -> bool {
    let r = Rational64::new;
    let scaled = |s: i64, a: Rational64, b: Rational64, c: Rational64| {
        (
            Rational64::from_integer(s) * a,
            Rational64::from_integer(s) * b,
            Rational64::from_integer(s) * c,
        )
    };
    scaled(8, r(1, 8), r(1, 1), r(5, 2)) == (r(1, 1), r(8, 1), r(20, 1))
        && scaled(4, r(1, 4), r(3, 2), r(5, 2)) == (r(1, 1), r(6, 1), r(10, 1))
}
