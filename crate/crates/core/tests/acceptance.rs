//! Acceptance suite: eight numbered criteria covering the full surface of
//! the laboratory. Each test prints exactly one PASS/FAIL line (visible with
//! `cargo test --test acceptance -- --nocapture`) and fails loudly on any
//! deviation. Tolerances and ranges are pinned here and nowhere else.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

use supercong::hypersum::{half_full_agree, spec, Status, HALF_FULL_PAIRS};
use supercong::oracle::{
    ag_identity_check, chu_vandermonde_check, reduce_mod, staver_identity_check, sum_exact,
};
use supercong::padic::PadicCtx;
use supercong::series::{
    duality_map, duality_weight_identity, eval_series, ktau_identity, quadratic_transform_check,
    series_spec, target_value, DualityPoint,
};
use supercong::suite::{oracle_check, primes_in, registry, run_check, sweep, CheckBody};
use supercong::wz::{check_pair, telescoped_j1, telescoped_j4, telescoped_lemma3, WzPair};

fn report(criterion: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "[{}] criterion {criterion} ({name}): {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} ({name}) failed: {detail}");
}

fn hyper_ids(status: Status) -> Vec<&'static str> {
    registry()
        .iter()
        .filter(|c| matches!(c.body, CheckBody::Hyper(_)) && c.status == status)
        .map(|c| c.id)
        .collect()
}

#[test]
fn criterion_1_proven_sweeps() {
    let start = Instant::now();
    let ids = hyper_ids(Status::Proven);
    let mut passes = 0;
    let mut failures = 0;
    for id in &ids {
        let rep = sweep(id, 3, 2000, true).unwrap();
        passes += rep.passes;
        failures += rep.failures;
    }
    let wall = start.elapsed();
    let ok = ids.len() == 9 && failures == 0 && wall.as_secs() < 60;
    report(
        1,
        "proven sweeps",
        ok,
        &format!(
            "{} proven checks, p <= 2000: {passes} residue equalities, {failures} failures, {wall:.2?} (< 60 s)",
            ids.len()
        ),
    );
}

#[test]
fn criterion_2_conjectural_sweeps() {
    let ids = hyper_ids(Status::Conjectural);
    let mut passes = 0;
    let mut failures = 0;
    let mut findings = Vec::new();
    for id in &ids {
        let rep = sweep(id, 3, 2000, true).unwrap();
        assert_eq!(
            rep.status,
            Status::Conjectural,
            "{id} must be marked conjectural"
        );
        passes += rep.passes;
        failures += rep.failures;
        if rep.failures > 0 {
            findings.push(*id);
        }
    }
    let distinguished = hyper_ids(Status::Proven).len() == 9 && ids.len() == 6;
    let ok = failures == 0 && distinguished;
    report(
        2,
        "conjectural sweeps",
        ok,
        &format!(
            "{} conjectural checks, p <= 2000: {passes} instances verified, {failures} failures{}; statuses kept distinct from the 9 proven checks",
            ids.len(),
            if findings.is_empty() { String::new() } else { format!(" (FINDINGS: {})", findings.join(", ")) },
        ),
    );
}

#[test]
fn criterion_3_oracle_equivalence() {
    let mut mismatches = 0u32;
    let mut compared = 0u32;
    for check in registry() {
        for p in primes_in(3, 31) {
            let fast = run_check(check.id, p).unwrap();
            let exact = oracle_check(check.id, p).unwrap();
            compared += 1;
            if fast.lhs != exact.lhs
                || fast.rhs != exact.rhs
                || fast.pass != exact.pass
                || fast.skipped.is_some() != exact.skipped.is_some()
            {
                mismatches += 1;
            }
        }
    }
    let half_anchor = {
        let sum = sum_exact(spec("J1").unwrap(), 5);
        sum == BigRational::new(BigInt::from(285), BigInt::from(32))
            && reduce_mod(&sum, PadicCtx::new(5, 3).unwrap())
                .unwrap()
                .residue()
                == 5
    };
    let reroute_anchor = {
        let sum = sum_exact(spec("zu5").unwrap(), 3);
        let r = run_check("zu5", 3).unwrap();
        sum == BigRational::new(BigInt::from(9135), BigInt::from(1024))
            && r.via_oracle
            && r.lhs == Some(9)
            && r.rhs == Some(9)
            && r.pass
    };
    let ok = mismatches == 0 && half_anchor && reroute_anchor;
    report(
        3,
        "oracle equivalence",
        ok,
        &format!(
            "{compared} (check, p) pairs p <= 31 bit-for-bit, {mismatches} mismatches; anchors 285/32 = 5 (mod 125) {half_anchor}, 9135/1024 = 9 (mod 27) via oracle {reroute_anchor}"
        ),
    );
}

#[test]
fn criterion_4_half_full_equivalence() {
    let mut agreements = 0u32;
    let mut disagreements = 0u32;
    for (full_id, half_id) in HALF_FULL_PAIRS {
        let full = spec(full_id).unwrap();
        let half = spec(half_id).unwrap();
        for p in primes_in(full.p_min, 1000) {
            match half_full_agree(full, half, p) {
                Ok(true) => agreements += 1,
                Ok(false) => disagreements += 1,
                Err(_) => {} // p not admissible for these parameters
            }
        }
    }
    let ok = disagreements == 0 && agreements > 800;
    report(
        4,
        "half/full equivalence",
        ok,
        &format!(
            "{} pairs, p <= 1000: {agreements} agreements mod p^K, {disagreements} disagreements",
            HALF_FULL_PAIRS.len()
        ),
    );
}

#[test]
fn criterion_5_lemma_sweeps() {
    let plan: &[(&str, u64)] = &[
        ("st1", 2000),
        ("st2", 2000),
        ("st3", 2000),
        ("st3-3", 2000),
        ("st4", 2000),
        ("st5", 2000),
        ("st4-1@m=1", 500),
        ("st4-1@m=2", 500),
        ("st4-1@m=3", 500),
        ("st4-1@m=1/2", 500),
        ("M0@x=-8", 500),
        ("M0@x=-3", 500),
        ("M0@x=8/9", 500),
        ("M0@x=5/9", 500),
        ("M1@x=2", 200),
        ("M1@x=1/3", 200),
        ("M1@x=-8", 200),
        ("M2@x=2", 200),
        ("M2@x=1/3", 200),
        ("M2@x=-8", 200),
        ("harmonic", 500),
        ("residue-system", 500),
    ];
    let mut passes = 0;
    let mut failures = 0;
    let mut st5_at_3 = false;
    for (id, p_hi) in plan {
        let rep = sweep(id, 3, *p_hi, true).unwrap();
        passes += rep.passes;
        failures += rep.failures;
        if *id == "st5" {
            st5_at_3 = rep
                .results
                .first()
                .is_some_and(|r| r.p == 3 && r.pass && r.lhs == Some(6) && r.rhs == Some(6));
        }
    }
    let ok = failures == 0 && st5_at_3;
    report(
        5,
        "lemma congruences",
        ok,
        &format!(
            "{} lemma sweeps: {passes} congruences, {failures} failures; corrected alternating sum holds at p=3 (6 = -12 mod 9): {st5_at_3}",
            plan.len()
        ),
    );
}

#[test]
fn criterion_6_wz_certification() {
    let start = Instant::now();
    let mut all = true;
    for pair in [
        WzPair::j1(),
        WzPair::j2(),
        WzPair::j4(),
        WzPair::lemma3(Rational64::new(1, 3)).unwrap(),
    ] {
        all &= check_pair(&pair, 12, 12).pass;
    }
    let mut lcg = 0x9E3779B97F4A7C15u64;
    let mut rand_in = |lo: i64, hi: i64| {
        lcg = lcg
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        lo + ((lcg >> 33) as i64).rem_euclid(hi - lo + 1)
    };
    let mut sampled = 0;
    while sampled < 10 {
        let x = Rational64::new(rand_in(-9, 9), rand_in(1, 9));
        if x == Rational64::new(0, 1) || x == Rational64::new(1, 1) {
            continue;
        }
        sampled += 1;
        all &= check_pair(&WzPair::lemma3(x).unwrap(), 12, 12).pass;
    }
    for m in [5, 7, 9] {
        for x in [
            Rational64::new(1, 3),
            Rational64::new(-2, 1),
            Rational64::new(0, 1),
        ] {
            all &= telescoped_lemma3(m, x);
        }
        all &= telescoped_j4(m);
    }
    for m in [3u64, 5, 7, 9, 11, 13, 15] {
        all &= telescoped_j1(m);
    }
    let wall = start.elapsed();
    let ok = all && wall.as_secs() < 10;
    report(
        6,
        "WZ certification",
        ok,
        &format!(
            "4 pairs exact on 12x12 grids (10 random x for the parameterized pair), telescoped identities verified, {wall:.2?} (< 10 s)"
        ),
    );
}

#[test]
fn criterion_7_finite_identities() {
    let staver = staver_identity_check(50);
    let ag = ag_identity_check(12);
    let chu = chu_vandermonde_check(99);
    let ok = staver.pass
        && ag.pass
        && chu.pass
        && staver.cases == 50
        && ag.cases == 12
        && chu.cases == 49;
    report(
        7,
        "finite identities",
        ok,
        &format!(
            "Staver N <= 50 ({} cases), Almkvist-Granville N <= 12 ({}), Chu-Vandermonde odd m <= 99 ({}): all exact",
            staver.cases, ag.cases, chu.cases
        ),
    );
}

#[test]
fn criterion_8_series_numerics() {
    let eight = {
        let spec = series_spec("guillera-8pi2").unwrap();
        let v = eval_series(&spec, 30).unwrap();
        let target = target_value(spec.target, 30);
        (&v.value.re.rescale(30) - &target).to_f64().abs()
    };
    let (sqrt7, sqrt7_terms) = {
        let spec = series_spec("sqrt7-pi").unwrap();
        let v = eval_series(&spec, 30).unwrap();
        let target = target_value(spec.target, 30);
        (
            (&v.value.re.rescale(30) - &target)
                .to_f64()
                .abs()
                .max(v.value.im.to_f64().abs()),
            v.terms,
        )
    };
    let quad = [(-1, 10), (-3, 10), (-1, 2), (-7, 10), (-9, 10)]
        .iter()
        .all(|&(n, d)| quadratic_transform_check(Rational64::new(n, d)));
    let sqrt5 = DualityPoint {
        tau: 5f64.sqrt(),
        k: 1.0,
        z: 0.25,
        a: 0.125,
        b: 1.0,
        c: 2.5,
    };
    let dual = duality_map(&sqrt5).unwrap();
    let expected = DualityPoint {
        tau: 5f64.sqrt() / 2.0,
        k: 0.0,
        z: 4.0,
        a: 0.25,
        b: 1.5,
        c: 2.5,
    };
    let duality_ok = [
        dual.tau - expected.tau,
        dual.k - expected.k,
        dual.z - expected.z,
        dual.a - expected.a,
        dual.b - expected.b,
        dual.c - expected.c,
    ]
    .iter()
    .all(|d| d.abs() < 1e-12)
        && ktau_identity(&sqrt5, &dual)
        && sqrt5.normalization_consistent()
        && dual.normalization_consistent()
        && duality_weight_identity();
    let back = duality_map(&dual).unwrap();
    let involution_ok = (back.tau - sqrt5.tau).abs() < 1e-12
        && (back.z - sqrt5.z).abs() < 1e-12
        && (back.a - sqrt5.a).abs() < 1e-12
        && (back.b - sqrt5.b).abs() < 1e-12
        && (back.c - sqrt5.c).abs() < 1e-12
        && (back.k - sqrt5.k).abs() < 1e-12;
    let ok =
        eight < 1e-25 && sqrt7 < 1e-6 && sqrt7_terms <= 400 && quad && duality_ok && involution_ok;
    report(
        8,
        "series numerics",
        ok,
        &format!(
            "1/pi^2 series |diff| = {eight:.2e} (< 1e-25); unit-circle series |diff| = {sqrt7:.2e} (< 1e-6, {sqrt7_terms} terms <= 400); quadratic transform at 5 points: {quad}; duality + involution at the sqrt(5) point: {}",
            duality_ok && involution_ok
        ),
    );
}
