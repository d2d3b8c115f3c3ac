//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria listed in `EXPECTED_FAILURES` are evaluated as stated and are
//! known not to hold; the run fails if any other criterion fails, or if one
//! of those starts passing.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use edskit_cli::sweep::{sweep, write_csv, write_jsonl};
use edskit_core::heights::{
    canonical_height_congruent, family_height_floor, naive_height, sandwich,
};
use edskit_core::number_theory::{is_prime, log_big, prime_factors, ProfileSieve};
use edskit_core::primitive::{
    has_primitive_divisor, observed_zsigmondy, primitive_part_against_all,
};
use edskit_core::somos::{somos4, somos4_primitive_check};
use edskit_core::zsigmondy::{
    cube_lambda, generic_even_candidates, generic_odd_negative_candidates, odd_square_candidates,
    CandidateScan, OMEGA_PER_LOG, RHO_MAX, RHO_MAX_ODD,
};
use edskit_core::{
    zsigmondy_bound, EdsSequence, Error, FamilyInstance, FamilyKind, RationalPoint,
    ZsigmondyOptions,
};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

const EXPECTED_FAILURES: [u32; 2] = [3, 7];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    o.detail = format!("{} [{:.2} s]", o.detail, took.as_secs_f64());
    if let Some(limit) = limit {
        if took > limit {
            o.pass = false;
            o.detail = format!("{} over the {} s limit", o.detail, limit.as_secs());
        }
    }
    o
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn c25() -> FamilyInstance {
    FamilyInstance::with_point(
        FamilyKind::Congruent,
        Some(5),
        RationalPoint::from_ints(-4, 6),
    )
    .unwrap()
}

fn somos_curve() -> FamilyInstance {
    FamilyInstance::instantiate(FamilyKind::Somos4Curve, None).unwrap()
}

fn criterion_1() -> Outcome {
    let r = match zsigmondy_bound(&c25(), &ZsigmondyOptions::default()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let iv = r.hhat.unwrap();
    let (ce, co) = (r.candidate_even_max.unwrap(), r.candidate_odd_max.unwrap());
    let pass = r.certified
        && r.verified_z == 1
        && iv.contains(1.899)
        && iv.width() <= 0.01
        && co == 1
        && ce <= 8;
    outcome(
        pass,
        format!(
            "certified={} Z={} hhat=[{:.5}, {:.5}] width={:.5} odd cand={co} even cand={ce}",
            r.certified,
            r.verified_z,
            iv.lo,
            iv.hi,
            iv.width()
        ),
    )
}

fn crossover_certified(scan: &CandidateScan) -> bool {
    let e = &scan.envelope;
    let c = scan.envelope_crossover;
    (c..c + 10_000).all(|n| {
        let nf = n as f64;
        e.quadratic * nf * nf > e.log_coefficient * nf.ln() + e.constant
    }) && scan.horizon >= c
        && scan.candidates.iter().all(|&n| n < c)
}

fn criterion_2() -> Outcome {
    let (even, odd, sq) = match (
        generic_even_candidates(),
        generic_odd_negative_candidates(),
        odd_square_candidates(),
    ) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => return outcome(false, "scan error"),
    };
    let pass = even.max == Some(10)
        && odd.max == Some(3)
        && sq.max == Some(21)
        && [&even, &odd, &sq].into_iter().all(crossover_certified);
    outcome(
        pass,
        format!(
            "even max={:?} (crossover {}), odd-negative max={:?} (crossover {}), odd-square max={:?} (crossover {})",
            even.max, even.envelope_crossover, odd.max, odd.envelope_crossover, sq.max, sq.envelope_crossover
        ),
    )
}

fn criterion_3() -> Outcome {
    let u = somos4(40, [1, 1, 1, 1]).unwrap();
    let prefix: Vec<u64> = u.terms[..8].iter().map(|v| v.to_u64().unwrap()).collect();
    let prefix_ok = prefix == [1, 1, 1, 1, 2, 3, 7, 23];

    let seq = EdsSequence::generate(&somos_curve().curve, &somos_curve().p, 49).unwrap();
    let literal_mismatch = (1..=25u64).find(|&k| u.u(k as usize) != seq.b(2 * k - 1));
    let squared_ok = (1..=25u64).all(|k| {
        let uk = u.u(k as usize);
        uk * uk == *seq.b((2 * k as i64 - 5).unsigned_abs())
    });

    let failing = somos4_primitive_check(40).unwrap();
    let primitive_ok = failing.iter().all(|&k| k <= 4);

    let pass = prefix_ok && literal_mismatch.is_none() && primitive_ok;
    let literal = match literal_mismatch {
        None => "u_k = B_(2k-1) for k <= 25".to_string(),
        Some(k) => format!(
            "u_k = B_(2k-1) fails at k={k} (u={}, B={})",
            u.u(k as usize),
            seq.b(2 * k - 1)
        ),
    };
    outcome(
        pass,
        format!(
            "prefix {prefix:?}; {literal}; u_k^2 = B_|2k-5| for k <= 25: {squared_ok}; indices without primitive divisor <= 40: {failing:?}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let inst = somos_curve();
    let seq = EdsSequence::generate(&inst.curve, &inst.p, 40).unwrap();
    let integral = [1u64, 2, 3, 4, 6].iter().all(|&n| seq.b(n).is_one());
    let obs = observed_zsigmondy(&seq);
    outcome(
        integral && obs.z_odd == 3,
        format!(
            "B_n = 1 at 1,2,3,4,6: {integral}; observed Zo={} over n <= 40",
            obs.z_odd
        ),
    )
}

/// Counts for the even case of Tunnell's criterion: a congruent `n` forces
/// `#{x² + 4y² + 8z² = n/2} = 2·#{x² + 4y² + 32z² = n/2}`.
fn tunnell_even_counts(n: u64) -> (usize, usize) {
    let m = (n / 2) as i64;
    let r = (m as f64).sqrt() as i64 + 1;
    let count = |c: i64| {
        let mut k = 0;
        for x in -r..=r {
            for y in -r..=r {
                for z in -r..=r {
                    if x * x + 4 * y * y + c * z * z == m {
                        k += 1;
                    }
                }
            }
        }
        k
    };
    (count(8), count(32))
}

fn small_odd_prime_divisors(b: &BigUint) -> Vec<u64> {
    (3..2000u64)
        .filter(|&p| is_prime(p) && (b % p).is_zero())
        .collect()
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut instances = Vec::new();
    for t in [5u64, 6, 7, 10, 13, 15] {
        match FamilyInstance::instantiate(FamilyKind::Congruent, Some(t)) {
            Ok(i) => instances.push(i),
            Err(Error::NoPointFound { .. }) if t % 2 == 0 => {
                let (a, b) = tunnell_even_counts(t);
                if a != 2 * b {
                    notes.push(format!(
                        "T={t}: not congruent ({a} != 2*{b}), no non-torsion point, checks vacuous"
                    ));
                } else {
                    failures.push(format!("T={t}: no point found"));
                }
            }
            Err(e) => failures.push(format!("T={t}: {e}")),
        }
    }
    let extra = [
        FamilyInstance::instantiate(FamilyKind::Twist, Some(3)).unwrap(),
        somos_curve(),
    ];

    let mut gcd_instances = 0;
    let mut triples = 0;
    for inst in instances.iter().chain(extra.iter()) {
        let seq = EdsSequence::generate(&inst.curve, &inst.p, 30).unwrap();
        let gcd_ok = (1..=30).all(|m| (1..=30).all(|n| seq.check_gcd_lemma(m, n).unwrap()));
        if gcd_ok {
            gcd_instances += 1;
        } else {
            failures.push(format!("gcd lemma on {}", inst.id()));
        }
        for n in 1..=5u64 {
            for p in small_odd_prime_divisors(seq.b(n)) {
                for k in 2..=30 / n {
                    triples += 1;
                    if !seq.check_ord_lemma(p, n, k).unwrap() {
                        failures.push(format!("ord lemma p={p} n={n} k={k} on {}", inst.id()));
                    }
                }
            }
        }
    }

    for inst in &instances {
        let t = inst.t.unwrap();
        let seq = EdsSequence::generate(&inst.curve, &inst.p, 30).unwrap();
        let cap = 4.0f64.ln() + 4.0 * (t as f64).ln();
        for m in 1..=15 {
            let dup = seq.check_duplication_identity(t, m).unwrap();
            let g = log_big(&seq.doubling_gcd(t, m).unwrap()).unwrap();
            if !dup || g > cap + 1e-12 {
                failures.push(format!("duplication T={t} m={m}"));
            }
        }
        let iv = canonical_height_congruent(t, &inst.p, 5).unwrap();
        for n in 1..=12 {
            let h = naive_height(&seq.term(n).x());
            let (lo, hi) = sandwich(t, n, &iv);
            if !(lo <= h && h <= hi) {
                failures.push(format!("sandwich T={t} n={n}"));
            }
        }
        if iv.hi < family_height_floor(t).unwrap() {
            failures.push(format!("height floor T={t}"));
        }
    }

    let pass = failures.is_empty() && gcd_instances >= 3 && triples >= 10;
    let tested: Vec<u64> = instances.iter().map(|i| i.t.unwrap()).collect();
    outcome(
        pass,
        format!(
            "congruent T={tested:?}; gcd lemma on {gcd_instances} instances; {triples} ord triples; {} failures{}{}",
            failures.len(),
            if notes.is_empty() { String::new() } else { format!("; {}", notes.join("; ")) },
            if failures.is_empty() { String::new() } else { format!(": {}", failures.join(", ")) },
        ),
    )
}

fn factored_primes(b: &BigUint) -> Option<BTreeSet<u64>> {
    let v = b.to_u64()?;
    Some(prime_factors(v).into_iter().map(|(p, _)| p).collect())
}

fn criterion_6() -> Outcome {
    let instances = [
        c25(),
        FamilyInstance::instantiate(FamilyKind::Congruent, Some(6)).unwrap(),
        FamilyInstance::instantiate(FamilyKind::Twist, Some(3)).unwrap(),
        FamilyInstance::instantiate(FamilyKind::Product, Some(2)).unwrap(),
        FamilyInstance::instantiate(FamilyKind::Cube, Some(2)).unwrap(),
        somos_curve(),
    ];
    let mut mismatches = Vec::new();
    let (mut by_factoring, mut by_definition) = (0, 0);
    for inst in &instances {
        let seq = EdsSequence::generate(&inst.curve, &inst.p, 20).unwrap();
        let terms: Vec<BigUint> = seq.terms().iter().map(|t| t.b.clone()).collect();
        let mut seen = BTreeSet::new();
        let mut factorable = true;
        for n in 1..=20u64 {
            let fast = has_primitive_divisor(&seq, n).unwrap();
            let primes = if factorable {
                factored_primes(seq.b(n))
            } else {
                None
            };
            let oracle = match primes {
                Some(ps) => {
                    by_factoring += 1;
                    let new = ps.difference(&seen).next().is_some();
                    seen.extend(ps);
                    new
                }
                None => {
                    factorable = false;
                    by_definition += 1;
                    !primitive_part_against_all(&terms, n as usize - 1).is_one()
                }
            };
            if fast != oracle {
                mismatches.push(format!("{} n={n}", inst.id()));
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{} instances x 20 indices; {by_factoring} verdicts against full factorization, {by_definition} against stripping by every earlier term; mismatches: {mismatches:?}",
            instances.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let lambdas: Vec<f64> = (2..=10_000).map(|t| cube_lambda(t).unwrap()).collect();
    let decreasing = lambdas.windows(2).all(|w| w[1] < w[0]);
    let (l25, l26) = (cube_lambda(25).unwrap(), cube_lambda(26).unwrap());
    let threshold = l26 < 2.188 && 2.188 <= l25;
    let l6 = cube_lambda(1_000_000).unwrap();
    let limit = (l6 - 2.0).abs() < 1e-3;
    outcome(
        decreasing && threshold && limit,
        format!(
            "decreasing on 2..1e4: {decreasing}; lambda(25)={l25:.5} lambda(26)={l26:.5}; |lambda(1e6) - 2| = {:.5} (needs < 1e-3)",
            (l6 - 2.0).abs()
        ),
    )
}

fn criterion_8() -> Outcome {
    let sieve = ProfileSieve::new(1_000_000);
    let (mut rho_max, mut rho_odd_max, mut omega_ratio) = (0f64, 0f64, 0f64);
    for n in 2..=1_000_000u64 {
        let p = sieve.profile(n);
        rho_max = rho_max.max(p.rho);
        if n % 2 == 1 {
            rho_odd_max = rho_odd_max.max(p.rho);
        }
        omega_ratio = omega_ratio.max(p.omega as f64 / (n as f64).ln());
    }
    outcome(
        rho_max <= RHO_MAX && rho_odd_max <= RHO_MAX_ODD && omega_ratio <= OMEGA_PER_LOG,
        format!(
            "max rho={rho_max:.5}, max odd rho={rho_odd_max:.5}, max omega/ln n={omega_ratio:.5}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let opts = ZsigmondyOptions::default();
    let render = |jobs: usize| {
        let entries = sweep(FamilyKind::Congruent, 5..=50, jobs, &opts).unwrap();
        let mut csv = Vec::new();
        write_csv(&mut csv, &entries, false).unwrap();
        let mut jsonl = Vec::new();
        write_jsonl(&mut jsonl, &entries).unwrap();
        (entries, csv, jsonl)
    };
    let (entries, csv_a, jsonl_a) = render(4);
    let (_, csv_b, jsonl_b) = render(1);
    let identical = csv_a == csv_b && jsonl_a == jsonl_b;
    let reports: Vec<_> = entries.iter().filter_map(|e| e.report()).collect();
    let bounded = reports
        .iter()
        .filter(|r| r.certified_even)
        .all(|r| r.verified_ze <= 10 && r.candidate_even_max.unwrap_or(0) <= 10);
    let errors: Vec<u64> = entries
        .iter()
        .filter(|e| e.report().is_none())
        .map(|e| e.t)
        .collect();
    outcome(
        identical && bounded && !reports.is_empty(),
        format!(
            "{} rows, {} certified, every certified Ze <= 10: {bounded}; byte-identical reruns: {identical}; no point found for T={errors:?}",
            entries.len(),
            reports.iter().filter(|r| r.certified).count()
        ),
    )
}

type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "25-curve certification", secs(10), criterion_1),
        (2, "theorem constants", secs(1), criterion_2),
        (3, "Somos-4", secs(30), criterion_3),
        (4, "y^2 + y = x^3 - x", None, criterion_4),
        (5, "lemma suite", None, criterion_5),
        (6, "primitive detector oracle", None, criterion_6),
        (7, "lambda(T)", None, criterion_7),
        (8, "rho/omega envelopes", secs(60), criterion_8),
        (9, "sweep determinism and soundness", None, criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (id, name, limit, f) in criteria {
        let o = timed(limit, f);
        println!(
            "{} {id}. {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if o.pass == EXPECTED_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
