//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsdkit::constructions::{
    arithmetic_progression, delta_set, extend, find_gap_exponent, theorem1_witness, verify_lemma,
    LemmaId, RESIDUAL,
};
use rsdkit::enumeration::{count_classes, EnumParams, Predicate};
use rsdkit::{analyze, are_affinely_equivalent, Error, IntSet};

const C1_LIMIT: Duration = Duration::from_secs(1);
const C2_LIMIT: Duration = Duration::from_secs(5);
const C3_LIMIT: Duration = Duration::from_secs(60);
const C4_LIMIT: Duration = Duration::from_secs(10);
const C5_LIMIT: Duration = Duration::from_secs(30);
const C6_LIMIT: Duration = Duration::from_secs(300);
const C7_LIMIT: Duration = Duration::from_secs(600);
const C8_LIMIT: Duration = Duration::from_secs(60);
const SEED: u64 = 20_240_229;

const A_DOUBLE_PRIME: [i64; 23] = [
    0, 1, 2, 4, 5, 9, 12, 13, 17, 20, 21, 22, 24, 25, 29, 32, 33, 37, 40, 41, 42, 44, 45,
];

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sizes_match_oracle(a: &IntSet) -> std::result::Result<rsdkit::AnalysisReport, String> {
    let r = analyze(a).map_err(|e| e.to_string())?;
    let o = common::sizes(&a.to_vec());
    ensure(
        (r.sumset_size, r.restricted_sumset_size, r.difference_size)
            == (o.sums, o.restricted, o.differences),
        || {
            format!(
                "{a}: kernel {}/{}/{} vs oracle {}/{}/{}",
                r.sumset_size,
                r.restricted_sumset_size,
                r.difference_size,
                o.sums,
                o.restricted,
                o.differences
            )
        },
    )?;
    Ok(r)
}

fn c1_examples() -> Outcome {
    let a = sizes_match_oracle(&common::set(&[0, 2, 3]))?;
    ensure(
        a.restricted_sumset_size < a.sumset_size && a.sumset_size < a.difference_size,
        || "{0,2,3} ordering".into(),
    )?;
    let b = sizes_match_oracle(&common::set(&[0, 2, 3, 4, 7, 11, 12, 14]))?;
    ensure(
        (b.sumset_size, b.difference_size, b.restricted_sumset_size) == (26, 25, 21),
        || "8-set sizes".into(),
    )?;
    let c = sizes_match_oracle(&common::set(&A_DOUBLE_PRIME))?;
    ensure(
        c.sumset_size > c.restricted_sumset_size && c.restricted_sumset_size > c.difference_size,
        || "23-set ordering".into(),
    )?;
    Ok(format!(
        "{{0,2,3}} {}/{}/{}; 8-set {}/{}/{}; 23-set {}/{}/{} (+, ∔, −)",
        a.sumset_size,
        a.restricted_sumset_size,
        a.difference_size,
        b.sumset_size,
        b.restricted_sumset_size,
        b.difference_size,
        c.sumset_size,
        c.restricted_sumset_size,
        c.difference_size
    ))
}

fn c2_progressions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    for k in 2..=200u32 {
        for _ in 0..50 {
            let start = rng.random_range(-1_000_000i64..=1_000_000);
            let step = rng.random_range(1i64..=1000);
            let p = arithmetic_progression(k, start, step).map_err(|e| e.to_string())?;
            let r = analyze(&p).map_err(|e| e.to_string())?;
            let k = k as usize;
            ensure(
                r.restricted_sumset_size == 2 * k - 3 && r.difference_size == 2 * k - 1,
                || format!("k = {k}, start = {start}, step = {step}"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} progressions"))
}

fn c3_theorem2() -> Outcome {
    let mut swept = 0;
    for x in -200i64..=200 {
        if RESIDUAL.contains(&x) {
            continue;
        }
        let (s, _) = delta_set(x).map_err(|e| format!("x = {x}: {e}"))?;
        let r = analyze(&s).map_err(|e| e.to_string())?;
        ensure(r.delta == -x, || format!("x = {x}: Δ = {}", r.delta))?;
        swept += 1;
    }
    let mut residual = Vec::new();
    for x in RESIDUAL {
        match delta_set(x) {
            Ok((s, _)) => {
                let r = sizes_match_oracle(&s)?;
                ensure(r.delta == -x, || {
                    format!("residual x = {x}: Δ = {}", r.delta)
                })?;
                residual.push(format!("x={x} found {s}"));
            }
            Err(e @ (Error::SearchExhausted { .. } | Error::BudgetExceeded { .. })) => {
                residual.push(format!("x={x} not found ({e})"));
            }
            Err(e) => return Err(format!("residual x = {x}: {e}")),
        }
    }
    Ok(format!(
        "{swept} closed-form values; {}",
        residual.join("; ")
    ))
}

fn c4_lemma1() -> Outcome {
    let report = verify_lemma(LemmaId::Lemma1, 1000, SEED).map_err(|e| e.to_string())?;
    ensure(report.passed, || {
        format!("{:?}", report.first_counterexample)
    })?;
    let weak = analyze(&common::set(&[0, 1, 3, 5])).map_err(|e| e.to_string())?;
    ensure(weak.delta == 5, || {
        format!("Δ({{0,1,3,5}}) = {}", weak.delta)
    })?;
    ensure(extend(&common::set(&[0, 1, 3]), 5).is_err(), || {
        "extend accepted b = 5".into()
    })?;
    Ok(format!(
        "1000 trials + {} fixed; ({{0,1,3}}, 5) rejected, Δ = 5",
        report.fixed_instances
    ))
}

fn c5_lemma3() -> Outcome {
    let report = verify_lemma(LemmaId::Lemma3, 200, SEED).map_err(|e| e.to_string())?;
    ensure(report.passed, || {
        format!("{:?}", report.first_counterexample)
    })?;
    Ok(format!("200 trials + {} fixed", report.fixed_instances))
}

fn c6_theorem1() -> Outcome {
    let seed = common::set(&A_DOUBLE_PRIME);
    let probes = find_gap_exponent(&seed, 91, 3).map_err(|e| e.to_string())?;
    let last = probes.last().ok_or("no probes")?;
    ensure(last.passes(), || {
        format!("gap check fails for n <= 3: {probes:?}")
    })?;
    let n = last.n;
    let report = theorem1_witness(&seed, 91, n, 3).map_err(|e| e.to_string())?;
    let expected = 23usize.pow(n) + 1;
    ensure(report.witnesses.len() == 3, || {
        "expected 3 witnesses".into()
    })?;
    for w in &report.witnesses {
        let r = sizes_match_oracle(&w.analysis.set)?;
        ensure(r.size == expected && r.is_rsd, || {
            format!("witness size {} Δ {}", r.size, r.delta)
        })?;
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let same = are_affinely_equivalent(
                &report.witnesses[i].analysis.set,
                &report.witnesses[j].analysis.set,
            )
            .map_err(|e| e.to_string())?;
            ensure(!same, || format!("witnesses {i} and {j} are equivalent"))?;
        }
    }
    Ok(format!(
        "smallest n = {n} (margin {}); 3 inequivalent RSD sets of size {expected}, Δ = {}",
        last.gap_margin, report.witnesses[0].analysis.delta
    ))
}

fn classes(
    k: u32,
    n: u32,
    predicate: Predicate,
    threads: u32,
    shards: u32,
) -> std::result::Result<rsdkit::enumeration::EnumerationReport, String> {
    let mut p = EnumParams::new(k, n, predicate);
    p.thread_count = threads;
    p.shard_count = shards;
    p.list_witnesses = true;
    count_classes(&p).map_err(|e| e.to_string())
}

fn c7_nonexistence() -> Outcome {
    for (k, n, p) in [
        (7, 20, Predicate::Sd),
        (8, 20, Predicate::Rsd),
        (9, 22, Predicate::Rsd),
    ] {
        let r = classes(k, n, p, 4, 64)?;
        ensure(r.matching_classes == 0, || {
            format!("k = {k}, n = {n}, {p}: {} classes", r.matching_classes)
        })?;
    }
    let r = classes(8, 14, Predicate::Sd, 4, 64)?;
    let witnesses = r.witnesses.unwrap_or_default();
    ensure(
        r.matching_classes == 1 && witnesses == vec![common::set(&[0, 2, 3, 4, 7, 11, 12, 14])],
        || format!("k = 8, n = 14, sd: {witnesses:?}"),
    )?;
    Ok("0/0/0 classes; unique SD 8-set at n = 14".into())
}

fn c8_enumeration_oracle() -> Outcome {
    let mut cases = 0;
    for k in 1..=5u32 {
        for n in k.saturating_sub(1)..=12 {
            let expected = common::classes_by_subsets(k, n, |_| true);
            let mut seen = None;
            for threads in [1, 2, 4] {
                for shards in [1, 64] {
                    let r = classes(k, n, Predicate::All, threads, shards)?;
                    let got: std::collections::BTreeSet<Vec<i64>> = r
                        .witnesses
                        .unwrap_or_default()
                        .iter()
                        .map(IntSet::to_vec)
                        .collect();
                    ensure(
                        r.matching_classes as usize == expected.len() && got == expected,
                        || {
                            format!(
                                "k = {k}, n = {n}, threads {threads}, shards {shards}: {} vs {}",
                                r.matching_classes,
                                expected.len()
                            )
                        },
                    )?;
                    if let Some(prev) = seen.replace(r.matching_classes) {
                        ensure(prev == r.matching_classes, || {
                            "thread/shard dependence".into()
                        })?;
                    }
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (k, n) cases × 6 configurations"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("C1 worked examples", C1_LIMIT, c1_examples),
        ("C2 progression identities", C2_LIMIT, c2_progressions),
        ("C3 prescribed Δ sweep", C3_LIMIT, c3_theorem2),
        ("C4 one-point extension", C4_LIMIT, c4_lemma1),
        ("C5 base-power identities", C5_LIMIT, c5_lemma3),
        ("C6 RSD witnesses from base powers", C6_LIMIT, c6_theorem1),
        ("C7 nonexistence counts", C7_LIMIT, c7_nonexistence),
        (
            "C8 enumeration vs subset oracle",
            C8_LIMIT,
            c8_enumeration_oracle,
        ),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (
                false,
                format!("{d}; too slow ({:.2?} > {limit:?})", elapsed),
            ),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {name} [{:.2?}]: {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed
        );
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
