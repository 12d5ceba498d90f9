//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test -p sck-cli --test acceptance -- --nocapture`.

use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sck_core::bitsim::{enumerate_faults, FaultyEngine};
use sck_core::coverage::{
    detection_tally, masked_situations, run_exhaustive, run_sampled, situation_count,
    CampaignResult, CampaignSpec, Mode,
};
use sck_core::fir::{
    fir_checked, fir_embedded, fir_fault_campaign, fir_plain, measure_overhead, seeded_corpus,
    FirConfig,
};
use sck_core::naive::naive_exhaustive_counts;
use sck_core::{
    checked_add, checked_div, checked_mul, checked_sub, run_check, ArithmeticEngine, CheckPolicy,
    CheckTechnique, CheckedOps, CheckedValue, DynCheckedOps, Operator, ReferenceEngine, Width,
    Word,
};

fn w(n: u32) -> Width {
    Width::new(n).unwrap()
}

const TECHNIQUES: [CheckTechnique; 3] = [
    CheckTechnique::Tech1,
    CheckTechnique::Tech2,
    CheckTechnique::Both,
];

/// Reported reference coverages (percent) for the same-unit add campaigns.
const REPORTED_ADD: [(u32, [f64; 3]); 5] = [
    (1, [95.31, 96.88, 97.66]),
    (2, [96.88, 98.44, 98.83]),
    (3, [97.40, 98.96, 99.22]),
    (4, [97.66, 99.22, 99.41]),
    (8, [98.05, 99.61, 99.71]),
];

/// Frozen golden masked counts of this artifact's fault universe, validated
/// against the independent naive oracle (criterion 2) before freezing:
/// tech1 = 6·4^(n-1), tech2 = 4^n, both = 3·4^(n-1).
fn golden_masked(n: u32) -> [u64; 3] {
    let q = 1u64 << (2 * (n - 1));
    [6 * q, 4 * q, 3 * q]
}

/// Same-unit add campaigns for n = 1..=8, all techniques, computed once.
fn add_table() -> &'static Vec<(u32, [CampaignResult; 3])> {
    static TABLE: OnceLock<Vec<(u32, [CampaignResult; 3])>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (1..=8u32)
            .map(|n| {
                let results = TECHNIQUES.map(|tech| {
                    run_exhaustive(&CampaignSpec::exhaustive(
                        Operator::Add,
                        tech,
                        w(n),
                        Mode::SameUnit,
                    ))
                    .expect("within budget")
                });
                (n, results)
            })
            .collect()
    })
}

fn sck_binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sck"))
}

#[test]
fn criterion_01_situation_count_formula() {
    assert_eq!(situation_count(w(1)), 128);
    assert_eq!(situation_count(w(2)), 1024);
    assert_eq!(situation_count(w(3)), 6144);
    assert_eq!(situation_count(w(4)), 32768);
    assert_eq!(situation_count(w(8)), 16 << 20);

    // the emitted report documents the reported-total discrepancy at width 4
    let output = sck_binary()
        .args(["table2", "--max-bits", "4", "--format", "text"])
        .output()
        .expect("run table2");
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("7808") && text.contains("32768"), "discrepancy note missing");
    println!(
        "criterion 01 (situation-count formula): PASS — 128/1024/6144/32768/16M; width-4 \
         discrepancy (7808 vs 32768) documented in the table2 report"
    );
}

#[test]
fn criterion_02_oracle_equivalence() {
    let start = Instant::now();
    let mut combos = 0;
    for n in 1..=2u32 {
        for op in [Operator::Add, Operator::Sub, Operator::Mul, Operator::Div] {
            let techniques: &[CheckTechnique] = match op {
                Operator::Div => &TECHNIQUES[..2],
                _ => &TECHNIQUES,
            };
            for &tech in techniques {
                for mode in [Mode::SameUnit, Mode::CrossUnit] {
                    let spec = CampaignSpec::exhaustive(op, tech, w(n), mode);
                    let fast = run_exhaustive(&spec).unwrap();
                    let slow = naive_exhaustive_counts(&spec);
                    assert_eq!(
                        [
                            fast.counts.correct_silent,
                            fast.counts.detected_silent,
                            fast.counts.detected_erroneous,
                            fast.counts.masked,
                        ],
                        slow,
                        "{op} {tech} {mode} n={n}"
                    );
                    combos += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!(
        "criterion 02 (oracle equivalence): PASS — {combos} campaign configurations at n<=2 \
         match the naive truth-table simulator class-for-class ({elapsed:?})"
    );
}

#[test]
fn criterion_03_reference_table_reproduction() {
    let start = Instant::now();
    let table = add_table();
    // frozen goldens, exact
    for (n, results) in table {
        let golden = golden_masked(*n);
        for (index, result) in results.iter().enumerate() {
            assert_eq!(
                result.counts.masked, golden[index],
                "golden mismatch at n={n} {}",
                TECHNIQUES[index]
            );
            assert_eq!(u128::from(result.total), situation_count(w(*n)));
        }
    }
    // reported values within ±2.0 percentage points at n in {1,2,3,8}
    let mut worst: f64 = 0.0;
    for (n, reported) in REPORTED_ADD {
        if n == 4 {
            continue; // reported width-4 totals are inconsistent; formula space asserted above
        }
        let (_, results) = &table[(n - 1) as usize];
        for (index, result) in results.iter().enumerate() {
            let delta = (result.coverage() * 100.0 - reported[index]).abs();
            worst = worst.max(delta);
            assert!(
                delta <= 2.0,
                "n={n} {}: measured {:.4} vs reported {:.2}",
                TECHNIQUES[index],
                result.coverage() * 100.0,
                reported[index]
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    println!(
        "criterion 03 (reference table): PASS — goldens exact for n=1..8, reported values \
         within ±2.0pp (worst |delta| {worst:.2}pp), {elapsed:?}"
    );
}

#[test]
fn criterion_04_cross_unit_completeness() {
    for n in 1..=4u32 {
        for op in [Operator::Add, Operator::Sub, Operator::Mul] {
            for tech in TECHNIQUES {
                let result = run_exhaustive(&CampaignSpec::exhaustive(
                    op,
                    tech,
                    w(n),
                    Mode::CrossUnit,
                ))
                .unwrap();
                assert_eq!(result.counts.masked, 0, "{op} {tech} n={n}");
                assert_eq!(result.coverage(), 1.0);
            }
        }
    }
    let mut div_worst: f64 = 0.0;
    for n in 1..=4u32 {
        for tech in [CheckTechnique::Tech1, CheckTechnique::Tech2] {
            let result = run_exhaustive(&CampaignSpec::exhaustive(
                Operator::Div,
                tech,
                w(n),
                Mode::CrossUnit,
            ))
            .unwrap();
            let fraction = result.counts.masked as f64 / result.total as f64;
            div_worst = div_worst.max(fraction);
            assert!(fraction < 0.01, "div {tech} n={n}: masked fraction {fraction}");
        }
    }
    println!(
        "criterion 04 (cross-unit completeness): PASS — masked = 0 for +,-,* at n<=4; division \
         masked fraction at most {:.4}% (< 1%)",
        div_worst * 100.0
    );
}

#[test]
fn criterion_05_technique_monotonicity() {
    // masked(Both) equals masked(Tech1) ∩ masked(Tech2) as identifier sets
    for n in 1..=3u32 {
        for op in [Operator::Add, Operator::Sub, Operator::Mul] {
            for mode in [Mode::SameUnit, Mode::CrossUnit] {
                let spec = |tech| CampaignSpec::exhaustive(op, tech, w(n), mode);
                let t1 = masked_situations(&spec(CheckTechnique::Tech1)).unwrap();
                let t2 = masked_situations(&spec(CheckTechnique::Tech2)).unwrap();
                let both = masked_situations(&spec(CheckTechnique::Both)).unwrap();
                let intersection: Vec<u64> = t1
                    .iter()
                    .filter(|id| t2.binary_search(id).is_ok())
                    .copied()
                    .collect();
                assert_eq!(both, intersection, "{op} {mode} n={n}");
            }
        }
    }
    // hence coverage(Both) >= max(coverage(Tech1), coverage(Tech2)) on the
    // criterion-3 campaigns
    for (n, results) in add_table() {
        let both = results[2].coverage();
        assert!(
            both >= results[0].coverage().max(results[1].coverage()),
            "n={n}"
        );
    }
    println!(
        "criterion 05 (technique monotonicity): PASS — masked(Both) = masked(T1) ∩ masked(T2) \
         for +,-,* at n<=3 in both modes; coverage(Both) dominates on all table campaigns"
    );
}

#[test]
fn criterion_06_width_trend() {
    let table = add_table();
    for tech_index in 0..3 {
        for window in table.windows(2) {
            let (n_lo, lo) = (&window[0].0, &window[0].1[tech_index]);
            let (n_hi, hi) = (&window[1].0, &window[1].1[tech_index]);
            assert!(
                hi.coverage() >= lo.coverage(),
                "{} coverage decreased from n={n_lo} to n={n_hi}",
                TECHNIQUES[tech_index]
            );
        }
    }
    println!(
        "criterion 06 (width trend): PASS — same-unit add coverage non-decreasing over n=1..8 \
         for each technique"
    );
}

#[test]
fn criterion_07_detection_tally() {
    let table = add_table();
    let (_, results) = &table[1]; // n = 2
    let reported_detections = [352u64, 384, 428];
    let mut lines = Vec::new();
    for (index, result) in results.iter().enumerate() {
        let (observable, detections) = detection_tally(result);
        assert_eq!(
            observable, 216,
            "observable errors are technique-independent and exactly 216"
        );
        let reported = reported_detections[index];
        let tolerance = reported / 10;
        let delta = detections.abs_diff(reported);
        assert!(
            delta <= tolerance,
            "{}: detections {detections} vs reported {reported}",
            TECHNIQUES[index]
        );
        lines.push(format!(
            "{}: cs={} ds={} de={} mk={} detections={} (reported {reported})",
            TECHNIQUES[index],
            result.counts.correct_silent,
            result.counts.detected_silent,
            result.counts.detected_erroneous,
            result.counts.masked,
            detections,
        ));
    }
    println!(
        "criterion 07 (detection tally): PASS — n=2 observable errors = 216 exactly; \
         detections within ±10% of 352/384/428 [{}]",
        lines.join("; ")
    );
}

#[test]
fn criterion_08_fault_free_soundness() {
    let start = Instant::now();
    let width = w(8);
    let engine = ReferenceEngine::new(width);
    let policy = CheckPolicy::both();
    for a in 0..256u32 {
        for b in 0..256u32 {
            let x = CheckedValue::new(Word::new(a, width));
            let y = CheckedValue::new(Word::new(b, width));
            let sum = checked_add(x, y, policy, &engine);
            assert!(!sum.error());
            assert_eq!(sum.value().bits(), a.wrapping_add(b) & 0xff);
            let difference = checked_sub(x, y, policy, &engine);
            assert!(!difference.error());
            assert_eq!(difference.value().bits(), a.wrapping_sub(b) & 0xff);
            let product = checked_mul(x, y, policy, &engine);
            assert!(!product.error());
            assert_eq!(product.value().bits(), a.wrapping_mul(b) & 0xff);
        }
    }
    // division: 10^6 seeded samples per technique, error preconditions excluded
    let mut rng = ChaCha8Rng::seed_from_u64(0x51C);
    for div_tech in [
        sck_core::DivTechnique::Tech1,
        sck_core::DivTechnique::Tech2,
    ] {
        let mut policy = CheckPolicy::both();
        policy.div = div_tech;
        let mut checked = 0u32;
        while checked < 1_000_000 {
            let a = Word::new(rng.random_range(0..256), width);
            let b = Word::new(rng.random_range(0..256), width);
            if b.is_zero() || (a.to_signed() == -128 && b.to_signed() == -1) {
                continue;
            }
            let out = checked_div(
                CheckedValue::new(a),
                CheckedValue::new(b),
                policy,
                &engine,
            );
            assert!(!out.error(), "false alarm on {a:?}/{b:?} {div_tech:?}");
            assert_eq!(out.value().to_signed(), a.to_signed() / b.to_signed());
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}");
    println!(
        "criterion 08 (fault-free soundness): PASS — exhaustive n=8 for +,-,* and 2x10^6 \
         division samples, zero false alarms ({elapsed:?})"
    );
}

#[test]
fn criterion_09_error_propagation() {
    let width = w(6);
    let faults = enumerate_faults(width);
    let reference = ReferenceEngine::new(width);
    let mut rng = ChaCha8Rng::seed_from_u64(0xE22);
    for op in [Operator::Add, Operator::Sub, Operator::Mul, Operator::Div] {
        for flags in [(false, false), (false, true), (true, false), (true, true)] {
            for _ in 0..10_000 {
                let fault = faults[rng.random_range(0..faults.len())];
                let engine = FaultyEngine::new(width, Some(fault));
                let a = Word::new(rng.random_range(0..64), width);
                let b = Word::new(rng.random_range(0..64), width);
                let policy = CheckPolicy::both();
                let x = CheckedValue::with_error(a, flags.0);
                let y = CheckedValue::with_error(b, flags.1);
                let (out, check_failed) = match op {
                    Operator::Add => {
                        let ris = engine.add(a, b);
                        let ok = run_check(op, CheckTechnique::Both, a, b, ris, None, &engine);
                        (checked_add(x, y, policy, &engine), !ok)
                    }
                    Operator::Sub => {
                        let ris = engine.sub(a, b);
                        let ok = run_check(op, CheckTechnique::Both, a, b, ris, None, &engine);
                        (checked_sub(x, y, policy, &engine), !ok)
                    }
                    Operator::Mul => {
                        let ris = engine.mul(a, b);
                        let ok = run_check(op, CheckTechnique::Both, a, b, ris, None, &engine);
                        (checked_mul(x, y, policy, &engine), !ok)
                    }
                    Operator::Div => {
                        let failed = match engine.divrem(a, b) {
                            Err(_) => true,
                            Ok((q, r)) => {
                                !run_check(op, CheckTechnique::Tech1, a, b, q, Some(r), &engine)
                            }
                        };
                        (checked_div(x, y, policy, &engine), failed)
                    }
                };
                assert_eq!(
                    out.error(),
                    check_failed || flags.0 || flags.1,
                    "{op} flags {flags:?} {a:?} {b:?} {fault:?}"
                );
            }
        }
    }
    println!(
        "criterion 09 (error propagation): PASS — out.error = check_failure ∨ x.error ∨ y.error, \
         exact over 4 flag combinations x 10^4 pairs per operator on faulty units"
    );
}

#[test]
fn criterion_10_fir_equivalence_and_detection() {
    let start = Instant::now();
    let width = w(8);
    let cfg = FirConfig::new(&[3, -5, 7], width, 64, CheckPolicy::both());
    let reference = ReferenceEngine::new(width);
    let ref_dyn: &dyn ArithmeticEngine = &reference;
    let ref_ops: DynCheckedOps<'_> = CheckedOps::same_unit(cfg.policy, ref_dyn);

    // 1) checked == plain with all flags false on 10^4 fault-free vectors
    for input in seeded_corpus(10_000, 64, width, 0xF1F) {
        let plain = fir_plain(&cfg, &input, &reference);
        let checked_input: Vec<CheckedValue> =
            input.iter().map(|&word| CheckedValue::new(word)).collect();
        let (values, flags) = fir_checked(&cfg, &checked_input, &ref_ops);
        assert_eq!(values, plain);
        assert!(flags.iter().all(|&f| !f));
    }

    // 2) embedded == checked on every tested engine/input pair
    let faults = enumerate_faults(width);
    for fault in faults.iter().step_by(11) {
        let faulty = FaultyEngine::new(width, Some(*fault));
        let faulty_dyn: &dyn ArithmeticEngine = &faulty;
        let ops: DynCheckedOps<'_> = CheckedOps::same_unit(cfg.policy, faulty_dyn);
        for input in seeded_corpus(5, 64, width, fault.cell as u64) {
            let checked_input: Vec<CheckedValue> =
                input.iter().map(|&word| CheckedValue::new(word)).collect();
            assert_eq!(
                fir_checked(&cfg, &checked_input, &ops),
                fir_embedded(&cfg, &checked_input, &ops)
            );
        }
    }

    // 3) same-unit campaign: full sweep x 100 seeded inputs, detection >= 0.90
    let corpus = seeded_corpus(100, 64, width, 7);
    let report = fir_fault_campaign(&cfg, &faults, &corpus, Mode::SameUnit);
    assert_eq!(report.runs, faults.len() as u64 * 100);
    let detection = report.end_to_end_detection().expect("erroneous runs exist");
    assert!(detection >= 0.90, "detection {detection}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    println!(
        "criterion 10 (fir equivalence and detection): PASS — 10^4 fault-free vectors exact, \
         embedded == checked, end-to-end detection {detection:.4} over {} runs ({elapsed:?})",
        report.runs
    );
}

#[test]
fn criterion_11_overhead_ordering() {
    let cfg = FirConfig::bench_default();
    let input = seeded_corpus(1, cfg.input_len, cfg.width, 1).remove(0);
    let report = measure_overhead(&cfg, &input, 31);
    assert!(
        report.plain_ns <= report.embedded_ns && report.embedded_ns <= report.checked_ns,
        "ordering violated: plain {} embedded {} checked {}",
        report.plain_ns,
        report.embedded_ns,
        report.checked_ns
    );
    println!(
        "criterion 11 (overhead): ordering plain <= embedded <= checked PASS \
         ({} <= {} <= {} ns); checked/plain = {:.2}, embedded/plain = {:.2}",
        report.plain_ns, report.embedded_ns, report.checked_ns,
        report.checked_ratio, report.embedded_ratio,
    );
    assert!(
        report.checked_ratio <= 3.0,
        "checked/plain = {:.2} exceeds 3.0: with per-operation dispatch kept opaque so the \
         redundant controls survive optimization, the tech1 policy issues 6 engine operations \
         per tap against 2 for the plain build, a 3.0x op-count floor before any bookkeeping; \
         the bound is unattainable on this toolchain without letting the compiler see through \
         (and then fold away) the controls",
        report.checked_ratio
    );
    println!("criterion 11 (overhead): ratio bound PASS");
}

#[test]
fn criterion_12_determinism_across_threads() {
    let run = |args: &[&str], path: &std::path::Path| {
        let status = sck_binary()
            .args(args)
            .arg("--output")
            .arg(path)
            .status()
            .expect("spawn sck");
        assert!(status.success(), "{args:?}");
        std::fs::read(path).unwrap()
    };
    let dir = tempfile::tempdir().unwrap();

    // the criterion-3 campaign set (table2) as CSV
    let a = run(
        &["table2", "--format", "csv", "--threads", "1"],
        &dir.path().join("t1.csv"),
    );
    let b = run(
        &["table2", "--format", "csv", "--threads", "4"],
        &dir.path().join("t4.csv"),
    );
    assert_eq!(a, b, "table2 CSV differs across worker counts");

    // the criterion-10 campaign as CSV
    let fir_args = [
        "fir", "--campaign", "--bits", "8", "--policy", "both", "--inputs", "100", "--len", "64",
        "--seed", "7", "--format", "csv",
    ];
    let c = run(
        &[&fir_args[..], &["--threads", "1"]].concat(),
        &dir.path().join("f1.csv"),
    );
    let d = run(
        &[&fir_args[..], &["--threads", "4"]].concat(),
        &dir.path().join("f4.csv"),
    );
    assert_eq!(c, d, "fir campaign CSV differs across worker counts");

    // seeded sampling reproduces byte-identically
    let sample_args = [
        "coverage", "--op", "add", "--bits", "12", "--tech", "both", "--mode", "same-unit",
        "--sample", "200000", "--seed", "7", "--format", "csv",
    ];
    let e = run(
        &[&sample_args[..], &["--threads", "1"]].concat(),
        &dir.path().join("s1.csv"),
    );
    let f = run(
        &[&sample_args[..], &["--threads", "4"]].concat(),
        &dir.path().join("s4.csv"),
    );
    assert_eq!(e, f, "sampled CSV differs across worker counts");

    println!(
        "criterion 12 (determinism): PASS — table2, fir campaign, and seeded sampling emit \
         byte-identical CSV with 1 and 4 workers"
    );
}
