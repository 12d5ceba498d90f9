//! Integer FIR filter in three builds: plain, checked (wrapped values), and
//! embedded (hand-inlined checks), plus an end-to-end fault campaign and an
//! overhead measurement harness.

use std::fs;
use std::hint::black_box;
use std::path::Path;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitsim::{FaultDescriptor, FaultyEngine};
use crate::coverage::Mode;
use crate::{
    make_checked, ArithmeticEngine, CheckPolicy, CheckedOps, CheckedValue, DynCheckedOps, Error,
    ReferenceEngine, Width, Word,
};

/// Which build of the filter runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FirVariant {
    Plain,
    Checked,
    Embedded,
}

/// Filter description: taps, operand width, and the checking policy used by
/// the checked builds.
#[derive(Debug, Clone)]
pub struct FirConfig {
    pub taps: Vec<Word>,
    pub width: Width,
    pub input_len: usize,
    pub policy: CheckPolicy,
    pub variant: FirVariant,
}

/// Default benchmark taps: a symmetric 16-tap integer lowpass.
pub const BENCH_TAPS: [i64; 16] = [
    -2, -4, -6, -3, 9, 28, 49, 62, 62, 49, 28, 9, -3, -6, -4, -2,
];

impl FirConfig {
    pub fn new(taps: &[i64], width: Width, input_len: usize, policy: CheckPolicy) -> Self {
        assert!(!taps.is_empty(), "taps must be non-empty");
        FirConfig {
            taps: taps.iter().map(|&t| Word::from_signed(t, width)).collect(),
            width,
            input_len,
            policy,
            variant: FirVariant::Plain,
        }
    }

    /// The default overhead-measurement workload.
    pub fn bench_default() -> Self {
        FirConfig::new(
            &BENCH_TAPS,
            Width::new(16).unwrap(),
            4096,
            CheckPolicy::tech1(),
        )
    }
}

/// Plain build: `y[k] = sum_j taps[j] * x[k-j]`, modular, every multiply and
/// add routed through the engine. Samples before the start are zero.
pub fn fir_plain<E: ArithmeticEngine + ?Sized>(
    cfg: &FirConfig,
    input: &[Word],
    engine: &E,
) -> Vec<Word> {
    let zero = Word::zero(cfg.width);
    let mut output = Vec::with_capacity(input.len());
    for k in 0..input.len() {
        let mut acc = zero;
        for (j, &tap) in cfg.taps.iter().enumerate() {
            let x = if j <= k { input[k - j] } else { zero };
            acc = engine.add(acc, engine.mul(tap, x));
        }
        output.push(acc);
    }
    output
}

/// Checked build: the same dataflow with every multiply and add replaced by
/// checked operations; each output sample carries the accumulated sticky
/// error bit.
pub fn fir_checked<N, C>(
    cfg: &FirConfig,
    input: &[CheckedValue],
    ops: &CheckedOps<'_, N, C>,
) -> (Vec<Word>, Vec<bool>)
where
    N: ArithmeticEngine + ?Sized,
    C: ArithmeticEngine + ?Sized,
{
    let zero = make_checked(0, cfg.width);
    let taps: Vec<CheckedValue> = cfg.taps.iter().map(|&t| CheckedValue::new(t)).collect();
    let mut values = Vec::with_capacity(input.len());
    let mut flags = Vec::with_capacity(input.len());
    for k in 0..input.len() {
        let mut acc = zero;
        for (j, &tap) in taps.iter().enumerate() {
            let x = if j <= k { input[k - j] } else { zero };
            acc = ops.add(acc, ops.mul(tap, x));
        }
        values.push(acc.value());
        flags.push(acc.error());
    }
    (values, flags)
}

/// Embedded build: semantically identical to [`fir_checked`] but written as
/// straight-line inlined checks over raw words, with one running error flag
/// per output sample and no wrapper values.
pub fn fir_embedded<N, C>(
    cfg: &FirConfig,
    input: &[CheckedValue],
    ops: &CheckedOps<'_, N, C>,
) -> (Vec<Word>, Vec<bool>)
where
    N: ArithmeticEngine + ?Sized,
    C: ArithmeticEngine + ?Sized,
{
    let policy = ops.policy();
    let nominal = ops.nominal();
    let control = ops.control();
    let zero = Word::zero(cfg.width);
    let mut values = Vec::with_capacity(input.len());
    let mut flags = Vec::with_capacity(input.len());
    for k in 0..input.len() {
        let mut acc = zero;
        let mut err = false;
        for (j, &tap) in cfg.taps.iter().enumerate() {
            let (x, x_err) = if j <= k {
                input[k - j].observe()
            } else {
                (zero, false)
            };
            let product = nominal.mul(tap, x);
            let mul_ok = crate::checked::mul_passes(policy.mul, tap, x, product, control);
            let sum = nominal.add(acc, product);
            let add_ok = crate::checked::add_passes(policy.add, acc, product, sum, control);
            err = err || x_err || !mul_ok || !add_ok;
            acc = sum;
        }
        values.push(acc);
        flags.push(err);
    }
    (values, flags)
}

/// Outcome tally of an end-to-end fault-injection campaign over whole filter
/// runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FirCampaignReport {
    /// Fault × input combinations executed.
    pub runs: u64,
    /// Runs whose output stream differs from the fault-free reference.
    pub erroneous_outputs: u64,
    /// Runs with at least one flagged output sample.
    pub flagged_runs: u64,
    /// Erroneous runs that were flagged.
    pub flagged_erroneous: u64,
}

impl FirCampaignReport {
    /// Flagged fraction among erroneous runs; `None` when nothing went wrong.
    pub fn end_to_end_detection(&self) -> Option<f64> {
        if self.erroneous_outputs == 0 {
            None
        } else {
            Some(self.flagged_erroneous as f64 / self.erroneous_outputs as f64)
        }
    }

    fn merge(mut self, other: FirCampaignReport) -> FirCampaignReport {
        self.runs += other.runs;
        self.erroneous_outputs += other.erroneous_outputs;
        self.flagged_runs += other.flagged_runs;
        self.flagged_erroneous += other.flagged_erroneous;
        self
    }
}

/// Runs the checked filter once per (fault, input) combination and tallies
/// erroneous and flagged runs against the fault-free reference output.
pub fn fir_fault_campaign(
    cfg: &FirConfig,
    faults: &[FaultDescriptor],
    corpus: &[Vec<Word>],
    mode: Mode,
) -> FirCampaignReport {
    let reference = ReferenceEngine::new(cfg.width);
    let expected: Vec<Vec<Word>> = corpus
        .iter()
        .map(|input| fir_plain(cfg, input, &reference))
        .collect();
    let checked_corpus: Vec<Vec<CheckedValue>> = corpus
        .iter()
        .map(|input| input.iter().map(|&w| CheckedValue::new(w)).collect())
        .collect();

    faults
        .par_iter()
        .map(|fault| {
            let faulty = FaultyEngine::new(cfg.width, Some(*fault));
            let faulty_dyn: &dyn ArithmeticEngine = &faulty;
            let ops: DynCheckedOps<'_> = match mode {
                Mode::SameUnit => CheckedOps::same_unit(cfg.policy, faulty_dyn),
                Mode::CrossUnit => CheckedOps::cross_unit(cfg.policy, faulty_dyn, &reference),
            };
            let mut report = FirCampaignReport::default();
            for (input, expected) in checked_corpus.iter().zip(&expected) {
                let (values, flags) = match cfg.variant {
                    FirVariant::Embedded => fir_embedded(cfg, input, &ops),
                    _ => fir_checked(cfg, input, &ops),
                };
                let erroneous = &values != expected;
                let flagged = flags.iter().any(|&f| f);
                report.runs += 1;
                report.erroneous_outputs += erroneous as u64;
                report.flagged_runs += flagged as u64;
                report.flagged_erroneous += (erroneous && flagged) as u64;
            }
            report
        })
        .reduce(FirCampaignReport::default, FirCampaignReport::merge)
}

/// Deterministic random input vectors for campaigns and equivalence suites.
pub fn seeded_corpus(count: usize, len: usize, width: Width, seed: u64) -> Vec<Vec<Word>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..len)
                .map(|_| Word::new(rng.random_range(0..(1u64 << width.bits())) as u32, width))
                .collect()
        })
        .collect()
}

/// Wall-clock medians of the three builds on the reference engine.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OverheadReport {
    pub repetitions: u32,
    pub plain_ns: u64,
    pub checked_ns: u64,
    pub embedded_ns: u64,
    pub checked_ratio: f64,
    pub embedded_ratio: f64,
}

/// Times each build `repetitions` times on the same input and reports the
/// medians and the checked/plain and embedded/plain ratios.
///
/// All three builds run over the engine as a runtime-selected unit (the same
/// dispatch the fault campaigns use), so the comparison isolates the checking
/// work rather than per-build compiler specialization.
pub fn measure_overhead(cfg: &FirConfig, input: &[Word], repetitions: u32) -> OverheadReport {
    assert!(repetitions >= 1);
    let reference = ReferenceEngine::new(cfg.width);
    let engine: &dyn ArithmeticEngine = black_box(&reference);
    let ops: DynCheckedOps<'_> = CheckedOps::same_unit(cfg.policy, engine);
    let checked_input: Vec<CheckedValue> = input.iter().map(|&w| CheckedValue::new(w)).collect();

    let mut plain = Vec::with_capacity(repetitions as usize);
    let mut checked = Vec::with_capacity(repetitions as usize);
    let mut embedded = Vec::with_capacity(repetitions as usize);
    for _ in 0..repetitions {
        let t = Instant::now();
        black_box(fir_plain(cfg, black_box(input), engine));
        plain.push(t.elapsed().as_nanos() as u64);

        let t = Instant::now();
        black_box(fir_checked(cfg, black_box(&checked_input), &ops));
        checked.push(t.elapsed().as_nanos() as u64);

        let t = Instant::now();
        black_box(fir_embedded(cfg, black_box(&checked_input), &ops));
        embedded.push(t.elapsed().as_nanos() as u64);
    }
    let median = |mut v: Vec<u64>| -> u64 {
        v.sort_unstable();
        v[v.len() / 2]
    };
    let (plain_ns, checked_ns, embedded_ns) = (median(plain), median(checked), median(embedded));
    OverheadReport {
        repetitions,
        plain_ns,
        checked_ns,
        embedded_ns,
        checked_ratio: checked_ns as f64 / plain_ns as f64,
        embedded_ratio: embedded_ns as f64 / plain_ns as f64,
    }
}

/// Reads one decimal integer per line; blank lines are not allowed.
pub fn read_integer_lines(path: &Path) -> Result<Vec<i64>, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    text.lines()
        .enumerate()
        .map(|(index, line)| {
            line.trim().parse::<i64>().map_err(|_| Error::MalformedInteger {
                path: path.to_path_buf(),
                line: index + 1,
                text: line.to_string(),
            })
        })
        .collect()
}
