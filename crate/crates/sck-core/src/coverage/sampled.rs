use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::classify::classify_with;
use super::{CampaignResult, CampaignSpec, ClassCounts, Sampling};
use crate::bitsim::{enumerate_faults, FaultyEngine};
use crate::{Error, Operator, ReferenceEngine, Word};

/// Samples per RNG block. Blocks are seeded independently, so any partition
/// of blocks across workers reproduces the serial tallies bit-exactly.
const BLOCK: u64 = 1 << 16;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Uniform independent draws over the situation space.
///
/// Deterministic in (spec, seed) and independent of the worker count. The
/// result carries a 95% normal-approximation confidence interval on coverage.
pub fn run_sampled(spec: &CampaignSpec) -> Result<CampaignResult, Error> {
    spec.validate()?;
    let Sampling::Sample { count, seed } = spec.sampling else {
        return Err(Error::SamplingMismatch {
            expected: "sampled",
            got: "exhaustive",
        });
    };
    if count < 10_000 {
        return Err(Error::SampleCountTooSmall(count));
    }

    let faults = enumerate_faults(spec.width);
    let reference = ReferenceEngine::new(spec.width);
    let width = spec.width;
    let n = width.bits();
    let value_range = 1u64 << n;
    let min_word = Word::min_signed(width);
    let minus_one = Word::from_signed(-1, width);

    let blocks = count.div_ceil(BLOCK);
    let counts = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(block + 1)));
            let block_len = BLOCK.min(count - block * BLOCK);
            let mut counts = ClassCounts::default();
            for _ in 0..block_len {
                let fault = &faults[rng.random_range(0..faults.len())];
                let faulty = FaultyEngine::new(width, Some(*fault));
                loop {
                    let op1 = Word::new(rng.random_range(0..value_range) as u32, width);
                    let op2 = Word::new(rng.random_range(0..value_range) as u32, width);
                    if spec.operator == Operator::Div
                        && (op2.is_zero() || (op1 == min_word && op2 == minus_one))
                    {
                        continue; // redraw: stay uniform over the valid space
                    }
                    let class = classify_with(spec, &faulty, &reference, op1, op2)
                        .expect("preconditions excluded by the redraw");
                    counts.record(class);
                    break;
                }
            }
            counts
        })
        .reduce(ClassCounts::default, |mut acc, c| {
            acc.merge(&c);
            acc
        });

    let total = counts.total();
    let coverage = 1.0 - counts.masked as f64 / total as f64;
    let half_width = 1.96 * (coverage * (1.0 - coverage) / total as f64).sqrt();
    Ok(CampaignResult {
        operator: spec.operator,
        technique: spec.technique,
        mode: spec.mode,
        width: n,
        total,
        counts,
        skipped: 0,
        sample_count: Some(count),
        seed: Some(seed),
        ci: Some((coverage - half_width, coverage + half_width)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{CheckTechnique, Width};

    use super::super::Mode;

    #[test]
    fn same_seed_reproduces_exactly() {
        let spec = CampaignSpec::sampled(
            Operator::Add,
            CheckTechnique::Tech1,
            Width::new(5).unwrap(),
            Mode::SameUnit,
            20_000,
            42,
        );
        let a = run_sampled(&spec).unwrap();
        let b = run_sampled(&spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn small_sample_count_is_rejected() {
        let spec = CampaignSpec::sampled(
            Operator::Add,
            CheckTechnique::Tech1,
            Width::new(4).unwrap(),
            Mode::SameUnit,
            100,
            1,
        );
        assert!(matches!(
            run_sampled(&spec),
            Err(Error::SampleCountTooSmall(100))
        ));
    }
}
