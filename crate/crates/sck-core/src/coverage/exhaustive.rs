use rayon::prelude::*;

use super::classify::classify_with;
use super::{
    situation_count, CampaignResult, CampaignSpec, ClassCounts, OutcomeClass, Sampling,
};
use crate::bitsim::{enumerate_faults, FaultyEngine};
use crate::{Error, ReferenceEngine, Word};

/// Packs a situation into a stable identifier: fault index in enumeration
/// order, then both operand patterns.
pub fn situation_id(spec: &CampaignSpec, fault_index: u32, op1: Word, op2: Word) -> u64 {
    let n = spec.width.bits();
    ((fault_index as u64) << (2 * n)) | ((op1.bits() as u64) << n) | op2.bits() as u64
}

/// Classifies every (fault, op1, op2) situation of the spec's space.
///
/// Embarrassingly parallel over faults; per-class counts are integer sums, so
/// the result is identical for any worker count, including one.
pub fn run_exhaustive(spec: &CampaignSpec) -> Result<CampaignResult, Error> {
    spec.validate()?;
    if let Sampling::Sample { .. } = spec.sampling {
        return Err(Error::SamplingMismatch {
            expected: "exhaustive",
            got: "sampled",
        });
    }
    let required = situation_count(spec.width);
    if required > spec.budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: spec.budget,
        });
    }

    let faults = enumerate_faults(spec.width);
    let reference = ReferenceEngine::new(spec.width);
    let per_fault: Vec<(ClassCounts, u64)> = faults
        .par_iter()
        .map(|fault| {
            let faulty = FaultyEngine::new(spec.width, Some(*fault));
            let mut counts = ClassCounts::default();
            let mut skipped = 0u64;
            for_each_pair(spec, |op1, op2| {
                match classify_with(spec, &faulty, &reference, op1, op2) {
                    Some(class) => counts.record(class),
                    None => skipped += 1,
                }
            });
            (counts, skipped)
        })
        .collect();

    let mut counts = ClassCounts::default();
    let mut skipped = 0u64;
    for (c, s) in &per_fault {
        counts.merge(c);
        skipped += s;
    }
    Ok(CampaignResult {
        operator: spec.operator,
        technique: spec.technique,
        mode: spec.mode,
        width: spec.width.bits(),
        total: counts.total(),
        counts,
        skipped,
        sample_count: None,
        seed: None,
        ci: None,
    })
}

/// The identifiers of every masked situation, ascending. Intended for small
/// widths where the masked sets themselves are under study.
pub fn masked_situations(spec: &CampaignSpec) -> Result<Vec<u64>, Error> {
    spec.validate()?;
    let required = situation_count(spec.width);
    if required > spec.budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: spec.budget,
        });
    }
    let faults = enumerate_faults(spec.width);
    let reference = ReferenceEngine::new(spec.width);
    let mut ids: Vec<u64> = faults
        .par_iter()
        .enumerate()
        .map(|(index, fault)| {
            let faulty = FaultyEngine::new(spec.width, Some(*fault));
            let mut local = Vec::new();
            for_each_pair(spec, |op1, op2| {
                if classify_with(spec, &faulty, &reference, op1, op2)
                    == Some(OutcomeClass::Masked)
                {
                    local.push(situation_id(spec, index as u32, op1, op2));
                }
            });
            local
        })
        .flatten()
        .collect();
    ids.sort_unstable();
    Ok(ids)
}

fn for_each_pair(spec: &CampaignSpec, mut visit: impl FnMut(Word, Word)) {
    let n = spec.width.bits();
    let limit = 1u64 << n;
    for a in 0..limit {
        for b in 0..limit {
            visit(
                Word::new(a as u32, spec.width),
                Word::new(b as u32, spec.width),
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{CheckTechnique, Operator, Width};

    use super::super::Mode;

    fn w(n: u32) -> Width {
        Width::new(n).unwrap()
    }

    #[test]
    fn budget_refusal() {
        let spec = CampaignSpec::exhaustive(
            Operator::Add,
            CheckTechnique::Tech1,
            w(14),
            Mode::SameUnit,
        );
        assert!(matches!(
            run_exhaustive(&spec),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn n1_add_tech1_same_unit() {
        let spec = CampaignSpec::exhaustive(
            Operator::Add,
            CheckTechnique::Tech1,
            w(1),
            Mode::SameUnit,
        );
        let result = run_exhaustive(&spec).unwrap();
        assert_eq!(result.total, 128);
        assert_eq!(result.counts.masked, 6);
        assert!((result.coverage() - 0.953125).abs() < 1e-12);
    }

    #[test]
    fn masking_exists_at_n2_same_unit() {
        let spec = CampaignSpec::exhaustive(
            Operator::Add,
            CheckTechnique::Tech1,
            w(2),
            Mode::SameUnit,
        );
        let result = run_exhaustive(&spec).unwrap();
        assert!(result.counts.masked >= 1);
        let ids = masked_situations(&spec).unwrap();
        assert_eq!(ids.len() as u64, result.counts.masked);
    }

    #[test]
    fn division_space_accounting() {
        let spec = CampaignSpec::exhaustive(
            Operator::Div,
            CheckTechnique::Tech1,
            w(3),
            Mode::SameUnit,
        );
        let result = run_exhaustive(&spec).unwrap();
        // per fault: 2^n zero-divisor pairs plus the overflow pair
        let per_fault = (1u64 << 3) + 1;
        assert_eq!(result.skipped, 96 * per_fault);
        assert_eq!(
            u128::from(result.total + result.skipped),
            situation_count(w(3))
        );
    }
}
