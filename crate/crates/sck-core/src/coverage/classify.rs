use super::{CampaignSpec, Mode, OutcomeClass};
use crate::bitsim::{FaultDescriptor, FaultyEngine};
use crate::{run_check, ArithmeticEngine, Operator, ReferenceEngine, Word};

/// Classifies one situation, or `None` when the operand pair is excluded by
/// the operator's preconditions (zero divisor, `min / -1`).
///
/// The nominal operation always runs on the faulty unit; the controls run on
/// the same unit or on the exact reference unit depending on the mode. The
/// nominal result counts as correct when it equals exact modular arithmetic
/// (for division: the quotient, the delivered value).
pub fn classify(
    spec: &CampaignSpec,
    fault: &FaultDescriptor,
    op1: Word,
    op2: Word,
) -> Option<OutcomeClass> {
    let faulty = FaultyEngine::new(spec.width, Some(*fault));
    let reference = ReferenceEngine::new(spec.width);
    classify_with(spec, &faulty, &reference, op1, op2)
}

pub(super) fn classify_with(
    spec: &CampaignSpec,
    faulty: &FaultyEngine,
    reference: &ReferenceEngine,
    op1: Word,
    op2: Word,
) -> Option<OutcomeClass> {
    let control: &dyn ArithmeticEngine = match spec.mode {
        Mode::SameUnit => faulty,
        Mode::CrossUnit => reference,
    };
    let (ris, rem, correct) = match spec.operator {
        Operator::Add => {
            let ris = faulty.add(op1, op2);
            (ris, None, ris == reference.add(op1, op2))
        }
        Operator::Sub => {
            let ris = faulty.sub(op1, op2);
            (ris, None, ris == reference.sub(op1, op2))
        }
        Operator::Mul => {
            let ris = faulty.mul(op1, op2);
            (ris, None, ris == reference.mul(op1, op2))
        }
        Operator::Div => {
            let (exact_q, _) = reference.divrem(op1, op2).ok()?;
            let (q, r) = faulty
                .divrem(op1, op2)
                .expect("divrem preconditions already excluded");
            (q, Some(r), q == exact_q)
        }
    };
    let passed = run_check(spec.operator, spec.technique, op1, op2, ris, rem, control);
    Some(match (correct, passed) {
        (true, true) => OutcomeClass::CorrectSilent,
        (true, false) => OutcomeClass::DetectedSilent,
        (false, false) => OutcomeClass::DetectedErroneous,
        (false, true) => OutcomeClass::Masked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitsim::{enumerate_faults, FaultKind, Minterm, OutputLine};
    use crate::{CheckTechnique, Width};

    fn w(n: u32) -> Width {
        Width::new(n).unwrap()
    }

    #[test]
    fn cross_unit_wrong_result_is_always_detected() {
        // exact subtraction is injective in ris, so a wrong sum cannot pass
        let spec = CampaignSpec::exhaustive(
            Operator::Add,
            CheckTechnique::Tech1,
            w(2),
            Mode::CrossUnit,
        );
        for fault in enumerate_faults(w(2)) {
            for a in 0..4 {
                for b in 0..4 {
                    let class =
                        classify(&spec, &fault, Word::new(a, w(2)), Word::new(b, w(2))).unwrap();
                    assert_ne!(class, OutcomeClass::Masked);
                }
            }
        }
    }

    #[test]
    fn unexercised_fault_is_correct_silent() {
        let spec = CampaignSpec::exhaustive(
            Operator::Add,
            CheckTechnique::Tech1,
            w(2),
            Mode::SameUnit,
        );
        let fault = FaultDescriptor {
            cell: 0,
            kind: FaultKind::OutputFlip {
                minterm: Minterm::new(true, true, true),
                line: OutputLine::Sum,
            },
        };
        // (0, 0): neither the add nor the control subtraction ever presents
        // (1,1,1) to cell 0
        let class = classify(&spec, &fault, Word::zero(w(2)), Word::zero(w(2))).unwrap();
        assert_eq!(class, OutcomeClass::CorrectSilent);
    }

    #[test]
    fn division_preconditions_are_skipped() {
        let spec = CampaignSpec::exhaustive(
            Operator::Div,
            CheckTechnique::Tech1,
            w(4),
            Mode::SameUnit,
        );
        let fault = enumerate_faults(w(4))[0];
        assert_eq!(classify(&spec, &fault, Word::new(5, w(4)), Word::zero(w(4))), None);
        assert_eq!(
            classify(&spec, &fault, Word::from_signed(-8, w(4)), Word::from_signed(-1, w(4))),
            None
        );
    }
}
