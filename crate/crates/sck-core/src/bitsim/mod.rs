//! Bit-level functional models of the datapath units.
//!
//! A single n-bit ripple chain of full-adder cells performs every operation:
//! subtraction feeds the 1's complement with carry-in 1, the multiplier runs n
//! shift-and-add steps on the chain, and the divider's trial subtractions run
//! on it too. A [`FaultDescriptor`] pins one functional fault to one cell of
//! that shared chain, permanent across the nominal operation and any control
//! operation executed on the same unit.

mod adder;
mod div;
mod fault;
mod mul;

pub use adder::{full_adder, negate, ripple_add, ripple_sub, RippleSum};
pub use div::restoring_div;
pub use fault::{
    cell_faults, enumerate_faults, CarryAndPin, CellPin, FaultDescriptor, FaultKind, Minterm,
    OutputLine, FAULTS_PER_CELL,
};
pub use mul::shiftadd_mul;

use crate::{ArithmeticEngine, DivError, Width, Word};

/// An [`ArithmeticEngine`] over the bit-level unit models, with at most one
/// injected fault.
///
/// With `fault = None` the engine is bit-exact to [`crate::ReferenceEngine`].
/// Engines are plain data: stateless, copyable, shareable across threads.
#[derive(Debug, Clone, Copy)]
pub struct FaultyEngine {
    width: Width,
    fault: Option<FaultDescriptor>,
}

impl FaultyEngine {
    pub fn new(width: Width, fault: Option<FaultDescriptor>) -> Self {
        if let Some(f) = &fault {
            assert!(f.cell < width.bits(), "fault cell outside the chain");
        }
        FaultyEngine { width, fault }
    }

    pub fn fault_free(width: Width) -> Self {
        FaultyEngine { width, fault: None }
    }

    pub fn fault(&self) -> Option<&FaultDescriptor> {
        self.fault.as_ref()
    }
}

impl ArithmeticEngine for FaultyEngine {
    fn width(&self) -> Width {
        self.width
    }

    fn add(&self, a: Word, b: Word) -> Word {
        ripple_add(a, b, false, self.fault.as_ref()).sum
    }

    fn sub(&self, a: Word, b: Word) -> Word {
        ripple_sub(a, b, self.fault.as_ref())
    }

    fn neg(&self, a: Word) -> Word {
        negate(a, self.fault.as_ref())
    }

    fn mul(&self, a: Word, b: Word) -> Word {
        shiftadd_mul(a, b, self.fault.as_ref())
    }

    fn divrem(&self, a: Word, b: Word) -> Result<(Word, Word), DivError> {
        restoring_div(a, b, self.fault.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ReferenceEngine;

    fn w(n: u32) -> Width {
        Width::new(n).unwrap()
    }

    #[test]
    fn fault_free_engine_matches_reference_n6() {
        let width = w(6);
        let sim = FaultyEngine::fault_free(width);
        let reference = ReferenceEngine::new(width);
        for a in 0..64u32 {
            for b in 0..64u32 {
                let (wa, wb) = (Word::new(a, width), Word::new(b, width));
                assert_eq!(sim.add(wa, wb), reference.add(wa, wb));
                assert_eq!(sim.sub(wa, wb), reference.sub(wa, wb));
                assert_eq!(sim.mul(wa, wb), reference.mul(wa, wb));
                assert_eq!(sim.divrem(wa, wb).ok(), reference.divrem(wa, wb).ok());
            }
            let wa = Word::new(a, width);
            assert_eq!(sim.neg(wa), ReferenceEngine::new(width).neg(wa));
        }
    }

    #[test]
    fn sub_is_add_of_complement_under_every_fault_n2() {
        let width = w(2);
        for fault in enumerate_faults(width) {
            for a in 0..4u32 {
                for b in 0..4u32 {
                    let (wa, wb) = (Word::new(a, width), Word::new(b, width));
                    let direct = ripple_sub(wa, wb, Some(&fault));
                    let composed = ripple_add(wa, wb.complement(), true, Some(&fault)).sum;
                    assert_eq!(direct, composed);
                }
            }
        }
    }
}
