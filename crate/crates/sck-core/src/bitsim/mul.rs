use super::adder::ripple_add;
use super::fault::FaultDescriptor;
use crate::Word;

/// Shift-and-add multiplication: low `n` bits of `a * b`.
///
/// Runs `n` accumulation steps, every one through the same n-bit adder chain,
/// so a chain fault is live in each step. The partial-product AND gating and
/// the shifts are combinational and fault-free.
pub fn shiftadd_mul(a: Word, b: Word, fault: Option<&FaultDescriptor>) -> Word {
    assert_eq!(a.width(), b.width(), "operand width mismatch");
    let width = a.width();
    let mut acc = Word::zero(width);
    for step in 0..width.bits() {
        let partial = if b.bit(step) {
            Word::new(a.bits() << step, width)
        } else {
            Word::zero(width)
        };
        acc = ripple_add(acc, partial, false, fault).sum;
    }
    acc
}
