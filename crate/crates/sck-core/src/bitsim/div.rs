use super::adder::ripple_add;
use super::fault::FaultDescriptor;
use crate::{DivError, Word};

/// Restoring division with truncated (toward-zero) semantics.
///
/// The magnitudes are divided unsigned; every trial subtraction runs on the
/// (possibly faulty) adder chain and its carry-out decides whether the
/// subtraction is kept, so a chain fault can corrupt remainders and quotient
/// bits alike. Magnitude extraction and the final sign fix-up are fault-free.
pub fn restoring_div(
    a: Word,
    b: Word,
    fault: Option<&FaultDescriptor>,
) -> Result<(Word, Word), DivError> {
    assert_eq!(a.width(), b.width(), "operand width mismatch");
    let width = a.width();
    if b.is_zero() {
        return Err(DivError::DivideByZero);
    }
    if a.to_signed() == width.min_signed() && b.to_signed() == -1 {
        return Err(DivError::Overflow);
    }

    // |min| = 2^(n-1) still fits in n unsigned bits.
    let mag_a = Word::new(a.to_signed().unsigned_abs() as u32, width);
    let mag_b = Word::new(b.to_signed().unsigned_abs() as u32, width);
    let divisor_complement = mag_b.complement();

    let mut remainder = Word::zero(width);
    let mut quotient_bits = 0u32;
    for i in (0..width.bits()).rev() {
        // n-bit remainder register: the shift drops any corrupted top bit.
        let shifted = Word::new((remainder.bits() << 1) | ((mag_a.bits() >> i) & 1), width);
        let trial = ripple_add(shifted, divisor_complement, true, fault);
        if trial.carry_out {
            remainder = trial.sum;
            quotient_bits |= 1 << i;
        } else {
            remainder = shifted;
        }
    }

    let negative_quotient = (a.to_signed() < 0) != (b.to_signed() < 0);
    let quotient = if negative_quotient {
        Word::new(quotient_bits.wrapping_neg(), width)
    } else {
        Word::new(quotient_bits, width)
    };
    let remainder = if a.to_signed() < 0 {
        Word::new(remainder.bits().wrapping_neg(), width)
    } else {
        remainder
    };
    Ok((quotient, remainder))
}
