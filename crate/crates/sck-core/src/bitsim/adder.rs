use super::fault::{CarryAndPin, CellPin, FaultDescriptor, FaultKind, OutputLine};
use crate::Word;

/// One full-adder cell. `fault` is the fault bound to *this* cell, if any.
pub fn full_adder(a: bool, b: bool, cin: bool, fault: Option<&FaultKind>) -> (bool, bool) {
    let Some(kind) = fault else {
        return plain(a, b, cin);
    };
    match *kind {
        FaultKind::PinStuck { pin, value } => {
            let a = if pin == CellPin::OperandA { value } else { a };
            let b = if pin == CellPin::OperandB { value } else { b };
            let cin = if pin == CellPin::CarryIn { value } else { cin };
            let (mut sum, mut cout) = plain(a, b, cin);
            match pin {
                CellPin::Sum => sum = value,
                CellPin::CarryOut => cout = value,
                _ => {}
            }
            (sum, cout)
        }
        FaultKind::OutputFlip { minterm, line } => {
            let (mut sum, mut cout) = plain(a, b, cin);
            if minterm.matches(a, b, cin) {
                match line {
                    OutputLine::Sum => sum = !sum,
                    OutputLine::Carry => cout = !cout,
                }
            }
            (sum, cout)
        }
        FaultKind::CarryAndStuck { pin, value } => {
            let x = a ^ b;
            let sum = x ^ cin;
            let ga = if pin == CarryAndPin::GenerateA { value } else { a };
            let gb = if pin == CarryAndPin::GenerateB { value } else { b };
            let pc = if pin == CarryAndPin::PropagateCarry {
                value
            } else {
                cin
            };
            (sum, (ga && gb) || (x && pc))
        }
    }
}

fn plain(a: bool, b: bool, cin: bool) -> (bool, bool) {
    (a ^ b ^ cin, (a && b) || (a && cin) || (b && cin))
}

/// Result of a ripple-carry addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RippleSum {
    pub sum: Word,
    pub carry_out: bool,
    /// Two's-complement overflow: carry into the top cell xor carry out of it.
    pub overflow: bool,
}

/// Chains `n` full-adder cells LSB to MSB, binding `fault` to its cell.
pub fn ripple_add(a: Word, b: Word, cin: bool, fault: Option<&FaultDescriptor>) -> RippleSum {
    assert_eq!(a.width(), b.width(), "operand width mismatch");
    let n = a.width().bits();
    let mut bits = 0u32;
    let mut carry = cin;
    let mut carry_into_top = cin;
    for k in 0..n {
        let cell_fault = fault.filter(|f| f.cell == k).map(|f| &f.kind);
        carry_into_top = carry;
        let (s, cout) = full_adder(a.bit(k), b.bit(k), carry, cell_fault);
        bits |= (s as u32) << k;
        carry = cout;
    }
    RippleSum {
        sum: Word::new(bits, a.width()),
        carry_out: carry,
        overflow: carry ^ carry_into_top,
    }
}

/// `a - b` through the chain: 1's complement of the subtrahend (combinational
/// and fault-free) plus carry-in 1. Only the adder chain carries the fault.
pub fn ripple_sub(a: Word, b: Word, fault: Option<&FaultDescriptor>) -> Word {
    ripple_add(a, b.complement(), true, fault).sum
}

/// Two's-complement negation routed through the (possibly faulty) chain.
pub fn negate(x: Word, fault: Option<&FaultDescriptor>) -> Word {
    ripple_add(x.complement(), Word::zero(x.width()), true, fault).sum
}
