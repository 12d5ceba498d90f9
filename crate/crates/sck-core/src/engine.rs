use crate::{Width, Word};

/// Division preconditions that a datapath cannot satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum DivError {
    #[error("division by zero")]
    DivideByZero,
    /// `min / -1`: the quotient is not representable.
    #[error("quotient overflow")]
    Overflow,
}

/// A fixed-width functional unit: the arithmetic everything else runs on.
///
/// Implementations are either exact modular host arithmetic
/// ([`ReferenceEngine`]) or bit-level unit models with injectable faults
/// ([`crate::bitsim::FaultyEngine`]). All operations reduce modulo `2^n`;
/// `divrem` is truncated (toward-zero) signed division.
pub trait ArithmeticEngine: Sync {
    fn width(&self) -> Width;
    fn add(&self, a: Word, b: Word) -> Word;
    fn sub(&self, a: Word, b: Word) -> Word;
    fn neg(&self, a: Word) -> Word;
    fn mul(&self, a: Word, b: Word) -> Word;
    fn divrem(&self, a: Word, b: Word) -> Result<(Word, Word), DivError>;
}

/// Exact two's-complement modular arithmetic on the host.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceEngine {
    width: Width,
}

impl ReferenceEngine {
    pub fn new(width: Width) -> Self {
        ReferenceEngine { width }
    }

    fn check_operands(&self, a: Word, b: Word) {
        debug_assert_eq!(a.width(), self.width, "operand width mismatch");
        debug_assert_eq!(b.width(), self.width, "operand width mismatch");
    }
}

impl ArithmeticEngine for ReferenceEngine {
    #[inline]
    fn width(&self) -> Width {
        self.width
    }

    #[inline]
    fn add(&self, a: Word, b: Word) -> Word {
        self.check_operands(a, b);
        Word::new(a.bits().wrapping_add(b.bits()), self.width)
    }

    #[inline]
    fn sub(&self, a: Word, b: Word) -> Word {
        self.check_operands(a, b);
        Word::new(a.bits().wrapping_sub(b.bits()), self.width)
    }

    #[inline]
    fn neg(&self, a: Word) -> Word {
        debug_assert_eq!(a.width(), self.width, "operand width mismatch");
        Word::new(a.bits().wrapping_neg(), self.width)
    }

    #[inline]
    fn mul(&self, a: Word, b: Word) -> Word {
        self.check_operands(a, b);
        Word::new(a.bits().wrapping_mul(b.bits()), self.width)
    }

    fn divrem(&self, a: Word, b: Word) -> Result<(Word, Word), DivError> {
        self.check_operands(a, b);
        if b.is_zero() {
            return Err(DivError::DivideByZero);
        }
        let (sa, sb) = (a.to_signed(), b.to_signed());
        if sa == self.width.min_signed() && sb == -1 {
            return Err(DivError::Overflow);
        }
        Ok((
            Word::from_signed(sa / sb, self.width),
            Word::from_signed(sa % sb, self.width),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u32) -> Width {
        Width::new(n).unwrap()
    }

    #[test]
    fn modular_identities() {
        let e = ReferenceEngine::new(w(8));
        let a = Word::from_signed(200, w(8));
        let b = Word::from_signed(100, w(8));
        assert_eq!(e.add(a, b).bits(), 44); // 300 mod 256
        assert_eq!(e.sub(e.add(a, b), a), b);
        assert_eq!(e.add(e.mul(e.neg(a), b), e.mul(a, b)), Word::zero(w(8)));
    }

    #[test]
    fn truncated_division() {
        let e = ReferenceEngine::new(w(8));
        let q = |a: i64, b: i64| {
            e.divrem(Word::from_signed(a, w(8)), Word::from_signed(b, w(8)))
                .map(|(q, r)| (q.to_signed(), r.to_signed()))
        };
        assert_eq!(q(7, 2), Ok((3, 1)));
        assert_eq!(q(-7, 2), Ok((-3, -1)));
        assert_eq!(q(7, -2), Ok((-3, 1)));
        assert_eq!(q(7, 0), Err(DivError::DivideByZero));
        assert_eq!(q(-128, -1), Err(DivError::Overflow));
    }
}
