use std::fmt;

use crate::Error;

/// Widest supported word.
pub const MAX_WIDTH: u32 = 32;

/// Operand width in bits, restricted to `1..=32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Width(u8);

impl Width {
    pub fn new(bits: u32) -> Result<Self, Error> {
        if (1..=MAX_WIDTH).contains(&bits) {
            Ok(Width(bits as u8))
        } else {
            Err(Error::WidthOutOfRange(bits))
        }
    }

    #[inline]
    #[inline]
    pub fn bits(self) -> u32 {
        u32::from(self.0)
    }

    /// Bit mask covering exactly this width.
    #[inline]
    pub fn mask(self) -> u32 {
        u32::MAX >> (MAX_WIDTH - self.bits())
    }

    pub fn min_signed(self) -> i64 {
        -(1i64 << (self.bits() - 1))
    }

    pub fn max_signed(self) -> i64 {
        (1i64 << (self.bits() - 1)) - 1
    }
}

impl fmt::Debug for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An n-bit two's-complement machine word with its width attached.
///
/// The bit pattern is kept canonical (reduced modulo `2^n`), so equality is
/// bit-pattern equality and the signed value is always in
/// `[-2^(n-1), 2^(n-1) - 1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    bits: u32,
    width: Width,
}

impl Word {
    /// Builds a word from a raw pattern, reducing it modulo `2^n`.
    #[inline]
    pub fn new(bits: u32, width: Width) -> Self {
        Word {
            bits: bits & width.mask(),
            width,
        }
    }

    /// Builds a word from a signed integer, reducing it modulo `2^n`.
    pub fn from_signed(value: i64, width: Width) -> Self {
        let modulus = 1i128 << width.bits();
        let reduced = (i128::from(value)).rem_euclid(modulus) as u32;
        Word {
            bits: reduced,
            width,
        }
    }

    pub fn zero(width: Width) -> Self {
        Word { bits: 0, width }
    }

    pub fn one(width: Width) -> Self {
        Word::new(1, width)
    }

    /// The most negative representable value (`-2^(n-1)`).
    pub fn min_signed(width: Width) -> Self {
        Word::new(1 << (width.bits() - 1), width)
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn width(self) -> Width {
        self.width
    }

    #[inline]
    pub fn bit(self, index: u32) -> bool {
        debug_assert!(index < self.width.bits());
        (self.bits >> index) & 1 == 1
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Signed interpretation of the bit pattern.
    pub fn to_signed(self) -> i64 {
        let n = self.width.bits();
        if self.bits >> (n - 1) == 1 {
            i64::from(self.bits) - (1i64 << n)
        } else {
            i64::from(self.bits)
        }
    }

    /// Bitwise complement, still reduced to the width.
    pub fn complement(self) -> Self {
        Word::new(!self.bits, self.width)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}w{}", self.to_signed(), self.width)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signed())
    }
}
