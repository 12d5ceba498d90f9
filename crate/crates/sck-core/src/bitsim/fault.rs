use crate::Width;

/// Faults injectable into one full-adder cell of the shared ripple chain.
pub const FAULTS_PER_CELL: u32 = 32;

/// The three-bit input combination of a full-adder cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Minterm {
    pub a: bool,
    pub b: bool,
    pub cin: bool,
}

impl Minterm {
    pub fn new(a: bool, b: bool, cin: bool) -> Self {
        Minterm { a, b, cin }
    }

    /// Index in `0..8`, bit layout `a | b | cin` from MSB to LSB.
    pub fn index(self) -> usize {
        ((self.a as usize) << 2) | ((self.b as usize) << 1) | (self.cin as usize)
    }

    pub fn from_index(index: usize) -> Self {
        debug_assert!(index < 8);
        Minterm {
            a: index & 4 != 0,
            b: index & 2 != 0,
            cin: index & 1 != 0,
        }
    }

    pub fn matches(self, a: bool, b: bool, cin: bool) -> bool {
        self.a == a && self.b == b && self.cin == cin
    }
}

/// One of the two outputs of a full-adder cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputLine {
    Sum,
    Carry,
}

/// An I/O line of the cell, viewed as a black box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellPin {
    OperandA,
    OperandB,
    CarryIn,
    Sum,
    CarryOut,
}

/// Input pins of the two carry AND gates inside the cell
/// (`cout = a·b + (a^b)·cin`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CarryAndPin {
    /// `a` into the generate gate `a·b`.
    GenerateA,
    /// `b` into the generate gate `a·b`.
    GenerateB,
    /// `cin` into the propagate gate `(a^b)·cin`.
    PropagateCarry,
}

/// Functional fault of a single full-adder cell.
///
/// The universe has exactly [`FAULTS_PER_CELL`] members per cell: 10 stuck-at
/// faults on the I/O pins, 16 single-minterm output inversions, and 6 stuck-at
/// faults on the carry AND-gate input pins. Every fault is permanent: it is
/// applied on each evaluation of its cell, in the nominal operation and in any
/// control operation run on the same unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaultKind {
    /// An I/O line stuck at a fixed value.
    PinStuck { pin: CellPin, value: bool },
    /// One output line inverted on exactly one input combination.
    OutputFlip { minterm: Minterm, line: OutputLine },
    /// A carry AND-gate input pin stuck at a fixed value.
    CarryAndStuck { pin: CarryAndPin, value: bool },
}

/// A fault bound to a cell position of the ripple chain (LSB first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaultDescriptor {
    pub cell: u32,
    pub kind: FaultKind,
}

const PINS: [CellPin; 5] = [
    CellPin::OperandA,
    CellPin::OperandB,
    CellPin::CarryIn,
    CellPin::Sum,
    CellPin::CarryOut,
];

const AND_PINS: [CarryAndPin; 3] = [
    CarryAndPin::GenerateA,
    CarryAndPin::GenerateB,
    CarryAndPin::PropagateCarry,
];

/// Enumerates all cell faults for one cell, in a fixed order.
pub fn cell_faults() -> impl Iterator<Item = FaultKind> {
    let pins = PINS.iter().flat_map(|&pin| {
        [false, true]
            .into_iter()
            .map(move |value| FaultKind::PinStuck { pin, value })
    });
    let flips = (0..8).flat_map(|index| {
        [OutputLine::Sum, OutputLine::Carry]
            .into_iter()
            .map(move |line| FaultKind::OutputFlip {
                minterm: Minterm::from_index(index),
                line,
            })
    });
    let and_pins = AND_PINS.iter().flat_map(|&pin| {
        [false, true]
            .into_iter()
            .map(move |value| FaultKind::CarryAndStuck { pin, value })
    });
    pins.chain(flips).chain(and_pins)
}

/// The complete deterministic fault universe for a width-`n` chain:
/// `32·n` descriptors, cell-major, duplicate-free.
///
/// The multiplier and divider reuse the one adder chain for every
/// accumulation and trial subtraction, so this universe covers all four
/// operators.
pub fn enumerate_faults(width: Width) -> Vec<FaultDescriptor> {
    let mut out = Vec::with_capacity((FAULTS_PER_CELL * width.bits()) as usize);
    for cell in 0..width.bits() {
        out.extend(cell_faults().map(|kind| FaultDescriptor { cell, kind }));
    }
    out
}
