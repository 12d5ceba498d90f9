//! Slow, independently written reference models.
//!
//! Everything here recomputes the unit behavior from first principles — bit
//! vectors, literal truth tables, and a literal reading of each fault's
//! definition — sharing no code with the production simulator. The test
//! suites use it as the oracle the fast path must agree with.

use crate::bitsim::{CarryAndPin, CellPin, FaultDescriptor, FaultKind, OutputLine};
use crate::coverage::{CampaignSpec, Mode, OutcomeClass};
use crate::{CheckTechnique, Operator, Width};

/// Full-adder truth tables indexed by `(a << 2) | (b << 1) | cin`.
const SUM_TABLE: [bool; 8] = [false, true, true, false, true, false, false, true];
const CARRY_TABLE: [bool; 8] = [false, false, false, true, false, true, true, true];

type Bits = Vec<bool>; // LSB first

fn to_bits(value: u32, n: u32) -> Bits {
    (0..n).map(|k| (value >> k) & 1 == 1).collect()
}

fn from_bits(bits: &Bits) -> u32 {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (k, &b)| acc | ((b as u32) << k))
}

fn cell(a: bool, b: bool, cin: bool, fault: Option<&FaultKind>) -> (bool, bool) {
    let row = |a: bool, b: bool, cin: bool| ((a as usize) << 2) | ((b as usize) << 1) | cin as usize;
    match fault {
        None => (SUM_TABLE[row(a, b, cin)], CARRY_TABLE[row(a, b, cin)]),
        Some(&FaultKind::PinStuck { pin, value }) => {
            let ea = if matches!(pin, CellPin::OperandA) { value } else { a };
            let eb = if matches!(pin, CellPin::OperandB) { value } else { b };
            let ec = if matches!(pin, CellPin::CarryIn) { value } else { cin };
            let mut sum = SUM_TABLE[row(ea, eb, ec)];
            let mut carry = CARRY_TABLE[row(ea, eb, ec)];
            if matches!(pin, CellPin::Sum) {
                sum = value;
            }
            if matches!(pin, CellPin::CarryOut) {
                carry = value;
            }
            (sum, carry)
        }
        Some(&FaultKind::OutputFlip { minterm, line }) => {
            let mut sum = SUM_TABLE[row(a, b, cin)];
            let mut carry = CARRY_TABLE[row(a, b, cin)];
            if (minterm.a, minterm.b, minterm.cin) == (a, b, cin) {
                match line {
                    OutputLine::Sum => sum = !sum,
                    OutputLine::Carry => carry = !carry,
                }
            }
            (sum, carry)
        }
        Some(&FaultKind::CarryAndStuck { pin, value }) => {
            let sum = SUM_TABLE[row(a, b, cin)];
            let generate_a = if matches!(pin, CarryAndPin::GenerateA) { value } else { a };
            let generate_b = if matches!(pin, CarryAndPin::GenerateB) { value } else { b };
            let propagate_c = if matches!(pin, CarryAndPin::PropagateCarry) { value } else { cin };
            let carry = (generate_a && generate_b) || ((a != b) && propagate_c);
            (sum, carry)
        }
    }
}

fn chain(a: &Bits, b: &Bits, cin: bool, fault: Option<&FaultDescriptor>) -> (Bits, bool) {
    let mut out = Vec::with_capacity(a.len());
    let mut carry = cin;
    for k in 0..a.len() {
        let kind = fault.filter(|f| f.cell as usize == k).map(|f| &f.kind);
        let (s, c) = cell(a[k], b[k], carry, kind);
        out.push(s);
        carry = c;
    }
    (out, carry)
}

fn invert(bits: &Bits) -> Bits {
    bits.iter().map(|&b| !b).collect()
}

pub fn naive_add(a: u32, b: u32, n: u32, fault: Option<&FaultDescriptor>) -> u32 {
    from_bits(&chain(&to_bits(a, n), &to_bits(b, n), false, fault).0)
}

pub fn naive_sub(a: u32, b: u32, n: u32, fault: Option<&FaultDescriptor>) -> u32 {
    from_bits(&chain(&to_bits(a, n), &invert(&to_bits(b, n)), true, fault).0)
}

pub fn naive_neg(a: u32, n: u32, fault: Option<&FaultDescriptor>) -> u32 {
    from_bits(&chain(&invert(&to_bits(a, n)), &to_bits(0, n), true, fault).0)
}

pub fn naive_mul(a: u32, b: u32, n: u32, fault: Option<&FaultDescriptor>) -> u32 {
    let b_bits = to_bits(b, n);
    let mut acc = to_bits(0, n);
    for step in 0..n as usize {
        let partial: Bits = (0..n as usize)
            .map(|k| b_bits[step] && k >= step && to_bits(a, n)[k - step])
            .collect();
        acc = chain(&acc, &partial, false, fault).0;
    }
    from_bits(&acc)
}

fn signed(value: u32, n: u32) -> i64 {
    if (value >> (n - 1)) & 1 == 1 {
        i64::from(value) - (1i64 << n)
    } else {
        i64::from(value)
    }
}

fn reduce(value: i64, n: u32) -> u32 {
    (i128::from(value).rem_euclid(1i128 << n)) as u32
}

/// Truncated division; `None` on a zero divisor or `min / -1`.
pub fn naive_divrem(a: u32, b: u32, n: u32, fault: Option<&FaultDescriptor>) -> Option<(u32, u32)> {
    let (sa, sb) = (signed(a, n), signed(b, n));
    if sb == 0 || (sa == -(1i64 << (n - 1)) && sb == -1) {
        return None;
    }
    let mag_a = to_bits(reduce(sa.abs(), n), n);
    let mag_b = to_bits(reduce(sb.abs(), n), n);
    let mut remainder = to_bits(0, n);
    let mut quotient = vec![false; n as usize];
    for i in (0..n as usize).rev() {
        let mut shifted = vec![mag_a[i]];
        shifted.extend_from_slice(&remainder[..n as usize - 1]);
        let (difference, no_borrow) = chain(&shifted, &invert(&mag_b), true, fault);
        if no_borrow {
            remainder = difference;
            quotient[i] = true;
        } else {
            remainder = shifted;
        }
    }
    let q = from_bits(&quotient);
    let r = from_bits(&remainder);
    let q = if (sa < 0) != (sb < 0) { reduce(-i64::from(q), n) } else { q };
    let r = if sa < 0 { reduce(-i64::from(r), n) } else { r };
    Some((q, r))
}

fn naive_op(op: Operator, a: u32, b: u32, n: u32, f: Option<&FaultDescriptor>) -> (u32, Option<u32>) {
    match op {
        Operator::Add => (naive_add(a, b, n, f), None),
        Operator::Sub => (naive_sub(a, b, n, f), None),
        Operator::Mul => (naive_mul(a, b, n, f), None),
        Operator::Div => {
            let (q, r) = naive_divrem(a, b, n, f).expect("preconditions excluded");
            (q, Some(r))
        }
    }
}

fn naive_check(
    op: Operator,
    tech: CheckTechnique,
    op1: u32,
    op2: u32,
    ris: u32,
    rem: Option<u32>,
    n: u32,
    f: Option<&FaultDescriptor>,
) -> bool {
    let one = |t: CheckTechnique| match (op, t) {
        (Operator::Add, CheckTechnique::Tech1) => naive_sub(ris, op1, n, f) == op2,
        (Operator::Add, CheckTechnique::Tech2) => naive_sub(ris, op2, n, f) == op1,
        (Operator::Sub, CheckTechnique::Tech1) => naive_add(ris, op2, n, f) == op1,
        (Operator::Sub, CheckTechnique::Tech2) => {
            naive_add(ris, naive_sub(op2, op1, n, f), n, f) == 0
        }
        (Operator::Mul, CheckTechnique::Tech1) => {
            naive_add(ris, naive_mul(naive_neg(op1, n, f), op2, n, f), n, f) == 0
        }
        (Operator::Mul, CheckTechnique::Tech2) => {
            naive_add(ris, naive_mul(op1, naive_neg(op2, n, f), n, f), n, f) == 0
        }
        (Operator::Div, CheckTechnique::Tech1) => {
            naive_add(naive_mul(ris, op2, n, f), rem.unwrap(), n, f) == op1
        }
        (Operator::Div, CheckTechnique::Tech2) => {
            let dual = naive_sub(naive_mul(naive_neg(ris, n, f), op2, n, f), rem.unwrap(), n, f);
            naive_add(op1, dual, n, f) == 0
        }
        _ => unreachable!("no combined division technique"),
    };
    match tech {
        CheckTechnique::Both => one(CheckTechnique::Tech1) && one(CheckTechnique::Tech2),
        t => one(t),
    }
}

/// Independent classifier: same contract as [`crate::coverage::classify`],
/// computed entirely with the models in this module.
pub fn naive_classify(
    spec: &CampaignSpec,
    fault: &FaultDescriptor,
    op1: u32,
    op2: u32,
) -> Option<OutcomeClass> {
    let n = spec.width.bits();
    if spec.operator == Operator::Div {
        naive_divrem(op1, op2, n, None)?;
    }
    let (ris, rem) = naive_op(spec.operator, op1, op2, n, Some(fault));
    let (exact, _) = naive_op(spec.operator, op1, op2, n, None);
    let correct = ris == exact;
    let control_fault = match spec.mode {
        Mode::SameUnit => Some(fault),
        Mode::CrossUnit => None,
    };
    let passed = naive_check(
        spec.operator,
        spec.technique,
        op1,
        op2,
        ris,
        rem,
        n,
        control_fault,
    );
    Some(match (correct, passed) {
        (true, true) => OutcomeClass::CorrectSilent,
        (true, false) => OutcomeClass::DetectedSilent,
        (false, false) => OutcomeClass::DetectedErroneous,
        (false, true) => OutcomeClass::Masked,
    })
}

/// Exhaustive per-class counts computed purely with the naive models.
pub fn naive_exhaustive_counts(spec: &CampaignSpec) -> [u64; 4] {
    let n = spec.width.bits();
    let mut counts = [0u64; 4];
    for fault in crate::bitsim::enumerate_faults(spec.width) {
        for op1 in 0..(1u64 << n) as u32 {
            for op2 in 0..(1u64 << n) as u32 {
                if let Some(class) = naive_classify(spec, &fault, op1, op2) {
                    counts[class as usize] += 1;
                }
            }
        }
    }
    counts
}

/// Naive whole-word width helper mirroring [`Width::bits`] bounds.
pub fn width(n: u32) -> Width {
    Width::new(n).expect("test width")
}
