//! Self-checking arithmetic: every operation runs one or two hidden inverse
//! operations over an [`ArithmeticEngine`] and folds the outcome into a
//! sticky per-value error bit.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::{ArithmeticEngine, DivError, Width, Word};

/// The four guarded operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Add,
    Sub,
    Mul,
    Div,
}

impl Operator {
    pub fn symbol(self) -> char {
        match self {
            Operator::Add => '+',
            Operator::Sub => '-',
            Operator::Mul => '*',
            Operator::Div => '/',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Operator::Add => "add",
            Operator::Sub => "sub",
            Operator::Mul => "mul",
            Operator::Div => "div",
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "add" | "+" => Ok(Operator::Add),
            "sub" | "-" => Ok(Operator::Sub),
            "mul" | "*" => Ok(Operator::Mul),
            "div" | "/" => Ok(Operator::Div),
            other => Err(format!("unknown operator {other:?}")),
        }
    }
}

/// Which control operations guard an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckTechnique {
    Tech1,
    Tech2,
    /// Both controls; an error is flagged if either fails.
    Both,
}

impl CheckTechnique {
    pub fn name(self) -> &'static str {
        match self {
            CheckTechnique::Tech1 => "tech1",
            CheckTechnique::Tech2 => "tech2",
            CheckTechnique::Both => "both",
        }
    }
}

impl fmt::Display for CheckTechnique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckTechnique {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tech1" | "1" => Ok(CheckTechnique::Tech1),
            "tech2" | "2" => Ok(CheckTechnique::Tech2),
            "both" | "1&2" => Ok(CheckTechnique::Both),
            other => Err(format!("unknown technique {other:?}")),
        }
    }
}

/// Division carries no combined technique, so its policy entry is narrower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DivTechnique {
    Tech1,
    Tech2,
}

impl From<DivTechnique> for CheckTechnique {
    fn from(t: DivTechnique) -> Self {
        match t {
            DivTechnique::Tech1 => CheckTechnique::Tech1,
            DivTechnique::Tech2 => CheckTechnique::Tech2,
        }
    }
}

/// Per-operator choice of control technique.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckPolicy {
    pub add: CheckTechnique,
    pub sub: CheckTechnique,
    pub mul: CheckTechnique,
    pub div: DivTechnique,
}

impl CheckPolicy {
    /// Single control per operator, first variant.
    pub fn tech1() -> Self {
        CheckPolicy {
            add: CheckTechnique::Tech1,
            sub: CheckTechnique::Tech1,
            mul: CheckTechnique::Tech1,
            div: DivTechnique::Tech1,
        }
    }

    /// Single control per operator, dual variant.
    pub fn tech2() -> Self {
        CheckPolicy {
            add: CheckTechnique::Tech2,
            sub: CheckTechnique::Tech2,
            mul: CheckTechnique::Tech2,
            div: DivTechnique::Tech2,
        }
    }

    /// Both controls wherever defined; division falls back to its first.
    pub fn both() -> Self {
        CheckPolicy {
            add: CheckTechnique::Both,
            sub: CheckTechnique::Both,
            mul: CheckTechnique::Both,
            div: DivTechnique::Tech1,
        }
    }

    pub fn technique_for(&self, op: Operator) -> CheckTechnique {
        match op {
            Operator::Add => self.add,
            Operator::Sub => self.sub,
            Operator::Mul => self.mul,
            Operator::Div => self.div.into(),
        }
    }
}

impl Default for CheckPolicy {
    fn default() -> Self {
        CheckPolicy::both()
    }
}

/// An n-bit value paired with its sticky error bit.
///
/// No operation in this module ever clears a set error bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CheckedValue {
    value: Word,
    error: bool,
}

impl CheckedValue {
    pub fn new(value: Word) -> Self {
        CheckedValue {
            value,
            error: false,
        }
    }

    pub fn with_error(value: Word, error: bool) -> Self {
        CheckedValue { value, error }
    }

    pub fn value(self) -> Word {
        self.value
    }

    pub fn error(self) -> bool {
        self.error
    }

    pub fn width(self) -> Width {
        self.value.width()
    }

    /// The management interface: internal data plus error bit, unmodified.
    pub fn observe(self) -> (Word, bool) {
        (self.value, self.error)
    }
}

/// Promotes a raw integer: reduced modulo `2^n`, error bit clear.
pub fn make_checked(value: i64, width: Width) -> CheckedValue {
    CheckedValue::new(Word::from_signed(value, width))
}

/// Runs the control operation(s) for one executed operation.
///
/// `op1` and `op2` are the nominal operands, `ris` the nominal result, and
/// `rem` the remainder of the very divrem execution being checked (division
/// only). The controls run on `engine` — the same unit as the nominal
/// operation in the worst case, or an independent one. Returns `true` iff
/// every control enabled by `tech` passes.
///
/// Control recipes:
///
/// | op  | tech1                          | tech2                              |
/// |-----|--------------------------------|------------------------------------|
/// | add | `op2' = ris - op1, op2 == op2'` | `op1' = ris - op2, op1 == op1'`   |
/// | sub | `op1' = ris + op2, op1 == op1'` | `ris' = op2 - op1, 0 == ris + ris'`|
/// | mul | `ris' = (-op1)*op2, 0 == ris + ris'` | `ris' = op1*(-op2), 0 == ris + ris'` |
/// | div | `op1' = ris*op2 + rem, op1 == op1'`  | `op1' = (-ris)*op2 - rem, 0 == op1 + op1'` |
pub fn run_check<E: ArithmeticEngine + ?Sized>(
    op: Operator,
    tech: CheckTechnique,
    op1: Word,
    op2: Word,
    ris: Word,
    rem: Option<Word>,
    engine: &E,
) -> bool {
    match op {
        Operator::Add => add_passes(tech, op1, op2, ris, engine),
        Operator::Sub => sub_passes(tech, op1, op2, ris, engine),
        Operator::Mul => mul_passes(tech, op1, op2, ris, engine),
        Operator::Div => {
            let rem = rem.expect("division check needs the remainder");
            match tech {
                CheckTechnique::Tech1 => div_passes(DivTechnique::Tech1, op1, op2, ris, rem, engine),
                CheckTechnique::Tech2 => div_passes(DivTechnique::Tech2, op1, op2, ris, rem, engine),
                CheckTechnique::Both => panic!("division has no combined technique"),
            }
        }
    }
}

#[inline]
pub(crate) fn add_passes<E: ArithmeticEngine + ?Sized>(
    tech: CheckTechnique,
    op1: Word,
    op2: Word,
    ris: Word,
    engine: &E,
) -> bool {
    match tech {
        CheckTechnique::Tech1 => engine.sub(ris, op1) == op2,
        CheckTechnique::Tech2 => engine.sub(ris, op2) == op1,
        CheckTechnique::Both => engine.sub(ris, op1) == op2 && engine.sub(ris, op2) == op1,
    }
}

#[inline]
fn sub_passes<E: ArithmeticEngine + ?Sized>(
    tech: CheckTechnique,
    op1: Word,
    op2: Word,
    ris: Word,
    engine: &E,
) -> bool {
    let zero = Word::zero(engine.width());
    let tech1 = |e: &E| e.add(ris, op2) == op1;
    let tech2 = |e: &E| {
        let dual = e.sub(op2, op1);
        e.add(ris, dual) == zero
    };
    match tech {
        CheckTechnique::Tech1 => tech1(engine),
        CheckTechnique::Tech2 => tech2(engine),
        CheckTechnique::Both => tech1(engine) && tech2(engine),
    }
}

#[inline]
pub(crate) fn mul_passes<E: ArithmeticEngine + ?Sized>(
    tech: CheckTechnique,
    op1: Word,
    op2: Word,
    ris: Word,
    engine: &E,
) -> bool {
    let zero = Word::zero(engine.width());
    let tech1 = |e: &E| {
        let dual = e.mul(e.neg(op1), op2);
        e.add(ris, dual) == zero
    };
    let tech2 = |e: &E| {
        let dual = e.mul(op1, e.neg(op2));
        e.add(ris, dual) == zero
    };
    match tech {
        CheckTechnique::Tech1 => tech1(engine),
        CheckTechnique::Tech2 => tech2(engine),
        CheckTechnique::Both => tech1(engine) && tech2(engine),
    }
}

#[inline]
fn div_passes<E: ArithmeticEngine + ?Sized>(
    tech: DivTechnique,
    op1: Word,
    op2: Word,
    ris: Word,
    rem: Word,
    engine: &E,
) -> bool {
    match tech {
        DivTechnique::Tech1 => engine.add(engine.mul(ris, op2), rem) == op1,
        DivTechnique::Tech2 => {
            let dual = engine.sub(engine.mul(engine.neg(ris), op2), rem);
            engine.add(op1, dual) == Word::zero(engine.width())
        }
    }
}

/// Checked operations bound to a policy and to the engines that execute them.
///
/// `nominal` performs the guarded operation; `control` performs the hidden
/// inverse operations. In the worst case both are the same (possibly faulty)
/// unit; with a multi-unit datapath the controls run on an independent one.
/// The engine parameters accept unsized types, so `dyn ArithmeticEngine`
/// works where runtime engine selection is needed.
pub struct CheckedOps<'a, N: ?Sized, C: ?Sized> {
    policy: CheckPolicy,
    nominal: &'a N,
    control: &'a C,
}

/// Engine-erased checked operations, for runtime unit selection.
pub type DynCheckedOps<'a> = CheckedOps<'a, dyn ArithmeticEngine + 'a, dyn ArithmeticEngine + 'a>;

impl<N: ?Sized, C: ?Sized> Clone for CheckedOps<'_, N, C> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<N: ?Sized, C: ?Sized> Copy for CheckedOps<'_, N, C> {}

impl<'a, N: ArithmeticEngine + ?Sized> CheckedOps<'a, N, N> {
    /// One unit performs the operation and its control.
    pub fn same_unit(policy: CheckPolicy, engine: &'a N) -> Self {
        CheckedOps {
            policy,
            nominal: engine,
            control: engine,
        }
    }
}

impl<'a, N, C> CheckedOps<'a, N, C>
where
    N: ArithmeticEngine + ?Sized,
    C: ArithmeticEngine + ?Sized,
{
    /// The control runs on an independent unit.
    pub fn cross_unit(policy: CheckPolicy, nominal: &'a N, control: &'a C) -> Self {
        assert_eq!(nominal.width(), control.width(), "engine width mismatch");
        CheckedOps {
            policy,
            nominal,
            control,
        }
    }

    pub fn policy(&self) -> CheckPolicy {
        self.policy
    }

    pub fn nominal(&self) -> &'a N {
        self.nominal
    }

    pub fn control(&self) -> &'a C {
        self.control
    }

    pub fn width(&self) -> Width {
        self.nominal.width()
    }

    fn operands(&self, x: CheckedValue, y: CheckedValue) -> (Word, Word) {
        assert!(
            x.width() == self.width() && y.width() == self.width(),
            "operand width mismatch"
        );
        (x.value(), y.value())
    }

    #[inline]
    pub fn add(&self, x: CheckedValue, y: CheckedValue) -> CheckedValue {
        let (op1, op2) = self.operands(x, y);
        let ris = self.nominal.add(op1, op2);
        let ok = add_passes(self.policy.add, op1, op2, ris, self.control);
        CheckedValue::with_error(ris, !ok || x.error() || y.error())
    }

    #[inline]
    pub fn sub(&self, x: CheckedValue, y: CheckedValue) -> CheckedValue {
        let (op1, op2) = self.operands(x, y);
        let ris = self.nominal.sub(op1, op2);
        let ok = sub_passes(self.policy.sub, op1, op2, ris, self.control);
        CheckedValue::with_error(ris, !ok || x.error() || y.error())
    }

    #[inline]
    pub fn mul(&self, x: CheckedValue, y: CheckedValue) -> CheckedValue {
        let (op1, op2) = self.operands(x, y);
        let ris = self.nominal.mul(op1, op2);
        let ok = mul_passes(self.policy.mul, op1, op2, ris, self.control);
        CheckedValue::with_error(ris, !ok || x.error() || y.error())
    }

    /// Checked division. Preconditions signal through the error flag: a zero
    /// divisor yields `{0, error}` and `min / -1` yields `{min, error}`.
    #[inline]
    pub fn div(&self, x: CheckedValue, y: CheckedValue) -> CheckedValue {
        let (op1, op2) = self.operands(x, y);
        let width = self.width();
        match self.nominal.divrem(op1, op2) {
            Err(DivError::DivideByZero) => CheckedValue::with_error(Word::zero(width), true),
            Err(DivError::Overflow) => CheckedValue::with_error(Word::min_signed(width), true),
            Ok((quotient, remainder)) => {
                let ok = div_passes(self.policy.div, op1, op2, quotient, remainder, self.control);
                CheckedValue::with_error(quotient, !ok || x.error() || y.error())
            }
        }
    }
}

/// Same-unit checked addition: the worst case of a single shared unit.
pub fn checked_add<E: ArithmeticEngine + ?Sized>(
    x: CheckedValue,
    y: CheckedValue,
    policy: CheckPolicy,
    engine: &E,
) -> CheckedValue {
    CheckedOps::same_unit(policy, engine).add(x, y)
}

/// Same-unit checked subtraction.
pub fn checked_sub<E: ArithmeticEngine + ?Sized>(
    x: CheckedValue,
    y: CheckedValue,
    policy: CheckPolicy,
    engine: &E,
) -> CheckedValue {
    CheckedOps::same_unit(policy, engine).sub(x, y)
}

/// Same-unit checked multiplication.
pub fn checked_mul<E: ArithmeticEngine + ?Sized>(
    x: CheckedValue,
    y: CheckedValue,
    policy: CheckPolicy,
    engine: &E,
) -> CheckedValue {
    CheckedOps::same_unit(policy, engine).mul(x, y)
}

/// Same-unit checked division.
pub fn checked_div<E: ArithmeticEngine + ?Sized>(
    x: CheckedValue,
    y: CheckedValue,
    policy: CheckPolicy,
    engine: &E,
) -> CheckedValue {
    CheckedOps::same_unit(policy, engine).div(x, y)
}
