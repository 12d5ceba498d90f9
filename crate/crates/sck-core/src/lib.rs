//! Self-checking arithmetic toolkit.
//!
//! Arithmetic results are verified on-line by hidden inverse operations:
//! `z = x + y` is accepted only if a control such as `z - x == y` holds, and
//! every value carries a sticky error bit that survives further computation.
//! The same checked operators run either on exact host arithmetic
//! ([`ReferenceEngine`]) or on bit-level models of the underlying functional
//! units with injected single-unit faults ([`bitsim::FaultyEngine`]), which is
//! what the [`coverage`] campaigns exploit to measure how often a fault can
//! corrupt both an operation and its control consistently enough to escape
//! detection.

pub mod bitsim;
pub mod checked;
pub mod coverage;
mod engine;
mod error;
pub mod fir;
#[cfg(feature = "naive")]
pub mod naive;
mod word;

pub use checked::{
    checked_add, checked_div, checked_mul, checked_sub, make_checked, run_check, CheckPolicy,
    CheckTechnique, CheckedOps, CheckedValue, DivTechnique, DynCheckedOps, Operator,
};
pub use engine::{ArithmeticEngine, DivError, ReferenceEngine};
pub use error::Error;
pub use word::{Width, Word, MAX_WIDTH};
