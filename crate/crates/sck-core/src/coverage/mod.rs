//! Fault-injection campaigns over (fault × operand-pair) spaces.
//!
//! A *situation* is one fault descriptor paired with one operand pair. The
//! campaign runs the nominal operation on the faulty unit, runs the enabled
//! controls on the same unit (worst case) or on an independent exact unit,
//! and classifies the outcome into one of four classes. Fault coverage is the
//! fraction of situations that are not masked.

mod classify;
mod exhaustive;
mod report;
mod sampled;

pub use classify::classify;
pub use exhaustive::{masked_situations, run_exhaustive, situation_id};
pub use report::{csv_header, CampaignRow};
pub use sampled::run_sampled;

use serde::Serialize;

use crate::{CheckTechnique, Error, Operator, Width};

/// Default cap on exhaustive enumeration (number of situations).
pub const DEFAULT_BUDGET: u128 = 1 << 34;

/// Whether the controls share the faulty unit or run on an exact one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    SameUnit,
    CrossUnit,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::SameUnit => "same-unit",
            Mode::CrossUnit => "cross-unit",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "same-unit" | "same" => Ok(Mode::SameUnit),
            "cross-unit" | "cross" => Ok(Mode::CrossUnit),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// Exhaustive sweep or seeded uniform sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

/// A fault-injection sweep definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CampaignSpec {
    pub operator: Operator,
    pub technique: CheckTechnique,
    pub width: Width,
    pub mode: Mode,
    pub sampling: Sampling,
    pub budget: u128,
}

impl CampaignSpec {
    pub fn exhaustive(
        operator: Operator,
        technique: CheckTechnique,
        width: Width,
        mode: Mode,
    ) -> Self {
        CampaignSpec {
            operator,
            technique,
            width,
            mode,
            sampling: Sampling::Exhaustive,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn sampled(
        operator: Operator,
        technique: CheckTechnique,
        width: Width,
        mode: Mode,
        count: u64,
        seed: u64,
    ) -> Self {
        CampaignSpec {
            operator,
            technique,
            width,
            mode,
            sampling: Sampling::Sample { count, seed },
            budget: DEFAULT_BUDGET,
        }
    }

    pub(crate) fn validate(&self) -> Result<(), Error> {
        if self.operator == Operator::Div && self.technique == CheckTechnique::Both {
            return Err(Error::DivTechniqueBoth);
        }
        Ok(())
    }
}

/// The class of one situation: did the nominal result come out right, and did
/// any enabled control fail?
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeClass {
    /// Correct result, controls quiet.
    CorrectSilent,
    /// Correct result, yet a control failed: the latent fault is reported.
    DetectedSilent,
    /// Wrong result, flagged by a control.
    DetectedErroneous,
    /// Wrong result and every enabled control passed: the errors compensate.
    Masked,
}

/// Per-class situation tallies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub correct_silent: u64,
    pub detected_silent: u64,
    pub detected_erroneous: u64,
    pub masked: u64,
}

impl ClassCounts {
    pub fn record(&mut self, class: OutcomeClass) {
        match class {
            OutcomeClass::CorrectSilent => self.correct_silent += 1,
            OutcomeClass::DetectedSilent => self.detected_silent += 1,
            OutcomeClass::DetectedErroneous => self.detected_erroneous += 1,
            OutcomeClass::Masked => self.masked += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.correct_silent + self.detected_silent + self.detected_erroneous + self.masked
    }

    pub fn merge(&mut self, other: &ClassCounts) {
        self.correct_silent += other.correct_silent;
        self.detected_silent += other.detected_silent;
        self.detected_erroneous += other.detected_erroneous;
        self.masked += other.masked;
    }
}

/// Outcome of a campaign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignResult {
    pub operator: Operator,
    pub technique: CheckTechnique,
    pub mode: Mode,
    pub width: u32,
    /// Situations actually classified.
    pub total: u64,
    pub counts: ClassCounts,
    /// Situations excluded by operation preconditions (division only).
    pub skipped: u64,
    pub sample_count: Option<u64>,
    pub seed: Option<u64>,
    /// 95% normal-approximation bounds on coverage, sampled runs only.
    pub ci: Option<(f64, f64)>,
}

impl CampaignResult {
    /// Fraction of situations not masked.
    pub fn coverage(&self) -> f64 {
        1.0 - self.counts.masked as f64 / self.total as f64
    }

    /// Fraction of situations where a control fired.
    pub fn detection(&self) -> f64 {
        (self.counts.detected_silent + self.counts.detected_erroneous) as f64 / self.total as f64
    }
}

/// `32 · n · 4^n`: the number of situations of a width-`n` exhaustive sweep.
pub fn situation_count(width: Width) -> u128 {
    let n = width.bits() as u128;
    32 * n * (1u128 << (2 * width.bits()))
}

/// Observability and detection tallies of an exhaustive result:
/// `(observable_errors, detections)`.
///
/// Observable errors are situations whose nominal result is wrong regardless
/// of detection; detections count every control firing, including the
/// detected-silent ones that flag a latent fault before it corrupts a result.
pub fn detection_tally(result: &CampaignResult) -> (u64, u64) {
    (
        result.counts.detected_erroneous + result.counts.masked,
        result.counts.detected_silent + result.counts.detected_erroneous,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn situation_count_examples() {
        let count = |n: u32| situation_count(Width::new(n).unwrap());
        assert_eq!(count(1), 128);
        assert_eq!(count(2), 1024);
        assert_eq!(count(3), 6144);
        assert_eq!(count(4), 32768);
        assert_eq!(count(8), 16 << 20);
        assert_eq!(count(32), 1024 << 64);
    }

    #[test]
    fn div_both_is_rejected() {
        let spec = CampaignSpec::exhaustive(
            Operator::Div,
            CheckTechnique::Both,
            Width::new(2).unwrap(),
            Mode::SameUnit,
        );
        assert!(matches!(spec.validate(), Err(Error::DivTechniqueBoth)));
    }
}
