use std::path::PathBuf;

/// Errors surfaced by campaign setup and file ingestion.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("width {0} out of range 1..=32")]
    WidthOutOfRange(u32),

    #[error("exhaustive campaign spans {required} situations, over the budget of {budget}; raise SCK_BUDGET or sample")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("sample count {0} below the minimum of 10000")]
    SampleCountTooSmall(u64),

    #[error("division campaigns support tech1 and tech2 only")]
    DivTechniqueBoth,

    #[error("campaign spec asked for {expected} sampling but got {got}")]
    SamplingMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("{path}:{line}: malformed integer {text:?}")]
    MalformedInteger {
        path: PathBuf,
        line: usize,
        text: String,
    },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
