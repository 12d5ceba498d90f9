use serde::Serialize;

use super::CampaignResult;

/// Flat, serializable view of a campaign result: one CSV row or JSON object.
#[derive(Debug, Clone, Serialize)]
pub struct CampaignRow {
    pub operator: String,
    pub technique: String,
    pub mode: String,
    pub width: u32,
    pub total: u64,
    pub correct_silent: u64,
    pub detected_silent: u64,
    pub detected_erroneous: u64,
    pub masked: u64,
    pub skipped: u64,
    pub coverage_pct: f64,
    pub detection_pct: f64,
    pub sample_count: Option<u64>,
    pub seed: Option<u64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
}

pub fn csv_header() -> &'static str {
    "operator,technique,mode,width,total,correct_silent,detected_silent,detected_erroneous,\
     masked,skipped,coverage_pct,detection_pct,sample_count,seed,ci_low,ci_high"
}

impl CampaignRow {
    pub fn csv_line(&self) -> String {
        fn opt_u64(v: Option<u64>) -> String {
            v.map(|v| v.to_string()).unwrap_or_default()
        }
        fn opt_pct(v: Option<f64>) -> String {
            v.map(|v| format!("{v:.6}")).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{},{:.6},{:.6},{},{},{},{}",
            self.operator,
            self.technique,
            self.mode,
            self.width,
            self.total,
            self.correct_silent,
            self.detected_silent,
            self.detected_erroneous,
            self.masked,
            self.skipped,
            self.coverage_pct,
            self.detection_pct,
            opt_u64(self.sample_count),
            opt_u64(self.seed),
            opt_pct(self.ci_low),
            opt_pct(self.ci_high),
        )
    }
}

impl CampaignResult {
    pub fn to_row(&self) -> CampaignRow {
        CampaignRow {
            operator: self.operator.name().to_string(),
            technique: self.technique.name().to_string(),
            mode: self.mode.name().to_string(),
            width: self.width,
            total: self.total,
            correct_silent: self.counts.correct_silent,
            detected_silent: self.counts.detected_silent,
            detected_erroneous: self.counts.detected_erroneous,
            masked: self.counts.masked,
            skipped: self.skipped,
            coverage_pct: self.coverage() * 100.0,
            detection_pct: self.detection() * 100.0,
            sample_count: self.sample_count,
            seed: self.seed,
            ci_low: self.ci.map(|(lo, _)| lo * 100.0),
            ci_high: self.ci.map(|(_, hi)| hi * 100.0),
        }
    }
}
