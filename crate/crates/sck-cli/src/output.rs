use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::json;

use sck_core::coverage::{csv_header, CampaignResult, Mode};
use sck_core::fir::{FirCampaignReport, FirConfig, OverheadReport};
use sck_core::Error as CoreError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Writes a report to the output path or stdout.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CoreError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CoreError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CoreError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

pub fn campaign_report(result: &CampaignResult, format: Format) -> String {
    let row = result.to_row();
    match format {
        Format::Csv => format!("{}\n{}\n", csv_header(), row.csv_line()),
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&row).expect("serializable row");
            text.push('\n');
            text
        }
        Format::Text => {
            let mut text = format!(
                "campaign: {} / {} / {} / {} bits\n\
                 situations {:>12}   skipped {}\n\
                 correct-silent     {:>12}\n\
                 detected-silent    {:>12}\n\
                 detected-erroneous {:>12}\n\
                 masked             {:>12}\n\
                 coverage  {:.6}%\n\
                 detection {:.6}%\n",
                row.operator,
                row.technique,
                row.mode,
                row.width,
                row.total,
                row.skipped,
                row.correct_silent,
                row.detected_silent,
                row.detected_erroneous,
                row.masked,
                row.coverage_pct,
                row.detection_pct,
            );
            if let (Some(count), Some(seed)) = (row.sample_count, row.seed) {
                text.push_str(&format!("sampled: {count} draws, seed {seed}\n"));
            }
            if let (Some(lo), Some(hi)) = (row.ci_low, row.ci_high) {
                text.push_str(&format!("95% CI [{lo:.6}%, {hi:.6}%]\n"));
            }
            text
        }
    }
}

pub fn fir_campaign_report(
    report: &FirCampaignReport,
    cfg: &FirConfig,
    mode: Mode,
    seed: u64,
    format: Format,
) -> String {
    let detection = report.end_to_end_detection();
    match format {
        Format::Csv => {
            let det = detection
                .map(|d| format!("{d:.6}"))
                .unwrap_or_default();
            format!(
                "width,taps,mode,seed,runs,erroneous_outputs,flagged_runs,flagged_erroneous,end_to_end_detection\n\
                 {},{},{},{},{},{},{},{},{}\n",
                cfg.width,
                cfg.taps.len(),
                mode.name(),
                seed,
                report.runs,
                report.erroneous_outputs,
                report.flagged_runs,
                report.flagged_erroneous,
                det,
            )
        }
        Format::Json => {
            let value = json!({
                "width": cfg.width.bits(),
                "taps": cfg.taps.len(),
                "mode": mode.name(),
                "seed": seed,
                "runs": report.runs,
                "erroneous_outputs": report.erroneous_outputs,
                "flagged_runs": report.flagged_runs,
                "flagged_erroneous": report.flagged_erroneous,
                "end_to_end_detection": detection,
            });
            let mut text = serde_json::to_string_pretty(&value).expect("serializable");
            text.push('\n');
            text
        }
        Format::Text => {
            let det = detection
                .map(|d| format!("{d:.6}"))
                .unwrap_or_else(|| "n/a (no erroneous runs)".into());
            format!(
                "fir fault campaign: {} bits, {} taps, {} controls\n\
                 runs               {:>10}\n\
                 erroneous outputs  {:>10}\n\
                 flagged runs       {:>10}\n\
                 flagged erroneous  {:>10}\n\
                 end-to-end detection {det}\n",
                cfg.width,
                cfg.taps.len(),
                mode.name(),
                report.runs,
                report.erroneous_outputs,
                report.flagged_runs,
                report.flagged_erroneous,
            )
        }
    }
}

pub fn overhead_report(report: &OverheadReport, cfg: &FirConfig, format: Format) -> String {
    match format {
        Format::Csv => format!(
            "width,taps,samples,reps,plain_ns,checked_ns,embedded_ns,checked_ratio,embedded_ratio\n\
             {},{},{},{},{},{},{},{:.4},{:.4}\n",
            cfg.width,
            cfg.taps.len(),
            cfg.input_len,
            report.repetitions,
            report.plain_ns,
            report.checked_ns,
            report.embedded_ns,
            report.checked_ratio,
            report.embedded_ratio,
        ),
        Format::Json => {
            let value = json!({
                "width": cfg.width.bits(),
                "taps": cfg.taps.len(),
                "samples": cfg.input_len,
                "reps": report.repetitions,
                "plain_ns": report.plain_ns,
                "checked_ns": report.checked_ns,
                "embedded_ns": report.embedded_ns,
                "checked_ratio": report.checked_ratio,
                "embedded_ratio": report.embedded_ratio,
            });
            let mut text = serde_json::to_string_pretty(&value).expect("serializable");
            text.push('\n');
            text
        }
        Format::Text => format!(
            "fir overhead: {} bits, {} taps, {} samples, median of {}\n\
             plain    {:>12} ns\n\
             checked  {:>12} ns   ({:.2}x plain)\n\
             embedded {:>12} ns   ({:.2}x plain)\n",
            cfg.width,
            cfg.taps.len(),
            cfg.input_len,
            report.repetitions,
            report.plain_ns,
            report.checked_ns,
            report.checked_ratio,
            report.embedded_ns,
            report.embedded_ratio,
        ),
    }
}
