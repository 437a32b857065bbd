//! The report envelope every command emits: config echo, per-check rows,
//! and an overall verdict. Persisted artifacts omit wall time so reruns are
//! byte-identical; the measured time goes to stderr instead.

use serde::Serialize;

use crate::config::RunConfig;
use crate::output::{fnum, OutputDir, VERSION};
use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub residual: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRow {
    pub fn new(
        name: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        residual: f64,
        pass: bool,
    ) -> Self {
        CheckRow {
            name: name.into(),
            expected: expected.into(),
            actual: actual.into(),
            residual,
            pass,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// A bound-style check: `value ≤ tolerance`.
    pub fn bound(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CheckRow::new(
            name,
            format!("<= {}", fnum(tolerance)),
            fnum(value),
            value,
            value <= tolerance,
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub config_hash: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRow>,
    pub pass: bool,
    /// Excluded from persisted artifacts to keep them byte-identical across
    /// runs; the measured value is printed to stderr.
    #[serde(skip_serializing)]
    pub wall_time_ms: Option<u128>,
}

impl ReportEnvelope {
    pub fn new(command: &str, config: &RunConfig, checks: Vec<CheckRow>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        ReportEnvelope {
            command: command.to_string(),
            version: VERSION.to_string(),
            seed: config.seed,
            config_hash: config.hash(),
            config: config.clone(),
            checks,
            pass,
            wall_time_ms: None,
        }
    }

    /// Write `report.json` or `report.csv` per the configured format, print
    /// the human-readable table to stdout, and the wall time to stderr.
    pub fn emit(&self, out: &OutputDir) -> Result<(), CliError> {
        match self.config.format.as_str() {
            "json" => {
                let json = serde_json::to_string_pretty(self).expect("envelope serializes") + "\n";
                out.write_text("report.json", &json)?;
            }
            _ => {
                let rows: Vec<Vec<String>> = self
                    .checks
                    .iter()
                    .map(|c| {
                        vec![
                            c.name.clone(),
                            c.expected.clone(),
                            c.actual.clone(),
                            fnum(c.residual),
                            c.pass.to_string(),
                            c.note.clone().unwrap_or_default(),
                        ]
                    })
                    .collect();
                out.write_csv(
                    "report.csv",
                    &["check", "expected", "actual", "residual", "pass", "note"],
                    &rows,
                )?;
            }
        }

        println!("{} v{} (seed {})", self.command, self.version, self.seed);
        for c in &self.checks {
            println!(
                "  [{}] {} | expected {} | actual {}{}",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.expected,
                c.actual,
                c.note
                    .as_deref()
                    .map(|n| format!(" | note: {n}"))
                    .unwrap_or_default()
            );
        }
        println!("overall: {}", if self.pass { "PASS" } else { "FAIL" });
        if let Some(ms) = self.wall_time_ms {
            eprintln!("wall time: {ms} ms");
        }
        Ok(())
    }
}
