//! `verify-identities`: the randomized identity suite in both scalar
//! domains, with an optional injected fault as a negative control.

use fieldlab_core::suite::{
    run_exact_suite, run_float_suite, FaultKind, SuiteOptions, SuiteReport,
};

use crate::config::RunConfig;
use crate::output::{fnum, OutputDir};
use crate::report::{CheckRow, ReportEnvelope};
use crate::CliError;

fn suite_rows(report: &SuiteReport) -> Vec<CheckRow> {
    report
        .checks
        .iter()
        .map(|c| {
            let mut row = CheckRow::new(
                format!("[{}] {}", report.domain, c.name),
                "0 failures".to_string(),
                format!("{} failures / {} samples", c.failures, c.samples),
                c.worst_residual,
                c.pass,
            );
            if let Some(note) = &c.note {
                row = row.with_note(note.clone());
            }
            row
        })
        .collect()
}

pub fn run(
    config: &RunConfig,
    out: &OutputDir,
    exact_only: bool,
    inject_fault: bool,
) -> Result<ReportEnvelope, CliError> {
    let fault = inject_fault.then_some(FaultKind::FlipDualSign);
    let mut checks = Vec::new();
    let mut data_rows: Vec<Vec<String>> = Vec::new();

    let mut collect = |report: &SuiteReport| {
        for c in &report.checks {
            data_rows.push(vec![
                report.domain.to_string(),
                c.name.clone(),
                c.samples.to_string(),
                c.failures.to_string(),
                fnum(c.worst_residual),
                c.pass.to_string(),
            ]);
        }
    };

    if !exact_only {
        let float_report = run_float_suite(&SuiteOptions {
            samples: config.verify_identities.samples,
            ks: config.verify_identities.ks.clone(),
            seed: config.seed,
            fault,
        });
        collect(&float_report);
        checks.extend(suite_rows(&float_report));
    }

    let exact_report = run_exact_suite(&SuiteOptions {
        samples: config.verify_identities.exact_samples,
        ks: config.verify_identities.ks.clone(),
        seed: config.seed,
        fault,
    });
    collect(&exact_report);
    checks.extend(suite_rows(&exact_report));

    out.write_csv(
        "identity_suite.csv",
        &[
            "domain",
            "check",
            "samples",
            "failures",
            "worst_residual",
            "pass",
        ],
        &data_rows,
    )?;

    let envelope = ReportEnvelope::new("verify-identities", config, checks);
    if !envelope.pass {
        let failing: Vec<&str> = envelope
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        eprintln!("failing identities: {}", failing.join("; "));
    }
    Ok(envelope)
}
