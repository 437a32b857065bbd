//! Deterministic file output: CSV with a provenance comment line, JSON
//! reports, and minimal self-rendered SVG line plots.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct OutputDir {
    dir: PathBuf,
    seed: u64,
    config_hash: String,
}

impl OutputDir {
    pub fn create(dir: &Path, seed: u64, config_hash: &str) -> Result<Self, CliError> {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Config(format!("cannot create {}: {e}", dir.display())))?;
        Ok(OutputDir {
            dir: dir.to_path_buf(),
            seed,
            config_hash: config_hash.to_string(),
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    fn provenance(&self) -> String {
        format!(
            "# fieldlab v{VERSION} seed={} config={}",
            self.seed, self.config_hash
        )
    }

    /// CSV file: one provenance comment line, a header row, then rows.
    pub fn write_csv(
        &self,
        name: &str,
        header: &[&str],
        rows: &[Vec<String>],
    ) -> Result<PathBuf, CliError> {
        let mut text = String::new();
        writeln!(text, "{}", self.provenance()).unwrap();
        writeln!(text, "{}", header.join(",")).unwrap();
        for row in rows {
            writeln!(text, "{}", row.join(",")).unwrap();
        }
        let path = self.path(name);
        fs::write(&path, text)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }

    pub fn write_text(&self, name: &str, text: &str) -> Result<PathBuf, CliError> {
        let path = self.path(name);
        fs::write(&path, text)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }
}

/// Format a float with Rust's shortest round-trip representation
/// (deterministic across runs and platforms for the same bits).
pub fn fnum(v: f64) -> String {
    if v == 0.0 && v.is_sign_negative() {
        "0".to_string() // avoid "-0" noise in outputs
    } else {
        format!("{v}")
    }
}

/// One named series for the SVG plot.
pub struct Series<'a> {
    pub name: &'a str,
    pub points: Vec<(f64, f64)>,
}

/// Minimal self-contained SVG line plot; log-log when requested. The point
/// is plot-ready *evidence* without a plotting dependency, not typography.
pub fn svg_line_plot(title: &str, series: &[Series<'_>], log_x: bool, log_y: bool) -> String {
    const W: f64 = 640.0;
    const H: f64 = 420.0;
    const M: f64 = 60.0;
    let tx = |v: f64| if log_x { v.log10() } else { v };
    let ty = |v: f64| if log_y { v.log10() } else { v };

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for s in series {
        for &(x, y) in &s.points {
            if (!log_x || x > 0.0) && (!log_y || y > 0.0) {
                xs.push(tx(x));
                ys.push(ty(y));
            }
        }
    }
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let sx = |v: f64| M + (tx(v) - x0) / (x1 - x0).max(1e-300) * (W - 2.0 * M);
    let sy = |v: f64| H - M - (ty(v) - y0) / (y1 - y0).max(1e-300) * (H - 2.0 * M);

    let palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="monospace" font-size="14">{title}</text>"#,
        W / 2.0
    )
    .unwrap();
    // axes
    writeln!(
        svg,
        r#"<path d="M {M} {m} L {M} {h} L {w} {h}" stroke="black" fill="none"/>"#,
        m = M,
        h = H - M,
        w = W - M
    )
    .unwrap();
    for (i, s) in series.iter().enumerate() {
        let color = palette[i % palette.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| (!log_x || *x > 0.0) && (!log_y || *y > 0.0))
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        if !pts.is_empty() {
            writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                pts.join(" ")
            )
            .unwrap();
        }
        writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="12" fill="{color}">{}</text>"#,
            W - M + 4.0,
            40.0 + 16.0 * i as f64,
            s.name
        )
        .unwrap();
    }
    // corner labels with the data ranges
    writeln!(
        svg,
        r#"<text x="{M}" y="{}" font-family="monospace" font-size="10">x: [{:.3e}, {:.3e}]{} y: [{:.3e}, {:.3e}]{}</text>"#,
        H - M + 28.0,
        if log_x { 10f64.powf(x0) } else { x0 },
        if log_x { 10f64.powf(x1) } else { x1 },
        if log_x { " (log)" } else { "" },
        if log_y { 10f64.powf(y0) } else { y0 },
        if log_y { 10f64.powf(y1) } else { y1 },
        if log_y { " (log)" } else { "" },
    )
    .unwrap();
    writeln!(svg, "</svg>").unwrap();
    svg
}

fn bounds(vals: &[f64]) -> (f64, f64) {
    if vals.is_empty() {
        return (0.0, 1.0);
    }
    let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}
