//! Artifact emission: CSV tables (fixed column schema, 17 significant
//! digits), JSON mirrors of the report types, and self-contained static
//! SVG plots.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::harness::figure::PointwiseTable;
use crate::harness::sweep::RateReport;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Csv,
    Json,
    Svg,
}

impl EmitFormat {
    pub fn extension(self) -> &'static str {
        match self {
            EmitFormat::Csv => "csv",
            EmitFormat::Json => "json",
            EmitFormat::Svg => "svg",
        }
    }
}

impl FromStr for EmitFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(EmitFormat::Csv),
            "json" => Ok(EmitFormat::Json),
            "svg" => Ok(EmitFormat::Svg),
            other => Err(Error::domain(format!(
                "unknown format '{other}' (expected csv, json, or svg)"
            ))),
        }
    }
}

/// 17 significant digits: enough to round-trip any f64.
fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// An artifact that can be written in every supported format.
pub trait Emittable {
    fn to_csv(&self) -> String;
    fn to_json(&self) -> serde_json::Value;
    fn to_svg(&self) -> String;
}

impl Emittable for RateReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("n,err_P,err_T,err_B,ratio_P,ratio_T,scaled_ratio_P\n");
        for i in 0..self.degrees.len() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                self.degrees[i],
                fmt_float(self.err_p[i]),
                fmt_float(self.err_t[i]),
                fmt_float(self.err_b[i]),
                fmt_float(self.ratio_p[i]),
                fmt_float(self.ratio_t[i]),
                fmt_float(self.scaled_ratio_p[i]),
            );
        }
        out
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report has no non-finite values")
    }

    fn to_svg(&self) -> String {
        let series = [
            ("err_P", "#1f77b4", &self.err_p),
            ("err_T", "#2ca02c", &self.err_t),
            ("err_B", "#d62728", &self.err_b),
        ];
        let xs: Vec<f64> = self.degrees.iter().map(|&n| n as f64).collect();
        render_svg(
            &format!("max error vs degree: {}", self.function_label),
            "n",
            &xs,
            self.log_log_axes,
            &series,
        )
    }
}

impl Emittable for PointwiseTable {
    fn to_csv(&self) -> String {
        let mut out = String::from("x,err_P,err_B\n");
        for i in 0..self.x.len() {
            let _ = writeln!(
                out,
                "{},{},{}",
                fmt_float(self.x[i]),
                fmt_float(self.err_p[i]),
                fmt_float(self.err_b[i]),
            );
        }
        out
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("table has no non-finite values")
    }

    fn to_svg(&self) -> String {
        let series = [
            ("err_P", "#1f77b4", &self.err_p),
            ("err_B", "#d62728", &self.err_b),
        ];
        render_svg(
            &format!(
                "pointwise error, degree {}: {}",
                self.degree, self.function_label
            ),
            "x",
            &self.x,
            false,
            &series,
        )
    }
}

const SVG_W: f64 = 720.0;
const SVG_H: f64 = 480.0;
const MARGIN: f64 = 60.0;

/// A minimal static plot: one polyline per series on a log error axis,
/// with the x axis logarithmic too when `log_x` is set.
fn render_svg(
    title: &str,
    x_label: &str,
    xs: &[f64],
    log_x: bool,
    series: &[(&str, &str, &Vec<f64>)],
) -> String {
    let map_x = |x: f64| -> Option<f64> {
        if log_x && x <= 0.0 {
            None
        } else if log_x {
            Some(x.ln())
        } else {
            Some(x)
        }
    };
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    for &x in xs {
        if let Some(v) = map_x(x) {
            x_min = x_min.min(v);
            x_max = x_max.max(v);
        }
    }
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for (_, _, ys) in series {
        for &y in ys.iter() {
            if y > 0.0 {
                let v = y.log10();
                y_min = y_min.min(v);
                y_max = y_max.max(v);
            }
        }
    }
    if !x_min.is_finite() || !y_min.is_finite() {
        x_min = 0.0;
        x_max = 1.0;
        y_min = -1.0;
        y_max = 0.0;
    }
    if x_max == x_min {
        x_max = x_min + 1.0;
    }
    if y_max == y_min {
        y_max = y_min + 1.0;
    }
    let px = |v: f64| MARGIN + (v - x_min) / (x_max - x_min) * (SVG_W - 2.0 * MARGIN);
    let py = |v: f64| SVG_H - MARGIN - (v - y_min) / (y_max - y_min) * (SVG_H - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_W}" height="{SVG_H}" viewBox="0 0 {SVG_W} {SVG_H}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{SVG_W}" height="{SVG_H}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        SVG_W / 2.0,
        xml_escape(title)
    );
    // Axes.
    let _ = writeln!(
        svg,
        r#"<line x1="{m}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/><line x1="{m}" y1="{t}" x2="{m}" y2="{b}" stroke="black"/>"#,
        m = MARGIN,
        b = SVG_H - MARGIN,
        r = SVG_W - MARGIN,
        t = MARGIN,
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}{}</text>"#,
        SVG_W / 2.0,
        SVG_H - 16.0,
        xml_escape(x_label),
        if log_x { " (log)" } else { "" }
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 {})">error (log10)</text>"#,
        SVG_H / 2.0,
        SVG_H / 2.0
    );
    for (si, (name, color, ys)) in series.iter().enumerate() {
        let mut pts = String::new();
        for (&x, &y) in xs.iter().zip(ys.iter()) {
            let (Some(mx), true) = (map_x(x), y > 0.0) else {
                continue;
            };
            let _ = write!(pts, "{:.2},{:.2} ", px(mx), py(y.log10()));
        }
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.trim_end()
        );
        let ly = MARGIN + 16.0 * si as f64;
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{ly}" font-family="sans-serif" font-size="12" fill="{color}">{name}</text>"#,
            SVG_W - MARGIN + 6.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Writes the artifact to `path` in the requested format.
pub fn emit(artifact: &dyn Emittable, format: EmitFormat, path: &Path) -> Result<()> {
    let payload = match format {
        EmitFormat::Csv => artifact.to_csv(),
        EmitFormat::Json => {
            let mut s = serde_json::to_string_pretty(&artifact.to_json())
                .expect("valid JSON value");
            s.push('\n');
            s
        }
        EmitFormat::Svg => artifact.to_svg(),
    };
    std::fs::write(path, payload).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::catalog::resolve_entry;
    use crate::harness::sweep::sweep;

    fn small_report() -> RateReport {
        let entry = resolve_entry("exp(x^5)").unwrap();
        sweep(&entry, 1, 8, 1).unwrap()
    }

    #[test]
    fn csv_schema_and_row_count() {
        let report = small_report();
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,err_P,err_T,err_B,ratio_P,ratio_T,scaled_ratio_P"
        );
        assert_eq!(lines.count(), report.degrees.len());
        // 17 significant digits survive a parse round-trip.
        let first_row = csv.lines().nth(1).unwrap();
        let fields: Vec<&str> = first_row.split(',').collect();
        assert_eq!(fields.len(), 7);
        let parsed: f64 = fields[1].parse().unwrap();
        assert_eq!(parsed, report.err_p[0]);
    }

    #[test]
    fn json_round_trips() {
        let report = small_report();
        let value = report.to_json();
        let back: RateReport = serde_json::from_value(value).unwrap();
        assert_eq!(back.degrees, report.degrees);
        assert_eq!(back.err_p, report.err_p);
        assert_eq!(back.function_label, report.function_label);
        assert_eq!(
            back.slope_p.map(|s| s.slope),
            report.slope_p.map(|s| s.slope)
        );
    }

    #[test]
    fn svg_is_valid_xml_with_one_polyline_per_series() {
        let report = small_report();
        let svg = report.to_svg();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 3);
        // Every opened text element closes.
        assert_eq!(svg.matches("<text").count(), svg.matches("</text>").count());
    }

    #[test]
    fn emit_writes_files_and_reports_io_failures() {
        let report = small_report();
        let dir = std::env::temp_dir().join("polyapprox_emit_test");
        std::fs::create_dir_all(&dir).unwrap();
        for format in [EmitFormat::Csv, EmitFormat::Json, EmitFormat::Svg] {
            let path = dir.join(format!("report.{}", format.extension()));
            emit(&report, format, &path).unwrap();
            assert!(path.exists());
        }
        let bogus = Path::new("/nonexistent-dir/report.csv");
        assert!(matches!(
            emit(&report, EmitFormat::Csv, bogus),
            Err(Error::Io { .. })
        ));
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn format_parsing() {
        assert_eq!("csv".parse::<EmitFormat>().unwrap(), EmitFormat::Csv);
        assert_eq!("svg".parse::<EmitFormat>().unwrap(), EmitFormat::Svg);
        assert!("pdf".parse::<EmitFormat>().is_err());
    }
}
