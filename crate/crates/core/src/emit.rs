//! CSV and SVG output.
//!
//! CSV: comma separated, `.` decimal point, one header row, every number in
//! scientific notation with 17 significant digits so that re-parsing gives
//! back the exact `f64`. Flags are written as 0/1. Output is a pure function
//! of the rows, so identical inputs give byte-identical files.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sweep::{IvRow, SweepRow};

pub trait Tabular {
    fn header() -> &'static [&'static str];
    fn values(&self) -> Vec<f64>;
}

impl Tabular for SweepRow {
    fn header() -> &'static [&'static str] {
        &[
            "e_vpcm",
            "e_statvolt_cm",
            "h_gauss",
            "omega_tau",
            "j0_statamp_cm2",
            "dj2_statamp_cm2",
            "ratio",
            "ratio_analytic",
            "ratio_simplified",
            "j_exact_statamp_cm2",
            "ratio_exact",
            "hall_abs_statamp_cm2",
            "dj_percent",
            "weak_field_flag",
        ]
    }

    fn values(&self) -> Vec<f64> {
        let r = &self.report;
        vec![
            self.e_vpcm,
            self.e_statvolt,
            self.h_gauss,
            r.omega_tau,
            r.j0,
            r.dj2,
            r.ratio,
            r.ratio_analytic,
            r.ratio_simplified,
            r.j_exact,
            r.ratio_exact,
            r.j1_total.norm(),
            100.0 * r.ratio.abs(),
            if r.weak_field_violated { 1.0 } else { 0.0 },
        ]
    }
}

impl Tabular for IvRow {
    fn header() -> &'static [&'static str] {
        &[
            "voltage_v",
            "n_cm3",
            "e_vpcm",
            "h_gauss",
            "j_zero_h_statamp_cm2",
            "j_h_statamp_cm2",
            "j_exact_statamp_cm2",
            "ratio",
            "dj_percent",
        ]
    }

    fn values(&self) -> Vec<f64> {
        vec![
            self.voltage,
            self.n_cm3,
            self.e_vpcm,
            self.h_gauss,
            self.j_zero_h,
            self.j_h,
            self.j_exact,
            self.ratio,
            100.0 * self.ratio.abs(),
        ]
    }
}

fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn to_csv<T: Tabular>(rows: &[T]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyResults);
    }
    let mut out = T::header().join(",");
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.values().into_iter().map(format_value).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Reads back a CSV produced by [`to_csv`].
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = text.lines().enumerate();
    let header: Vec<String> = match lines.next() {
        Some((_, h)) => h.split(',').map(|s| s.trim().to_string()).collect(),
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "missing header".into(),
            })
        }
    };
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|s| {
                s.trim().parse::<f64>().map_err(|_| Error::Parse {
                    line: idx + 1,
                    message: format!("`{s}` is not a number"),
                })
            })
            .collect::<Result<_>>()?;
        if row.len() != header.len() {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("{} fields, header has {}", row.len(), header.len()),
            });
        }
        rows.push(row);
    }
    Ok((header, rows))
}

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 60.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

/// Minimal line plot. With `log_y` non-positive y values are dropped.
pub fn line_plot(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[Series],
    log_y: bool,
) -> String {
    let ty = |y: f64| if log_y { y.log10() } else { y };
    let pts: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.points.iter().copied())
        .filter(|&(x, y)| x.is_finite() && y.is_finite() && (!log_y || y > 0.0))
        .map(|(x, y)| (x, ty(y)))
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = pts.iter().fold(
        (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        ),
        |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
    );
    if pts.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        let pad = if y0 == 0.0 { 1.0 } else { y0.abs() * 0.1 };
        y0 -= pad;
        y1 += pad;
    }
    let pw = WIDTH - MARGIN_L - MARGIN_R;
    let ph = HEIGHT - MARGIN_T - MARGIN_B;
    let sx = |x: f64| MARGIN_L + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| MARGIN_T + ph - (y - y0) / (y1 - y0) * ph;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let xv = x0 + f * (x1 - x0);
        let yv = y0 + f * (y1 - y0);
        let ylabel = if log_y {
            format!("1e{yv:.1}")
        } else {
            format!("{yv:.3e}")
        };
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            sx(xv),
            MARGIN_T + ph + 18.0,
            format_tick(xv)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            MARGIN_L - 6.0,
            sy(yv) + 4.0,
            ylabel
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        MARGIN_L + pw / 2.0,
        HEIGHT - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
        MARGIN_T + ph / 2.0,
        MARGIN_T + ph / 2.0,
        escape(y_label)
    );
    for (k, s) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let coords: Vec<String> = s
            .points
            .iter()
            .filter(|&&(x, y)| x.is_finite() && y.is_finite() && (!log_y || y > 0.0))
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(ty(y))))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" fill="{color}">{}</text>"#,
            MARGIN_L + 10.0,
            MARGIN_T + 16.0 + 16.0 * k as f64,
            escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn format_tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Ratio versus H for the first electric field of the sweep.
pub fn sweep_svg(rows: &[SweepRow]) -> Result<String> {
    let first = rows.first().ok_or(Error::EmptyResults)?;
    let at_e: Vec<&SweepRow> = rows.iter().filter(|r| r.e_vpcm == first.e_vpcm).collect();
    let series = vec![
        Series {
            label: "second order (valley sum)".into(),
            points: at_e.iter().map(|r| (r.h_gauss, r.report.ratio)).collect(),
        },
        Series {
            label: "exact solve".into(),
            points: at_e
                .iter()
                .map(|r| (r.h_gauss, r.report.ratio_exact))
                .collect(),
        },
    ];
    Ok(line_plot(
        &format!("Longitudinal magnetoresistance, E = {} V/cm", first.e_vpcm),
        "H (G)",
        "dJ/J0",
        &series,
        false,
    ))
}

/// J versus V, one curve per magnetic field, logarithmic current axis.
pub fn iv_svg(rows: &[IvRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyResults);
    }
    let mut fields: Vec<f64> = Vec::new();
    for r in rows {
        if !fields.contains(&r.h_gauss) {
            fields.push(r.h_gauss);
        }
    }
    let series: Vec<Series> = fields
        .iter()
        .map(|&h| Series {
            label: format!("H = {h} G"),
            points: rows
                .iter()
                .filter(|r| r.h_gauss == h)
                .map(|r| (r.voltage, r.j_h))
                .collect(),
        })
        .collect();
    Ok(line_plot(
        "Current-voltage reconstruction from measured n(V)",
        "V (volts)",
        "J (statA/cm^2)",
        &series,
        true,
    ))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes the CSV and/or SVG for a non-empty result set.
pub fn emit_artifacts<T: Tabular>(
    rows: &[T],
    svg: impl Fn(&[T]) -> Result<String>,
    csv_path: Option<&Path>,
    svg_path: Option<&Path>,
) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::EmptyResults);
    }
    if let Some(p) = csv_path {
        write_file(p, &to_csv(rows)?)?;
    }
    if let Some(p) = svg_path {
        write_file(p, &svg(rows)?)?;
    }
    Ok(())
}
