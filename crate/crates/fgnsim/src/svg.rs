//! Static SVG line charts: one panel per Hurst value, the four measures
//! against `tau`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use fgnsim_core::measures::MeasureRecord;

use crate::csv::{format_g12, write_atomic};
use crate::{FgnError, Result};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 160.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;
const TICKS: usize = 6;

const SERIES: [(&str, &str); 4] = [
    ("ER", "#1f77b4"),
    ("NY", "#d62728"),
    ("PY", "#2ca02c"),
    ("VE", "#9467bd"),
];

fn values(r: &MeasureRecord) -> [f64; 4] {
    [r.er, r.ny, r.py, r.ve]
}

/// Path of the panel for `hurst`: `<prefix>_H<hurst>.svg`.
pub fn panel_path(prefix: &Path, hurst: f64) -> PathBuf {
    let mut name = prefix.file_name().unwrap_or_default().to_os_string();
    name.push(format!("_H{}.svg", format_g12(hurst)));
    prefix.with_file_name(name)
}

/// Renders one panel; `records` must share a single Hurst value.
pub fn render_panel(records: &[MeasureRecord]) -> Result<String> {
    let first = records.first().ok_or(FgnError::EmptyInput)?;
    let (x_min, x_max) = span(records.iter().map(|r| r.tau));
    let (y_lo, y_hi) = span(records.iter().flat_map(values));
    let (y_min, y_max) = (y_lo.min(0.0), y_hi.max(1.0));
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let sy = |y: f64| TOP + (y_max - y) / (y_max - y_min) * plot_h;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="30" text-anchor="middle" font-size="16">{} (H = {})</text>"#,
        LEFT + plot_w / 2.0,
        first.config,
        format_g12(first.hurst)
    )
    .unwrap();

    // Axes and ticks.
    let (x0, y0) = (LEFT, TOP + plot_h);
    writeln!(
        s,
        r#"<path d="M{x0} {TOP} V{y0} H{}" fill="none" stroke="black"/>"#,
        LEFT + plot_w
    )
    .unwrap();
    for i in 0..TICKS {
        let f = i as f64 / (TICKS - 1) as f64;
        let xv = x_min + f * (x_max - x_min);
        let px = sx(xv);
        writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{y0}" x2="{px:.2}" y2="{}" stroke="black"/><text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#,
            y0 + 5.0,
            y0 + 20.0,
            tick_label(xv)
        )
        .unwrap();
        let yv = y_min + f * (y_max - y_min);
        let py = sy(yv);
        writeln!(
            s,
            r#"<line x1="{}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0,
            tick_label(yv)
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">tau</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 20.0
    )
    .unwrap();
    if y_min < 0.0 {
        let pz = sy(0.0);
        writeln!(
            s,
            r##"<line x1="{x0}" y1="{pz:.2}" x2="{}" y2="{pz:.2}" stroke="#999" stroke-dasharray="4 4"/>"##,
            LEFT + plot_w
        )
        .unwrap();
    }

    for (k, (name, color)) in SERIES.iter().enumerate() {
        let points: Vec<String> = records
            .iter()
            .map(|r| format!("{:.2},{:.2}", sx(r.tau), sy(values(r)[k])))
            .collect();
        writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            points.join(" ")
        )
        .unwrap();
        let ly = TOP + 20.0 + 22.0 * k as f64;
        let lx = WIDTH - RIGHT + 20.0;
        writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{name}</text>"#,
            lx + 30.0,
            lx + 38.0,
            ly + 4.0
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn span(it: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = it.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, lo + 0.5)
    }
}

fn tick_label(v: f64) -> String {
    let r = (v * 1000.0).round() / 1000.0;
    format_g12(if r == 0.0 { 0.0 } else { r })
}

/// Writes one SVG per distinct Hurst value (in order of first appearance)
/// and returns the written paths.
pub fn emit_svg(records: &[MeasureRecord], prefix: &Path) -> Result<Vec<PathBuf>> {
    if records.is_empty() {
        return Err(FgnError::EmptyInput);
    }
    let mut hursts: Vec<f64> = Vec::new();
    for r in records {
        if !hursts.iter().any(|&h| h.to_bits() == r.hurst.to_bits()) {
            hursts.push(r.hurst);
        }
    }
    let mut written = Vec::with_capacity(hursts.len());
    for h in hursts {
        let panel: Vec<MeasureRecord> = records
            .iter()
            .filter(|r| r.hurst.to_bits() == h.to_bits())
            .copied()
            .collect();
        let path = panel_path(prefix, h);
        write_atomic(&path, &render_panel(&panel)?)?;
        written.push(path);
    }
    Ok(written)
}
