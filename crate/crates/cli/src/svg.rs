//! Minimal SVG rendering: line plots and heatmap grids.

use std::fmt::Write;

use nalgebra::DMatrix;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub struct Line<'a> {
    pub label: &'a str,
    pub x: &'a [f64],
    pub y: &'a [f64],
}

fn bounds<'a>(values: impl Iterator<Item = &'a f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

/// Polylines over shared axes with a legend.
pub fn line_plot(title: &str, x_label: &str, y_label: &str, lines: &[Line]) -> String {
    let (x0, x1) = bounds(lines.iter().flat_map(|l| l.x.iter()));
    let (y0, y1) = bounds(lines.iter().flat_map(|l| l.y.iter()));
    let (y0, y1) = (y0.min(0.0), y1);
    let pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let ph = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| MARGIN_TOP + (1.0 - (y - y0) / (y1 - y0)) * ph;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title));
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for k in 0..=5 {
        let f = k as f64 / 5.0;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (px, py) = (sx(xv), sy(yv));
        let bottom = MARGIN_TOP + ph;
        let _ = writeln!(out, r#"<line x1="{px:.2}" y1="{bottom}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#, bottom + 5.0);
        let _ = writeln!(
            out,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            bottom + 19.0,
            tick_label(xv)
        );
        let _ = writeln!(out, r#"<line x1="{:.2}" y1="{py:.2}" x2="{MARGIN_LEFT}" y2="{py:.2}" stroke="black"/>"#, MARGIN_LEFT - 5.0);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + pw / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        MARGIN_TOP + ph / 2.0,
        MARGIN_TOP + ph / 2.0,
        escape(y_label)
    );
    for (k, line) in lines.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut pts = String::new();
        for (x, y) in line.x.iter().zip(line.y) {
            let _ = write!(pts, "{:.2},{:.2} ", sx(*x), sy(*y));
        }
        let _ = writeln!(out, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.trim_end());
        let ly = MARGIN_TOP + 16.0 + 16.0 * k as f64;
        let lx = MARGIN_LEFT + pw - 170.0;
        let _ = writeln!(out, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#, lx + 20.0);
        let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(line.label));
    }
    out.push_str("</svg>\n");
    out
}

/// Linear scale on `[0, 1]`, light at 0 and dark at 1.
fn shade(v: f64) -> String {
    let v = if v.is_finite() { v.clamp(0.0, 1.0) } else { 0.0 };
    let light = (247.0, 251.0, 255.0);
    let dark = (8.0, 48.0, 107.0);
    let mix = |a: f64, b: f64| (a + (b - a) * v).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(light.0, dark.0), mix(light.1, dark.1), mix(light.2, dark.2))
}

/// One heatmap panel per matrix, laid out in rows of three, with a shared
/// colour bar.
pub fn heatmap_grid(titles: &[String], matrices: &[DMatrix<f64>]) -> String {
    let cols = matrices.len().clamp(1, 3);
    let rows = matrices.len().div_ceil(cols).max(1);
    let panel = 200.0;
    let gap = 40.0;
    let width = cols as f64 * (panel + gap) + gap + 60.0;
    let height = rows as f64 * (panel + gap + 20.0) + gap;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (k, m) in matrices.iter().enumerate() {
        let (r, c) = (k / cols, k % cols);
        let ox = gap + c as f64 * (panel + gap);
        let oy = gap + r as f64 * (panel + gap + 20.0);
        let n = m.nrows().max(1);
        let cell = panel / n as f64;
        if let Some(t) = titles.get(k) {
            let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, ox + panel / 2.0, oy - 8.0, escape(t));
        }
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let _ = writeln!(
                    out,
                    r##"<rect x="{:.2}" y="{:.2}" width="{cell:.2}" height="{cell:.2}" fill="{}" stroke="#cccccc" stroke-width="0.5"/>"##,
                    ox + j as f64 * cell,
                    oy + i as f64 * cell,
                    shade(m[(i, j)])
                );
            }
        }
        for i in 0..m.nrows() {
            let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, ox - 4.0, oy + (i as f64 + 0.6) * cell, i + 1);
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                ox + (i as f64 + 0.5) * cell,
                oy + panel + 14.0,
                i + 1
            );
        }
    }
    let bx = width - 50.0;
    for k in 0..=20 {
        let v = 1.0 - k as f64 / 20.0;
        let _ = writeln!(out, r#"<rect x="{bx}" y="{:.2}" width="16" height="10" fill="{}"/>"#, gap + k as f64 * 10.0, shade(v));
    }
    let _ = writeln!(out, r#"<text x="{}" y="{}">1</text>"#, bx + 20.0, gap + 9.0);
    let _ = writeln!(out, r#"<text x="{}" y="{}">0</text>"#, bx + 20.0, gap + 209.0);
    out.push_str("</svg>\n");
    out
}
