//! Text output: CSV with `#` metadata comments and LF line endings.

use std::fmt::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::experiments::TraceSeries;

/// Number of significant digits written for floating-point values.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`-style formatting.
pub fn format_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= SIGNIFICANT_DIGITS as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn metadata_lines(out: &mut String, meta: &[(String, String)]) {
    for (k, v) in meta {
        let _ = writeln!(out, "# {k}: {v}");
    }
}

/// One time column plus one column per series; all series must share times.
pub fn traces_to_csv(series: &[TraceSeries], meta: &[(String, String)]) -> Result<String> {
    let first = series.first().ok_or_else(|| Error::InvalidArgument("no series to write".into()))?;
    if series.iter().any(|s| s.times() != first.times()) {
        return Err(Error::InvalidArgument("series do not share a time grid".into()));
    }
    let mut out = String::new();
    metadata_lines(&mut out, meta);
    for (k, s) in series.iter().enumerate() {
        let _ = writeln!(out, "# series {}: {}", k + 1, s.label.measure);
        for (key, v) in &s.label.params {
            let _ = writeln!(out, "#   {key}: {v}");
        }
    }
    out.push('t');
    for s in series {
        out.push(',');
        out.push_str(&s.label.measure);
    }
    out.push('\n');
    for (k, t) in first.times().iter().enumerate() {
        out.push_str(&format_g(*t));
        for s in series {
            out.push(',');
            out.push_str(&format_g(s.values()[k]));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Complex matrix as interleaved `re,im` columns.
pub fn complex_matrix_to_csv(m: &DMatrix<Complex64>, meta: &[(String, String)]) -> String {
    let mut out = String::new();
    metadata_lines(&mut out, meta);
    let header: Vec<String> = (1..=m.ncols()).flat_map(|j| [format!("re_{j}"), format!("im_{j}")]).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().flat_map(|z| [format_g(z.re), format_g(z.im)]).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn real_matrix_to_csv(m: &DMatrix<f64>, meta: &[(String, String)]) -> String {
    let mut out = String::new();
    metadata_lines(&mut out, meta);
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(|v| format_g(*v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
