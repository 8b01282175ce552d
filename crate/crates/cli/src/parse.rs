//! Flag value parsers.

use std::f64::consts::PI;

use chiralwalk_core::experiments::{GraphKind, GraphSpec, Measure, StateSpec};
use serde::{Deserialize, Serialize};

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: {s:?}"))
    }
}

/// Radians, or a multiple of π: `pi`, `-pi`, `0.5pi`, `3pi/4`, `-pi/2`,
/// `2*pi`.
pub fn phase(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace(['π'], "pi");
    let Some(at) = t.find("pi") else {
        return number(&t);
    };
    let coef = t[..at].trim().trim_end_matches('*').trim();
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => number(c)?,
    };
    let rest = t[at + 2..].trim();
    let den = match rest.strip_prefix('/') {
        Some(d) => number(d)?,
        None if rest.is_empty() => 1.0,
        None => return Err(format!("cannot parse phase {s:?}")),
    };
    if den == 0.0 {
        return Err(format!("zero denominator in phase {s:?}"));
    }
    Ok(coef * PI / den)
}

/// `kind:n` with kind one of `tri`, `triangular`, `cycle`, `complete`,
/// `pentagram` (the complete five-vertex graph).
pub fn graph(s: &str) -> Result<GraphSpec, String> {
    let (kind, n) = match s.split_once(':') {
        Some((k, n)) => (k.trim(), Some(n.trim())),
        None => (s.trim(), None),
    };
    let n = match n {
        Some(n) => n.parse::<usize>().map_err(|_| format!("bad vertex count in {s:?}"))?,
        None if kind == "pentagram" => 5,
        None => return Err(format!("graph needs a size, e.g. tri:5 (got {s:?})")),
    };
    let kind = match kind {
        "tri" | "triangular" => GraphKind::Triangular,
        "cycle" => GraphKind::Cycle,
        "complete" => GraphKind::Complete,
        "pentagram" if n == 5 => GraphKind::Complete,
        "pentagram" => return Err("the pentagram has 5 vertices".into()),
        other => return Err(format!("unknown graph kind {other:?}")),
    };
    let spec = GraphSpec { kind, n, theta: 0.0, magnitude: 1.0 };
    spec.build().map_err(|e| e.to_string())?;
    Ok(spec)
}

/// `localized:i`, `pair:i,j:phi`, `pair:phi`, `bell`, `werner:b`, or a JSON
/// object such as `{"kind":"werner","b":0.5}`.
pub fn state(s: &str) -> Result<StateSpec, String> {
    let t = s.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| format!("bad state JSON: {e}"));
    }
    let mut parts = t.splitn(3, ':');
    let kind = parts.next().unwrap_or_default();
    let a = parts.next();
    let b = parts.next();
    match (kind, a, b) {
        ("bell", None, None) => Ok(StateSpec::bell()),
        ("localized", Some(i), None) => {
            Ok(StateSpec::Localized { site: i.trim().parse().map_err(|_| format!("bad site in {s:?}"))? })
        }
        ("pair", Some(phi), None) => Ok(StateSpec::pair(phase(phi)?)),
        ("pair", Some(sites), Some(phi)) => {
            let (i, j) = sites.split_once(',').ok_or_else(|| format!("pair sites must look like 1,2 in {s:?}"))?;
            let i = i.trim().parse().map_err(|_| format!("bad site in {s:?}"))?;
            let j = j.trim().parse().map_err(|_| format!("bad site in {s:?}"))?;
            Ok(StateSpec::Pair { sites: [i, j], phi: phase(phi)? })
        }
        ("werner", Some(b), None) => Ok(StateSpec::Werner { b: number(b)? }),
        _ => Err(format!("cannot parse state {s:?}")),
    }
}

/// `concurrence`, `concurrence:i,j`, `occupation:i`, `pts-bures`, `fidelity`.
pub fn measure(s: &str) -> Result<Measure, String> {
    let t = s.trim();
    let (kind, arg) = match t.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (t, None),
    };
    match (kind, arg) {
        ("concurrence", None) => Ok(Measure::end_concurrence()),
        ("concurrence", Some(p)) => {
            let (i, j) = p.split_once(',').ok_or_else(|| format!("concurrence pair must look like 4,5 in {s:?}"))?;
            let i = i.trim().parse().map_err(|_| format!("bad site in {s:?}"))?;
            let j = j.trim().parse().map_err(|_| format!("bad site in {s:?}"))?;
            Ok(Measure::Concurrence { pair: Some([i, j]) })
        }
        ("occupation", Some(i)) => {
            Ok(Measure::Occupation { site: i.trim().parse().map_err(|_| format!("bad site in {s:?}"))? })
        }
        ("pts-bures" | "bures", None) => Ok(Measure::PtsBures),
        ("fidelity", None) => Ok(Measure::Fidelity),
        _ => Err(format!("unknown measure {s:?}")),
    }
}

/// Time grid as given on the command line; validated when the run starts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub t_start: f64,
    pub t_end: f64,
    pub dt: f64,
}

/// `start:end:dt`
pub fn grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("time grid must look like 0:10:0.005 (got {s:?})"));
    };
    Ok(GridSpec { t_start: number(a)?, t_end: number(b)?, dt: number(c)? })
}

/// `5`, `5,7,9` or an inclusive range `5:33:2` / `4:4`.
pub fn sizes(s: &str) -> Result<Vec<usize>, String> {
    let int = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad chain size {x:?}"));
    let out: Vec<usize> = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let (lo, hi, step) = match parts.as_slice() {
            [a, b] => (int(a)?, int(b)?, 1),
            [a, b, c] => (int(a)?, int(b)?, int(c)?),
            _ => return Err(format!("size range must look like 5:33:2 (got {s:?})")),
        };
        if step == 0 {
            return Err("size step must be positive".into());
        }
        (lo..=hi).step_by(step).collect()
    } else {
        s.split(',').map(int).collect::<Result<_, _>>()?
    };
    if out.is_empty() {
        return Err(format!("no chain sizes in {s:?}"));
    }
    Ok(out)
}

/// Comma-separated times.
pub fn times(s: &str) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s.split(',').map(number).collect::<Result<_, _>>()?;
    if v.is_empty() {
        return Err("no times given".into());
    }
    Ok(v)
}

/// Comma-separated phases.
pub fn phases(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(phase).collect()
}
