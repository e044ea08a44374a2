//! Instance files: a count line, then one `x y r` line per site.

use std::fmt::Write as _;
use std::path::Path;

use geogirth_core::{SiteSet, SiteSetError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid instance: {0}")]
    Invalid(SiteSetError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> InstanceError {
    InstanceError::Parse { line, msg: msg.into() }
}

/// Parses instance text. Blank lines are ignored; lines are numbered from 1.
pub fn parse(text: &str) -> Result<SiteSet, InstanceError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (ln, head) = lines.next().ok_or_else(|| parse_err(1, "missing site count"))?;
    let n: usize = head.parse().map_err(|_| parse_err(ln, format!("bad site count {head:?}")))?;
    let mut pts = Vec::with_capacity(n);
    for (ln, l) in lines {
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 3 {
            return Err(parse_err(ln, format!("expected `x y r`, got {} fields", f.len())));
        }
        let mut v = [0.0; 3];
        for (slot, s) in v.iter_mut().zip(&f) {
            *slot = s.parse().map_err(|_| parse_err(ln, format!("bad number {s:?}")))?;
        }
        if v[2] <= 0.0 {
            return Err(parse_err(ln, "radius must be positive"));
        }
        pts.push((v[0], v[1], v[2]));
    }
    if pts.len() != n {
        return Err(parse_err(ln, format!("count says {n} sites, found {}", pts.len())));
    }
    SiteSet::new(&pts).map_err(InstanceError::Invalid)
}

pub fn read(path: &Path) -> Result<SiteSet, InstanceError> {
    let text = std::fs::read_to_string(path).map_err(|source| InstanceError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

/// Canonical text: 17 significant digits per number.
pub fn format(points: &[(f64, f64, f64)]) -> String {
    let mut s = String::with_capacity(16 + 72 * points.len());
    writeln!(s, "{}", points.len()).unwrap();
    for &(x, y, r) in points {
        writeln!(s, "{x:.16e} {y:.16e} {r:.16e}").unwrap();
    }
    s
}

pub fn to_points(set: &SiteSet) -> Vec<(f64, f64, f64)> {
    set.sites().iter().map(|s| (s.x, s.y, s.r)).collect()
}

pub fn write(path: &Path, points: &[(f64, f64, f64)]) -> Result<(), InstanceError> {
    std::fs::write(path, format(points)).map_err(|source| InstanceError::Io {
        path: path.display().to_string(),
        source,
    })
}
