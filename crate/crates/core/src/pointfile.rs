//! Plain-text point files shared by reference fronts and solution sets.
//!
//! One point per line, coordinates in scientific notation with 17
//! significant digits separated by a single space, LF line endings.
//! Seventeen digits round-trip every `f64` exactly.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::{Error, Result};
use crate::types::ObjectiveVector;

pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn render<P: AsRef<[f64]>>(points: &[P]) -> String {
    let mut out = String::new();
    for p in points {
        for (k, v) in p.as_ref().iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            write!(out, "{v:.16e}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Write `contents` to `path` through a temporary file in the same
/// directory followed by a rename, creating parent directories as needed.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn write_points<P: AsRef<[f64]>>(path: &Path, points: &[P]) -> Result<()> {
    write_atomic(path, render(points).as_bytes())
}

pub fn parse_points(path: &Path, text: &str) -> Result<Vec<ObjectiveVector>> {
    let mut points = Vec::new();
    let mut dim = None;
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let values = line
            .split(' ')
            .map(|tok| tok.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: lineno + 1,
                message: e.to_string(),
            })?;
        match dim {
            None => dim = Some(values.len()),
            Some(d) if d != values.len() => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: lineno + 1,
                    message: format!("expected {d} values, found {}", values.len()),
                })
            }
            _ => {}
        }
        points.push(ObjectiveVector::new(values));
    }
    Ok(points)
}

pub fn read_points(path: &Path) -> Result<Vec<ObjectiveVector>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_points(path, &text)
}
