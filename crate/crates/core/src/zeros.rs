//! Tables of nontrivial zero ordinates.
//!
//! A table is plain text with one positive ordinate per line. Lines starting
//! with `#` are comments; a comment of the form `# complete_to=T` declares
//! that every zero with ordinate in `(0, T]` is listed.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroDataset {
    pub ordinates: Vec<f64>,
    pub height_max: f64,
    pub complete_to: f64,
    pub source_label: String,
}

impl ZeroDataset {
    /// Ordinates up to the completeness height.
    pub fn complete(&self) -> &[f64] {
        let k = self.ordinates.partition_point(|&g| g <= self.complete_to);
        &self.ordinates[..k]
    }
}

pub fn parse_zeros(text: &str, source_label: &str) -> Result<ZeroDataset> {
    let mut ordinates = Vec::new();
    let mut complete_to = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            if let Some(v) = c.trim().strip_prefix("complete_to=") {
                let v: f64 = v
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse { line: lineno, msg: format!("bad complete_to: {e}") })?;
                complete_to = Some(v);
            }
            continue;
        }
        let g: f64 = line.parse().map_err(|e| Error::Parse { line: lineno, msg: format!("{e}: {line:?}") })?;
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::Parse { line: lineno, msg: format!("ordinate must be positive, got {g}") });
        }
        if let Some(&last) = ordinates.last() {
            if g < last {
                return Err(Error::Parse { line: lineno, msg: format!("ordinates must be ascending: {g} after {last}") });
            }
        }
        ordinates.push(g);
    }
    let Some(&height_max) = ordinates.last() else {
        return Err(Error::Parse { line: 0, msg: "no ordinates found".into() });
    };
    let complete_to = complete_to.unwrap_or(height_max);
    Ok(ZeroDataset { ordinates, height_max, complete_to, source_label: source_label.to_string() })
}

pub fn load_zeros(path: &Path) -> Result<ZeroDataset> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_zeros(&text, &path.display().to_string())
}
