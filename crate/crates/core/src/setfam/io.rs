//! Family file formats.
//!
//! * JSON: `{"n": 3, "sets": [[], [1], [1, 2]]}` with each set ascending.
//! * Text: one set per line, elements space-separated ascending, `-` for `∅`.
//!   Blank lines and lines starting with `#` are skipped. The ground-set size
//!   is the largest element present (at least 1) unless given explicitly.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{FamilyError, Mask, SetFamily, MAX_GROUND};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON family: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Text { line: usize, message: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Format {
    /// `.json` selects JSON; anything else is text.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Text,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyFile {
    n: u8,
    sets: Vec<Vec<u8>>,
}

fn mask_from_list(list: &[u8], n: u8) -> Result<Mask, FamilyError> {
    match list.iter().find(|&&e| e == 0 || e > n) {
        Some(&e) => Err(FamilyError::BadElement { element: e, n }),
        None => Ok(Mask::from_elements(list.iter().copied())),
    }
}

pub fn to_json_value(family: &SetFamily) -> serde_json::Value {
    serde_json::json!({
        "n": family.n(),
        "sets": family.sets(),
    })
}

pub fn to_json(family: &SetFamily) -> String {
    to_json_value(family).to_string()
}

pub fn from_json(text: &str) -> Result<SetFamily, FormatError> {
    let file: FamilyFile = serde_json::from_str(text)?;
    let sets = file
        .sets
        .iter()
        .map(|l| mask_from_list(l, file.n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SetFamily::new(file.n, sets)?)
}

pub fn to_text(family: &SetFamily) -> String {
    let mut out = String::new();
    for s in family.sets() {
        if s.is_empty() {
            out.push('-');
        } else {
            let parts: Vec<String> = s.elements().map(|e| e.to_string()).collect();
            out.push_str(&parts.join(" "));
        }
        out.push('\n');
    }
    out
}

pub fn from_text(text: &str, n: Option<u8>) -> Result<SetFamily, FormatError> {
    let mut lists: Vec<Vec<u8>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| FormatError::Text {
            line: i + 1,
            message,
        };
        if line == "-" {
            lists.push(Vec::new());
            continue;
        }
        let list = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u8>()
                    .ok()
                    .filter(|e| (1..=MAX_GROUND).contains(e))
                    .ok_or_else(|| err(format!("`{tok}` is not an element in 1..=63")))
            })
            .collect::<Result<Vec<u8>, _>>()?;
        if list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err("elements must be strictly ascending".into()));
        }
        lists.push(list);
    }
    let inferred = lists.iter().flatten().copied().max().unwrap_or(1).max(1);
    let n = n.unwrap_or(inferred);
    let sets = lists
        .iter()
        .map(|l| mask_from_list(l, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SetFamily::new(n, sets)?)
}

pub fn parse(text: &str, format: Format) -> Result<SetFamily, FormatError> {
    match format {
        Format::Json => from_json(text),
        Format::Text => from_text(text, None),
    }
}

pub fn read_family(path: &Path, format: Option<Format>) -> Result<SetFamily, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text, format.unwrap_or_else(|| Format::from_path(path)))
}
