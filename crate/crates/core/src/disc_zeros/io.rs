//! JSON and CSV encodings of zero sequences.
//!
//! Numbers are written in shortest round-trip decimal form, so reading back a
//! written sequence reproduces every binary64 coordinate exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use super::point::DiscPoint;
use super::sequence::{SequenceRecord, ZeroSequence};
use crate::error::{Error, Result};

/// File encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// Guesses the format from a file extension (`.csv` or JSON otherwise).
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonInput {
    Record(SequenceRecord),
    Bare(Vec<DiscPoint>),
    Envelope { data: SequenceRecord },
}

/// `{"points": [{"re":..,"im":..}, ...], "generator": {...}}`.
pub fn to_json(z: &ZeroSequence) -> Result<String> {
    let record = SequenceRecord {
        points: z.points().to_vec(),
        generator: z.generator().copied(),
    };
    Ok(serde_json::to_string_pretty(&record)?)
}

/// Accepts the object form written by [`to_json`], a bare array of points,
/// or either wrapped as the `data` member of a command-line output envelope.
pub fn from_json(text: &str) -> Result<ZeroSequence> {
    match serde_json::from_str::<JsonInput>(text) {
        Ok(JsonInput::Record(r) | JsonInput::Envelope { data: r }) => {
            ZeroSequence::from_parts(r.points, r.generator)
        }
        Ok(JsonInput::Bare(points)) => Ok(ZeroSequence::explicit(points)),
        Err(e) => Err(Error::Parse(e.to_string())),
    }
}

/// `re,im` header followed by one point per line. The generator is dropped.
pub fn to_csv(z: &ZeroSequence) -> String {
    let mut out = String::from("re,im\n");
    for p in z.points() {
        let _ = writeln!(out, "{:?},{:?}", p.re(), p.im());
    }
    out
}

/// Reads `re,im` rows; blank lines, `#` comment lines and the header are
/// skipped.
pub fn from_csv(text: &str) -> Result<ZeroSequence> {
    let mut points = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.replace(' ', "") == "re,im" {
            continue;
        }
        let mut cols = line.split(',');
        let (Some(a), Some(b), None) = (cols.next(), cols.next(), cols.next()) else {
            return Err(Error::Parse(format!(
                "line {}: expected two columns",
                n + 1
            )));
        };
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))
        };
        points.push(DiscPoint::new(parse(a)?, parse(b)?)?);
    }
    Ok(ZeroSequence::explicit(points))
}

pub fn read_sequence(path: &Path) -> Result<ZeroSequence> {
    let text = fs::read_to_string(path)?;
    match Format::from_path(path) {
        Format::Csv => from_csv(&text),
        Format::Json => from_json(&text),
    }
}

pub fn write_sequence(z: &ZeroSequence, path: &Path, format: Format) -> Result<()> {
    let text = match format {
        Format::Csv => to_csv(z),
        Format::Json => to_json(z)?,
    };
    fs::write(path, text)?;
    Ok(())
}
