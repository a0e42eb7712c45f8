use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Alternative, Cell, Scheme};

/// Parses a CSV dataset against `scheme`.
///
/// The header must be `id` followed by the scheme's criterion ids in scheme
/// order. Further trailing columns are allowed as long as none of them names
/// a scheme criterion; they are ignored, so a wide table can feed a scheme
/// that reads only its leading columns. Cell validation is left to
/// [`crate::model::validate_dataset`].
pub fn parse_dataset(text: &str, scheme: &Scheme) -> Result<Vec<Alternative>> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let header: Vec<String> = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_string)
        .collect();
    if header.iter().all(String::is_empty) {
        return Err(Error::Parse {
            location: "line 1".into(),
            message: "missing header row".into(),
        });
    }
    let mut expected = vec!["id".to_string()];
    expected.extend(scheme.criterion_ids());
    let n = expected.len();
    let prefix_ok = header.len() >= n && header[..n] == expected[..];
    let extras_ok = header[n.min(header.len())..]
        .iter()
        .all(|h| scheme.criterion_index(h).is_none() && h != "id");
    if !prefix_ok || !extras_ok {
        return Err(Error::HeaderMismatch { expected, got: header });
    }
    let wide = header.len() > n;

    let mut alts = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map(|p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let id = record.get(0).unwrap_or_default().to_string();
        // With extra columns present the row is projected onto the scheme's
        // columns; otherwise every cell counts so arity errors surface.
        let end = if wide { n.min(record.len()) } else { record.len() };
        let cells = record.iter().take(end).skip(1).map(Cell::parse).collect();
        alts.push(Alternative { id, cells, line });
    }
    Ok(alts)
}

pub fn load_dataset(path: impl AsRef<Path>, scheme: &Scheme) -> Result<Vec<Alternative>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_dataset(&text, scheme)
}

fn csv_error(err: csv::Error) -> Error {
    let location = match err.position() {
        Some(p) => format!("line {}", p.line()),
        None => "unknown position".into(),
    };
    Error::Parse {
        location,
        message: err.to_string(),
    }
}
