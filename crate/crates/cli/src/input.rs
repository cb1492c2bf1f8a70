//! File and stream parsing for the CLI.
//!
//! Label files carry one trimmed UTF-8 token per line, or two-column CSV
//! `id,label` rows when `--csv` is given (the two files are then aligned by
//! id instead of by position). Contingency tables are whitespace-separated
//! non-negative integers, one row per line, with blank lines and `#` comment
//! lines ignored. The path `-` reads standard input.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::Read;
use std::path::Path;

use ari_core::ContingencyTable;

/// Input-layer failure; always maps to the malformed-input exit code.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn describe(path: &Path) -> String {
    if path.as_os_str() == "-" {
        "<stdin>".to_string()
    } else {
        path.display().to_string()
    }
}

pub fn read_source(path: &Path) -> Result<String, InputError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| InputError(format!("<stdin>: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }
}

/// One label token per line, trimmed; empty lines are malformed.
pub fn parse_labels_plain(text: &str, path: &Path) -> Result<Vec<String>, InputError> {
    let mut labels = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let token = raw.trim();
        if token.is_empty() {
            return Err(InputError(format!(
                "{}: line {} is empty; expected one label per line",
                describe(path),
                index + 1
            )));
        }
        labels.push(token.to_string());
    }
    if labels.is_empty() {
        return Err(InputError(format!("{}: no labels found", describe(path))));
    }
    Ok(labels)
}

/// Two-column CSV `id,label` without a header row.
pub fn parse_labels_csv(text: &str, path: &Path) -> Result<Vec<(String, String)>, InputError> {
    let name = describe(path);
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| InputError(format!("{name}: {e}")))?;
        if record.len() != 2 {
            let line = record
                .position()
                .map(|p| p.line().to_string())
                .unwrap_or_else(|| "?".to_string());
            return Err(InputError(format!(
                "{name}: line {line}: expected two columns `id,label`, found {}",
                record.len()
            )));
        }
        rows.push((record[0].to_string(), record[1].to_string()));
    }
    if rows.is_empty() {
        return Err(InputError(format!("{name}: no rows found")));
    }
    Ok(rows)
}

/// Joins two id-keyed label sets; object order follows the first file.
pub fn align_by_id(
    a_rows: Vec<(String, String)>,
    b_rows: Vec<(String, String)>,
) -> Result<(Vec<String>, Vec<String>), InputError> {
    let mut b_by_id: HashMap<String, String> = HashMap::with_capacity(b_rows.len());
    for (id, label) in b_rows {
        if b_by_id.insert(id.clone(), label).is_some() {
            return Err(InputError(format!(
                "second label file: duplicate id '{id}'"
            )));
        }
    }
    let mut seen = HashMap::with_capacity(a_rows.len());
    let mut a_labels = Vec::with_capacity(a_rows.len());
    let mut b_labels = Vec::with_capacity(a_rows.len());
    for (id, label) in a_rows {
        if seen.insert(id.clone(), ()).is_some() {
            return Err(InputError(format!("first label file: duplicate id '{id}'")));
        }
        let matched = b_by_id.remove(&id).ok_or_else(|| {
            InputError(format!("id '{id}' is missing from the second label file"))
        })?;
        a_labels.push(label);
        b_labels.push(matched);
    }
    if let Some(id) = b_by_id.into_keys().next() {
        return Err(InputError(format!(
            "id '{id}' is missing from the first label file"
        )));
    }
    Ok((a_labels, b_labels))
}

/// Whitespace-separated rows of non-negative integers; `#` lines and blank
/// lines are skipped. Errors carry 1-based line numbers of the source text.
pub fn parse_table(text: &str, path: &Path) -> Result<ContingencyTable, InputError> {
    let name = describe(path);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut width: Option<(usize, usize)> = None; // (columns, defining line)
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for token in line.split_whitespace() {
            let value: u64 = token.parse().map_err(|_| {
                InputError(format!(
                    "{name}: line {line_no}: '{token}' is not a non-negative integer"
                ))
            })?;
            row.push(value);
        }
        match width {
            None => width = Some((row.len(), line_no)),
            Some((cols, first_line)) if cols != row.len() => {
                return Err(InputError(format!(
                    "{name}: line {line_no}: row has {} entries but line {first_line} has {cols}",
                    row.len()
                )));
            }
            Some(_) => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(InputError(format!("{name}: no table rows found")));
    }
    ContingencyTable::from_rows(&rows).map_err(|e| InputError(format!("{name}: {e}")))
}
