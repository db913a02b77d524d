//! Two-column resonance traces: frequency in Hz and response amplitude.
//!
//! Fields may be separated by commas, semicolons or whitespace. Blank lines
//! and `#` comments are skipped, as is a single non-numeric header line.

use std::path::Path;

use crate::error::CliError;

pub fn read_trace(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    parse_trace(&text).map_err(|reason| CliError::Input { path: path.to_owned(), reason })
}

pub fn parse_trace(text: &str) -> Result<(Vec<f64>, Vec<f64>), String> {
    let mut omega = Vec::new();
    let mut amplitude = Vec::new();
    let mut header_seen = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> =
            line.split(|c: char| c == ',' || c == ';' || c.is_whitespace()).filter(|f| !f.is_empty()).collect();
        if fields.len() < 2 {
            return Err(format!("line {}: expected two columns", lineno + 1));
        }
        match (fields[0].parse::<f64>(), fields[1].parse::<f64>()) {
            (Ok(w), Ok(a)) => {
                omega.push(w);
                amplitude.push(a);
            }
            _ if !header_seen && omega.is_empty() => header_seen = true,
            _ => return Err(format!("line {}: not a number pair", lineno + 1)),
        }
    }
    if omega.is_empty() {
        return Err("no data rows".into());
    }
    Ok((omega, amplitude))
}
