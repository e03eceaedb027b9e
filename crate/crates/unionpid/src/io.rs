//! Plain-text distribution files.
//!
//! ```text
//! # XOR
//! T Y1 Y2 p
//! 0 0 0 1/4
//! 1 0 1 1/4
//! 1 1 0 1/4
//! 0 1 1 1/4
//! ```
//!
//! Columns are whitespace separated. The header lists the variable names and
//! ends with the literal column `p`. Probabilities are decimals or `a/b`
//! fractions; `#` starts a comment line.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use unionpid_core::{JointDistribution, NORMALIZATION_TOLERANCE};

use crate::error::{CliError, Result};

/// Largest denominator tried when writing a probability as a fraction.
const MAX_DENOMINATOR: u64 = 100_000;

fn parse_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_probability(text: &str) -> Option<f64> {
    let value = match text.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.parse().ok()?;
            let b: f64 = b.parse().ok()?;
            if b == 0.0 {
                return None;
            }
            a / b
        }
        None => text.parse().ok()?,
    };
    value.is_finite().then_some(value)
}

/// Parses the text of a distribution file.
pub fn parse_distribution(text: &str) -> Result<JointDistribution> {
    let mut header: Option<(usize, Vec<String>)> = None;
    let mut rows: Vec<(Vec<String>, f64)> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut total = 0.0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let Some((_, names)) = &header else {
            if fields.len() < 2 || fields[fields.len() - 1] != "p" {
                return Err(parse_error(
                    line,
                    "header must list the variable names followed by p",
                ));
            }
            let names: Vec<String> = fields[..fields.len() - 1]
                .iter()
                .map(|s| s.to_string())
                .collect();
            header = Some((line, names));
            continue;
        };
        if fields.len() != names.len() + 1 {
            return Err(parse_error(
                line,
                format!(
                    "expected {} columns, found {}",
                    names.len() + 1,
                    fields.len()
                ),
            ));
        }
        let text_p = fields[names.len()];
        let p = parse_probability(text_p)
            .ok_or_else(|| parse_error(line, format!("invalid probability {text_p}")))?;
        if p < 0.0 {
            return Err(parse_error(line, format!("negative probability {text_p}")));
        }
        let symbols: Vec<String> = fields[..names.len()]
            .iter()
            .map(|s| s.to_string())
            .collect();
        if !seen.insert(symbols.clone()) {
            return Err(parse_error(line, "duplicate outcome"));
        }
        total += p;
        rows.push((symbols, p));
    }
    let Some((header_line, names)) = header else {
        return Err(parse_error(1, "missing header"));
    };
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        let last = text.lines().count().max(header_line);
        return Err(parse_error(
            last,
            format!("probabilities sum to {total}, not 1"),
        ));
    }
    let refs: Vec<(Vec<&str>, f64)> = rows
        .iter()
        .map(|(s, p)| (s.iter().map(String::as_str).collect(), *p))
        .collect();
    let rows: Vec<(&[&str], f64)> = refs.iter().map(|(s, p)| (s.as_slice(), *p)).collect();
    JointDistribution::from_rows(&names, &rows).map_err(|e| parse_error(header_line, e.to_string()))
}

/// Writes `p` so that reading it back gives the same `f64`. Short decimals
/// are kept; otherwise the smallest exact fraction is used when one exists.
pub fn format_probability(p: f64) -> String {
    let decimal = format!("{p}");
    if decimal.len() <= 10 {
        return decimal;
    }
    (1..=MAX_DENOMINATOR)
        .find_map(|b| {
            let a = (p * b as f64).round();
            (a / b as f64 == p).then(|| format!("{a}/{b}"))
        })
        .unwrap_or(decimal)
}

fn check_symbol(s: &str, what: &str) -> Result<()> {
    if s.is_empty() || s.chars().any(char::is_whitespace) || s.starts_with('#') {
        return Err(CliError::arg(format!(
            "{what} {s:?} cannot be written to a distribution file"
        )));
    }
    Ok(())
}

/// Renders `dist` in the file format, one row per listed outcome.
pub fn format_distribution(dist: &JointDistribution) -> Result<String> {
    let names = dist.var_names();
    for n in names {
        check_symbol(n, "variable name")?;
    }
    for a in dist.alphabets() {
        for s in a {
            check_symbol(s, "symbol")?;
        }
    }
    let mut out = names.join(" ");
    out.push_str(" p\n");
    for (outcome, p) in dist.entries() {
        for (v, &s) in outcome.iter().enumerate() {
            out.push_str(&dist.alphabets()[v][s]);
            out.push(' ');
        }
        out.push_str(&format_probability(*p));
        out.push('\n');
    }
    Ok(out)
}

pub fn load_distribution(path: &Path) -> Result<JointDistribution> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_distribution(&text)
}

pub fn save_distribution(dist: &JointDistribution, path: &Path) -> Result<()> {
    fs::write(path, format_distribution(dist)?).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
