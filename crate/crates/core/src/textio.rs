//! Shared scaffolding for the line-oriented text formats.
//!
//! Every format starts with an optional `format 1` header, ignores blank
//! lines and `#` comments, and reports errors with 1-based line numbers.

use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// A significant line: 1-based number plus whitespace-split fields.
#[derive(Debug)]
pub struct Line<'a> {
    pub number: usize,
    pub fields: Vec<&'a str>,
}

/// Splits `text` into significant lines, consuming a leading `format N`
/// header if present (any N other than 1 is rejected).
pub fn significant_lines(text: &str) -> Result<Vec<Line<'_>>, ParseError> {
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        lines.push(Line {
            number: idx + 1,
            fields,
        });
    }
    if let Some(first) = lines.first() {
        if first.fields[0] == "format" {
            if first.fields.len() != 2 || first.fields[1] != "1" {
                return Err(ParseError::new(
                    first.number,
                    format!("unsupported format header: {}", first.fields.join(" ")),
                ));
            }
            lines.remove(0);
        }
    }
    Ok(lines)
}

pub fn parse_usize(line: &Line<'_>, field: &str) -> Result<usize, ParseError> {
    field
        .parse::<usize>()
        .map_err(|_| ParseError::new(line.number, format!("expected an integer, got `{field}`")))
}
