//! Plain-text matrix files.
//!
//! One row per line, entries separated by whitespace. An entry is `a`,
//! `a+bi`, `a-bi` or `bi` with `a`, `b` in decimal or scientific notation.
//! `#` starts a comment; blank lines are ignored.

use coreep::{Matrix, C64};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: cannot parse entry '{token}'")]
    Syntax { line: usize, column: usize, token: String },

    #[error("line {line} has {found} entries, expected {expected}")]
    RaggedRows { line: usize, expected: usize, found: usize },

    #[error("no matrix rows found")]
    Empty,
}

fn parse_real(s: &str) -> Option<f64> {
    let allowed = |c: char| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-');
    if s.is_empty() || !s.chars().all(allowed) || !s.chars().any(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

/// Parses a single complex entry.
pub fn parse_entry(tok: &str) -> Option<C64> {
    let Some(body) = tok.strip_suffix('i') else {
        return parse_real(tok).map(|re| C64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    match split {
        Some(p) => Some(C64::new(parse_real(&body[..p])?, parse_real(&body[p..])?)),
        None => parse_real(body).map(|im| C64::new(0.0, im)),
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix, ParseError> {
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        let mut pos = 0;
        for tok in line.split_whitespace() {
            let start = pos + line[pos..].find(tok).expect("token comes from this line");
            pos = start + tok.len();
            let z = parse_entry(tok).ok_or_else(|| ParseError::Syntax {
                line: ln + 1,
                column: line[..start].chars().count() + 1,
                token: tok.to_string(),
            })?;
            row.push(z);
        }
        if row.is_empty() {
            continue;
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(ParseError::RaggedRows {
                    line: ln + 1,
                    expected: first.len(),
                    found: row.len(),
                });
            }
        }
        rows.push(row);
    }
    let nrows = rows.len();
    if nrows == 0 {
        return Err(ParseError::Empty);
    }
    let ncols = rows[0].len();
    Ok(Matrix::new(nrows, ncols, rows.concat()).expect("finite entries of consistent length"))
}

/// Shortest decimal text that parses back to exactly `x`.
pub fn format_real(x: f64) -> String {
    let ax = x.abs();
    if x == x.trunc() && ax < 1e15 {
        format!("{x:.0}")
    } else if (1e-5..1e15).contains(&ax) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn format_entry(z: C64) -> String {
    if z.im == 0.0 {
        format_real(z.re)
    } else if z.re == 0.0 {
        format!("{}i", format_real(z.im))
    } else {
        let sign = if z.im.is_sign_negative() { "" } else { "+" };
        format!("{}{}{}i", format_real(z.re), sign, format_real(z.im))
    }
}

/// Matrix file text; `parse_matrix(&emit_matrix(a)) == a` for every finite `a`.
pub fn emit_matrix(a: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..a.rows() {
        let row: Vec<String> = (0..a.cols()).map(|j| format_entry(a[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
