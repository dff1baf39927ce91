//! Germ problem files.
//!
//! ```text
//! # dy on the cusp
//! vars: x y
//! f: x^2 + y^3
//! omega: 0, 1
//! ```
//!
//! `f` and `omega` take comma-separated polynomials and may be repeated to
//! continue the list.  `f` may be omitted for a form on the ambient space.

use icis_core::index::GermProblem;
use icis_core::poly::{parse_poly, Poly};
use icis_core::Error;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileErrorKind {
    Syntax,
    Arity,
    NotGerm,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct FileError {
    pub kind: FileErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A located list item.
#[derive(Debug, Clone)]
struct Item {
    text: String,
    line: usize,
    column: usize,
}

#[derive(Debug, Default)]
struct Raw {
    vars: Option<(Vec<Item>, usize)>,
    f: Vec<Item>,
    f_line: Option<usize>,
    omega: Vec<Item>,
    omega_line: Option<usize>,
}

fn err(kind: FileErrorKind, line: usize, column: usize, message: impl Into<String>) -> FileError {
    FileError {
        kind,
        line,
        column,
        message: message.into(),
    }
}

/// Splits `text` (starting at 1-based `column`) on `sep`, keeping the
/// column of each trimmed piece.
fn split_items(text: &str, line: usize, column: usize, sep: impl Fn(char) -> bool) -> Vec<Item> {
    let mut out = Vec::new();
    let mut start = 0;
    let chars: Vec<char> = text.chars().collect();
    for i in 0..=chars.len() {
        if i == chars.len() || sep(chars[i]) {
            let piece: String = chars[start..i].iter().collect();
            let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
            let trimmed = piece.trim();
            out.push(Item {
                text: trimmed.to_string(),
                line,
                column: column + start + lead,
            });
            start = i + 1;
        }
    }
    out
}

fn valid_name(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some('a'..='z')) && c.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

fn scan(text: &str) -> Result<Raw, FileError> {
    use FileErrorKind::*;
    let mut raw = Raw::default();
    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let body = full.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let key_col = body.chars().take_while(|c| c.is_whitespace()).count() + 1;
        let Some((key, value)) = body.split_once(':') else {
            return Err(err(Syntax, line, key_col, "expected `key: value`"));
        };
        let value_col = key.chars().count() + 2;
        match key.trim() {
            "vars" => {
                if raw.vars.is_some() {
                    return Err(err(Syntax, line, key_col, "duplicate `vars`"));
                }
                let items: Vec<Item> = split_items(value, line, value_col, |c| c == ',' || c.is_whitespace())
                    .into_iter()
                    .filter(|i| !i.text.is_empty())
                    .collect();
                for i in &items {
                    if !valid_name(&i.text) {
                        return Err(err(Syntax, line, i.column, format!("invalid variable name {:?}", i.text)));
                    }
                    if items.iter().filter(|j| j.text == i.text).count() > 1 {
                        return Err(err(Syntax, line, i.column, format!("repeated variable {:?}", i.text)));
                    }
                }
                raw.vars = Some((items, line));
            }
            k @ ("f" | "omega") => {
                if value.trim().is_empty() {
                    if k == "f" {
                        raw.f_line.get_or_insert(line);
                        continue;
                    }
                    return Err(err(Syntax, line, value_col, "empty `omega`"));
                }
                let items = split_items(value, line, value_col, |c| c == ',');
                if let Some(i) = items.iter().find(|i| i.text.is_empty()) {
                    return Err(err(Syntax, line, i.column, "empty list entry"));
                }
                if k == "f" {
                    raw.f_line.get_or_insert(line);
                    raw.f.extend(items);
                } else {
                    raw.omega_line.get_or_insert(line);
                    raw.omega.extend(items);
                }
            }
            other => {
                return Err(err(Syntax, line, key_col, format!("unknown key {other:?}")));
            }
        }
    }
    Ok(raw)
}

fn parse_items(items: &[Item], vars: &[String]) -> Result<Vec<Poly>, FileError> {
    items
        .iter()
        .map(|i| {
            parse_poly(&i.text, vars).map_err(|e| match e {
                Error::Parse { column, message } => {
                    err(FileErrorKind::Syntax, i.line, i.column + column - 1, message)
                }
                other => err(FileErrorKind::Syntax, i.line, i.column, other.to_string()),
            })
        })
        .collect()
}

/// Parses the contents of a germ file.
pub fn parse_germ_text(text: &str) -> Result<GermProblem, FileError> {
    use FileErrorKind::*;
    let raw = scan(text)?;
    let end = text.lines().count().max(1);
    let Some((var_items, vars_line)) = raw.vars else {
        return Err(err(Syntax, end, 1, "missing `vars`"));
    };
    if var_items.is_empty() {
        return Err(err(Syntax, vars_line, 1, "no variables"));
    }
    let Some(omega_line) = raw.omega_line else {
        return Err(err(Syntax, end, 1, "missing `omega`"));
    };
    let vars: Vec<String> = var_items.into_iter().map(|i| i.text).collect();
    let n = vars.len();
    if raw.omega.len() != n {
        return Err(err(
            Arity,
            omega_line,
            1,
            format!("omega has {} coefficients, expected {n}", raw.omega.len()),
        ));
    }
    if raw.f.len() >= n {
        return Err(err(
            Arity,
            raw.f_line.unwrap_or(1),
            1,
            format!("{} equations in {n} variables, need fewer", raw.f.len()),
        ));
    }
    let f = parse_items(&raw.f, &vars)?;
    let a = parse_items(&raw.omega, &vars)?;
    for (p, item) in f.iter().zip(&raw.f) {
        if !p.constant_term().is_zero() {
            return Err(err(NotGerm, item.line, item.column, format!("{:?} does not vanish at the origin", item.text)));
        }
    }
    GermProblem::new(vars, f, a).map_err(|e| err(NotGerm, omega_line, 1, e.to_string()))
}
