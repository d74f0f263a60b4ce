//! Plain-text formats.
//!
//! A permutation file holds `n` on its first line and `π(1) … π(n)` on the
//! second. A data array file is one line of whitespace-separated tokens.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: expected {expected} values, found {found}")]
    Count { line: usize, expected: usize, found: usize },
    #[error("line 2: not a permutation: {0}")]
    NotAPermutation(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// Parse a permutation file. Blank lines are ignored; the values may span
/// several lines.
pub fn parse_perm(text: &str) -> Result<Vec<usize>, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, head) = lines.next().ok_or_else(|| syntax(1, "empty input"))?;
    let n: usize = head
        .parse()
        .map_err(|_| syntax(first, format!("expected element count, found {head:?}")))?;
    if n == 0 {
        return Err(syntax(first, "element count must be positive"));
    }
    let mut values = Vec::with_capacity(n);
    let mut last = first + 1;
    for (line, l) in lines {
        last = line;
        for tok in l.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| syntax(line, format!("invalid value {tok:?}")))?;
            if v == 0 || v > n {
                return Err(syntax(line, format!("value {v} outside 1..={n}")));
            }
            values.push(v);
        }
    }
    if values.len() != n {
        return Err(ParseError::Count { line: last, expected: n, found: values.len() });
    }
    let mut seen = vec![false; n];
    for &v in &values {
        if std::mem::replace(&mut seen[v - 1], true) {
            return Err(ParseError::NotAPermutation(format!("{v} occurs twice")));
        }
    }
    Ok(values)
}

pub fn format_perm(p: &[usize]) -> String {
    let mut out = format!("{}\n", p.len());
    for (k, v) in p.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
    out
}

/// Split a data array file into its tokens.
pub fn parse_array(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_owned).collect()
}

pub fn format_array<T: std::fmt::Display>(a: &[T]) -> String {
    let mut out = String::new();
    for (k, v) in a.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p = vec![2, 3, 4, 1];
        assert_eq!(format_perm(&p), "4\n2 3 4 1\n");
        assert_eq!(parse_perm(&format_perm(&p)).unwrap(), p);
        assert_eq!(parse_perm("3\n2 3\n1\n").unwrap(), vec![2, 3, 1]);
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(parse_perm(""), Err(syntax(1, "empty input")));
        assert!(matches!(parse_perm("x\n1"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse_perm("2\n1 z"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(parse_perm("2\n1 3"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(
            parse_perm("3\n1 2"),
            Err(ParseError::Count { expected: 3, found: 2, .. })
        ));
        assert!(matches!(parse_perm("2\n1 1"), Err(ParseError::NotAPermutation(_))));
    }

    #[test]
    fn arrays() {
        assert_eq!(parse_array(" a b\nc "), vec!["a", "b", "c"]);
        assert_eq!(format_array(&["x", "y"]), "x y\n");
    }
}
