//! Plain-text table and degree-vector files.
//!
//! ```text
//! # comment
//! rank 3 disc 2 role allen
//! 1 1 r
//! 1 1 -r
//! 1 -1 0
//! ```
//!
//! A Fourier table whose row normalisers leave the field may carry a
//! `rowscale: r0 r1 ...` line after the header; row `i` then stands for
//! its entries divided by `sqrt(r_i)`. Degree files hold a single line
//! `degrees: 1 k1 k2 ...`.

use num_rational::Ratio;
use thiserror::Error;

use crate::exactnum::{parse_quad, parse_rational, Int};
use crate::tables::{DegreeVector, ExactMatrix, Role};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err<X>(line: usize, message: impl Into<String>) -> Result<X, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

/// Contents of an input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputFile<T: Int> {
    Table(ExactMatrix<T>),
    Degrees(DegreeVector<T>),
}

/// Non-empty lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

/// Splits a row into entries. Operators may be surrounded by spaces, so a
/// token that is a bare operator, or that follows one, joins its neighbour.
fn split_entries(row: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut glue = false;
    for tok in row.split_whitespace() {
        let joins_left = tok == "+"
            || tok == "-"
            || tok.starts_with('+')
            || tok.starts_with('*')
            || tok.starts_with('/');
        if (glue || joins_left) && !out.is_empty() {
            out.last_mut().unwrap().push_str(tok);
        } else {
            out.push(tok.to_string());
        }
        glue = tok.ends_with(['+', '-', '*', '/']);
    }
    out
}

fn parse_header<T: Int>(line: usize, text: &str) -> Result<(usize, Option<T>, Role), FormatError> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let mut rank = None;
    let mut disc = None;
    let mut role = None;
    let mut it = words.iter();
    while let Some(&key) = it.next() {
        let Some(&val) = it.next() else {
            return err(line, format!("header key `{key}` has no value"));
        };
        match key {
            "rank" => match val.parse::<usize>() {
                Ok(r) if r >= 1 => rank = Some(r),
                _ => return err(line, format!("bad rank `{val}`")),
            },
            "disc" => match T::from_str_radix(val.trim_start_matches('+'), 10) {
                Ok(d) => disc = Some(d),
                Err(_) => return err(line, format!("bad disc `{val}`")),
            },
            "role" => match Role::from_name(val) {
                Some(r) => role = Some(r),
                None => return err(line, format!("unknown role `{val}`")),
            },
            _ => return err(line, format!("unknown header key `{key}`")),
        }
    }
    match (rank, role) {
        (Some(r), Some(role)) => Ok((r, disc, role)),
        _ => err(line, "header must read `rank R [disc D] role ROLE`"),
    }
}

fn parse_degrees<T: Int>(line: usize, text: &str) -> Result<DegreeVector<T>, FormatError> {
    let body = text.trim().trim_start_matches('(').trim_end_matches(')');
    let mut ks = Vec::new();
    for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
        if tok.is_empty() {
            continue;
        }
        match parse_rational::<T>(tok) {
            Ok(q) => ks.push(q),
            Err(e) => return err(line, e.to_string()),
        }
    }
    DegreeVector::new(ks).or_else(|e| err(line, e.to_string()))
}

/// Parses either a table file or a degree file.
pub fn parse_input<T: Int>(text: &str) -> Result<InputFile<T>, FormatError> {
    let lines = content_lines(text);
    let Some(&(first_no, first)) = lines.first() else {
        return err(0, "file is empty");
    };
    if let Some(rest) = first.strip_prefix("degrees:") {
        if let Some(&(no, _)) = lines.get(1) {
            return err(no, "unexpected content after the degree line");
        }
        return parse_degrees(first_no, rest).map(InputFile::Degrees);
    }
    if first.starts_with('(') {
        return parse_degrees(first_no, first).map(InputFile::Degrees);
    }
    parse_table(text).map(InputFile::Table)
}

/// Parses a table file.
pub fn parse_table<T: Int>(text: &str) -> Result<ExactMatrix<T>, FormatError> {
    let lines = content_lines(text);
    let Some(&(hline, header)) = lines.first() else {
        return err(0, "file is empty");
    };
    let (rank, disc, role) = parse_header::<T>(hline, header)?;
    let mut body = &lines[1..];
    let mut scale = None;
    if let Some(&(no, l)) = body.first() {
        if let Some(rest) = l.strip_prefix("rowscale:") {
            let mut qs: Vec<Ratio<T>> = Vec::new();
            for tok in rest.split_whitespace() {
                qs.push(parse_rational(tok).or_else(|e| err(no, e.to_string()))?);
            }
            scale = Some((no, qs));
            body = &body[1..];
        }
    }
    if body.len() != rank {
        let at = body.last().map_or(hline, |&(n, _)| n);
        return err(at, format!("expected {rank} rows, found {}", body.len()));
    }
    let mut rows = Vec::with_capacity(rank);
    for &(no, l) in body {
        let cells = split_entries(l);
        if cells.len() != rank {
            return err(
                no,
                format!("expected {rank} entries, found {}", cells.len()),
            );
        }
        let mut row = Vec::with_capacity(rank);
        for c in cells {
            row.push(parse_quad(&c, disc.as_ref()).or_else(|e| err(no, e.to_string()))?);
        }
        rows.push(row);
    }
    let m = ExactMatrix::new(rows, disc, role).or_else(|e| err(hline, e.to_string()))?;
    match scale {
        None => Ok(m),
        Some((no, qs)) => m.with_row_scale(qs).or_else(|e| err(no, e.to_string())),
    }
}

/// Serialises a table; `parse_table` reads it back to an equal matrix.
pub fn write_table<T: Int>(m: &ExactMatrix<T>) -> String {
    let mut out = format!("rank {}", m.rank());
    if let Some(d) = m.disc() {
        out.push_str(&format!(" disc {d}"));
    }
    out.push_str(&format!(" role {}\n", m.role()));
    if let Some(scale) = m.row_scale() {
        let parts: Vec<String> = scale.iter().map(|q| q.to_string()).collect();
        out.push_str(&format!("rowscale: {}\n", parts.join(" ")));
    }
    for row in m.entries() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_degrees<T: Int>(d: &DegreeVector<T>) -> String {
    let parts: Vec<String> = d.degrees().iter().map(|k| k.to_string()).collect();
    format!("degrees: {}\n", parts.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Quad;
    use num_bigint::BigInt;

    #[test]
    fn reads_rank3_allen_table() {
        let text = "# rank-3 table\nrank 3 disc 2 role allen\n1 1 r\n1 1 -r\n1 -1 0\n";
        let m: ExactMatrix<BigInt> = parse_table(text).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.get(0, 2), &Quad::sqrt_of(BigInt::from(2)));
        assert_eq!(m.role(), Role::Allen);
    }

    #[test]
    fn spaced_operators_join_entries() {
        assert_eq!(
            split_entries("1 + r  -1/2-r  2 - 3*r -4"),
            vec!["1+r", "-1/2-r", "2-3*r", "-4"]
        );
    }

    #[test]
    fn malformed_entry_is_reported_with_line() {
        let text = "rank 2 role eigen\n1 1\n1 1+sqrt\n";
        let e = parse_table::<BigInt>(text).unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn wrong_row_count_fails() {
        assert!(parse_table::<BigInt>("rank 2 role eigen\n1 1\n").is_err());
        assert!(parse_table::<BigInt>("rank 2 role eigen\n1 1\n1\n").is_err());
    }

    #[test]
    fn degree_files_in_both_spellings() {
        for text in ["degrees: 1 2 2\n", "(1,2,2)\n"] {
            match parse_input::<BigInt>(text).unwrap() {
                InputFile::Degrees(d) => assert_eq!(d.to_string(), "(1,2,2)"),
                other => panic!("expected degrees, got {other:?}"),
            }
        }
    }

    #[test]
    fn round_trip_with_row_scale() {
        let text = "rank 3 disc -3 role fourier\nrowscale: 3 3 3\n1 1 1\n1 -1/2+1/2*r -1/2-1/2*r\n1 -1/2-1/2*r -1/2+1/2*r\n";
        let m: ExactMatrix<BigInt> = parse_table(text).unwrap();
        assert_eq!(write_table(&m), text);
        assert_eq!(parse_table::<BigInt>(&write_table(&m)).unwrap(), m);
    }
}
