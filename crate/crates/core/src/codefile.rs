//! The plain-text code file format:
//!
//! ```text
//! weightforge-code v1
//! q=3 k=2 n=6
//! 1 1 1 0 0 0
//! 0 0 1 1 1 1
//! ```
//!
//! Lines starting with `#` are ignored. Every line, including the last, ends
//! in `\n`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{FqVector, GenMatrix, LinearCode};

pub const MAGIC: &str = "weightforge-code v1";

pub fn write_code(code: &LinearCode) -> String {
    let mut out = String::new();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "q={} k={} n={}", code.q(), code.k(), code.n()).unwrap();
    for row in code.gen().rows() {
        let line: Vec<String> = row.elems().iter().map(|e| e.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn header_field(token: Option<&str>, key: &str, line: usize) -> Result<u64> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {key}=")))?;
    let value = token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected {key}=<value>, found {token:?}")))?;
    value
        .parse()
        .map_err(|_| parse_err(line, format!("bad {key} value {value:?}")))
}

pub fn parse_code(text: &str) -> Result<LinearCode> {
    if !text.ends_with('\n') {
        return Err(parse_err(text.lines().count(), "missing trailing newline"));
    }
    let mut lines = text
        .split_terminator('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.starts_with('#'));

    let (ln, magic) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    if magic != MAGIC {
        return Err(parse_err(ln, format!("expected {MAGIC:?}")));
    }
    let (ln, header) = lines
        .next()
        .ok_or_else(|| parse_err(ln + 1, "missing header"))?;
    let mut tokens = header.split(' ');
    let q = header_field(tokens.next(), "q", ln)?;
    let k = header_field(tokens.next(), "k", ln)? as usize;
    let n = header_field(tokens.next(), "n", ln)? as usize;
    if tokens.next().is_some() {
        return Err(parse_err(ln, "trailing header fields"));
    }
    let field = Field::new(q)?;

    let mut rows = Vec::with_capacity(k);
    for (ln, line) in lines {
        if rows.len() == k {
            return Err(parse_err(ln, format!("more than {k} rows")));
        }
        let values = line
            .split(' ')
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| parse_err(ln, format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != n {
            return Err(parse_err(
                ln,
                format!("row has {} entries, expected {n}", values.len()),
            ));
        }
        let row = FqVector::from_u64s(&field, &values).map_err(|e| parse_err(ln, e.to_string()))?;
        rows.push(row);
    }
    if rows.len() != k {
        return Err(parse_err(
            text.lines().count(),
            format!("found {} rows, expected {k}", rows.len()),
        ));
    }
    LinearCode::new(GenMatrix::new(&field, n, rows)?)
}
