//! Plain-text matrix files.
//!
//! ```text
//! # optional comment
//! name: A
//! hmat 2
//! 0.2 0.1+0.05i
//! 0.1-0.05i 0.3
//! ```
//!
//! Entries are `<re>`, `<re>+<im>i` or `<re>-<im>i`, printed as the shortest
//! decimal that parses back to the same double, so a print/parse round trip
//! is bit-exact. Blank lines separate matrices.

use std::fmt::Write as _;

use opmeans_core::linalg::{Complex, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedMatrix {
    pub name: Option<String>,
    pub matrix: Matrix,
}

impl NamedMatrix {
    pub fn new(name: impl Into<String>, matrix: Matrix) -> Self {
        Self {
            name: Some(name.into()),
            matrix,
        }
    }

    pub fn unnamed(matrix: Matrix) -> Self {
        Self { name: None, matrix }
    }
}

/// Shortest round-trip decimal; exponent form outside `[1e-5, 1e16)`.
pub fn format_real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// A `+0` imaginary part is omitted; `-0` is kept so the sign survives.
pub fn format_entry(z: Complex) -> String {
    let mut s = format_real(z.re);
    if z.im == 0.0 && z.im.is_sign_positive() {
        return s;
    }
    s.push(if z.im.is_sign_negative() { '-' } else { '+' });
    s.push_str(&format_real(z.im.abs()));
    s.push('i');
    s
}

fn parse_real(s: &str, line: usize) -> Result<f64, ParseError> {
    let bad = || err(line, format!("invalid number `{s}`"));
    if s.is_empty()
        || !s
            .bytes()
            .all(|b| b.is_ascii_digit() || b".+-eE".contains(&b))
    {
        return Err(bad());
    }
    let v: f64 = s.parse().map_err(|_| bad())?;
    if !v.is_finite() {
        return Err(err(line, format!("number `{s}` is out of range")));
    }
    Ok(v)
}

pub fn parse_entry(token: &str, line: usize) -> Result<Complex, ParseError> {
    let Some(body) = token.strip_suffix('i') else {
        return Ok(Complex::new(parse_real(token, line)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(|| err(line, format!("invalid complex entry `{token}`")))?;
    let re = parse_real(&body[..split], line)?;
    let im = parse_real(&body[split..], line)?;
    Ok(Complex::new(re, im))
}

pub fn write_matrix(out: &mut String, m: &NamedMatrix) {
    if let Some(name) = &m.name {
        let _ = writeln!(out, "name: {name}");
    }
    let n = m.matrix.rows();
    let _ = writeln!(out, "hmat {n}");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format_entry(m.matrix[(i, j)])).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

pub fn print_matrices(ms: &[NamedMatrix]) -> String {
    let mut out = String::new();
    for (k, m) in ms.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        write_matrix(&mut out, m);
    }
    out
}

pub fn parse_matrices(text: &str) -> Result<Vec<NamedMatrix>, ParseError> {
    let mut out = Vec::new();
    let mut name: Option<(usize, String)> = None;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()));

    while let Some((lineno, line)) = lines.next() {
        if line.is_empty() {
            continue;
        }
        if let Some(label) = line.strip_prefix("name:") {
            if name.is_some() {
                return Err(err(
                    lineno,
                    "two `name:` lines without a matrix between them",
                ));
            }
            name = Some((lineno, label.trim().to_string()));
            continue;
        }
        let dim = match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["hmat", d] => d
                .parse::<usize>()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| err(lineno, format!("invalid dimension `{d}`")))?,
            _ => {
                return Err(err(
                    lineno,
                    format!("expected `hmat <dim>`, found `{line}`"),
                ))
            }
        };
        let mut data = Vec::with_capacity(dim * dim);
        for row in 0..dim {
            let (rowno, body) = match lines.next() {
                Some((k, l)) if !l.is_empty() => (k, l),
                Some((k, _)) => return Err(err(k, format!("expected row {} of {dim}", row + 1))),
                None => {
                    return Err(err(
                        lineno,
                        format!("matrix ends after {row} of {dim} rows"),
                    ))
                }
            };
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.len() != dim {
                return Err(err(
                    rowno,
                    format!("expected {dim} entries, found {}", tokens.len()),
                ));
            }
            for t in tokens {
                data.push(parse_entry(t, rowno)?);
            }
        }
        let matrix = Matrix::from_vec(dim, dim, data).map_err(|e| err(lineno, e.to_string()))?;
        out.push(NamedMatrix {
            name: name.take().map(|(_, n)| n),
            matrix,
        });
    }
    if let Some((lineno, _)) = name {
        return Err(err(lineno, "`name:` line without a matrix"));
    }
    Ok(out)
}
