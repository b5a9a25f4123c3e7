//! Text formats for matrices and polynomial coefficients.
//!
//! Matrix text: a header line `rows cols`, then `rows` lines each holding
//! `cols` pairs `re im`. Blank lines are ignored.
//!
//! Polynomial text: whitespace-separated complex coefficients `a_0 ... a_{n-1}`
//! (or `a_0 ... a_n` when the leading coefficient is given explicitly), each
//! written as `re`, `imi` or `re+imi` / `re-imi`. Polynomial JSON: an array of
//! `[re, im]` pairs in the same order.

use crate::error::{Error, Result};
use crate::matrix::{Complex, ComplexMatrix};

/// Largest matrix (in entries) accepted from text input.
pub const MAX_MATRIX_ENTRIES: usize = 1 << 20;

/// Largest coefficient count accepted from text or JSON input.
pub const MAX_POLY_COEFFS: usize = 1 << 16;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, message)
    }
}

/// Whitespace-separated tokens of one line, with 1-based character columns.
fn line_tokens(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut column = 0;
    for (byte, ch) in line.char_indices() {
        column += 1;
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((byte, column)),
            (true, Some((b, c))) => {
                tokens.push(Token {
                    text: &line[b..byte],
                    line: line_no,
                    column: c,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &line[b..],
            line: line_no,
            column: c,
        });
    }
    tokens
}

fn finite(token: &Token<'_>, text: &str) -> Result<f64> {
    let value: f64 = text
        .parse()
        .map_err(|_| token.error(format!("invalid number `{text}`")))?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(token.error(format!("non-finite number `{text}`")))
    }
}

fn dimension(token: &Token<'_>, what: &str) -> Result<usize> {
    let value: usize = token.text.parse().map_err(|_| {
        token.error(format!(
            "{what} must be a positive integer, got `{}`",
            token.text
        ))
    })?;
    if value == 0 {
        return Err(token.error(format!("{what} must be positive")));
    }
    Ok(value)
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing `rows cols` header"))?;
    let head = line_tokens(header, header_no);
    if head.len() != 2 {
        let column = head.get(2).map_or(1, |t| t.column);
        return Err(Error::parse(
            header_no,
            column,
            format!("header must be `rows cols`, found {} fields", head.len()),
        ));
    }
    let rows = dimension(&head[0], "rows")?;
    let cols = dimension(&head[1], "cols")?;
    let entries = rows
        .checked_mul(cols)
        .filter(|&e| e <= MAX_MATRIX_ENTRIES)
        .ok_or_else(|| {
            head[0].error(format!(
                "{rows}x{cols} exceeds the limit of {MAX_MATRIX_ENTRIES} entries"
            ))
        })?;

    let mut data = Vec::with_capacity(entries);
    let mut last_line = header_no;
    for r in 0..rows {
        let (line_no, line) = lines.next().ok_or_else(|| {
            Error::parse(last_line + 1, 1, format!("expected {rows} rows, found {r}"))
        })?;
        last_line = line_no;
        let tokens = line_tokens(line, line_no);
        if tokens.len() != 2 * cols {
            let column = tokens
                .get(2 * cols)
                .map_or(line.chars().count() + 1, |t| t.column);
            return Err(Error::parse(
                line_no,
                column,
                format!(
                    "row {} needs {} numbers (re im pairs), found {}",
                    r + 1,
                    2 * cols,
                    tokens.len()
                ),
            ));
        }
        for pair in tokens.chunks_exact(2) {
            let re = finite(&pair[0], pair[0].text)?;
            let im = finite(&pair[1], pair[1].text)?;
            data.push(Complex::new(re, im));
        }
    }
    if let Some((line_no, line)) = lines.next() {
        let column = line.chars().position(|c| !c.is_whitespace()).unwrap_or(0) + 1;
        return Err(Error::parse(
            line_no,
            column,
            format!("unexpected data after {rows} rows"),
        ));
    }
    ComplexMatrix::new(rows, cols, data)
}

/// Inverse of [`parse_matrix`]; numbers use the shortest round-trip form.
pub fn write_matrix(m: &ComplexMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .map(|z| format!("{:e} {:e}", z.re, z.im))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Position of the sign separating real and imaginary parts, skipping a
/// leading sign and exponent signs.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
}

fn signed_unit_or(token: &Token<'_>, text: &str) -> Result<f64> {
    match text {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => finite(token, text),
    }
}

fn complex_token(token: &Token<'_>) -> Result<Complex> {
    let Some(body) = token.text.strip_suffix('i') else {
        return Ok(Complex::new(finite(token, token.text)?, 0.0));
    };
    match split_point(body) {
        Some(k) => {
            let re = finite(token, &body[..k])?;
            let im = signed_unit_or(token, &body[k..])?;
            Ok(Complex::new(re, im))
        }
        None => Ok(Complex::new(0.0, signed_unit_or(token, body)?)),
    }
}

/// Coefficients in the order written; no monic normalization.
pub fn parse_poly_text(text: &str) -> Result<Vec<Complex>> {
    let mut coeffs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for token in line_tokens(line, i + 1) {
            if coeffs.len() == MAX_POLY_COEFFS {
                return Err(token.error(format!("more than {MAX_POLY_COEFFS} coefficients")));
            }
            coeffs.push(complex_token(&token)?);
        }
    }
    if coeffs.is_empty() {
        return Err(Error::parse(1, 1, "no coefficients"));
    }
    Ok(coeffs)
}

pub fn parse_poly_json(text: &str) -> Result<Vec<Complex>> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    if pairs.is_empty() {
        return Err(Error::parse(1, 1, "no coefficients"));
    }
    if pairs.len() > MAX_POLY_COEFFS {
        return Err(Error::parse(
            1,
            1,
            format!("more than {MAX_POLY_COEFFS} coefficients"),
        ));
    }
    pairs
        .into_iter()
        .enumerate()
        .map(|(index, [re, im])| {
            let z = Complex::new(re, im);
            if z.is_finite() {
                Ok(z)
            } else {
                Err(Error::NonFinite {
                    index,
                    value: z.to_string(),
                })
            }
        })
        .collect()
}

/// JSON when the first non-blank character is `[`, text otherwise.
pub fn parse_poly(text: &str) -> Result<Vec<Complex>> {
    if text.trim_start().starts_with('[') {
        parse_poly_json(text)
    } else {
        parse_poly_text(text)
    }
}

pub fn write_poly_text(coeffs: &[Complex]) -> String {
    let tokens: Vec<String> = coeffs
        .iter()
        .map(|z| {
            if z.im == 0.0 {
                format!("{:e}", z.re)
            } else if z.im.is_sign_negative() {
                format!("{:e}{:e}i", z.re, z.im)
            } else {
                format!("{:e}+{:e}i", z.re, z.im)
            }
        })
        .collect();
    tokens.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn parse_position(err: Error) -> (usize, usize) {
        match err {
            Error::Parse { line, column, .. } => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn matrix_round_trip() {
        let m = ComplexMatrix::new(
            2,
            3,
            vec![
                c(1.0, 0.0),
                c(-2.5, 1e-300),
                c(0.1, 0.2),
                c(1e300, -3.0),
                c(0.0, -0.0),
                c(1.0 / 3.0, 2.0f64.sqrt()),
            ],
        )
        .unwrap();
        let text = write_matrix(&m);
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn matrix_example() {
        let m = parse_matrix("2 2\n0 0 1 0\n\n0 0 0 0\n").unwrap();
        assert_eq!(
            m,
            ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap()
        );
    }

    #[test]
    fn matrix_errors_carry_positions() {
        assert_eq!(parse_position(parse_matrix("").unwrap_err()), (1, 1));
        assert_eq!(parse_position(parse_matrix("2\n").unwrap_err()), (1, 1));
        assert_eq!(parse_position(parse_matrix("0 2\n").unwrap_err()), (1, 1));
        assert_eq!(
            parse_position(parse_matrix("1 1\n1 x\n").unwrap_err()),
            (2, 3)
        );
        assert_eq!(
            parse_position(parse_matrix("1 1\n1 0 5 5\n").unwrap_err()),
            (2, 5)
        );
        assert_eq!(
            parse_position(parse_matrix("1 1\n1 inf\n").unwrap_err()),
            (2, 3)
        );
        assert_eq!(
            parse_position(parse_matrix("2 1\n1 0\n").unwrap_err()),
            (3, 1)
        );
        assert_eq!(
            parse_position(parse_matrix("1 1\n1 0\n  2 0\n").unwrap_err()),
            (3, 3)
        );
        let huge = format!("{} {}\n", usize::MAX, 2);
        assert_eq!(parse_position(parse_matrix(&huge).unwrap_err()), (1, 1));
    }

    #[test]
    fn poly_text_forms() {
        assert_eq!(
            parse_poly_text("3 1 1 1 1").unwrap(),
            vec![
                c(3.0, 0.0),
                c(1.0, 0.0),
                c(1.0, 0.0),
                c(1.0, 0.0),
                c(1.0, 0.0)
            ]
        );
        assert_eq!(
            parse_poly_text("1+2i -3.5-0.5i 2i -i 1e-3+1e+2i -2E-1-i").unwrap(),
            vec![
                c(1.0, 2.0),
                c(-3.5, -0.5),
                c(0.0, 2.0),
                c(0.0, -1.0),
                c(1e-3, 1e2),
                c(-0.2, -1.0)
            ]
        );
    }

    #[test]
    fn poly_text_errors() {
        assert_eq!(parse_position(parse_poly_text("  ").unwrap_err()), (1, 1));
        assert_eq!(
            parse_position(parse_poly_text("1 2 x").unwrap_err()),
            (1, 5)
        );
        assert_eq!(
            parse_position(parse_poly_text("1\n 1+nani").unwrap_err()),
            (2, 2)
        );
        assert!(parse_poly_text("1++2i").is_err());
        assert!(parse_poly_text("infinity").is_err());
    }

    #[test]
    fn poly_json_and_detection() {
        let coeffs = parse_poly(" [[2, 0], [2, 0], [1, -1.5]]").unwrap();
        assert_eq!(coeffs, vec![c(2.0, 0.0), c(2.0, 0.0), c(1.0, -1.5)]);
        assert_eq!(parse_poly("2 2 1-1.5i").unwrap(), coeffs);
        assert_eq!(
            parse_position(parse_poly_json("[[1, 2], [3]]").unwrap_err()).0,
            1
        );
        assert!(parse_poly_json("[]").is_err());
        assert!(parse_poly_json("[[1e999, 0]]").is_err());
    }

    #[test]
    fn poly_text_round_trip() {
        let coeffs = vec![c(0.1, 0.0), c(-1.0, -0.25), c(0.0, 3.0), c(1e-300, 1e300)];
        assert_eq!(parse_poly_text(&write_poly_text(&coeffs)).unwrap(), coeffs);
    }
}
