//! Text syntax for instance specifications.
//!
//! Partitions: `[1,2];[3]`, parts in order. Index lists: `[3,4]` or `3,4`.
//! Signs: a string of `+`/`-`, one character per index 1..n (positions in `I_0` are ignored
//! and may also be written `.`), or one character per signed index.
//! t-roots: `d1-d2`, `-2d1`, `d1+d2`, `3d1` (`δ` is accepted for `d`), or explicit vectors
//! `(1,-1)` / `[1/2,0]`; a list separates entries with commas outside brackets.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::{int, parse_rational, BasisTag, Rational, Vector};

fn diag(field: &str, input: &str, col: usize, msg: &str) -> Error {
    let caret = " ".repeat(input[..col.min(input.len())].chars().count());
    Error::Parse(format!("{field}: column {}: {msg}\n  {input}\n  {caret}^", col + 1))
}

struct Cursor<'a> {
    field: &'a str,
    input: &'a str,
    pos: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    fn new(field: &'a str, input: &'a str) -> Self {
        Cursor { field, input, pos: 0, end: input.len() }
    }

    /// A cursor over `input[start..end]` whose diagnostics still point into all of `input`.
    fn window(field: &'a str, input: &'a str, start: usize, end: usize) -> Self {
        Cursor { field, input, pos: start, end }
    }

    fn peek(&self) -> Option<char> {
        self.input[self.pos..self.end].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn err(&self, msg: &str) -> Error {
        diag(self.field, self.input, self.pos, msg)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.err("expected a positive integer"));
        }
        self.input[start..self.pos].parse().map_err(|_| diag(self.field, self.input, start, "integer out of range"))
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.end
    }
}

fn bracket_list(c: &mut Cursor) -> Result<Vec<usize>> {
    c.expect('[')?;
    let mut out = Vec::new();
    c.skip_ws();
    if c.peek() == Some(']') {
        return Err(c.err("empty part"));
    }
    loop {
        out.push(c.number()?);
        c.skip_ws();
        match c.peek() {
            Some(',') => {
                c.bump();
            }
            Some(']') => {
                c.bump();
                return Ok(out);
            }
            _ => return Err(c.err("expected ',' or ']'")),
        }
    }
}

/// `[1,2];[3]`; an empty string means no parts.
pub fn parse_parts(input: &str) -> Result<Vec<Vec<usize>>> {
    let mut c = Cursor::new("--parts", input);
    let mut out = Vec::new();
    if c.at_end() {
        return Ok(out);
    }
    loop {
        out.push(bracket_list(&mut c)?);
        if c.at_end() {
            return Ok(out);
        }
        c.expect(';')?;
    }
}

/// `[3,4]` or `3,4`.
pub fn parse_index_list(field: &str, input: &str) -> Result<Vec<usize>> {
    let mut c = Cursor::new(field, input);
    c.skip_ws();
    if c.peek() == Some('[') {
        let out = bracket_list(&mut c)?;
        if !c.at_end() {
            return Err(c.err("unexpected trailing input"));
        }
        return Ok(out);
    }
    let mut out = vec![c.number()?];
    while !c.at_end() {
        c.expect(',')?;
        out.push(c.number()?);
    }
    Ok(out)
}

/// Signs for the indices in `domain` (sorted), from a string over all of 1..n or over `domain`.
pub fn parse_signs(input: &str, n: usize, domain: &[usize]) -> Result<BTreeMap<usize, i8>> {
    let chars: Vec<(usize, char)> = input.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let field = "--signs";
    let positions: Vec<usize> = if chars.len() == n {
        (1..=n).collect()
    } else if chars.len() == domain.len() {
        domain.to_vec()
    } else {
        return Err(diag(
            field,
            input,
            input.len(),
            &format!("expected {n} characters (or {} for the signed indices), found {}", domain.len(), chars.len()),
        ));
    };
    let mut out = BTreeMap::new();
    for (&(col, ch), &j) in chars.iter().zip(&positions) {
        let in_domain = domain.contains(&j);
        let s = match ch {
            '+' => 1,
            '-' | '\u{2212}' => -1,
            '.' | '0' if !in_domain => continue,
            _ => return Err(diag(field, input, col, "expected '+' or '-'")),
        };
        if in_domain {
            out.insert(j, s);
        }
    }
    Ok(out)
}

fn is_delta(c: char) -> bool {
    matches!(c, 'd' | 'D' | '\u{03b4}')
}

fn symbolic_term(c: &mut Cursor, k: usize, first: bool) -> Result<(usize, i128)> {
    c.skip_ws();
    let mut sign = 1;
    match c.peek() {
        Some('+') => {
            c.bump();
        }
        Some('-') | Some('\u{2212}') => {
            c.bump();
            sign = -1;
        }
        _ if !first => return Err(c.err("expected '+' or '-' between terms")),
        _ => {}
    }
    c.skip_ws();
    let coeff = if c.peek().is_some_and(|ch| ch.is_ascii_digit()) { c.number()? as i128 } else { 1 };
    c.skip_ws();
    if !c.peek().is_some_and(is_delta) {
        return Err(c.err("expected 'd' followed by an index"));
    }
    c.bump();
    let start = c.pos;
    let i = c.number()?;
    if i == 0 || i > k {
        return Err(diag(c.field, c.input, start, &format!("index must lie in 1..={k}")));
    }
    if coeff == 0 {
        return Err(diag(c.field, c.input, start, "zero coefficient"));
    }
    Ok((i - 1, sign * coeff))
}

fn vector_literal(c: &mut Cursor, k: usize, basis: BasisTag) -> Result<Vector> {
    c.skip_ws();
    let close = match c.bump() {
        Some('(') => ')',
        _ => ']',
    };
    let mut coords = Vec::new();
    loop {
        c.skip_ws();
        let start = c.pos;
        while c.peek().is_some_and(|ch| ch != ',' && ch != close) {
            c.bump();
        }
        let x: Rational = parse_rational(&c.input[start..c.pos])
            .map_err(|_| diag(c.field, c.input, start, "expected a rational coordinate"))?;
        coords.push(x);
        match c.bump() {
            Some(',') => {}
            Some(ch) if ch == close => break,
            _ => return Err(c.err(&format!("expected ',' or '{close}'"))),
        }
    }
    if !c.at_end() {
        return Err(c.err("unexpected trailing input"));
    }
    if coords.len() != k {
        return Err(c.err(&format!("expected {k} coordinates, found {}", coords.len())));
    }
    Ok(Vector::new(coords, basis))
}

fn troot_in(c: &mut Cursor, k: usize) -> Result<Vector> {
    c.skip_ws();
    if matches!(c.peek(), Some('(') | Some('[')) {
        return vector_literal(c, k, BasisTag::Delta);
    }
    if c.at_end() {
        return Err(c.err("empty t-root"));
    }
    let mut v = vec![int(0); k];
    let (i, a) = symbolic_term(c, k, true)?;
    v[i] += int(a);
    if !c.at_end() {
        let at = c.pos;
        let (j, b) = symbolic_term(c, k, false)?;
        if j == i {
            return Err(diag(c.field, c.input, at, "repeated index"));
        }
        v[j] += int(b);
        if !c.at_end() {
            return Err(c.err("at most two terms are allowed"));
        }
    }
    Ok(Vector::new(v, BasisTag::Delta))
}

/// One t-root in δ-coordinates of length `k`.
pub fn parse_troot(input: &str, k: usize) -> Result<Vector> {
    troot_in(&mut Cursor::new("--S", input), k)
}

/// Comma-separated t-roots; an empty string is the empty set.
pub fn parse_troots(input: &str, k: usize) -> Result<Vec<Vector>> {
    if input.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    let mut ends: Vec<(usize, usize)> = Vec::new();
    for (i, ch) in input.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                ends.push((start, i));
                start = i + 1;
            }
            _ => {}
        }
    }
    ends.push((start, input.len()));
    for (a, b) in ends {
        out.push(troot_in(&mut Cursor::window("--S", input, a, b), k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts() {
        assert_eq!(parse_parts("[1,2];[3]").unwrap(), vec![vec![1, 2], vec![3]]);
        assert_eq!(parse_parts(" [ 1 ] ; [2,3] ").unwrap(), vec![vec![1], vec![2, 3]]);
        let e = parse_parts("[1,2;[3]").unwrap_err().to_string();
        assert!(e.contains("column 5"), "{e}");
        assert!(parse_parts("[]").is_err());
    }

    #[test]
    fn signs() {
        let s = parse_signs("+-", 2, &[1, 2]).unwrap();
        assert_eq!(s, BTreeMap::from([(1, 1), (2, -1)]));
        let s = parse_signs("+..", 3, &[1]).unwrap();
        assert_eq!(s, BTreeMap::from([(1, 1)]));
        assert!(parse_signs("+x", 2, &[1, 2]).unwrap_err().to_string().contains("column 2"));
    }

    #[test]
    fn troots() {
        let d = |v: &[i128]| Vector::from_ints(v.iter().copied(), BasisTag::Delta);
        assert_eq!(parse_troot("d1-d2", 2).unwrap(), d(&[1, -1]));
        assert_eq!(parse_troot("-2d1", 2).unwrap(), d(&[-2, 0]));
        assert_eq!(parse_troot("δ2 + δ1", 2).unwrap(), d(&[1, 1]));
        assert_eq!(parse_troot("(1,-1)", 2).unwrap(), d(&[1, -1]));
        assert_eq!(parse_troots("d1-d2, -2d1,(0, 1)", 2).unwrap(), vec![d(&[1, -1]), d(&[-2, 0]), d(&[0, 1])]);
        let e = parse_troots("d1,d3", 2).unwrap_err().to_string();
        assert!(e.contains("column 5"), "{e}");
        assert!(parse_troot("d1-d1", 2).is_err());
    }
}
