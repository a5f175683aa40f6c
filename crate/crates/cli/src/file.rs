//! Line-oriented algebra files.
//!
//! ```text
//! # comments run to end of line
//! algebra "Z3^6" dim 3
//! param lambda = 3
//! e1 * e1 = 1 e3
//! e1 * e2 = 1 e3
//! e2 * e2 = lambda e3
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;
use zinbiel_core::algebra::AlgebraPresentation;
use zinbiel_core::linear::{parse_scalar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("missing `algebra \"<name>\" dim <n>` header")]
    MissingHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("basis index e{index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate product line for e{0} * e{1}")]
    DuplicateProduct(usize, usize),
    #[error("duplicate parameter `{0}`")]
    DuplicateParam(String),
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Basis(usize),
    Int(String),
    Str(String),
    Slash,
    Star,
    Equals,
    Plus,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Basis(i) => write!(f, "`e{i}`"),
            Token::Int(s) => write!(f, "`{s}`"),
            Token::Str(s) => write!(f, "\"{s}\""),
            Token::Slash => f.write_str("`/`"),
            Token::Star => f.write_str("`*`"),
            Token::Equals => f.write_str("`=`"),
            Token::Plus => f.write_str("`+`"),
        }
    }
}

type Spanned = (Token, usize);

fn lex(line: &str, line_no: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let err = |column: usize, msg: String| ParseError {
        line: line_no,
        column,
        kind: ParseErrorKind::Syntax(msg),
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            _ if c.is_whitespace() => i += 1,
            '/' | '*' | '=' | '+' => {
                out.push((
                    match c {
                        '/' => Token::Slash,
                        '*' => Token::Star,
                        '=' => Token::Equals,
                        _ => Token::Plus,
                    },
                    col,
                ));
                i += 1;
            }
            '"' => {
                let end = chars[i + 1..]
                    .iter()
                    .position(|&d| d == '"')
                    .ok_or_else(|| err(col, "unterminated string".into()))?;
                out.push((Token::Str(chars[i + 1..i + 1 + end].iter().collect()), col));
                i += end + 2;
            }
            '-' | '0'..='9' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if c == '-' && i == start + 1 {
                    return Err(err(col, "expected digits after `-`".into()));
                }
                out.push((Token::Int(chars[start..i].iter().collect()), col));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let basis = word
                    .strip_prefix('e')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|d| d.parse().ok());
                out.push((basis.map_or(Token::Ident(word), Token::Basis), col));
            }
            _ => return Err(err(col, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    tokens: &'a [Spanned],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.1)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column(),
            kind,
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let found = match self.tokens.get(self.pos) {
            Some((t, _)) => t.to_string(),
            None => "end of line".to_string(),
        };
        self.error(ParseErrorKind::Syntax(format!(
            "expected {wanted}, found {found}"
        )))
    }

    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &Token, wanted: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Token::Ident(w)) if w == word => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{word}`"))),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.tokens.len() {
            return Err(self.unexpected("end of line"));
        }
        Ok(())
    }

    /// `int` or `int/int`.
    fn rational(&mut self) -> Result<Scalar, ParseError> {
        let col = self.column();
        let num = match self.next() {
            Some(Token::Int(s)) => s.clone(),
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("a rational number"));
            }
        };
        let text = if self.peek() == Some(&Token::Slash) {
            self.pos += 1;
            match self.next() {
                Some(Token::Int(d)) if !d.starts_with('-') => format!("{num}/{d}"),
                _ => {
                    self.pos -= 1;
                    return Err(self.unexpected("a positive denominator"));
                }
            }
        } else {
            num
        };
        if text
            .split_once('/')
            .is_some_and(|(_, d)| d.bytes().all(|b| b == b'0'))
        {
            return Err(ParseError {
                line: self.line,
                column: col,
                kind: ParseErrorKind::ZeroDenominator,
            });
        }
        parse_scalar(&text).ok_or_else(|| ParseError {
            line: self.line,
            column: col,
            kind: ParseErrorKind::Syntax(format!("malformed rational `{text}`")),
        })
    }

    fn basis(&mut self, dim: usize) -> Result<usize, ParseError> {
        match self.peek() {
            Some(&Token::Basis(i)) => {
                if i == 0 || i > dim {
                    return Err(self.error(ParseErrorKind::IndexOutOfRange { index: i, dim }));
                }
                self.pos += 1;
                Ok(i - 1)
            }
            _ => Err(self.unexpected("a basis vector `e<k>`")),
        }
    }

    fn param(&mut self, params: &BTreeMap<String, Scalar>) -> Result<Scalar, ParseError> {
        match self.peek() {
            Some(Token::Ident(name)) => match params.get(name) {
                Some(v) => {
                    self.pos += 1;
                    Ok(v.clone())
                }
                None => Err(self.error(ParseErrorKind::UnknownParam(name.clone()))),
            },
            _ => Err(self.unexpected("a parameter name")),
        }
    }

    /// `<rational>`, `<rational> * <ident>` or `<ident>`.
    fn coefficient(&mut self, params: &BTreeMap<String, Scalar>) -> Result<Scalar, ParseError> {
        match self.peek() {
            Some(Token::Int(_)) => {
                let r = self.rational()?;
                if self.peek() == Some(&Token::Star) {
                    self.pos += 1;
                    Ok(r * self.param(params)?)
                } else {
                    Ok(r)
                }
            }
            Some(Token::Ident(_)) => self.param(params),
            _ => Err(self.unexpected("a coefficient")),
        }
    }
}

/// Parses an algebra file; parameters are substituted into the products.
pub fn parse_algebra_file(text: &str) -> Result<AlgebraPresentation, ParseError> {
    let mut header: Option<(String, usize)> = None;
    let mut params: BTreeMap<String, Scalar> = BTreeMap::new();
    let mut algebra: Option<AlgebraPresentation> = None;
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens = lex(raw, line)?;
        if tokens.is_empty() {
            continue;
        }
        let mut cur = Cursor {
            tokens: &tokens,
            pos: 0,
            line,
            end_column: raw.chars().count() + 1,
        };
        match cur.peek() {
            Some(Token::Ident(w)) if w == "algebra" => {
                if header.is_some() {
                    return Err(cur.error(ParseErrorKind::DuplicateHeader));
                }
                cur.pos += 1;
                let name = match cur.next() {
                    Some(Token::Str(s)) => s.clone(),
                    _ => {
                        cur.pos -= 1;
                        return Err(cur.unexpected("a quoted name"));
                    }
                };
                cur.keyword("dim")?;
                let dim = match cur.peek() {
                    Some(Token::Int(s)) if !s.starts_with('-') => {
                        let dim: usize = s.parse().map_err(|_| cur.unexpected("a dimension"))?;
                        if dim == 0 {
                            return Err(cur.error(ParseErrorKind::ZeroDimension));
                        }
                        cur.pos += 1;
                        dim
                    }
                    _ => return Err(cur.unexpected("a dimension")),
                };
                cur.finish()?;
                header = Some((name, dim));
            }
            Some(Token::Ident(w)) if w == "param" => {
                if header.is_none() {
                    return Err(cur.error(ParseErrorKind::MissingHeader));
                }
                cur.pos += 1;
                let name = match cur.peek() {
                    Some(Token::Ident(n)) => n.clone(),
                    _ => return Err(cur.unexpected("a parameter name")),
                };
                if params.contains_key(&name) {
                    return Err(cur.error(ParseErrorKind::DuplicateParam(name)));
                }
                cur.pos += 1;
                cur.expect(&Token::Equals, "`=`")?;
                let value = cur.rational()?;
                cur.finish()?;
                params.insert(name, value);
            }
            Some(Token::Basis(_)) => {
                let (name, dim) = header
                    .clone()
                    .ok_or_else(|| cur.error(ParseErrorKind::MissingHeader))?;
                let a = algebra.get_or_insert_with(|| AlgebraPresentation::zero(name, dim));
                let start = cur.column();
                let i = cur.basis(dim)?;
                cur.expect(&Token::Star, "`*`")?;
                let j = cur.basis(dim)?;
                cur.expect(&Token::Equals, "`=`")?;
                if !seen.insert((i, j)) {
                    return Err(ParseError {
                        line,
                        column: start,
                        kind: ParseErrorKind::DuplicateProduct(i + 1, j + 1),
                    });
                }
                let mut terms: BTreeMap<usize, Scalar> = BTreeMap::new();
                loop {
                    let c = cur.coefficient(&params)?;
                    let k = cur.basis(dim)?;
                    *terms.entry(k).or_default() += c;
                    if cur.peek() == Some(&Token::Plus) {
                        cur.pos += 1;
                    } else {
                        break;
                    }
                }
                cur.finish()?;
                for (k, c) in terms {
                    a.set_constant(i, j, k, c).expect("indices checked");
                }
            }
            _ => return Err(cur.unexpected("`algebra`, `param` or a product line")),
        }
    }
    let (name, dim) = header.ok_or(ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::MissingHeader,
    })?;
    let mut a = algebra.unwrap_or_else(|| AlgebraPresentation::zero(name, dim));
    for (k, v) in params {
        a = a.with_param(k, v);
    }
    Ok(a)
}

/// Writes `a` in the file format, parameters already substituted.
pub fn serialize_algebra(a: &AlgebraPresentation) -> String {
    let mut out = format!("algebra \"{}\" dim {}\n", a.name().replace('"', "'"), a.dim());
    for (k, v) in a.params() {
        out.push_str(&format!("param {k} = {v}\n"));
    }
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let terms = a.basis_product(i, j);
            if terms.is_empty() {
                continue;
            }
            let rhs: Vec<String> = terms.iter().map(|(k, c)| format!("{c} e{}", k + 1)).collect();
            out.push_str(&format!("e{} * e{} = {}\n", i + 1, j + 1, rhs.join(" + ")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use zinbiel_core::linear::{int, ratio};

    #[test]
    fn z21_file() {
        let a = parse_algebra_file("algebra \"Z2^1\" dim 2\ne1 * e1 = 1 e2\n").unwrap();
        assert_eq!(a.name(), "Z2^1");
        assert_eq!(a.constant(0, 0, 1), &int(1));
    }

    #[test]
    fn parameters_are_substituted() {
        let text =
            "algebra \"Z3^6\" dim 3\nparam lambda = 3\ne1 * e1 = 1 e3\ne1 * e2 = 1 e3\ne2 * e2 = lambda e3\n";
        let a = parse_algebra_file(text).unwrap();
        assert_eq!(a.constant(1, 1, 2), &int(3));
        assert_eq!(a.params().get("lambda"), Some(&int(3)));
    }

    #[test]
    fn coefficient_forms_and_comments() {
        let text = "# header\nalgebra \"x\" dim 3 # trailing\nparam t = -1/2\ne1 * e2 = 1/2 e3 + 2 * t e1\ne2 * e1 = -1/2 e3\n";
        let a = parse_algebra_file(text).unwrap();
        assert_eq!(a.constant(0, 1, 2), &ratio(1, 2));
        assert_eq!(a.constant(0, 1, 0), &int(-1));
        assert_eq!(a.constant(1, 0, 2), &ratio(-1, 2));
    }

    fn err(text: &str) -> ParseError {
        parse_algebra_file(text).unwrap_err()
    }

    #[test]
    fn index_out_of_range() {
        let e = err("algebra \"x\" dim 3\ne1 * e1 = 1 e5\n");
        assert_eq!(e.kind, ParseErrorKind::IndexOutOfRange { index: 5, dim: 3 });
        assert_eq!((e.line, e.column), (2, 13));
    }

    #[test]
    fn rejected_inputs() {
        let h = "algebra \"x\" dim 2\n";
        assert_eq!(
            err(&format!("{h}e1 * e1 = 1 e2\ne1 * e1 = 1 e2\n")).kind,
            ParseErrorKind::DuplicateProduct(1, 1)
        );
        assert_eq!(
            err(&format!("{h}e1 * e1 = mu e2\n")).kind,
            ParseErrorKind::UnknownParam("mu".into())
        );
        assert_eq!(
            err(&format!("{h}e1 * e1 = 1/0 e2\n")).kind,
            ParseErrorKind::ZeroDenominator
        );
        assert!(matches!(
            err(&format!("{h}e1 * e1 = e2\n")).kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            err(&format!("{h}e1 * e1 = 0.5 e2\n")).kind,
            ParseErrorKind::Syntax(_)
        ));
        assert_eq!(err("e1 * e1 = 1 e2\n").kind, ParseErrorKind::MissingHeader);
        assert_eq!(err("").kind, ParseErrorKind::MissingHeader);
        assert_eq!(err(&format!("{h}{h}")).kind, ParseErrorKind::DuplicateHeader);
    }

    #[test]
    fn serialize_then_parse() {
        let text = "algebra \"y\" dim 3\nparam a = 2/3\ne1 * e1 = 1 e2 + a e3\ne2 * e1 = -5 e3\n";
        let a = parse_algebra_file(text).unwrap();
        assert_eq!(parse_algebra_file(&serialize_algebra(&a)).unwrap(), a);
    }
}
