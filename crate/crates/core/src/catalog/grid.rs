//! Transcribed parametric tables: a grid of linear expressions in free
//! symbols such as `a21` or `d33`, with coefficients that may involve the
//! family parameters.
//!
//! Cells are separated by `,` and rows by `;`. A cell is a sum of terms,
//! each a `*`-separated product of rationals, parameters, abbreviations and
//! at most one free symbol, e.g. `-1/2*alpha*d43 + 1/2*d43` or `2*a21`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linear::MatrixQ;
use crate::linear::{parse_scalar, Scalar, Subspace};
use crate::solver::vectorize;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("syntax error in `{text}` at offset {offset}")]
    Syntax { text: String, offset: usize },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("term `{0}` is not linear in the free symbols")]
    NotLinear(String),
    #[error("grid has shape {rows}x{cols}, expected {n}x{n}")]
    Shape { rows: usize, cols: usize, n: usize },
}

/// Linear combination of free symbols.
pub type CellValue = BTreeMap<String, Scalar>;

fn is_symbol(word: &str) -> bool {
    let mut chars = word.chars();
    matches!(chars.next(), Some('a' | 'd'))
        && word.len() >= 3
        && chars.all(|c| c.is_ascii_digit() || c == '_')
}

struct Context<'a> {
    params: &'a BTreeMap<String, Scalar>,
    abbreviations: &'a [(&'a str, &'a str)],
    depth: usize,
}

fn syntax(text: &str, offset: usize) -> GridError {
    GridError::Syntax {
        text: text.to_string(),
        offset,
    }
}

fn add_into(acc: &mut CellValue, other: CellValue, scale: &Scalar) {
    for (k, v) in other {
        let e = acc.entry(k).or_insert_with(Scalar::zero);
        *e += v * scale;
    }
    acc.retain(|_, v| !v.is_zero());
}

/// One product term: a scalar times either nothing or a cell value.
fn eval_term(text: &str, ctx: &Context) -> Result<(Scalar, Option<CellValue>), GridError> {
    let mut coef = Scalar::one();
    let mut linear: Option<CellValue> = None;
    for factor in text.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(syntax(text, 0));
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coef *= parse_scalar(factor).ok_or_else(|| syntax(text, 0))?;
        } else if let Some(v) = ctx.params.get(factor) {
            coef *= v;
        } else if is_symbol(factor) {
            if linear.is_some() {
                return Err(GridError::NotLinear(text.to_string()));
            }
            linear = Some(BTreeMap::from([(factor.to_string(), Scalar::one())]));
        } else if let Some((_, body)) = ctx.abbreviations.iter().find(|(k, _)| *k == factor) {
            if linear.is_some() || ctx.depth > 4 {
                return Err(GridError::NotLinear(text.to_string()));
            }
            let inner = Context {
                params: ctx.params,
                abbreviations: ctx.abbreviations,
                depth: ctx.depth + 1,
            };
            linear = Some(eval_expr(body, &inner)?);
        } else {
            return Err(GridError::UnknownIdentifier(factor.to_string()));
        }
    }
    Ok((coef, linear))
}

fn eval_expr(text: &str, ctx: &Context) -> Result<CellValue, GridError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(syntax(text, 0));
    }
    let mut out = CellValue::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i <= bytes.len() {
        let at_split = i == bytes.len() || (i > start && (bytes[i] == b'+' || bytes[i] == b'-'));
        if at_split {
            let mut piece = &compact[start..i];
            let mut sign = Scalar::one();
            if let Some(rest) = piece.strip_prefix('-') {
                sign = -sign;
                piece = rest;
            } else if let Some(rest) = piece.strip_prefix('+') {
                if start == 0 {
                    return Err(syntax(text, 0));
                }
                piece = rest;
            }
            let (coef, linear) = eval_term(piece, ctx)?;
            match linear {
                Some(v) => add_into(&mut out, v, &(coef * sign)),
                // a bare constant is only allowed as the literal zero
                None if coef.is_zero() => {}
                None => return Err(GridError::NotLinear(piece.to_string())),
            }
            start = i;
        }
        i += 1;
    }
    Ok(out)
}

/// Evaluates one cell at the given parameter values.
pub fn eval_cell(
    text: &str,
    params: &BTreeMap<String, Scalar>,
    abbreviations: &[(&str, &str)],
) -> Result<CellValue, GridError> {
    eval_expr(
        text,
        &Context {
            params,
            abbreviations,
            depth: 0,
        },
    )
}

/// Evaluates a scalar expression such as `-alpha` or `1/2`.
pub fn eval_coefficient(text: &str, params: &BTreeMap<String, Scalar>) -> Result<Scalar, GridError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (sign, body) = match compact.strip_prefix('-') {
        Some(rest) => (-Scalar::one(), rest),
        None => (Scalar::one(), compact.as_str()),
    };
    let ctx = Context {
        params,
        abbreviations: &[],
        depth: 0,
    };
    match eval_term(body, &ctx)? {
        (c, None) => Ok(c * sign),
        (_, Some(_)) => Err(GridError::NotLinear(text.to_string())),
    }
}

/// A transcribed grid evaluated at fixed parameter values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimedGrid {
    n: usize,
    cells: Vec<Vec<CellValue>>,
    symbols: Vec<String>,
}

impl ClaimedGrid {
    pub fn parse(
        text: &str,
        n: usize,
        params: &BTreeMap<String, Scalar>,
        abbreviations: &[(&str, &str)],
    ) -> Result<Self, GridError> {
        let rows: Vec<&str> = text.split(';').collect();
        let mut cells = Vec::with_capacity(rows.len());
        let mut symbols: Vec<String> = Vec::new();
        for row in &rows {
            let raw: Vec<&str> = row.split(',').collect();
            if raw.len() != n || rows.len() != n {
                return Err(GridError::Shape {
                    rows: rows.len(),
                    cols: raw.len(),
                    n,
                });
            }
            let mut out = Vec::with_capacity(n);
            for cell in raw {
                // symbols are collected before parameter substitution can
                // cancel them, so a printed `0*x` style cell still counts
                collect_symbols(cell, abbreviations, &mut symbols);
                out.push(eval_cell(cell, params, abbreviations)?);
            }
            cells.push(out);
        }
        Ok(Self { n, cells, symbols })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cell(&self, i: usize, j: usize) -> &CellValue {
        &self.cells[i][j]
    }

    /// Distinct free symbols in order of first appearance, row by row.
    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    /// The matrix obtained by setting `symbol` to 1 and all others to 0;
    /// with `transpose`, cell `(i, j)` goes to entry `(j, i)`.
    pub fn indicator(&self, symbol: &str, transpose: bool) -> MatrixQ {
        MatrixQ::from_fn(self.n, self.n, |i, j| {
            let (r, c) = if transpose { (j, i) } else { (i, j) };
            self.cells[r][c].get(symbol).cloned().unwrap_or_else(Scalar::zero)
        })
    }

    /// Span of all members, as column-major operator vectors.
    pub fn span(&self, transpose: bool) -> Subspace {
        Subspace::span(
            self.n * self.n,
            self.symbols
                .iter()
                .map(|s| vectorize(&self.indicator(s, transpose))),
        )
        .expect("length n²")
    }
}

fn collect_symbols(cell: &str, abbreviations: &[(&str, &str)], out: &mut Vec<String>) {
    for word in cell.split(|c: char| !c.is_ascii_alphanumeric() && c != '_') {
        if is_symbol(word) {
            if !out.iter().any(|s| s == word) {
                out.push(word.to_string());
            }
        } else if let Some((_, body)) = abbreviations.iter().find(|(k, _)| *k == word) {
            collect_symbols(body, &[], out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{int, ratio};

    fn params(pairs: &[(&str, Scalar)]) -> BTreeMap<String, Scalar> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn cells_with_fractions_and_parameters() {
        let p = params(&[("alpha", int(3))]);
        let v = eval_cell("-1/2*d43*alpha + 1/2*d43", &p, &[]).unwrap();
        assert_eq!(v, BTreeMap::from([("d43".to_string(), int(-1))]));
        let v = eval_cell("alpha*a21 - a21 + a33", &p, &[]).unwrap();
        assert_eq!(v["a21"], int(2));
        assert_eq!(v["a33"], int(1));
        assert!(eval_cell("0", &p, &[]).unwrap().is_empty());
        assert_eq!(eval_cell("3/2*d21", &p, &[]).unwrap()["d21"], ratio(3, 2));
    }

    #[test]
    fn abbreviations_expand() {
        let p = params(&[("lambda", int(2))]);
        let ab = [("g", "-lambda*a22 + lambda*a33")];
        let v = eval_cell("g", &p, &ab).unwrap();
        assert_eq!(v["a22"], int(-2));
        assert_eq!(v["a33"], int(2));
    }

    #[test]
    fn rejects_malformed_cells() {
        let p = BTreeMap::new();
        assert!(matches!(
            eval_cell("beta*a11", &p, &[]),
            Err(GridError::UnknownIdentifier(_))
        ));
        assert!(matches!(
            eval_cell("a11*a22", &p, &[]),
            Err(GridError::NotLinear(_))
        ));
        assert!(matches!(eval_cell("2", &p, &[]), Err(GridError::NotLinear(_))));
        assert!(eval_cell("a11 +", &p, &[]).is_err());
    }

    #[test]
    fn grid_span_in_both_orientations() {
        let g = ClaimedGrid::parse("a22,0;a21,a22", 2, &BTreeMap::new(), &[]).unwrap();
        assert_eq!(g.symbols(), &["a22", "a21"]);
        let direct = g.span(false);
        let flipped = g.span(true);
        assert_eq!(direct.dim(), 2);
        assert!(direct.contains(&vectorize(&MatrixQ::from_i64(&[&[0, 0], &[1, 0]]))));
        assert!(flipped.contains(&vectorize(&MatrixQ::from_i64(&[&[0, 1], &[0, 0]]))));
    }

    #[test]
    fn coefficients() {
        let p = params(&[("alpha", int(5))]);
        assert_eq!(eval_coefficient("-alpha", &p).unwrap(), int(-5));
        assert_eq!(eval_coefficient("-1/2", &p).unwrap(), ratio(-1, 2));
        assert!(eval_coefficient("a11", &p).is_err());
    }

    #[test]
    fn shape_is_checked() {
        assert!(matches!(
            ClaimedGrid::parse("a11,0;0", 2, &BTreeMap::new(), &[]),
            Err(GridError::Shape { .. })
        ));
    }
}
