//! Solution spaces written as matrices of linear expressions in free
//! parameters, e.g. `[[d11, 0], [d21, 2*d11]]`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linear::{MatrixQ, Scalar, Subspace};

/// `Σ c_r · x_r` over parameter indices `r`, sorted by index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinearExpr {
    terms: Vec<(usize, Scalar)>,
}

impl LinearExpr {
    pub fn new(mut terms: Vec<(usize, Scalar)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by_key(|(r, _)| *r);
        Self { terms }
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, values: &[Scalar]) -> Scalar {
        self.terms
            .iter()
            .fold(Scalar::zero(), |acc, (r, c)| acc + c * &values[*r])
    }

    /// Renders as `2*d11`, `-d22 + d33`, `3/2*d21`, or `0`.
    pub fn render(&self, names: &[String]) -> String {
        render_terms(self.terms.iter().map(|(r, c)| (names[*r].as_str(), c)))
    }
}

/// Shared renderer for `coefficient * name` sums.
pub fn render_terms<'a>(terms: impl IntoIterator<Item = (&'a str, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (name, c) in terms {
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = c.abs();
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricForm {
    n: usize,
    params: Vec<String>,
    positions: Vec<(usize, usize)>,
    // grid[i][j] is entry a_ij
    grid: Vec<Vec<LinearExpr>>,
}

/// Name of the parameter at matrix position `(i, j)` (0-based).
pub fn param_name(symbol: char, n: usize, i: usize, j: usize) -> String {
    if n >= 10 {
        format!("{symbol}{}_{}", i + 1, j + 1)
    } else {
        format!("{symbol}{}{}", i + 1, j + 1)
    }
}

impl ParametricForm {
    /// Reads the form off a canonical basis of column-major operator vectors:
    /// each pivot coordinate becomes one free parameter.
    pub fn from_subspace(n: usize, space: &Subspace, symbol: char) -> Self {
        assert_eq!(space.ambient_dim(), n * n);
        let positions: Vec<(usize, usize)> = space.pivots().into_iter().map(|c| (c % n, c / n)).collect();
        let params = positions
            .iter()
            .map(|&(i, j)| param_name(symbol, n, i, j))
            .collect();
        let grid = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        LinearExpr::new(
                            space
                                .basis()
                                .iter()
                                .enumerate()
                                .map(|(r, v)| (r, v[j * n + i].clone()))
                                .collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        Self {
            n,
            params,
            positions,
            grid,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// Matrix position (0-based row, column) of each free parameter.
    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn entry(&self, i: usize, j: usize) -> &LinearExpr {
        &self.grid[i][j]
    }

    pub fn rendered(&self) -> Vec<Vec<String>> {
        self.grid
            .iter()
            .map(|row| row.iter().map(|e| e.render(&self.params)).collect())
            .collect()
    }

    /// The member obtained by giving parameter `r` the value `values[r]`.
    pub fn substitute(&self, values: &[Scalar]) -> Option<MatrixQ> {
        if values.len() != self.params.len() {
            return None;
        }
        Some(MatrixQ::from_fn(self.n, self.n, |i, j| {
            self.grid[i][j].evaluate(values)
        }))
    }

    /// The member with parameter `r` set to 1 and all others 0.
    pub fn indicator(&self, r: usize) -> MatrixQ {
        let values: Vec<Scalar> = (0..self.params.len())
            .map(|s| if s == r { Scalar::one() } else { Scalar::zero() })
            .collect();
        self.substitute(&values).expect("one value per parameter")
    }
}

impl fmt::Display for ParametricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.rendered();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}
