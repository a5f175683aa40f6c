//! Sparse homogeneous linear systems and their exact solution sets.
//!
//! Columns are eliminated in reverse order. With that ordering the
//! "one free variable set to 1" nullspace basis is already the reduced row
//! echelon form of the solution space in the original column order, so no
//! second elimination is needed to canonicalize it.

use num_traits::{One, Zero};

use super::modular::{self, ModEchelon, PRIMES};
use super::{rref_in_place, MatrixQ, Scalar, Subspace};

/// Homogeneous system `A·x = 0` stored as sparse rows.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    ncols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

/// Reduced form of the system mod p: row `r` has its lead at internal column
/// `leads[r]`; `table[r][k]` is its entry at internal free column `free[k]`.
struct ModSolution {
    leads: Vec<usize>,
    free: Vec<usize>,
    sources: Vec<usize>,
    table: Vec<Vec<u64>>,
}

const MAX_REFERENCE_PRIMES: usize = 3;
const MAX_PRIMES_PER_REFERENCE: usize = 20;

impl LinearSystem {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_matrix(m: &MatrixQ) -> Self {
        let mut sys = Self::new(m.cols());
        for i in 0..m.rows() {
            sys.push_row(
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone())),
            );
        }
        sys
    }

    /// Adds one equation. Repeated columns are summed, zero coefficients dropped,
    /// and an equation with no terms left is not stored.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) {
        let mut row: Vec<(usize, Scalar)> = entries.into_iter().collect();
        row.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(row.len());
        for (c, x) in row {
            assert!(c < self.ncols, "column {c} out of range ({})", self.ncols);
            match merged.last_mut() {
                Some((last, acc)) if *last == c => *acc += x,
                _ => merged.push((c, x)),
            }
        }
        merged.retain(|(_, x)| !x.is_zero());
        if !merged.is_empty() {
            self.rows.push(merged);
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Number of stored (nonzero) equations.
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<(usize, Scalar)>] {
        &self.rows
    }

    pub fn is_solution(&self, x: &[Scalar]) -> bool {
        assert_eq!(x.len(), self.ncols);
        self.rows.iter().all(|row| {
            row.iter()
                .filter(|(c, _)| !x[*c].is_zero())
                .fold(Scalar::zero(), |acc, (c, a)| acc + a * &x[*c])
                .is_zero()
        })
    }

    fn internal(&self, col: usize) -> usize {
        self.ncols - 1 - col
    }

    /// The exact solution set in canonical form.
    ///
    /// Solved modulo word-sized primes first; the reconstructed rational
    /// basis is only returned after it satisfies every equation exactly, and
    /// its size matches the modular rank bound. Falls back to exact
    /// elimination if reconstruction does not converge.
    pub fn nullspace(&self) -> Subspace {
        if self.ncols == 0 {
            return Subspace::zero(0);
        }
        if self.rows.is_empty() {
            return Subspace::full(self.ncols);
        }
        self.nullspace_modular().unwrap_or_else(|| self.nullspace_exact())
    }

    /// Exact Gauss-Jordan elimination over Q, without modular shortcuts.
    pub fn nullspace_exact(&self) -> Subspace {
        let n = self.ncols;
        if n == 0 {
            return Subspace::zero(0);
        }
        let mut dense: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .map(|row| {
                let mut d = vec![Scalar::zero(); n];
                for (c, x) in row {
                    d[self.internal(*c)] = x.clone();
                }
                d
            })
            .collect();
        let pivots = rref_in_place(&mut dense, n);
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..n).rev().filter(|&f| !is_pivot[f]) {
            let mut v = vec![Scalar::zero(); n];
            v[self.internal(f)] = Scalar::one();
            for (r, &lead) in pivots.iter().enumerate() {
                if lead < f && !dense[r][f].is_zero() {
                    v[self.internal(lead)] = -dense[r][f].clone();
                }
            }
            basis.push(v);
        }
        Subspace::from_canonical(n, basis)
    }

    /// Row images mod p in internal (reversed) column order.
    fn row_mod(&self, row: &[(usize, Scalar)], p: u64) -> Option<Vec<u64>> {
        let mut out = vec![0u64; self.ncols];
        for (c, x) in row {
            out[self.internal(*c)] = modular::scalar_mod(x, p)?;
        }
        Some(out)
    }

    fn solve_mod(&self, p: u64, only: Option<&[usize]>) -> Option<ModSolution> {
        let mut ech = ModEchelon::new(p, self.ncols);
        let indices: Box<dyn Iterator<Item = usize>> = match only {
            Some(idx) => Box::new(idx.iter().copied()),
            None => Box::new(0..self.rows.len()),
        };
        for i in indices {
            if ech.is_full() {
                break;
            }
            let row = self.row_mod(&self.rows[i], p)?;
            ech.insert(row, i);
        }
        let rank = ech.rank();
        let reduced = ech.into_reduced();
        let mut is_pivot = vec![false; self.ncols];
        for &l in &reduced.leads {
            is_pivot[l] = true;
        }
        let free: Vec<usize> = (0..self.ncols).filter(|&c| !is_pivot[c]).collect();
        let table = reduced
            .rows
            .iter()
            .map(|row| free.iter().map(|&f| row[f]).collect())
            .collect();
        debug_assert_eq!(rank, reduced.leads.len());
        Some(ModSolution {
            leads: reduced.leads,
            free,
            sources: reduced.sources,
            table,
        })
    }

    fn nullspace_modular(&self) -> Option<Subspace> {
        let mut primes = PRIMES.iter().copied();
        for _ in 0..MAX_REFERENCE_PRIMES {
            let reference = loop {
                let p = primes.next()?;
                if let Some(sol) = self.solve_mod(p, None) {
                    break (p, sol);
                }
            };
            let (p0, sol0) = reference;
            if sol0.free.is_empty() {
                // rank mod p never exceeds the rank over Q
                return Some(Subspace::zero(self.ncols));
            }
            let mut tables = vec![(p0, sol0.table.clone())];
            for _ in 0..MAX_PRIMES_PER_REFERENCE {
                let Some(p) = primes.next() else { break };
                let Some(sol) = self.solve_mod(p, Some(&sol0.sources)) else {
                    continue;
                };
                if sol.leads != sol0.leads {
                    continue;
                }
                tables.push((p, sol.table));
                if let Some(candidate) = self.reconstruct(&sol0, &tables) {
                    if self.verify(&candidate) {
                        return Some(candidate);
                    }
                }
            }
        }
        None
    }

    fn reconstruct(&self, sol: &ModSolution, tables: &[(u64, Vec<Vec<u64>>)]) -> Option<Subspace> {
        let n = self.ncols;
        // basis vector k has its 1 at internal free column free[k]; output is
        // ordered by original column, i.e. descending internal column.
        let nfree = sol.free.len();
        let mut basis: Vec<Vec<Scalar>> = Vec::with_capacity(nfree);
        let mut residues = Vec::with_capacity(tables.len());
        for k in (0..nfree).rev() {
            let f = sol.free[k];
            let mut v = vec![Scalar::zero(); n];
            v[self.internal(f)] = Scalar::one();
            for (r, &lead) in sol.leads.iter().enumerate() {
                if lead > f {
                    break;
                }
                residues.clear();
                residues.extend(tables.iter().map(|(p, t)| (t[r][k], *p)));
                if residues.iter().all(|&(x, _)| x == 0) {
                    continue;
                }
                let value = modular::reconstruct(&residues)?;
                v[self.internal(lead)] = -value;
            }
            basis.push(v);
        }
        Some(Subspace::from_canonical(n, basis))
    }

    /// Exact check that every candidate vector solves every equation.
    fn verify(&self, candidate: &Subspace) -> bool {
        let dim = candidate.dim();
        // coordinate-major view: column c -> [(vector, value)]
        let mut by_coord: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); self.ncols];
        for (k, v) in candidate.basis().iter().enumerate() {
            for (c, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    by_coord[c].push((k, x));
                }
            }
        }
        let mut acc = vec![Scalar::zero(); dim];
        let mut touched: Vec<usize> = Vec::new();
        for row in &self.rows {
            for (c, a) in row {
                for &(k, x) in &by_coord[*c] {
                    if acc[k].is_zero() {
                        touched.push(k);
                    }
                    acc[k] += a * x;
                }
            }
            for &k in &touched {
                if !acc[k].is_zero() {
                    return false;
                }
            }
            touched.clear();
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{int, ratio};

    #[test]
    fn merges_duplicate_columns_and_drops_empty_rows() {
        let mut sys = LinearSystem::new(3);
        sys.push_row([(0, int(1)), (0, int(-1))]);
        assert_eq!(sys.nrows(), 0);
        sys.push_row([(2, int(1)), (0, int(2)), (2, int(1))]);
        assert_eq!(sys.rows()[0], vec![(0, int(2)), (2, int(2))]);
    }

    #[test]
    fn modular_and_exact_paths_agree_on_fractional_solutions() {
        let mut sys = LinearSystem::new(4);
        sys.push_row([(0, int(3)), (1, int(-2)), (3, int(7))]);
        sys.push_row([(1, int(5)), (2, ratio(1, 3))]);
        let a = sys.nullspace();
        let b = sys.nullspace_exact();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        for v in a.basis() {
            assert!(sys.is_solution(v));
        }
    }

    #[test]
    fn canonical_form_is_rref() {
        // x0 + x2 = 0 ; x1 - x3 = 0
        let mut sys = LinearSystem::new(4);
        sys.push_row([(0, int(1)), (2, int(1))]);
        sys.push_row([(1, int(1)), (3, int(-1))]);
        let ns = sys.nullspace();
        assert_eq!(
            ns.basis(),
            &[
                vec![int(1), int(0), int(-1), int(0)],
                vec![int(0), int(1), int(0), int(1)]
            ]
        );
    }

    #[test]
    fn full_rank_gives_zero_space() {
        let sys = LinearSystem::from_matrix(&MatrixQ::from_i64(&[&[1, 2], &[3, 4]]));
        assert_eq!(sys.nullspace().dim(), 0);
    }

    #[test]
    fn huge_coefficients_still_reconstruct() {
        let big = crate::linear::parse_scalar("123456789123456789123456789/7").unwrap();
        let mut sys = LinearSystem::new(2);
        sys.push_row([(0, big.clone()), (1, int(-1))]);
        let ns = sys.nullspace();
        assert_eq!(ns.basis(), &[vec![int(1), big]]);
    }
}
