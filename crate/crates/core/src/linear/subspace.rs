use num_traits::{One, Zero};

use super::{rref_in_place, LinearError, LinearSystem, Scalar};

/// A subspace of `Q^n`, stored as the nonzero rows of its reduced row echelon
/// form. Equal subspaces therefore compare equal as plain data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

/// Result of combining two subspaces of the same ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceOps {
    pub sum: Subspace,
    pub intersection: Subspace,
    pub equal: bool,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                    .collect()
            })
            .collect();
        Self {
            ambient_dim: n,
            basis,
        }
    }

    /// Span of arbitrary vectors of length `n`.
    pub fn span(n: usize, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Result<Self, LinearError> {
        let mut rows = Vec::new();
        for v in vectors {
            if v.len() != n {
                return Err(LinearError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(v);
            }
        }
        let rank = rref_in_place(&mut rows, n).len();
        rows.truncate(rank);
        Ok(Self {
            ambient_dim: n,
            basis: rows,
        })
    }

    /// Wraps rows the caller already knows to be in reduced echelon form.
    pub(crate) fn from_canonical(n: usize, basis: Vec<Vec<Scalar>>) -> Self {
        debug_assert!(basis.iter().all(|v| v.len() == n));
        Self {
            ambient_dim: n,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<Scalar>> {
        self.basis
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| {
                v.iter()
                    .position(|x| !x.is_zero())
                    .expect("basis rows are nonzero")
            })
            .collect()
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    ///
    /// With an RREF basis the coordinates are read off at the pivots, so
    /// membership costs one reconstruction and comparison.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: Vec<Scalar> = self.pivots().into_iter().map(|p| v[p].clone()).collect();
        let mut rebuilt = vec![Scalar::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in rebuilt.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinearError> {
        self.check_ambient(other)?;
        Subspace::span(self.ambient_dim, self.basis.iter().chain(&other.basis).cloned())
    }

    /// `{x : x = Σ a_i u_i = Σ b_j w_j}`, found as the kernel of `[U | −W]`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinearError> {
        self.check_ambient(other)?;
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let mut sys = LinearSystem::new(k + l);
        for i in 0..self.ambient_dim {
            let left = self.basis.iter().enumerate().map(|(a, u)| (a, u[i].clone()));
            let right = other
                .basis
                .iter()
                .enumerate()
                .map(|(b, w)| (k + b, -w[i].clone()));
            sys.push_row(left.chain(right).filter(|(_, x)| !x.is_zero()));
        }
        let kernel = sys.nullspace();
        let vectors = kernel.basis().iter().map(|coef| {
            let mut x = vec![Scalar::zero(); self.ambient_dim];
            for (c, u) in coef[..k].iter().zip(&self.basis) {
                if c.is_zero() {
                    continue;
                }
                for (xi, ui) in x.iter_mut().zip(u) {
                    if !ui.is_zero() {
                        *xi += c * ui;
                    }
                }
            }
            x
        });
        Subspace::span(self.ambient_dim, vectors)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinearError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinearError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }
}

pub fn subspace_ops(a: &Subspace, b: &Subspace) -> Result<SubspaceOps, LinearError> {
    Ok(SubspaceOps {
        sum: a.sum(b)?,
        intersection: a.intersection(b)?,
        equal: a == b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::int;

    fn sp(n: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::span(n, vs.iter().map(|v| v.iter().map(|&x| int(x)).collect())).unwrap()
    }

    #[test]
    fn coordinate_axes() {
        let a = sp(2, &[&[1, 0]]);
        let b = sp(2, &[&[0, 1]]);
        let ops = subspace_ops(&a, &b).unwrap();
        assert_eq!(ops.sum.dim(), 2);
        assert_eq!(ops.intersection.dim(), 0);
        assert!(!ops.equal);
    }

    #[test]
    fn plane_and_diagonal() {
        let a = sp(2, &[&[1, 0], &[0, 1]]);
        let b = sp(2, &[&[1, 1]]);
        let ops = subspace_ops(&a, &b).unwrap();
        assert_eq!(ops.intersection, b);
        assert_eq!(ops.sum, a);
        assert_eq!(ops.sum.dim() + ops.intersection.dim(), 3);
    }

    #[test]
    fn identical_inputs() {
        let a = sp(3, &[&[1, 2, 3], &[0, 1, 1]]);
        let ops = subspace_ops(&a, &a).unwrap();
        assert_eq!(ops.sum, a);
        assert_eq!(ops.intersection, a);
        assert!(ops.equal);
    }

    #[test]
    fn different_spanning_sets_same_basis() {
        let a = sp(3, &[&[1, 1, 0], &[0, 1, 1]]);
        let b = sp(3, &[&[1, 2, 1], &[2, 1, -1], &[1, 0, -1]]);
        assert_eq!(a, b);
        assert_eq!(a.pivots(), vec![0, 1]);
    }

    #[test]
    fn membership_and_coordinates() {
        let a = sp(3, &[&[1, 0, 2], &[0, 1, 3]]);
        assert_eq!(
            a.coordinates(&[int(2), int(-1), int(1)]),
            Some(vec![int(2), int(-1)])
        );
        assert!(!a.contains(&[int(0), int(0), int(1)]));
        assert!(sp(3, &[&[1, 1, 5]]).is_subspace_of(&a));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let err = subspace_ops(&Subspace::zero(2), &Subspace::zero(3)).unwrap_err();
        assert_eq!(
            err,
            LinearError::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }
}
