//! Quasi-derivations: pairs `(d, d′)` with `d(p)q + p d(q) = d′(pq)`.

use num_traits::Zero;

use super::{constraint_system, unvectorize, vectorize, OperatorSpace, SpaceKind};
use crate::algebra::AlgebraPresentation;
use crate::linear::{LinearSystem, MatrixQ, Scalar, Subspace};

/// The pair space in `2n²` unknowns and its projection onto `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDerPairSpace {
    n: usize,
    pairs: Subspace,
    projection: OperatorSpace,
    // pair-basis rows whose pivot lies in the d block, in projection order
    lifting_rows: Vec<usize>,
    companion_kernel: Subspace,
}

/// Solves the pair system once and reads off the projection.
///
/// In the canonical pair basis the rows pivoting inside the `d` block have
/// `d`-parts that are already the canonical basis of the projection; the
/// remaining rows have zero `d`-part, and their `d′`-parts span the maps
/// that may be added to any companion.
pub fn solve_quasi_derivations(a: &AlgebraPresentation) -> QDerPairSpace {
    let n = a.dim();
    let pairs = constraint_system(a, SpaceKind::QuasiDerivationProjection).nullspace();
    QDerPairSpace::from_pairs(n, pairs)
}

impl QDerPairSpace {
    pub(crate) fn from_pairs(n: usize, pairs: Subspace) -> Self {
        let nn = n * n;
        let mut lifting_rows = Vec::new();
        let mut d_parts = Vec::new();
        let mut kernel = Vec::new();
        for (r, (v, pivot)) in pairs.basis().iter().zip(pairs.pivots()).enumerate() {
            if pivot < nn {
                lifting_rows.push(r);
                d_parts.push(v[..nn].to_vec());
            } else {
                kernel.push(v[nn..].to_vec());
            }
        }
        let projection = OperatorSpace::new(
            SpaceKind::QuasiDerivationProjection,
            n,
            Subspace::from_canonical(nn, d_parts),
        );
        let companion_kernel = Subspace::from_canonical(nn, kernel);
        Self {
            n,
            pairs,
            projection,
            lifting_rows,
            companion_kernel,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.pairs.dim()
    }

    /// The solution set in `2n²` coordinates, `d` first.
    pub fn pairs(&self) -> &Subspace {
        &self.pairs
    }

    pub fn projection(&self) -> &OperatorSpace {
        &self.projection
    }

    pub fn into_projection(self) -> OperatorSpace {
        self.projection
    }

    /// Maps `k` with `(0, k)` a pair, i.e. `k` vanishes on `Z²`.
    pub fn companion_kernel(&self) -> &Subspace {
        &self.companion_kernel
    }

    pub fn basis_pairs(&self) -> Vec<(MatrixQ, MatrixQ)> {
        let nn = self.n * self.n;
        self.pairs
            .basis()
            .iter()
            .map(|v| (unvectorize(self.n, &v[..nn]), unvectorize(self.n, &v[nn..])))
            .collect()
    }

    /// One companion of `d`, or `None` if `d` is not a quasi-derivation.
    /// Any other companion differs from it by an element of
    /// [`companion_kernel`](Self::companion_kernel).
    pub fn companion_for(&self, d: &MatrixQ) -> Option<MatrixQ> {
        if d.rows() != self.n || d.cols() != self.n {
            return None;
        }
        let nn = self.n * self.n;
        let coords = self.projection.subspace().coordinates(&vectorize(d))?;
        let mut out = vec![Scalar::zero(); nn];
        for (c, &r) in coords.iter().zip(&self.lifting_rows) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(&self.pairs.basis()[r][nn..]) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        Some(unvectorize(self.n, &out))
    }
}

/// Finds some `d′` with `d(p)q + p d(q) = d′(pq)` by solving for `d′` alone.
///
/// Independent of [`QDerPairSpace`]: the unknowns are `d′` plus one scale
/// variable `t` multiplying the known left side, and a solution with `t ≠ 0`
/// exists exactly when `d` is a quasi-derivation.
pub fn companion_of(a: &AlgebraPresentation, d: &MatrixQ) -> Option<MatrixQ> {
    let n = a.dim();
    if d.rows() != n || d.cols() != n {
        return None;
    }
    let nn = n * n;
    let images: Vec<Vec<Scalar>> = (0..n).map(|j| d.column(j)).collect();
    let mut sys = LinearSystem::new(nn + 1);
    for p in 0..n {
        for q in 0..n {
            let lhs: Vec<Scalar> = a
                .right_basis_mul(&images[p], q)
                .into_iter()
                .zip(a.left_basis_mul(p, &images[q]))
                .map(|(x, y)| x + y)
                .collect();
            for (k, lk) in lhs.iter().enumerate() {
                let mut row: Vec<(usize, Scalar)> = a
                    .basis_product(p, q)
                    .iter()
                    .map(|(m, c)| (m * n + k, c.clone()))
                    .collect();
                row.push((nn, -lk.clone()));
                sys.push_row(row);
            }
        }
    }
    let solutions = sys.nullspace();
    let v = solutions.basis().iter().find(|v| !v[nn].is_zero())?;
    let t = v[nn].clone();
    let dp: Vec<Scalar> = v[..nn].iter().map(|x| x / &t).collect();
    Some(unvectorize(n, &dp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::int;
    use crate::solver::{solve_space, verify_pair};

    fn z21() -> AlgebraPresentation {
        let mut a = AlgebraPresentation::zero("Z2^1", 2);
        a.set_constant(0, 0, 1, int(1)).unwrap();
        a
    }

    #[test]
    fn z21_projection_drops_only_d12() {
        let q = solve_quasi_derivations(&z21());
        assert_eq!(q.projection().dim(), 3);
        assert!(q.projection().basis().iter().all(|m| m.get(0, 1).is_zero()));
        // companion is pinned on e2 = e1e1 only: d′(e2) = 2 d11 e2
        assert_eq!(q.dim(), 5);
        assert_eq!(q.companion_kernel().dim(), 2);
        let d = MatrixQ::from_i64(&[&[1, 0], &[0, 0]]);
        let c = q.companion_for(&d).unwrap();
        assert_eq!(c.column(1), vec![int(0), int(2)]);
        assert!(verify_pair(&z21(), &d, &c).unwrap().valid);
    }

    #[test]
    fn abelian_pairs_are_unconstrained() {
        let a = AlgebraPresentation::zero("Z3^1", 3);
        let q = solve_quasi_derivations(&a);
        assert_eq!(q.dim(), 18);
        assert_eq!(q.projection().dim(), 9);
    }

    #[test]
    fn derivations_are_their_own_companions() {
        let a = z21();
        let q = solve_quasi_derivations(&a);
        for d in solve_space(&a, SpaceKind::Derivation).basis() {
            assert!(q.projection().contains(&d));
            assert!(verify_pair(&a, &d, &d).unwrap().valid);
        }
    }

    #[test]
    fn non_members_have_no_companion() {
        let q = solve_quasi_derivations(&z21());
        let m = MatrixQ::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(q.companion_for(&m).is_none());
        assert!(companion_of(&z21(), &m).is_none());
    }

    #[test]
    fn direct_companion_search_agrees_with_pair_space() {
        let a = z21();
        let q = solve_quasi_derivations(&a);
        for d in q.projection().basis() {
            let c = companion_of(&a, &d).expect("member");
            assert!(verify_pair(&a, &d, &c).unwrap().valid);
        }
        let id = MatrixQ::identity(2);
        assert!(
            verify_pair(&a, &id, &companion_of(&a, &id).unwrap())
                .unwrap()
                .valid
        );
    }
}
