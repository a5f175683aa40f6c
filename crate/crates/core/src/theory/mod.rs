//! Structural analyses built on the solved spaces: Lie structure, smallness
//! of the quasi-centroid, and instance checks of general claims about these
//! spaces, each with a witness that can be re-verified independently.

mod claims;
mod direct_sum;

use num_traits::Zero;

use crate::algebra::AlgebraPresentation;
use crate::linear::{MatrixQ, Scalar, Subspace};
use crate::solver::{
    scalars, solve_quasi_derivations, solve_space, unvectorize, vectorize, OperatorSpace, QDerPairSpace,
    SpaceKind,
};

pub use claims::{
    reconcile_claims, reconcile_claims_with, Argument, ClaimVerdict, Combination, Equivalence,
    OperatorIdentity, Witness,
};
pub use direct_sum::{
    direct_sum_centralizer_check, direct_sum_theorem_check, CrossReading, DirectSumCheck, ReadingResult,
};

/// The Lie algebra generated by a space of operators (or operator pairs,
/// bracketed componentwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSpan {
    /// Number of `n×n` blocks per element: 1 for operators, 2 for pairs.
    pub blocks: usize,
    pub span: Subspace,
    /// Whether the input itself was closed under the bracket.
    pub closure_verified: bool,
    /// `dim L¹, dim L², …` with `L^{k+1} = [L, L^k]`, stopping at zero or
    /// at the first repeat.
    pub lower_central_series: Vec<usize>,
    pub nilpotent: bool,
}

fn to_blocks(n: usize, blocks: usize, v: &[Scalar]) -> Vec<MatrixQ> {
    (0..blocks)
        .map(|b| unvectorize(n, &v[b * n * n..(b + 1) * n * n]))
        .collect()
}

fn from_blocks(ms: &[MatrixQ]) -> Vec<Scalar> {
    ms.iter().flat_map(vectorize).collect()
}

fn bracket(x: &[MatrixQ], y: &[MatrixQ]) -> Vec<MatrixQ> {
    x.iter().zip(y).map(|(a, b)| a.commutator(b)).collect()
}

fn brackets<'a>(
    left: &'a [Vec<MatrixQ>],
    right: &'a [Vec<MatrixQ>],
) -> impl Iterator<Item = Vec<Scalar>> + 'a {
    left.iter()
        .flat_map(move |x| right.iter().map(move |y| from_blocks(&bracket(x, y))))
}

/// Lie span of a subspace of `blocks·n²` coordinates.
pub fn lie_span(n: usize, blocks: usize, input: &Subspace) -> LieSpan {
    let width = blocks * n * n;
    assert_eq!(input.ambient_dim(), width);
    let as_blocks =
        |s: &Subspace| -> Vec<Vec<MatrixQ>> { s.basis().iter().map(|v| to_blocks(n, blocks, v)).collect() };
    let base = as_blocks(input);
    let closure_verified = brackets(&base, &base).all(|v| input.contains(&v));

    let mut span = input.clone();
    let cap = (n * n * blocks).pow(2).max(1);
    let mut steps = 0;
    while steps < cap {
        let b = as_blocks(&span);
        let next = Subspace::span(width, span.basis().iter().cloned().chain(brackets(&b, &b)))
            .expect("consistent widths");
        if next == span {
            break;
        }
        span = next;
        steps += 1;
    }

    let whole = as_blocks(&span);
    let mut series = vec![span.dim()];
    let mut current = span.clone();
    let mut nilpotent = span.dim() == 0;
    while !nilpotent && series.len() <= cap {
        let cur = as_blocks(&current);
        let next = Subspace::span(width, brackets(&whole, &cur)).expect("consistent widths");
        series.push(next.dim());
        if next.dim() == 0 {
            nilpotent = true;
        } else if next == current {
            break;
        }
        current = next;
    }
    LieSpan {
        blocks,
        span,
        closure_verified,
        lower_central_series: series,
        nilpotent,
    }
}

pub fn lie_closure(space: &OperatorSpace) -> LieSpan {
    lie_span(space.n(), 1, space.subspace())
}

pub fn lie_closure_pairs(space: &QDerPairSpace) -> LieSpan {
    lie_span(space.n(), 2, space.pairs())
}

/// Quasi-centroid compared with `C_d + span{id}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallnessVerdict {
    pub dim_qcentroid: usize,
    pub dim_cder_plus_scalars: usize,
    pub is_small: bool,
    /// `C_d + span{id}` is closed under composition.
    pub composition_closed: bool,
    /// An element of `QΓ` outside `C_d + span{id}`.
    pub witness: Option<MatrixQ>,
}

pub fn smallness(a: &AlgebraPresentation) -> SmallnessVerdict {
    smallness_from(
        &solve_space(a, SpaceKind::QuasiCentroid),
        &solve_space(a, SpaceKind::CentralDerivation),
    )
}

pub fn smallness_from(qc: &OperatorSpace, cd: &OperatorSpace) -> SmallnessVerdict {
    let n = qc.n();
    let s = cd.subspace().sum(&scalars(n)).expect("same ambient space");
    let elems: Vec<MatrixQ> = s.basis().iter().map(|v| unvectorize(n, v)).collect();
    let composition_closed = elems
        .iter()
        .all(|x| elems.iter().all(|y| s.contains(&vectorize(&(x * y)))));
    let witness = qc
        .subspace()
        .basis()
        .iter()
        .find(|v| !s.contains(v))
        .map(|v| unvectorize(n, v));
    SmallnessVerdict {
        dim_qcentroid: qc.dim(),
        dim_cder_plus_scalars: s.dim(),
        is_small: qc.subspace() == &s,
        composition_closed,
        witness,
    }
}

/// Whether the quasi-derivations generate a nilpotent Lie algebra.
pub fn quasi_char_nilpotent(a: &AlgebraPresentation) -> bool {
    lie_closure(solve_quasi_derivations(a).projection()).nilpotent
}

/// `v·e_k = e_k·v = 0` for every `k`, by direct evaluation.
pub(crate) fn annihilates(a: &AlgebraPresentation, v: &[Scalar]) -> bool {
    centralizes(a, v, (0..a.dim()).map(|k| basis_vec(a.dim(), k)))
}

/// `v·w = w·v = 0` for every `w`.
pub(crate) fn centralizes(
    a: &AlgebraPresentation,
    v: &[Scalar],
    ws: impl IntoIterator<Item = Vec<Scalar>>,
) -> bool {
    ws.into_iter().all(|w| {
        a.mul_coords(v, &w).iter().all(Zero::is_zero) && a.mul_coords(&w, v).iter().all(Zero::is_zero)
    })
}

pub(crate) fn basis_vec(n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[k] = Scalar::from_integer(1.into());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::int;

    fn z21() -> AlgebraPresentation {
        let mut a = AlgebraPresentation::zero("Z2^1", 2);
        a.set_constant(0, 0, 1, int(1)).unwrap();
        a
    }

    #[test]
    fn derivations_of_z21_are_solvable_not_nilpotent() {
        let l = lie_closure(&solve_space(&z21(), SpaceKind::Derivation));
        assert!(l.closure_verified);
        assert_eq!(l.lower_central_series, vec![2, 1, 1]);
        assert!(!l.nilpotent);
    }

    #[test]
    fn full_matrix_algebra_is_not_nilpotent() {
        let l = lie_closure(&solve_space(
            &AlgebraPresentation::zero("Z3^1", 3),
            SpaceKind::Derivation,
        ));
        assert!(l.closure_verified);
        assert!(!l.nilpotent);
    }

    #[test]
    fn zero_space_is_nilpotent() {
        let l = lie_span(2, 1, &Subspace::zero(4));
        assert!(l.closure_verified && l.nilpotent);
        assert_eq!(l.lower_central_series, vec![0]);
    }

    #[test]
    fn non_closed_input_is_completed() {
        // e12 and e21 generate sl2
        let s = Subspace::span(
            4,
            [
                vectorize(&MatrixQ::from_i64(&[&[0, 1], &[0, 0]])),
                vectorize(&MatrixQ::from_i64(&[&[0, 0], &[1, 0]])),
            ],
        )
        .unwrap();
        let l = lie_span(2, 1, &s);
        assert!(!l.closure_verified);
        assert_eq!(l.span.dim(), 3);
        assert_eq!(l.lower_central_series, vec![3, 3]);
    }

    #[test]
    fn smallness_examples() {
        let v = smallness(&z21());
        assert!(v.is_small);
        assert_eq!((v.dim_qcentroid, v.dim_cder_plus_scalars), (3, 3));
        assert!(v.composition_closed);
        assert!(smallness(&AlgebraPresentation::zero("Z3^1", 3)).is_small);
        assert!(smallness(&AlgebraPresentation::zero("k", 1)).is_small);
    }

    #[test]
    fn quasi_characteristic_nilpotency() {
        assert!(!quasi_char_nilpotent(&AlgebraPresentation::zero("Z3^1", 3)));
        assert!(quasi_char_nilpotent(&AlgebraPresentation::zero("k", 1)));
        assert!(!quasi_char_nilpotent(&z21()));
    }
}
