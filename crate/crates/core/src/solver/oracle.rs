//! Second computation order for every solved space.
//!
//! Instead of one assembled system, each basis pair `(p, q)` gets its own
//! solution space (by exact elimination), and the spaces are intersected one
//! pair at a time. The result must coincide with the assembled nullspace.

use super::{push_pair_constraints, unknowns, OperatorSpace, QDerPairSpace, SpaceKind};
use crate::algebra::AlgebraPresentation;
use crate::linear::{LinearSystem, Subspace};

/// Intersection of the per-pair solution spaces, in the unknowns of `kind`
/// (`2n²` for quasi-derivation pairs).
pub fn pairwise_space(a: &AlgebraPresentation, kind: SpaceKind) -> Subspace {
    let n = a.dim();
    let width = unknowns(n, kind);
    let mut acc = Subspace::full(width);
    for p in 0..n {
        for q in 0..n {
            let mut sys = LinearSystem::new(width);
            push_pair_constraints(a, kind, p, q, &mut sys);
            if sys.nrows() == 0 {
                continue;
            }
            let local = sys.nullspace_exact();
            acc = acc.intersection(&local).expect("same ambient space");
        }
    }
    acc
}

/// The operator space as computed by the pairwise order.
pub fn pairwise_operator_space(a: &AlgebraPresentation, kind: SpaceKind) -> OperatorSpace {
    if kind == SpaceKind::QuasiDerivationProjection {
        return pairwise_pair_space(a).into_projection();
    }
    OperatorSpace::new(kind, a.dim(), pairwise_space(a, kind))
}

pub fn pairwise_pair_space(a: &AlgebraPresentation) -> QDerPairSpace {
    QDerPairSpace::from_pairs(a.dim(), pairwise_space(a, SpaceKind::QuasiDerivationProjection))
}
