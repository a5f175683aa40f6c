//! Membership by direct evaluation of the defining identities.
//!
//! Nothing here touches the assembled systems, so these checks serve as the
//! oracle for the solver.

use super::{is_zero_vec, SolverError};
use crate::algebra::AlgebraPresentation;
use crate::linear::{MatrixQ, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MemberKind {
    Derivation,
    Centroid,
    QuasiCentroid,
    CentralDerivation,
    /// Needs the companion `d′`.
    QuasiDerivation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberCheck {
    pub valid: bool,
    /// First basis pair `(p, q)` (0-based) where the identity fails.
    pub first_violation: Option<(usize, usize)>,
}

fn check_dim(a: &AlgebraPresentation, m: &MatrixQ) -> Result<(), SolverError> {
    if m.rows() != a.dim() || m.cols() != a.dim() {
        return Err(SolverError::DimensionMismatch {
            expected: a.dim(),
            found: m.rows().max(m.cols()),
        });
    }
    Ok(())
}

fn sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn verify_member(
    a: &AlgebraPresentation,
    kind: MemberKind,
    phi: &MatrixQ,
    companion: Option<&MatrixQ>,
) -> Result<MemberCheck, SolverError> {
    check_dim(a, phi)?;
    match (kind, companion) {
        (MemberKind::QuasiDerivation, None) => return Err(SolverError::MissingCompanion),
        (MemberKind::QuasiDerivation, Some(c)) => check_dim(a, c)?,
        (_, Some(_)) => return Err(SolverError::UnexpectedCompanion),
        (_, None) => {}
    }
    let n = a.dim();
    let images: Vec<Vec<Scalar>> = (0..n).map(|j| phi.column(j)).collect();
    let basis: Vec<Vec<Scalar>> = (0..n).map(|i| MatrixQ::identity(n).column(i)).collect();
    for p in 0..n {
        for q in 0..n {
            let pq = a.mul_coords(&basis[p], &basis[q]);
            let phi_p_q = a.mul_coords(&images[p], &basis[q]);
            let p_phi_q = a.mul_coords(&basis[p], &images[q]);
            let ok = match kind {
                MemberKind::Derivation => {
                    let lhs = phi.mul_vec(&pq);
                    let rhs: Vec<Scalar> = phi_p_q.iter().zip(&p_phi_q).map(|(x, y)| x + y).collect();
                    lhs == rhs
                }
                MemberKind::Centroid => {
                    let lhs = phi.mul_vec(&pq);
                    lhs == phi_p_q && lhs == p_phi_q
                }
                MemberKind::QuasiCentroid => is_zero_vec(&sub(&phi_p_q, &p_phi_q)),
                MemberKind::CentralDerivation => is_zero_vec(&phi_p_q) && is_zero_vec(&p_phi_q),
                MemberKind::QuasiDerivation => {
                    let c = companion.expect("checked above");
                    let lhs: Vec<Scalar> = phi_p_q.iter().zip(&p_phi_q).map(|(x, y)| x + y).collect();
                    lhs == c.mul_vec(&pq)
                }
            };
            if !ok {
                return Ok(MemberCheck {
                    valid: false,
                    first_violation: Some((p, q)),
                });
            }
        }
    }
    Ok(MemberCheck {
        valid: true,
        first_violation: None,
    })
}

/// `verify_member` for a quasi-derivation `d` with companion `d′`.
pub fn verify_pair(
    a: &AlgebraPresentation,
    d: &MatrixQ,
    companion: &MatrixQ,
) -> Result<MemberCheck, SolverError> {
    verify_member(a, MemberKind::QuasiDerivation, d, Some(companion))
}
