//! Operator spaces defined by linear identities in the product.
//!
//! An operator `φ` is an `n×n` matrix whose column `j` holds `φ(e_j)`.
//! Operators are vectorized column-major: entry `a_ij` sits at `j·n + i`.
//! Each space is the nullspace of an assembled sparse system, one block of
//! `n` equations per basis pair `(p, q)`.

mod oracle;
mod parametric;
mod qder;
mod verify;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::AlgebraPresentation;
use crate::linear::{LinearSystem, MatrixQ, Scalar, Subspace};

pub use oracle::{pairwise_operator_space, pairwise_pair_space, pairwise_space};
pub use parametric::{param_name, render_terms, LinearExpr, ParametricForm};
pub use qder::{companion_of, solve_quasi_derivations, QDerPairSpace};
pub use verify::{verify_member, verify_pair, MemberCheck, MemberKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("a companion map is required for quasi-derivations")]
    MissingCompanion,
    #[error("a companion map is only meaningful for quasi-derivations")]
    UnexpectedCompanion,
    #[error("operator is {found}×{found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown space kind {0:?}")]
    UnknownKind(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceKind {
    /// `d(pq) = d(p)q + p d(q)`
    Derivation,
    /// `φ(pq) = φ(p)q = pφ(q)`
    Centroid,
    /// `φ(p)q = pφ(q)`
    QuasiCentroid,
    /// `φ(p)q = pφ(q) = 0`
    CentralDerivation,
    /// `d` such that `d(p)q + p d(q) = d′(pq)` for some `d′`
    QuasiDerivationProjection,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 5] = [
        SpaceKind::Derivation,
        SpaceKind::QuasiDerivationProjection,
        SpaceKind::Centroid,
        SpaceKind::QuasiCentroid,
        SpaceKind::CentralDerivation,
    ];

    /// Short name used on the command line and in reports.
    pub fn short_name(self) -> &'static str {
        match self {
            SpaceKind::Derivation => "der",
            SpaceKind::Centroid => "centroid",
            SpaceKind::QuasiCentroid => "qcentroid",
            SpaceKind::CentralDerivation => "cder",
            SpaceKind::QuasiDerivationProjection => "qder",
        }
    }

    /// Parameter prefix for parametric grids.
    pub fn symbol(self) -> char {
        match self {
            SpaceKind::Derivation | SpaceKind::QuasiDerivationProjection => 'd',
            _ => 'a',
        }
    }

    pub fn member_kind(self) -> MemberKind {
        match self {
            SpaceKind::Derivation => MemberKind::Derivation,
            SpaceKind::Centroid => MemberKind::Centroid,
            SpaceKind::QuasiCentroid => MemberKind::QuasiCentroid,
            SpaceKind::CentralDerivation => MemberKind::CentralDerivation,
            SpaceKind::QuasiDerivationProjection => MemberKind::QuasiDerivation,
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for SpaceKind {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SpaceKind::ALL
            .into_iter()
            .find(|k| k.short_name() == s)
            .ok_or_else(|| SolverError::UnknownKind(s.to_string()))
    }
}

/// Column-major coordinates of an operator.
pub fn vectorize(m: &MatrixQ) -> Vec<Scalar> {
    let n = m.rows();
    let mut v = Vec::with_capacity(n * m.cols());
    for j in 0..m.cols() {
        for i in 0..n {
            v.push(m.get(i, j).clone());
        }
    }
    v
}

/// Inverse of [`vectorize`] for a square operator.
pub fn unvectorize(n: usize, v: &[Scalar]) -> MatrixQ {
    assert_eq!(v.len(), n * n);
    MatrixQ::from_fn(n, n, |i, j| v[j * n + i].clone())
}

/// A solved operator space with its canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpace {
    kind: SpaceKind,
    n: usize,
    subspace: Subspace,
}

impl OperatorSpace {
    pub(crate) fn new(kind: SpaceKind, n: usize, subspace: Subspace) -> Self {
        debug_assert_eq!(subspace.ambient_dim(), n * n);
        Self { kind, n, subspace }
    }

    /// Wraps a subspace of vectorized `n×n` operators; `None` if its ambient
    /// dimension is not `n²`.
    pub fn from_subspace(kind: SpaceKind, n: usize, subspace: Subspace) -> Option<Self> {
        (subspace.ambient_dim() == n * n).then(|| Self::new(kind, n, subspace))
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    /// Dimension of the underlying algebra.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn basis(&self) -> Vec<MatrixQ> {
        self.subspace
            .basis()
            .iter()
            .map(|v| unvectorize(self.n, v))
            .collect()
    }

    pub fn contains(&self, m: &MatrixQ) -> bool {
        m.rows() == self.n && m.cols() == self.n && self.subspace.contains(&vectorize(m))
    }

    pub fn parametric_form(&self) -> ParametricForm {
        ParametricForm::from_subspace(self.n, &self.subspace, self.kind.symbol())
    }
}

/// Adds `sign · (rows)` to the `n` output-coordinate rows of one basis pair.
struct PairRows {
    n: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl PairRows {
    fn new(n: usize) -> Self {
        Self {
            n,
            rows: vec![Vec::new(); n],
        }
    }

    /// `(φ(e_p)·e_q)_t = Σ_s a_sp γ_sq^t`
    fn left(&mut self, a: &AlgebraPresentation, p: usize, q: usize, sign: &Scalar, offset: usize) {
        for s in 0..self.n {
            for (t, c) in a.basis_product(s, q) {
                self.rows[*t].push((offset + p * self.n + s, sign * c));
            }
        }
    }

    /// `(e_p·φ(e_q))_t = Σ_s a_sq γ_ps^t`
    fn right(&mut self, a: &AlgebraPresentation, p: usize, q: usize, sign: &Scalar, offset: usize) {
        for s in 0..self.n {
            for (t, c) in a.basis_product(p, s) {
                self.rows[*t].push((offset + q * self.n + s, sign * c));
            }
        }
    }

    /// `(φ(e_p e_q))_t = Σ_m γ_pq^m a_tm`
    fn image(&mut self, a: &AlgebraPresentation, p: usize, q: usize, sign: &Scalar, offset: usize) {
        for (m, c) in a.basis_product(p, q) {
            let c = sign * c;
            for t in 0..self.n {
                self.rows[t].push((offset + m * self.n + t, c.clone()));
            }
        }
    }

    fn flush(&mut self, sys: &mut LinearSystem) {
        for row in self.rows.iter_mut() {
            sys.push_row(std::mem::take(row));
        }
    }
}

/// Appends the equations contributed by the basis pair `(p, q)`.
///
/// For [`SpaceKind::QuasiDerivationProjection`] the unknowns are the pair
/// `(d, d′)`, with `d′` stored after `d`.
pub(crate) fn push_pair_constraints(
    a: &AlgebraPresentation,
    kind: SpaceKind,
    p: usize,
    q: usize,
    sys: &mut LinearSystem,
) {
    let n = a.dim();
    let plus = Scalar::one();
    let minus = -Scalar::one();
    let mut rows = PairRows::new(n);
    match kind {
        SpaceKind::Derivation => {
            rows.image(a, p, q, &plus, 0);
            rows.left(a, p, q, &minus, 0);
            rows.right(a, p, q, &minus, 0);
        }
        SpaceKind::Centroid => {
            rows.image(a, p, q, &plus, 0);
            rows.left(a, p, q, &minus, 0);
            rows.flush(sys);
            rows.image(a, p, q, &plus, 0);
            rows.right(a, p, q, &minus, 0);
        }
        SpaceKind::QuasiCentroid => {
            rows.left(a, p, q, &plus, 0);
            rows.right(a, p, q, &minus, 0);
        }
        SpaceKind::CentralDerivation => {
            rows.left(a, p, q, &plus, 0);
            rows.flush(sys);
            rows.right(a, p, q, &plus, 0);
        }
        SpaceKind::QuasiDerivationProjection => {
            rows.left(a, p, q, &plus, 0);
            rows.right(a, p, q, &plus, 0);
            rows.image(a, p, q, &minus, n * n);
        }
    }
    rows.flush(sys);
}

/// Number of unknowns of the assembled system.
pub(crate) fn unknowns(n: usize, kind: SpaceKind) -> usize {
    match kind {
        SpaceKind::QuasiDerivationProjection => 2 * n * n,
        _ => n * n,
    }
}

/// The full assembled system for `kind`.
pub fn constraint_system(a: &AlgebraPresentation, kind: SpaceKind) -> LinearSystem {
    let n = a.dim();
    let mut sys = LinearSystem::new(unknowns(n, kind));
    for p in 0..n {
        for q in 0..n {
            push_pair_constraints(a, kind, p, q, &mut sys);
        }
    }
    sys
}

/// Solves for one operator space. The quasi-derivation kind returns the
/// projection of the pair space onto its first component.
pub fn solve_space(a: &AlgebraPresentation, kind: SpaceKind) -> OperatorSpace {
    if kind == SpaceKind::QuasiDerivationProjection {
        return solve_quasi_derivations(a).projection().clone();
    }
    let n = a.dim();
    OperatorSpace::new(kind, n, constraint_system(a, kind).nullspace())
}

/// Every space of one algebra, each solved once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvedSpaces {
    pub der: OperatorSpace,
    pub centroid: OperatorSpace,
    pub qcentroid: OperatorSpace,
    pub cder: OperatorSpace,
    pub qder: QDerPairSpace,
}

impl SolvedSpaces {
    pub fn solve(a: &AlgebraPresentation) -> Self {
        Self {
            der: solve_space(a, SpaceKind::Derivation),
            centroid: solve_space(a, SpaceKind::Centroid),
            qcentroid: solve_space(a, SpaceKind::QuasiCentroid),
            cder: solve_space(a, SpaceKind::CentralDerivation),
            qder: solve_quasi_derivations(a),
        }
    }

    pub fn get(&self, kind: SpaceKind) -> &OperatorSpace {
        match kind {
            SpaceKind::Derivation => &self.der,
            SpaceKind::Centroid => &self.centroid,
            SpaceKind::QuasiCentroid => &self.qcentroid,
            SpaceKind::CentralDerivation => &self.cder,
            SpaceKind::QuasiDerivationProjection => self.qder.projection(),
        }
    }
}

/// `span{id}` as an operator subspace.
pub fn scalars(n: usize) -> Subspace {
    Subspace::span(n * n, [vectorize(&MatrixQ::identity(n))]).expect("length n²")
}

pub(crate) fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
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
    fn vectorization_is_column_major() {
        let m = MatrixQ::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(vectorize(&m), vec![int(1), int(3), int(2), int(4)]);
        assert_eq!(unvectorize(2, &vectorize(&m)), m);
    }

    #[test]
    fn derivations_of_z21() {
        let der = solve_space(&z21(), SpaceKind::Derivation);
        assert_eq!(der.dim(), 2);
        assert_eq!(
            der.basis(),
            vec![
                MatrixQ::from_i64(&[&[1, 0], &[0, 2]]),
                MatrixQ::from_i64(&[&[0, 0], &[1, 0]])
            ]
        );
    }

    #[test]
    fn centroid_and_quasi_centroid_of_z21() {
        let cen = solve_space(&z21(), SpaceKind::Centroid);
        assert_eq!(cen.dim(), 2);
        for m in cen.basis() {
            assert!(m.get(0, 1).is_zero());
            assert_eq!(m.get(0, 0), m.get(1, 1));
        }
        let qc = solve_space(&z21(), SpaceKind::QuasiCentroid);
        assert_eq!(qc.dim(), 3);
        assert!(qc.basis().iter().all(|m| m.get(0, 1).is_zero()));
    }

    #[test]
    fn abelian_spaces_are_everything() {
        let a = AlgebraPresentation::zero("Z3^1", 3);
        for kind in SpaceKind::ALL {
            assert_eq!(solve_space(&a, kind).dim(), 9, "{kind}");
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in SpaceKind::ALL {
            assert_eq!(kind.short_name().parse::<SpaceKind>().unwrap(), kind);
        }
        assert!("derivations".parse::<SpaceKind>().is_err());
    }
}
