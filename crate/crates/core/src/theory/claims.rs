//! Instance checks of general statements about the operator spaces.
//!
//! Each statement is evaluated on basis elements of the solved spaces. A
//! failing statement carries a [`Witness`] whose violation can be
//! reproduced from the algebra alone, without the solver that found it.

use std::fmt;

use num_traits::{One, Zero};

use super::{annihilates, basis_vec, centralizes};
use crate::algebra::{
    annihilator, centralizer, is_ideal, mult_operator, power_chain, AlgebraPresentation, ElementVector, Side,
};
use crate::linear::{MatrixQ, Scalar, Subspace};
use crate::solver::{
    companion_of, unvectorize, vectorize, verify_member, verify_pair, MemberKind, SolvedSpaces,
};

/// The operator identities checked for basis elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorIdentity {
    /// `[d, L_p] = L_{d(p)}`
    DerivationLeft,
    /// `[d, R_p] = R_{d(p)}`
    DerivationRight,
    /// `L_{pq} = L_p L_q`
    LeftComposition,
    /// `R_{pq} = R_q R_p`
    RightComposition,
}

/// How a quasi-centroid element `φ` is combined with a quasi-derivation `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Combination {
    /// `φ∘d`
    Composition,
    /// `[φ, d]`
    Commutator,
}

/// Biconditionals relating `d ∈ QDer` and `φ ∈ QΓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Equivalence {
    /// `dφ ∈ QΓ ⇔ φd ∈ C_d`
    ProductInQuasiCentroid,
    /// `dφ ∈ QDer ⇔ [d, φ] ∈ C_d`
    ProductInQuasiDerivations,
}

/// Where a bracket `[φ, ψ]` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Argument {
    Basis(usize),
    /// The product `e_p e_q`.
    Product(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Two derivations whose bracket is not a derivation.
    DerivationBracket { x: MatrixQ, y: MatrixQ },
    /// Basis elements at which an operator identity fails.
    OperatorMismatch {
        identity: OperatorIdentity,
        d: Option<MatrixQ>,
        p: usize,
        q: Option<usize>,
        lhs: MatrixQ,
        rhs: MatrixQ,
    },
    /// An ideal whose centralizer is not an ideal.
    CentralizerNotIdeal { ideal: Subspace },
    /// `φ ∈ QΓ` and `d ∈ QDer` (with companion) whose combination has no companion.
    QuasiDerivationEscape {
        combination: Combination,
        phi: MatrixQ,
        d: MatrixQ,
        companion: MatrixQ,
    },
    /// `[φ, ψ](e_j)` outside the annihilator.
    BracketLeavesAnnihilator {
        phi: MatrixQ,
        psi: MatrixQ,
        column: usize,
    },
    /// `[φ, ψ]` nonzero at the given argument.
    BracketNonzero {
        phi: MatrixQ,
        psi: MatrixQ,
        argument: Argument,
    },
    /// `element ∈ C_Z(W)` but `φ(element) ∉ C_Z(W)`.
    CentralizerNotInvariant {
        w: Subspace,
        phi: MatrixQ,
        element: Vec<Scalar>,
    },
    /// In `QΓ ∩ QDer` but not a central derivation.
    NonCentralIntersection { phi: MatrixQ, companion: MatrixQ },
    /// The two sides of a biconditional disagree.
    EquivalenceFails {
        equivalence: Equivalence,
        d: MatrixQ,
        companion: MatrixQ,
        phi: MatrixQ,
        left: bool,
        right: bool,
    },
    /// `φ ∈ QΓ(A ⊕ B)` maps `e_p e_q`, a product inside one factor, to
    /// something with a nonzero component in the other factor.
    CrossBlock {
        split: usize,
        phi: MatrixQ,
        p: usize,
        q: usize,
    },
    /// Centralizes one factor (`first` = the first `split` basis vectors)
    /// but is not in the annihilator of the sum.
    CentralizerExcess {
        split: usize,
        first: bool,
        element: Vec<Scalar>,
    },
    /// Nonzero and centralizes both factors.
    CentralizerOverlap { split: usize, element: Vec<Scalar> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimVerdict {
    pub claim_id: String,
    pub holds: bool,
    pub counterexample: Option<Witness>,
    pub note: String,
}

impl ClaimVerdict {
    fn new(claim_id: &str, counterexample: Option<Witness>, note: impl Into<String>) -> Self {
        Self {
            claim_id: claim_id.to_string(),
            holds: counterexample.is_none(),
            counterexample,
            note: note.into(),
        }
    }

    /// True when the stored counterexample (if any) reproduces an exact
    /// violation on `a`.
    pub fn reverify(&self, a: &AlgebraPresentation) -> bool {
        match &self.counterexample {
            None => true,
            Some(w) => !self.holds && w.reverify(a),
        }
    }
}

fn is_member(a: &AlgebraPresentation, kind: MemberKind, m: &MatrixQ) -> bool {
    verify_member(a, kind, m, None).is_ok_and(|c| c.valid)
}

fn is_pair(a: &AlgebraPresentation, d: &MatrixQ, c: &MatrixQ) -> bool {
    verify_pair(a, d, c).is_ok_and(|c| c.valid)
}

fn element(n: usize, k: usize) -> ElementVector {
    ElementVector::basis(n, k)
}

/// Both sides of an operator identity at basis elements.
pub(crate) fn identity_sides(
    a: &AlgebraPresentation,
    identity: OperatorIdentity,
    d: Option<&MatrixQ>,
    p: usize,
    q: Option<usize>,
) -> Option<(MatrixQ, MatrixQ)> {
    let n = a.dim();
    let op = |v: &ElementVector, side| mult_operator(a, v, side).ok();
    match identity {
        OperatorIdentity::DerivationLeft | OperatorIdentity::DerivationRight => {
            let d = d?;
            let side = if identity == OperatorIdentity::DerivationLeft {
                Side::Left
            } else {
                Side::Right
            };
            let mp = op(&element(n, p), side)?;
            let dp = ElementVector::new(d.column(p));
            Some((d.commutator(&mp), op(&dp, side)?))
        }
        OperatorIdentity::LeftComposition | OperatorIdentity::RightComposition => {
            let q = q?;
            let pq = ElementVector::new(a.mul_coords(element(n, p).coords(), element(n, q).coords()));
            if identity == OperatorIdentity::LeftComposition {
                let lhs = op(&pq, Side::Left)?;
                Some((
                    lhs,
                    &op(&element(n, p), Side::Left)? * &op(&element(n, q), Side::Left)?,
                ))
            } else {
                let lhs = op(&pq, Side::Right)?;
                Some((
                    lhs,
                    &op(&element(n, q), Side::Right)? * &op(&element(n, p), Side::Right)?,
                ))
            }
        }
    }
}

fn combine(combination: Combination, phi: &MatrixQ, d: &MatrixQ) -> MatrixQ {
    match combination {
        Combination::Composition => phi * d,
        Combination::Commutator => phi.commutator(d),
    }
}

/// `(left, right)` of a biconditional, both decided by direct evaluation.
fn equivalence_sides(a: &AlgebraPresentation, eq: Equivalence, d: &MatrixQ, phi: &MatrixQ) -> (bool, bool) {
    let d_phi = d * phi;
    match eq {
        Equivalence::ProductInQuasiCentroid => (
            is_member(a, MemberKind::QuasiCentroid, &d_phi),
            is_member(a, MemberKind::CentralDerivation, &(phi * d)),
        ),
        Equivalence::ProductInQuasiDerivations => (
            companion_of(a, &d_phi).is_some(),
            is_member(a, MemberKind::CentralDerivation, &d.commutator(phi)),
        ),
    }
}

fn bracket_argument(a: &AlgebraPresentation, arg: Argument) -> Vec<Scalar> {
    let n = a.dim();
    match arg {
        Argument::Basis(j) => basis_vec(n, j),
        Argument::Product(p, q) => a.mul_coords(&basis_vec(n, p), &basis_vec(n, q)),
    }
}

fn factor_basis(n: usize, split: usize, first: bool) -> Vec<Vec<Scalar>> {
    let range = if first { 0..split } else { split..n };
    range.map(|k| basis_vec(n, k)).collect()
}

impl Witness {
    /// Re-derives the violation from `a` using direct evaluation only.
    pub fn reverify(&self, a: &AlgebraPresentation) -> bool {
        let n = a.dim();
        let square = |m: &MatrixQ| m.rows() == n && m.cols() == n;
        match self {
            Witness::DerivationBracket { x, y } => {
                square(x)
                    && square(y)
                    && is_member(a, MemberKind::Derivation, x)
                    && is_member(a, MemberKind::Derivation, y)
                    && !is_member(a, MemberKind::Derivation, &x.commutator(y))
            }
            Witness::OperatorMismatch {
                identity,
                d,
                p,
                q,
                lhs,
                rhs,
            } => {
                if let Some(d) = d {
                    if !square(d) || !is_member(a, MemberKind::Derivation, d) {
                        return false;
                    }
                }
                if *p >= n || q.is_some_and(|q| q >= n) {
                    return false;
                }
                match identity_sides(a, *identity, d.as_ref(), *p, *q) {
                    Some((l, r)) => &l == lhs && &r == rhs && l != r,
                    None => false,
                }
            }
            Witness::CentralizerNotIdeal { ideal } => {
                ideal.ambient_dim() == n
                    && is_ideal(a, ideal)
                    && centralizer(a, ideal).is_ok_and(|c| !is_ideal(a, &c.space))
            }
            Witness::QuasiDerivationEscape {
                combination,
                phi,
                d,
                companion,
            } => {
                square(phi)
                    && square(d)
                    && is_member(a, MemberKind::QuasiCentroid, phi)
                    && is_pair(a, d, companion)
                    && companion_of(a, &combine(*combination, phi, d)).is_none()
            }
            Witness::BracketLeavesAnnihilator { phi, psi, column } => {
                square(phi)
                    && square(psi)
                    && *column < n
                    && is_member(a, MemberKind::QuasiCentroid, phi)
                    && is_member(a, MemberKind::QuasiCentroid, psi)
                    && !annihilates(a, &phi.commutator(psi).column(*column))
            }
            Witness::BracketNonzero { phi, psi, argument } => {
                let in_range = match *argument {
                    Argument::Basis(j) => j < n,
                    Argument::Product(p, q) => p < n && q < n,
                };
                in_range
                    && square(phi)
                    && square(psi)
                    && is_member(a, MemberKind::QuasiCentroid, phi)
                    && is_member(a, MemberKind::QuasiCentroid, psi)
                    && phi
                        .commutator(psi)
                        .mul_vec(&bracket_argument(a, *argument))
                        .iter()
                        .any(|x| !x.is_zero())
            }
            Witness::CentralizerNotInvariant { w, phi, element } => {
                w.ambient_dim() == n
                    && element.len() == n
                    && square(phi)
                    && is_member(a, MemberKind::QuasiCentroid, phi)
                    && centralizes(a, element, w.basis().iter().cloned())
                    && !centralizes(a, &phi.mul_vec(element), w.basis().iter().cloned())
            }
            Witness::NonCentralIntersection { phi, companion } => {
                square(phi)
                    && is_member(a, MemberKind::QuasiCentroid, phi)
                    && is_pair(a, phi, companion)
                    && !is_member(a, MemberKind::CentralDerivation, phi)
            }
            Witness::EquivalenceFails {
                equivalence,
                d,
                companion,
                phi,
                left,
                right,
            } => {
                square(d)
                    && square(phi)
                    && is_pair(a, d, companion)
                    && is_member(a, MemberKind::QuasiCentroid, phi)
                    && equivalence_sides(a, *equivalence, d, phi) == (*left, *right)
                    && left != right
            }
            Witness::CrossBlock { split, phi, p, q } => {
                let (p, q, split) = (*p, *q, *split);
                if !square(phi) || p >= n || q >= n || split > n {
                    return false;
                }
                let first = p < split;
                if first != (q < split) || !is_member(a, MemberKind::QuasiCentroid, phi) {
                    return false;
                }
                let image = phi.mul_vec(&a.mul_coords(&basis_vec(n, p), &basis_vec(n, q)));
                let other = if first { split..n } else { 0..split };
                other.into_iter().any(|k| !image[k].is_zero())
            }
            Witness::CentralizerExcess {
                split,
                first,
                element,
            } => {
                *split <= n
                    && element.len() == n
                    && centralizes(a, element, factor_basis(n, *split, *first))
                    && !annihilates(a, element)
            }
            Witness::CentralizerOverlap { split, element } => {
                *split <= n
                    && element.len() == n
                    && element.iter().any(|x| !x.is_zero())
                    && centralizes(a, element, factor_basis(n, *split, true))
                    && centralizes(a, element, factor_basis(n, *split, false))
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::DerivationBracket { x, y } => write!(f, "[{x:?}, {y:?}] is not a derivation"),
            Witness::OperatorMismatch {
                identity,
                d,
                p,
                q,
                lhs,
                rhs,
            } => {
                write!(f, "{identity:?} at p=e{}", p + 1)?;
                if let Some(q) = q {
                    write!(f, ", q=e{}", q + 1)?;
                }
                if let Some(d) = d {
                    write!(f, ", d={d:?}")?;
                }
                write!(f, ": {lhs:?} != {rhs:?}")
            }
            Witness::CentralizerNotIdeal { ideal } => {
                write!(
                    f,
                    "ideal with basis {:?} has a centralizer that is not an ideal",
                    ideal.basis()
                )
            }
            Witness::QuasiDerivationEscape {
                combination, phi, d, ..
            } => {
                write!(f, "{combination:?} of phi={phi:?} and d={d:?} has no companion")
            }
            Witness::BracketLeavesAnnihilator { phi, psi, column } => {
                write!(f, "[{phi:?}, {psi:?}](e{}) is not in the annihilator", column + 1)
            }
            Witness::BracketNonzero { phi, psi, argument } => {
                let at = match argument {
                    Argument::Basis(j) => format!("e{}", j + 1),
                    Argument::Product(p, q) => format!("e{}e{}", p + 1, q + 1),
                };
                write!(f, "[{phi:?}, {psi:?}]({at}) != 0")
            }
            Witness::CentralizerNotInvariant { phi, element, .. } => {
                write!(
                    f,
                    "phi={phi:?} moves {} out of the centralizer",
                    ElementVector::new(element.clone())
                )
            }
            Witness::NonCentralIntersection { phi, companion } => {
                write!(f, "phi={phi:?} with companion {companion:?} is not central")
            }
            Witness::EquivalenceFails {
                equivalence,
                d,
                phi,
                left,
                right,
                ..
            } => {
                write!(
                    f,
                    "{equivalence:?} with d={d:?}, phi={phi:?}: left {left}, right {right}"
                )
            }
            Witness::CrossBlock { phi, p, q, .. } => {
                write!(f, "phi={phi:?} maps e{}e{} across factors", p + 1, q + 1)
            }
            Witness::CentralizerExcess { element, first, .. } => write!(
                f,
                "{} centralizes the {} factor but is not in the annihilator",
                ElementVector::new(element.clone()),
                if *first { "first" } else { "second" }
            ),
            Witness::CentralizerOverlap { element, .. } => {
                write!(
                    f,
                    "{} centralizes both factors",
                    ElementVector::new(element.clone())
                )
            }
        }
    }
}

fn check_derivation_bracket(sp: &SolvedSpaces) -> ClaimVerdict {
    let basis = sp.der.basis();
    let w = basis.iter().enumerate().find_map(|(i, x)| {
        basis[i + 1..]
            .iter()
            .find(|y| !sp.der.contains(&x.commutator(y)))
            .map(|y| Witness::DerivationBracket {
                x: x.clone(),
                y: y.clone(),
            })
    });
    ClaimVerdict::new("Prop2.6", w, "derivations closed under the commutator")
}

fn check_identity(
    a: &AlgebraPresentation,
    sp: &SolvedSpaces,
    id: &str,
    identity: OperatorIdentity,
) -> ClaimVerdict {
    let n = a.dim();
    let mut witness = None;
    match identity {
        OperatorIdentity::DerivationLeft | OperatorIdentity::DerivationRight => {
            'outer: for d in sp.der.basis() {
                for p in 0..n {
                    let (lhs, rhs) = identity_sides(a, identity, Some(&d), p, None).expect("valid input");
                    if lhs != rhs {
                        witness = Some(Witness::OperatorMismatch {
                            identity,
                            d: Some(d.clone()),
                            p,
                            q: None,
                            lhs,
                            rhs,
                        });
                        break 'outer;
                    }
                }
            }
        }
        _ => {
            'outer2: for p in 0..n {
                for q in 0..n {
                    let (lhs, rhs) = identity_sides(a, identity, None, p, Some(q)).expect("valid input");
                    if lhs != rhs {
                        witness = Some(Witness::OperatorMismatch {
                            identity,
                            d: None,
                            p,
                            q: Some(q),
                            lhs,
                            rhs,
                        });
                        break 'outer2;
                    }
                }
            }
        }
    }
    let note = match identity {
        OperatorIdentity::DerivationLeft => "[d, L_p] = L_{d(p)} for derivation basis d and basis p",
        OperatorIdentity::DerivationRight => "[d, R_p] = R_{d(p)} for derivation basis d and basis p",
        OperatorIdentity::LeftComposition => "L_{pq} = L_p L_q on basis pairs",
        OperatorIdentity::RightComposition => "R_{pq} = R_q R_p on basis pairs",
    };
    ClaimVerdict::new(id, witness, note)
}

fn check_centralizer_ideal(a: &AlgebraPresentation) -> ClaimVerdict {
    let n = a.dim();
    let mut candidates: Vec<Subspace> = power_chain(a, n + 1).terms;
    candidates.push(annihilator(a));
    candidates.retain(|s| is_ideal(a, s));
    candidates.dedup();
    let w = candidates
        .into_iter()
        .find(|ideal| centralizer(a, ideal).is_ok_and(|c| !c.is_ideal));
    ClaimVerdict::new(
        "Prop3.9",
        w.map(|ideal| Witness::CentralizerNotIdeal { ideal }),
        "centralizers of the ideals Z^t and C(Z) are ideals",
    )
}

fn check_qder_stability(sp: &SolvedSpaces, id: &str, combination: Combination) -> ClaimVerdict {
    let qder = sp.qder.projection();
    let mut witness = None;
    'outer: for phi in sp.qcentroid.basis() {
        for d in qder.basis() {
            if !qder.contains(&combine(combination, &phi, &d)) {
                witness = Some(Witness::QuasiDerivationEscape {
                    combination,
                    companion: sp.qder.companion_for(&d).expect("basis element"),
                    phi,
                    d,
                });
                break 'outer;
            }
        }
    }
    let note = match combination {
        Combination::Composition => "phi∘d is a quasi-derivation for phi in QΓ, d in QDer",
        Combination::Commutator => "[phi, d] is a quasi-derivation for phi in QΓ, d in QDer",
    };
    ClaimVerdict::new(id, witness, note)
}

fn check_qc_brackets(a: &AlgebraPresentation, sp: &SolvedSpaces) -> Vec<ClaimVerdict> {
    let n = a.dim();
    let ann = annihilator(a);
    let basis = sp.qcentroid.basis();
    let mut into_ann = None;
    let mut vanish = None;
    let mut vanish_on_square = None;
    for (i, phi) in basis.iter().enumerate() {
        for psi in &basis[i + 1..] {
            let br = phi.commutator(psi);
            if br.is_zero() {
                continue;
            }
            if into_ann.is_none() {
                if let Some(column) = (0..n).find(|&j| !ann.contains(&br.column(j))) {
                    into_ann = Some(Witness::BracketLeavesAnnihilator {
                        phi: phi.clone(),
                        psi: psi.clone(),
                        column,
                    });
                }
            }
            if vanish.is_none() {
                let j = (0..n).find(|&j| br.column(j).iter().any(|x| !x.is_zero()));
                vanish = j.map(|j| Witness::BracketNonzero {
                    phi: phi.clone(),
                    psi: psi.clone(),
                    argument: Argument::Basis(j),
                });
            }
            if vanish_on_square.is_none() {
                let hit = (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).find(|&(p, q)| {
                    br.mul_vec(&bracket_argument(a, Argument::Product(p, q)))
                        .iter()
                        .any(|x| !x.is_zero())
                });
                vanish_on_square = hit.map(|(p, q)| Witness::BracketNonzero {
                    phi: phi.clone(),
                    psi: psi.clone(),
                    argument: Argument::Product(p, q),
                });
            }
        }
    }
    vec![
        ClaimVerdict::new("Lemma3.14.3a", into_ann, "[QΓ, QΓ](Z) lies in the annihilator"),
        ClaimVerdict::new("Lemma3.14.3b", vanish, "[QΓ, QΓ] vanishes on Z¹ = Z"),
        ClaimVerdict::new(
            "Lemma3.14.3b.Z2",
            vanish_on_square,
            "[QΓ, QΓ] vanishes on Z² (reading Z¹ as the square)",
        ),
    ]
}

fn check_centralizer_invariance(a: &AlgebraPresentation, sp: &SolvedSpaces) -> ClaimVerdict {
    let n = a.dim();
    let mut subsets: Vec<Subspace> = (0..n)
        .map(|k| Subspace::span(n, [basis_vec(n, k)]).expect("length n"))
        .collect();
    subsets.extend(power_chain(a, 1).terms.into_iter().skip(1));
    subsets.push(Subspace::full(n));
    let phis = sp.qcentroid.basis();
    let mut witness = None;
    'outer: for w in subsets {
        let c = centralizer(a, &w).expect("same dimension").space;
        for phi in &phis {
            for element in c.basis() {
                if !c.contains(&phi.mul_vec(element)) {
                    witness = Some(Witness::CentralizerNotInvariant {
                        w: w.clone(),
                        phi: phi.clone(),
                        element: element.clone(),
                    });
                    break 'outer;
                }
            }
        }
    }
    ClaimVerdict::new(
        "Lemma3.14.4",
        witness,
        "C_Z(W) is QΓ-invariant for W = {e_k}, Z², Z",
    )
}

fn check_central_intersection(a: &AlgebraPresentation, sp: &SolvedSpaces) -> ClaimVerdict {
    let n = a.dim();
    let inter = sp
        .qcentroid
        .subspace()
        .intersection(sp.qder.projection().subspace())
        .expect("same ambient space");
    if &inter == sp.cder.subspace() {
        return ClaimVerdict::new("Prop3.12.1", None, "C_d = QΓ ∩ QDer");
    }
    // prefer the identity, whose companion 2·id is known in closed form
    let id = MatrixQ::identity(n);
    let two = Scalar::one() + Scalar::one();
    let witness = if inter.contains(&vectorize(&id)) && !sp.cder.contains(&id) {
        Witness::NonCentralIntersection {
            companion: id.scale(&two),
            phi: id,
        }
    } else {
        let v = inter
            .basis()
            .iter()
            .find(|v| !sp.cder.subspace().contains(v))
            .expect("C_d is contained in the intersection");
        let phi = unvectorize(n, v);
        Witness::NonCentralIntersection {
            companion: sp.qder.companion_for(&phi).expect("member of QDer"),
            phi,
        }
    };
    ClaimVerdict::new(
        "Prop3.12.1",
        Some(witness),
        format!(
            "C_d = QΓ ∩ QDer; dim C_d = {}, dim QΓ ∩ QDer = {}",
            sp.cder.dim(),
            inter.dim()
        ),
    )
}

fn check_equivalence(a: &AlgebraPresentation, sp: &SolvedSpaces, id: &str, eq: Equivalence) -> ClaimVerdict {
    let mut witness = None;
    'outer: for d in sp.qder.projection().basis() {
        for phi in sp.qcentroid.basis() {
            let (left, right) = equivalence_sides(a, eq, &d, &phi);
            if left != right {
                witness = Some(Witness::EquivalenceFails {
                    equivalence: eq,
                    companion: sp.qder.companion_for(&d).expect("basis element"),
                    d,
                    phi,
                    left,
                    right,
                });
                break 'outer;
            }
        }
    }
    let note = match eq {
        Equivalence::ProductInQuasiCentroid => "dφ ∈ QΓ iff φd ∈ C_d, on basis elements",
        Equivalence::ProductInQuasiDerivations => "dφ ∈ QDer iff [d, φ] ∈ C_d, on basis elements",
    };
    ClaimVerdict::new(id, witness, note)
}

/// All claim checks for one algebra, ordered by claim id.
pub fn reconcile_claims(a: &AlgebraPresentation) -> Vec<ClaimVerdict> {
    reconcile_claims_with(a, &SolvedSpaces::solve(a))
}

pub fn reconcile_claims_with(a: &AlgebraPresentation, sp: &SolvedSpaces) -> Vec<ClaimVerdict> {
    let mut out = vec![
        check_derivation_bracket(sp),
        check_identity(a, sp, "Prop2.7.L", OperatorIdentity::DerivationLeft),
        check_identity(a, sp, "Prop2.7.R", OperatorIdentity::DerivationRight),
        check_identity(a, sp, "Lemma2.8.L", OperatorIdentity::LeftComposition),
        check_identity(a, sp, "Lemma2.8.R", OperatorIdentity::RightComposition),
        check_centralizer_ideal(a),
        check_qder_stability(sp, "Lemma3.14.1", Combination::Composition),
        check_qder_stability(sp, "Lemma3.14.2", Combination::Commutator),
        check_centralizer_invariance(a, sp),
        check_central_intersection(a, sp),
        check_equivalence(a, sp, "Prop3.12.2", Equivalence::ProductInQuasiCentroid),
        check_equivalence(a, sp, "Prop3.12.3", Equivalence::ProductInQuasiDerivations),
    ];
    out.extend(check_qc_brackets(a, sp));
    out.sort_by(|x, y| x.claim_id.cmp(&y.claim_id));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{int, ratio};

    fn z21() -> AlgebraPresentation {
        let mut a = AlgebraPresentation::zero("Z2^1", 2);
        a.set_constant(0, 0, 1, int(1)).unwrap();
        a
    }

    fn z37() -> AlgebraPresentation {
        let mut a = AlgebraPresentation::zero("Z3^7", 3);
        a.set_constant(0, 0, 1, int(1)).unwrap();
        a.set_constant(0, 1, 2, ratio(1, 2)).unwrap();
        a.set_constant(1, 0, 2, int(1)).unwrap();
        a
    }

    fn find<'a>(v: &'a [ClaimVerdict], id: &str) -> &'a ClaimVerdict {
        v.iter().find(|c| c.claim_id == id).unwrap()
    }

    #[test]
    fn identity_map_is_a_non_central_member_of_the_intersection() {
        let a = z21();
        let v = reconcile_claims(&a);
        let c = find(&v, "Prop3.12.1");
        assert!(!c.holds);
        let id = MatrixQ::identity(2);
        assert_eq!(
            c.counterexample,
            Some(Witness::NonCentralIntersection {
                phi: id.clone(),
                companion: id.scale(&int(2))
            })
        );
        assert!(c.reverify(&a));
    }

    #[test]
    fn abelian_algebra_fails_only_the_vanishing_bracket() {
        // QΓ is all of gl3, so brackets are nonzero on Z but Z² = 0
        let a = AlgebraPresentation::zero("Z3^1", 3);
        for c in reconcile_claims(&a) {
            assert_eq!(c.holds, c.claim_id != "Lemma3.14.3b", "{}", c.claim_id);
            assert!(c.reverify(&a));
        }
    }

    #[test]
    fn derivation_identities_hold_and_composition_identities_fail() {
        let a = z37();
        let v = reconcile_claims(&a);
        assert!(find(&v, "Prop2.6").holds);
        assert!(find(&v, "Prop2.7.L").holds);
        assert!(find(&v, "Prop2.7.R").holds);
        for id in ["Lemma2.8.L", "Lemma2.8.R"] {
            let c = find(&v, id);
            assert!(!c.holds);
            assert!(c.reverify(&a));
        }
    }

    #[test]
    fn every_counterexample_reverifies() {
        for a in [z21(), z37()] {
            for c in reconcile_claims(&a) {
                assert!(c.reverify(&a), "{}", c.claim_id);
            }
        }
    }

    #[test]
    fn verdicts_are_sorted_by_id() {
        let v = reconcile_claims(&z21());
        let ids: Vec<&str> = v.iter().map(|c| c.claim_id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        assert_eq!(ids.len(), 15);
    }

    #[test]
    fn tampered_witness_does_not_reverify() {
        let a = z21();
        let w = Witness::NonCentralIntersection {
            phi: MatrixQ::identity(2),
            companion: MatrixQ::identity(2),
        };
        assert!(!w.reverify(&a));
    }
}
