//! Quasi-centroid and centralizers of a direct sum `A ⊕ B`, compared with
//! block decompositions built from the factors.

use std::fmt;

use num_traits::Zero;

use super::claims::{ClaimVerdict, Witness};
use super::{annihilates, basis_vec, centralizes};
use crate::algebra::{annihilator, centralizer, direct_sum, AlgebraPresentation};
use crate::linear::{nullspace, MatrixQ, Scalar, Subspace};
use crate::solver::{solve_space, vectorize, SpaceKind};

/// Which maps between the factors are admitted as cross blocks. In every
/// reading a cross map sends one factor into the annihilator of the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossReading {
    /// The map vanishes on the square of its source.
    KillSourceSquare,
    /// The map vanishes on its whole source, so no cross blocks survive.
    KillSource,
    /// No condition beyond landing in the annihilator.
    AnnihilatorOnly,
}

impl CrossReading {
    pub const ALL: [CrossReading; 3] = [
        CrossReading::KillSourceSquare,
        CrossReading::KillSource,
        CrossReading::AnnihilatorOnly,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            CrossReading::KillSourceSquare => "kill-source-square",
            CrossReading::KillSource => "kill-source",
            CrossReading::AnnihilatorOnly => "annihilator-only",
        }
    }
}

impl fmt::Display for CrossReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadingResult {
    pub reading: CrossReading,
    pub rhs_dim: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSumCheck {
    /// `dim QΓ(A ⊕ B)`, solved directly.
    pub lhs_dim: usize,
    pub readings: Vec<ReadingResult>,
    /// Holds iff the kill-source-square or kill-source reading matches.
    pub verdict: ClaimVerdict,
}

/// Span of all products `e_p e_q`.
fn square(a: &AlgebraPresentation) -> Subspace {
    let n = a.dim();
    let products = (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).map(|(p, q)| {
        let mut v = vec![Scalar::zero(); n];
        for (k, c) in a.basis_product(p, q) {
            v[*k] = c.clone();
        }
        v
    });
    Subspace::span(n, products).expect("length n")
}

/// Functionals (as coordinate vectors) vanishing on `s`.
fn annihilating_functionals(s: &Subspace) -> Vec<Vec<Scalar>> {
    let n = s.ambient_dim();
    if s.dim() == 0 {
        return (0..n).map(|k| basis_vec(n, k)).collect();
    }
    let m = MatrixQ::from_rows(s.basis().to_vec()).expect("rectangular");
    nullspace(&m).into_basis()
}

/// `n×n` matrix with the `rows×cols` block `m` at `(r0, c0)`.
fn embed(n: usize, m: &MatrixQ, r0: usize, c0: usize) -> MatrixQ {
    let mut out = MatrixQ::zeros(n, n);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(r0 + i, c0 + j, m.get(i, j).clone());
        }
    }
    out
}

/// Outer products `c fᵀ` for `c` in the target space and `f` in `functionals`.
fn cross_block(
    n: usize,
    target: &Subspace,
    functionals: &[Vec<Scalar>],
    r0: usize,
    c0: usize,
) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for c in target.basis() {
        for f in functionals {
            let m = MatrixQ::from_fn(c.len(), f.len(), |i, j| &c[i] * &f[j]);
            out.push(vectorize(&embed(n, &m, r0, c0)));
        }
    }
    out
}

fn rhs(a: &AlgebraPresentation, b: &AlgebraPresentation, reading: CrossReading) -> Subspace {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    for m in solve_space(a, SpaceKind::QuasiCentroid).basis() {
        gens.push(vectorize(&embed(n, &m, 0, 0)));
    }
    for m in solve_space(b, SpaceKind::QuasiCentroid).basis() {
        gens.push(vectorize(&embed(n, &m, na, na)));
    }
    let sources = |x: &AlgebraPresentation| match reading {
        CrossReading::KillSourceSquare => annihilating_functionals(&square(x)),
        CrossReading::KillSource => Vec::new(),
        CrossReading::AnnihilatorOnly => annihilating_functionals(&Subspace::zero(x.dim())),
    };
    // A → C(B) sits in rows na.., columns ..na
    gens.extend(cross_block(n, &annihilator(b), &sources(a), na, 0));
    gens.extend(cross_block(n, &annihilator(a), &sources(b), 0, na));
    Subspace::span(n * n, gens).expect("length n²")
}

/// A basis element of the direct quasi-centroid sending some product inside
/// one factor to a vector with a component in the other factor.
fn cross_witness(sum: &AlgebraPresentation, split: usize, basis: &[MatrixQ]) -> Option<Witness> {
    let n = sum.dim();
    for phi in basis {
        for p in 0..n {
            for q in 0..n {
                if (p < split) != (q < split) {
                    continue;
                }
                let image = phi.mul_vec(&sum.mul_coords(&basis_vec(n, p), &basis_vec(n, q)));
                let other = if p < split { split..n } else { 0..split };
                if other.into_iter().any(|k| !image[k].is_zero()) {
                    return Some(Witness::CrossBlock {
                        split,
                        phi: phi.clone(),
                        p,
                        q,
                    });
                }
            }
        }
    }
    None
}

/// Compares `QΓ(A ⊕ B)` with `QΓ(A) ⊕ QΓ(B) ⊕ C₁ ⊕ C₂` under each
/// [`CrossReading`].
pub fn direct_sum_theorem_check(a: &AlgebraPresentation, b: &AlgebraPresentation) -> DirectSumCheck {
    let sum = direct_sum(a, b);
    let lhs = solve_space(&sum, SpaceKind::QuasiCentroid);
    let readings: Vec<ReadingResult> = CrossReading::ALL
        .iter()
        .map(|&reading| {
            let r = rhs(a, b, reading);
            ReadingResult {
                reading,
                rhs_dim: r.dim(),
                equal: &r == lhs.subspace(),
            }
        })
        .collect();
    let matching: Vec<String> = readings
        .iter()
        .filter(|r| r.equal)
        .map(|r| r.reading.to_string())
        .collect();
    let printed_match = readings
        .iter()
        .any(|r| r.equal && r.reading != CrossReading::AnnihilatorOnly);
    let dims: Vec<String> = readings
        .iter()
        .map(|r| format!("{} {}", r.reading, r.rhs_dim))
        .collect();
    let note = format!(
        "{}: dim QΓ = {}; rhs dims: {}; matching: {}",
        sum.name(),
        lhs.dim(),
        dims.join(", "),
        if matching.is_empty() {
            "none".to_string()
        } else {
            matching.join(", ")
        }
    );
    let counterexample = if printed_match {
        None
    } else {
        cross_witness(&sum, a.dim(), &lhs.basis())
    };
    let verdict = ClaimVerdict {
        claim_id: "Thm3.15".to_string(),
        holds: printed_match,
        counterexample,
        note,
    };
    DirectSumCheck {
        lhs_dim: lhs.dim(),
        readings,
        verdict,
    }
}

/// Centralizers in `A ⊕ B`: two verdicts, first `C(Z) = C_Z(U) ⊕ C_Z(V)`
/// with `U = A`, `V = B`, then `C(Z) = C(A) ⊕ C(B)`.
pub fn direct_sum_centralizer_check(a: &AlgebraPresentation, b: &AlgebraPresentation) -> Vec<ClaimVerdict> {
    let sum = direct_sum(a, b);
    let n = sum.dim();
    let split = a.dim();
    let u = Subspace::span(n, (0..split).map(|k| basis_vec(n, k))).expect("length n");
    let v = Subspace::span(n, (split..n).map(|k| basis_vec(n, k))).expect("length n");
    let cu = centralizer(&sum, &u).expect("same dimension").space;
    let cv = centralizer(&sum, &v).expect("same dimension").space;
    let ann = annihilator(&sum);

    let overlap = cu.intersection(&cv).expect("same ambient");
    let printed = if let Some(e) = overlap.basis().first() {
        Some(Witness::CentralizerOverlap {
            split,
            element: e.clone(),
        })
    } else {
        [(&cu, true), (&cv, false)].into_iter().find_map(|(c, first)| {
            c.basis()
                .iter()
                .find(|e| !annihilates(&sum, e))
                .map(|e| Witness::CentralizerExcess {
                    split,
                    first,
                    element: e.clone(),
                })
        })
    };

    let mut factors = Vec::new();
    for k in annihilator(a).basis() {
        let mut e = k.clone();
        e.resize(n, Scalar::zero());
        factors.push(e);
    }
    for k in annihilator(b).basis() {
        let mut e = vec![Scalar::zero(); split];
        e.extend(k.iter().cloned());
        factors.push(e);
    }
    let block = Subspace::span(n, factors).expect("length n");
    // block ⊆ C(Z) always; any extra element of C(Z) would centralize both
    // factors without lying in either factor's annihilator
    let ann_form = ann
        .basis()
        .iter()
        .find(|e| !block.contains(e))
        .map(|e| Witness::CentralizerOverlap {
            split,
            element: e.clone(),
        });
    debug_assert!(block.is_subspace_of(&ann));
    debug_assert!(ann
        .basis()
        .iter()
        .all(|e| centralizes(&sum, e, (0..n).map(|k| basis_vec(n, k)))));

    vec![
        ClaimVerdict {
            claim_id: "Lemma3.10".to_string(),
            holds: printed.is_none(),
            note: format!(
                "{}: C(Z) = C_Z(U) ⊕ C_Z(V); dims {} vs {} + {} with overlap {}",
                sum.name(),
                ann.dim(),
                cu.dim(),
                cv.dim(),
                overlap.dim()
            ),
            counterexample: printed,
        },
        ClaimVerdict {
            claim_id: "Lemma3.10.ann".to_string(),
            holds: ann_form.is_none(),
            note: format!(
                "{}: C(Z) = C(U) ⊕ C(V); dims {} vs {}",
                sum.name(),
                ann.dim(),
                block.dim()
            ),
            counterexample: ann_form,
        },
    ]
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

    fn dims(c: &DirectSumCheck) -> Vec<(CrossReading, usize, bool)> {
        c.readings
            .iter()
            .map(|r| (r.reading, r.rhs_dim, r.equal))
            .collect()
    }

    #[test]
    fn abelian_sum_matches_the_square_reading() {
        let z = AlgebraPresentation::zero("Z3^1", 3);
        let c = direct_sum_theorem_check(&z, &z);
        assert_eq!(c.lhs_dim, 36);
        assert_eq!(
            dims(&c),
            vec![
                (CrossReading::KillSourceSquare, 36, true),
                (CrossReading::KillSource, 18, false),
                (CrossReading::AnnihilatorOnly, 36, true),
            ]
        );
        assert!(c.verdict.holds);
    }

    #[test]
    fn z21_twice_needs_the_annihilator_reading() {
        // QΓ(Z2^1) is 3-dim; each cross block is Hom(k², C) with C = span{e2}
        let a = z21();
        let c = direct_sum_theorem_check(&a, &a);
        assert_eq!(c.lhs_dim, 10);
        assert_eq!(
            dims(&c),
            vec![
                (CrossReading::KillSourceSquare, 8, false),
                (CrossReading::KillSource, 6, false),
                (CrossReading::AnnihilatorOnly, 10, true),
            ]
        );
        assert!(!c.verdict.holds);
        assert!(c.verdict.reverify(&direct_sum(&a, &a)));
        assert!(c.verdict.counterexample.is_some());
    }

    #[test]
    fn zero_factor_degenerate_cross_blocks() {
        let c = direct_sum_theorem_check(&z21(), &AlgebraPresentation::zero("k", 1));
        assert!(c
            .readings
            .iter()
            .any(|r| r.reading == CrossReading::AnnihilatorOnly && r.equal));
        assert_eq!(c.lhs_dim, c.readings[2].rhs_dim);
    }

    #[test]
    fn centralizer_forms() {
        let a = z21();
        let v = direct_sum_centralizer_check(&a, &a);
        assert_eq!(v[0].claim_id, "Lemma3.10");
        assert!(!v[0].holds);
        assert!(v[0].reverify(&direct_sum(&a, &a)));
        assert_eq!(v[1].claim_id, "Lemma3.10.ann");
        assert!(v[1].holds);
    }
}
