//! Finite-dimensional algebras given by structure constants.
//!
//! Indices are 0-based throughout the library; `e_i` in comments and in all
//! rendered output is 1-based.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::linear::{LinearSystem, MatrixQ, Scalar, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure tensor has {found} entries, expected {expected}")]
    TensorSize { expected: usize, found: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// An algebra on basis `e_1..e_n`, with `e_i e_j = Σ_k γ_ij^k e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    name: String,
    dim: usize,
    gamma: Vec<Scalar>,
    params: BTreeMap<String, Scalar>,
    // nonzero part of e_i e_j, indexed by i * dim + j
    table: Vec<Vec<(usize, Scalar)>>,
}

impl fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim)?;
        for (i, j, k, c) in self.nonzero_constants() {
            write!(f, " e{}e{}:{}e{}", i + 1, j + 1, c, k + 1)?;
        }
        Ok(())
    }
}

impl AlgebraPresentation {
    /// The algebra with all products zero.
    pub fn zero(name: impl Into<String>, dim: usize) -> Self {
        Self {
            name: name.into(),
            dim,
            gamma: vec![Scalar::zero(); dim * dim * dim],
            params: BTreeMap::new(),
            table: vec![Vec::new(); dim * dim],
        }
    }

    /// `gamma[(i * n + j) * n + k]` is `γ_ij^k`.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        gamma: Vec<Scalar>,
        params: BTreeMap<String, Scalar>,
    ) -> Result<Self, AlgebraError> {
        let expected = dim * dim * dim;
        if gamma.len() != expected {
            return Err(AlgebraError::TensorSize {
                expected,
                found: gamma.len(),
            });
        }
        let mut a = Self::zero(name, dim);
        a.gamma = gamma;
        a.params = params;
        a.rebuild_table();
        Ok(a)
    }

    /// Sets `γ_ij^k` (0-based).
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, value: Scalar) -> Result<(), AlgebraError> {
        for index in [i, j, k] {
            if index >= self.dim {
                return Err(AlgebraError::IndexOutOfRange { index, dim: self.dim });
            }
        }
        let n = self.dim;
        self.gamma[(i * n + j) * n + k] = value;
        self.table[i * n + j] = self.row_terms(i, j);
        Ok(())
    }

    pub fn with_param(mut self, name: impl Into<String>, value: Scalar) -> Self {
        self.params.insert(name.into(), value);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn row_terms(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        let n = self.dim;
        (0..n)
            .filter_map(|k| {
                let c = &self.gamma[(i * n + j) * n + k];
                (!c.is_zero()).then(|| (k, c.clone()))
            })
            .collect()
    }

    fn rebuild_table(&mut self) {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                self.table[i * n + j] = self.row_terms(i, j);
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gamma(&self) -> &[Scalar] {
        &self.gamma
    }

    pub fn params(&self) -> &BTreeMap<String, Scalar> {
        &self.params
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim;
        &self.gamma[(i * n + j) * n + k]
    }

    /// Nonzero terms of `e_i e_j` as `(k, γ_ij^k)`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    /// All nonzero `γ_ij^k` in lexicographic `(i, j, k)` order.
    pub fn nonzero_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        let n = self.dim;
        self.table
            .iter()
            .enumerate()
            .flat_map(move |(ij, terms)| terms.iter().map(move |(k, c)| (ij / n, ij % n, *k, c)))
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    /// Product of coordinate vectors; lengths are not checked.
    pub(crate) fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let terms = &self.table[i * n + j];
                if terms.is_empty() {
                    continue;
                }
                let xy = xi * yj;
                for (k, c) in terms {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    /// `e_i · y`.
    pub(crate) fn left_basis_mul(&self, i: usize, y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (k, c) in &self.table[i * n + j] {
                out[*k] += yj * c;
            }
        }
        out
    }

    /// `x · e_j`.
    pub(crate) fn right_basis_mul(&self, x: &[Scalar], j: usize) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (k, c) in &self.table[i * n + j] {
                out[*k] += xi * c;
            }
        }
        out
    }
}

/// Coordinates of an element in the basis `e_1..e_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementVector {
    coords: Vec<Scalar>,
}

impl ElementVector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Self { coords }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Scalar::zero(); n])
    }

    /// The basis vector `e_{i+1}`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.coords[i] = Scalar::from_integer(1.into());
        v
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for ElementVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c} e{}", i + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn check_len(a: &AlgebraPresentation, v: &ElementVector) -> Result<(), AlgebraError> {
    if v.dim() != a.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: a.dim(),
            found: v.dim(),
        });
    }
    Ok(())
}

pub fn multiply(
    a: &AlgebraPresentation,
    x: &ElementVector,
    y: &ElementVector,
) -> Result<ElementVector, AlgebraError> {
    check_len(a, x)?;
    check_len(a, y)?;
    Ok(ElementVector::new(a.mul_coords(&x.coords, &y.coords)))
}

/// First basis triple violating `(pq)r = p(qr) + p(rq)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZinbielWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `(e_i e_j)e_k − e_i(e_j e_k) − e_i(e_k e_j)`
    pub defect: ElementVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZinbielCheck {
    pub holds: bool,
    pub witness: Option<ZinbielWitness>,
}

/// The Zinbiel defect on one basis triple.
pub fn zinbiel_defect(a: &AlgebraPresentation, i: usize, j: usize, k: usize) -> ElementVector {
    let n = a.dim();
    let mut out = vec![Scalar::zero(); n];
    for (m, c) in a.basis_product(i, j) {
        for (t, d) in a.basis_product(*m, k) {
            out[*t] += c * d;
        }
    }
    for (m, c) in a.basis_product(j, k).iter().chain(a.basis_product(k, j)) {
        for (t, d) in a.basis_product(i, *m) {
            out[*t] -= c * d;
        }
    }
    ElementVector::new(out)
}

/// Exhaustive check over all `n³` basis triples in lexicographic order.
pub fn check_zinbiel(a: &AlgebraPresentation) -> ZinbielCheck {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let defect = zinbiel_defect(a, i, j, k);
                if !defect.is_zero() {
                    return ZinbielCheck {
                        holds: false,
                        witness: Some(ZinbielWitness { i, j, k, defect }),
                    };
                }
            }
        }
    }
    ZinbielCheck {
        holds: true,
        witness: None,
    }
}

/// `Z = Z¹, Z^{t+1} = Z·Z^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerChain {
    pub terms: Vec<Subspace>,
    /// Smallest `s` with `Z^s = 0`.
    pub nil_index: Option<usize>,
}

impl PowerChain {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn is_decreasing(&self) -> bool {
        self.terms.windows(2).all(|w| w[1].is_subspace_of(&w[0]))
    }
}

/// Computes terms until one is zero, one repeats, or `max_steps` products
/// have been taken.
pub fn power_chain(a: &AlgebraPresentation, max_steps: usize) -> PowerChain {
    let n = a.dim();
    let mut terms = vec![Subspace::full(n)];
    if n == 0 {
        return PowerChain {
            terms,
            nil_index: Some(1),
        };
    }
    for _ in 0..max_steps.max(1) {
        let prev = terms.last().expect("chain starts with Z");
        let vectors: Vec<Vec<Scalar>> = (0..n)
            .flat_map(|i| prev.basis().iter().map(move |y| a.left_basis_mul(i, y)))
            .collect();
        let next = Subspace::span(n, vectors).expect("vectors have length n");
        let stable = &next == prev;
        let zero = next.dim() == 0;
        terms.push(next);
        if zero {
            let s = terms.len();
            return PowerChain {
                terms,
                nil_index: Some(s),
            };
        }
        if stable {
            break;
        }
    }
    PowerChain {
        terms,
        nil_index: None,
    }
}

/// `C(Z) = {p : pZ = Zp = 0}`.
pub fn annihilator(a: &AlgebraPresentation) -> Subspace {
    centralizer_space(a, &Subspace::full(a.dim()))
}

fn centralizer_space(a: &AlgebraPresentation, ideal: &Subspace) -> Subspace {
    let n = a.dim();
    let mut sys = LinearSystem::new(n);
    for u in ideal.basis() {
        // p·u = 0 and u·p = 0, linear in the coordinates of p
        let mut left: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        let mut right: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for i in 0..n {
            for (k, c) in a.left_basis_mul(i, u).into_iter().enumerate() {
                if !c.is_zero() {
                    left[k].push((i, c));
                }
            }
            for (k, c) in a.right_basis_mul(u, i).into_iter().enumerate() {
                if !c.is_zero() {
                    right[k].push((i, c));
                }
            }
        }
        for row in left.into_iter().chain(right) {
            sys.push_row(row);
        }
    }
    sys.nullspace()
}

/// Whether `s` is closed under multiplication by `Z` on both sides.
pub fn is_ideal(a: &AlgebraPresentation, s: &Subspace) -> bool {
    s.basis().iter().all(|v| {
        (0..a.dim()).all(|i| s.contains(&a.left_basis_mul(i, v)) && s.contains(&a.right_basis_mul(v, i)))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Centralizer {
    pub space: Subspace,
    pub input_is_ideal: bool,
    /// Checked on every call, not inferred from `input_is_ideal`.
    pub is_ideal: bool,
}

/// `C_Z(I) = {p : pI = Ip = 0}`.
pub fn centralizer(a: &AlgebraPresentation, i: &Subspace) -> Result<Centralizer, AlgebraError> {
    if i.ambient_dim() != a.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: a.dim(),
            found: i.ambient_dim(),
        });
    }
    let space = centralizer_space(a, i);
    Ok(Centralizer {
        input_is_ideal: is_ideal(a, i),
        is_ideal: is_ideal(a, &space),
        space,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `L_p(q) = p·q`
    Left,
    /// `R_p(q) = q·p`
    Right,
}

/// Matrix of `L_p` or `R_p`; column `j` is the image of `e_j`.
pub fn mult_operator(
    a: &AlgebraPresentation,
    p: &ElementVector,
    side: Side,
) -> Result<MatrixQ, AlgebraError> {
    check_len(a, p)?;
    let n = a.dim();
    let columns: Vec<Vec<Scalar>> = (0..n)
        .map(|j| match side {
            Side::Left => a.right_basis_mul(&p.coords, j),
            Side::Right => a.left_basis_mul(j, &p.coords),
        })
        .collect();
    Ok(MatrixQ::from_fn(n, n, |i, j| columns[j][i].clone()))
}

/// `A ⊕ B` with `A` on the first `dim A` basis vectors and zero cross products.
pub fn direct_sum(a: &AlgebraPresentation, b: &AlgebraPresentation) -> AlgebraPresentation {
    let (na, nb) = (a.dim(), b.dim());
    let mut out = AlgebraPresentation::zero(format!("{} ⊕ {}", a.name(), b.name()), na + nb);
    for (i, j, k, c) in a.nonzero_constants() {
        out.set_constant(i, j, k, c.clone()).expect("in range");
    }
    for (i, j, k, c) in b.nonzero_constants() {
        out.set_constant(na + i, na + j, na + k, c.clone())
            .expect("in range");
    }
    for (key, v) in a.params() {
        out.params.insert(key.clone(), v.clone());
    }
    for (key, v) in b.params() {
        let key = if out.params.contains_key(key) {
            format!("{key}'")
        } else {
            key.clone()
        };
        out.params.insert(key, v.clone());
    }
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

    fn e(n: usize, i: usize) -> ElementVector {
        ElementVector::basis(n, i)
    }

    #[test]
    fn products_of_basis_vectors() {
        let a = z21();
        assert_eq!(multiply(&a, &e(2, 0), &e(2, 0)).unwrap(), e(2, 1));
        assert!(multiply(&a, &e(2, 0), &e(2, 1)).unwrap().is_zero());
        let b = z37();
        assert_eq!(
            multiply(&b, &e(3, 0), &e(3, 1)).unwrap(),
            ElementVector::new(vec![int(0), int(0), ratio(1, 2)])
        );
        assert!(multiply(&a, &e(3, 0), &e(2, 0)).is_err());
    }

    #[test]
    fn zinbiel_check_and_witness() {
        assert!(check_zinbiel(&z21()).holds);
        assert!(check_zinbiel(&z37()).holds);
        let mut bad = AlgebraPresentation::zero("idempotent", 1);
        bad.set_constant(0, 0, 0, int(1)).unwrap();
        let c = check_zinbiel(&bad);
        assert!(!c.holds);
        let w = c.witness.unwrap();
        assert_eq!((w.i, w.j, w.k), (0, 0, 0));
        assert_eq!(w.defect, ElementVector::new(vec![int(-1)]));
    }

    #[test]
    fn power_chains() {
        let abelian = AlgebraPresentation::zero("Z3^1", 3);
        let pc = power_chain(&abelian, 10);
        assert_eq!(pc.dims(), vec![3, 0]);
        assert_eq!(pc.nil_index, Some(2));
        let pc = power_chain(&z21(), 10);
        assert_eq!(pc.dims(), vec![2, 1, 0]);
        assert_eq!(pc.nil_index, Some(3));
        assert!(pc.is_decreasing());
        assert_eq!(power_chain(&z37(), 10).nil_index, Some(4));
    }

    #[test]
    fn chain_stops_on_stabilization() {
        let mut a = AlgebraPresentation::zero("idempotent", 1);
        a.set_constant(0, 0, 0, int(1)).unwrap();
        let pc = power_chain(&a, 10);
        assert_eq!(pc.dims(), vec![1, 1]);
        assert_eq!(pc.nil_index, None);
    }

    #[test]
    fn annihilators() {
        assert_eq!(annihilator(&AlgebraPresentation::zero("Z3^1", 3)).dim(), 3);
        let ann = annihilator(&z21());
        assert_eq!(ann.basis(), &[vec![int(0), int(1)]]);
        let ann = annihilator(&z37());
        assert_eq!(ann.basis(), &[vec![int(0), int(0), int(1)]]);
    }

    #[test]
    fn centralizers() {
        let a = z21();
        let c = centralizer(&a, &Subspace::zero(2)).unwrap();
        assert_eq!(c.space, Subspace::full(2));
        let e1 = Subspace::span(2, [vec![int(1), int(0)]]).unwrap();
        let c = centralizer(&a, &e1).unwrap();
        assert_eq!(c.space.basis(), &[vec![int(0), int(1)]]);
        assert!(!c.input_is_ideal);
        assert!(c.is_ideal);
        let full = centralizer(&a, &Subspace::full(2)).unwrap();
        assert_eq!(full.space, annihilator(&a));
        assert!(centralizer(&a, &Subspace::zero(3)).is_err());
    }

    #[test]
    fn multiplication_operators() {
        let l = mult_operator(&z21(), &e(2, 0), Side::Left).unwrap();
        assert_eq!(l, MatrixQ::from_i64(&[&[0, 0], &[1, 0]]));
        let l = mult_operator(&z37(), &e(3, 0), Side::Left).unwrap();
        assert_eq!(l.column(0), vec![int(0), int(1), int(0)]);
        assert_eq!(l.column(1), vec![int(0), int(0), ratio(1, 2)]);
        assert!(l.column(2).iter().all(Zero::is_zero));
        let r = mult_operator(&z37(), &e(3, 0), Side::Right).unwrap();
        assert_eq!(r.column(1), vec![int(0), int(0), int(1)]);
        assert!(mult_operator(&z37(), &ElementVector::zero(3), Side::Right)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn direct_sums() {
        let s = direct_sum(&z21(), &z21());
        assert_eq!(s.dim(), 4);
        let consts: Vec<_> = s.nonzero_constants().map(|(i, j, k, _)| (i, j, k)).collect();
        assert_eq!(consts, vec![(0, 0, 1), (2, 2, 3)]);
        let s = direct_sum(&z21(), &AlgebraPresentation::zero("Z3^1", 3));
        assert_eq!(s.dim(), 5);
        assert_eq!(annihilator(&s).dim(), 4);
        assert!(check_zinbiel(&s).holds);
        let t = direct_sum(&z37(), &AlgebraPresentation::zero("k", 1));
        assert_eq!(t.nonzero_constants().count(), 3);
    }

    #[test]
    fn wrong_tensor_size_rejected() {
        let err = AlgebraPresentation::new("x", 2, vec![int(0); 7], BTreeMap::new()).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::TensorSize {
                expected: 8,
                found: 7
            }
        );
    }
}
