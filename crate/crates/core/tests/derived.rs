//! Recomputed example values checked against a brute-force oracle that
//! shares no code with the library: dense structure tensors, its own
//! product, and its own fraction-exact elimination.

use std::collections::BTreeMap;

use zinbiel_core::algebra::{
    annihilator, centralizer, check_zinbiel, direct_sum, power_chain, AlgebraPresentation,
};
use zinbiel_core::catalog::{catalog, reconcile_catalog, CatalogSelection, Table};
use zinbiel_core::linear::{int, MatrixQ, Scalar, Subspace};
use zinbiel_core::solver::{
    solve_quasi_derivations, solve_space, verify_member, MemberKind, SolvedSpaces, SpaceKind,
};
use zinbiel_core::theory::{
    direct_sum_theorem_check, lie_closure, quasi_char_nilpotent, reconcile_claims, smallness,
};

type Q = Scalar;

fn zero() -> Q {
    int(0)
}

/// Dense `γ[i][j][k]`.
struct Oracle {
    n: usize,
    g: Vec<Vec<Vec<Q>>>,
}

impl Oracle {
    fn new(n: usize, products: &[(usize, usize, usize, Q)]) -> Self {
        let mut g = vec![vec![vec![zero(); n]; n]; n];
        for (i, j, k, c) in products {
            g[*i][*j][*k] = c.clone();
        }
        Self { n, g }
    }

    fn of(a: &AlgebraPresentation) -> Self {
        let products: Vec<_> = a
            .nonzero_constants()
            .map(|(i, j, k, c)| (i, j, k, c.clone()))
            .collect();
        Self::new(a.dim(), &products)
    }

    fn catalog(name: &str) -> (AlgebraPresentation, Self) {
        let e = catalog().iter().find(|e| e.name == name).unwrap();
        let a = e.instantiate(&BTreeMap::new()).unwrap();
        let o = Self::of(&a);
        (a, o)
    }

    fn unit(&self, i: usize) -> Vec<Q> {
        (0..self.n)
            .map(|k| if k == i { int(1) } else { zero() })
            .collect()
    }

    fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![zero(); self.n];
        for (xi, gi) in x.iter().zip(&self.g) {
            for (yj, gij) in y.iter().zip(gi) {
                let c = xi * yj;
                if c != zero() {
                    for (o, g) in out.iter_mut().zip(gij) {
                        *o += &c * g;
                    }
                }
            }
        }
        out
    }

    /// `op` as a flat row-major `n×n` array applied to `x`.
    fn apply(&self, op: &[Q], x: &[Q]) -> Vec<Q> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| &op[r * self.n + c] * &x[c]).sum())
            .collect()
    }

    /// Nullspace of the linear map `u ↦ f(u)` on `Q^m`.
    fn solutions(&self, m: usize, f: impl Fn(&[Q]) -> Vec<Q>) -> Vec<Vec<Q>> {
        let columns: Vec<Vec<Q>> = (0..m)
            .map(|t| {
                f(&(0..m)
                    .map(|s| if s == t { int(1) } else { zero() })
                    .collect::<Vec<_>>())
            })
            .collect();
        let rows = columns.first().map_or(0, Vec::len);
        let matrix: Vec<Vec<Q>> = (0..rows)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        kernel(matrix, m)
    }

    fn qcentroid(&self) -> Vec<Vec<Q>> {
        let n = self.n;
        self.solutions(n * n, |op| {
            let mut out = Vec::new();
            for p in 0..n {
                for q in 0..n {
                    let (ep, eq) = (self.unit(p), self.unit(q));
                    let l = self.mul(&self.apply(op, &ep), &eq);
                    let r = self.mul(&ep, &self.apply(op, &eq));
                    out.extend(l.into_iter().zip(r).map(|(x, y)| x - y));
                }
            }
            out
        })
    }

    fn central(&self) -> Vec<Vec<Q>> {
        let n = self.n;
        self.solutions(n * n, |op| {
            let mut out = Vec::new();
            for p in 0..n {
                for q in 0..n {
                    let (ep, eq) = (self.unit(p), self.unit(q));
                    out.extend(self.mul(&self.apply(op, &ep), &eq));
                    out.extend(self.mul(&ep, &self.apply(op, &eq)));
                }
            }
            out
        })
    }

    fn derivations(&self) -> Vec<Vec<Q>> {
        let n = self.n;
        self.solutions(n * n, |op| {
            let mut out = Vec::new();
            for p in 0..n {
                for q in 0..n {
                    let (ep, eq) = (self.unit(p), self.unit(q));
                    let lhs = self.apply(op, &self.mul(&ep, &eq));
                    let a = self.mul(&self.apply(op, &ep), &eq);
                    let b = self.mul(&ep, &self.apply(op, &eq));
                    out.extend((0..n).map(|k| &lhs[k] - &a[k] - &b[k]));
                }
            }
            out
        })
    }

    /// Quasi-derivation pairs `(d, d′)` flattened as `d ++ d′`, then
    /// projected to `d`.
    fn qder_projection(&self) -> Vec<Vec<Q>> {
        let n = self.n;
        let pairs = self.solutions(2 * n * n, |u| {
            let (d, c) = u.split_at(n * n);
            let mut out = Vec::new();
            for p in 0..n {
                for q in 0..n {
                    let (ep, eq) = (self.unit(p), self.unit(q));
                    let a = self.mul(&self.apply(d, &ep), &eq);
                    let b = self.mul(&ep, &self.apply(d, &eq));
                    let r = self.apply(c, &self.mul(&ep, &eq));
                    out.extend((0..n).map(|k| &a[k] + &b[k] - &r[k]));
                }
            }
            out
        });
        independent(pairs.into_iter().map(|v| v[..n * n].to_vec()).collect())
    }

    fn annihilator(&self) -> Vec<Vec<Q>> {
        self.centralizer(&(0..self.n).map(|i| self.unit(i)).collect::<Vec<_>>())
    }

    fn centralizer(&self, set: &[Vec<Q>]) -> Vec<Vec<Q>> {
        self.solutions(self.n, |p| {
            set.iter()
                .flat_map(|x| self.mul(p, x).into_iter().chain(self.mul(x, p)))
                .collect()
        })
    }

    fn power_dims(&self) -> Vec<usize> {
        let mut current: Vec<Vec<Q>> = (0..self.n).map(|i| self.unit(i)).collect();
        let mut dims = vec![self.n];
        while dims.last() != Some(&0) && dims.len() <= self.n + 1 {
            current = independent(
                (0..self.n)
                    .flat_map(|i| current.iter().map(move |v| (i, v)))
                    .map(|(i, v)| self.mul(&self.unit(i), v))
                    .collect(),
            );
            dims.push(current.len());
        }
        dims
    }

    fn zinbiel_defect(&self, i: usize, j: usize, k: usize) -> Vec<Q> {
        let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
        let lhs = self.mul(&self.mul(&x, &y), &z);
        let r1 = self.mul(&x, &self.mul(&y, &z));
        let r2 = self.mul(&x, &self.mul(&z, &y));
        (0..self.n).map(|t| &lhs[t] - &r1[t] - &r2[t]).collect()
    }
}

fn rank(rows: Vec<Vec<Q>>) -> usize {
    independent(rows).len()
}

/// A maximal independent subset, found by elimination on copies.
fn independent(rows: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let mut kept: Vec<Vec<Q>> = Vec::new();
    let mut reduced: Vec<(usize, Vec<Q>)> = Vec::new();
    for v in rows {
        let mut w = v.clone();
        for (c, r) in &reduced {
            if w[*c] != zero() {
                let f = w[*c].clone() / &r[*c];
                for k in 0..w.len() {
                    let t = &f * &r[k];
                    w[k] -= t;
                }
            }
        }
        if let Some(c) = w.iter().position(|x| *x != zero()) {
            reduced.push((c, w));
            kept.push(v);
        }
    }
    kept
}

/// Kernel of a dense matrix with `m` columns.
fn kernel(mut rows: Vec<Vec<Q>>, m: usize) -> Vec<Vec<Q>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = int(1) / &rows[r][c];
        rows[r].iter_mut().for_each(|x| *x *= &inv);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..m)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![zero(); m];
            v[free] = int(1);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}

/// Row-major flattening of a library matrix.
fn flat(m: &MatrixQ) -> Vec<Q> {
    m.to_rows().into_iter().flatten().collect()
}

fn same_span(library: &[MatrixQ], oracle: &[Vec<Q>]) -> bool {
    let lib: Vec<Vec<Q>> = library.iter().map(flat).collect();
    let both = rank(lib.iter().cloned().chain(oracle.iter().cloned()).collect());
    rank(lib) == oracle.len() && both == oracle.len()
}

fn v(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| int(x)).collect()
}

#[test]
fn intersection_and_sum_in_the_plane() {
    let a = Subspace::span(2, [v(&[1, 0]), v(&[0, 1])]).unwrap();
    let b = Subspace::span(2, [v(&[1, 1])]).unwrap();
    assert_eq!(a.intersection(&b).unwrap(), b);
    assert_eq!(a.sum(&b).unwrap(), a);
    let both = rank(vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]);
    assert_eq!(both + 1, 3);
}

#[test]
fn idempotent_line_fails_the_identity_at_the_first_triple() {
    let mut a = AlgebraPresentation::zero("e1e1=e1", 1);
    a.set_constant(0, 0, 0, int(1)).unwrap();
    let o = Oracle::of(&a);
    assert_eq!(o.zinbiel_defect(0, 0, 0), v(&[-1]));
    let w = check_zinbiel(&a).witness.unwrap();
    assert_eq!((w.i, w.j, w.k), (0, 0, 0));
    assert_eq!(w.defect.coords(), &v(&[-1])[..]);
}

#[test]
fn z37_satisfies_the_identity_on_all_triples() {
    let (a, o) = Oracle::catalog("Z3^7");
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                assert!(o.zinbiel_defect(i, j, k).iter().all(|x| *x == zero()));
            }
        }
    }
    assert!(check_zinbiel(&a).holds);
}

#[test]
fn power_chains() {
    for (name, dims) in [("Z2^1", vec![2, 1, 0]), ("Z4^1", vec![4, 3, 2, 1, 0])] {
        let (a, o) = Oracle::catalog(name);
        assert_eq!(o.power_dims(), dims);
        let chain = power_chain(&a, a.dim() + 1);
        assert_eq!(chain.dims(), dims);
        assert_eq!(chain.nil_index, Some(dims.len()));
    }
}

#[test]
fn annihilators_and_centralizers() {
    for (name, basis) in [("Z2^1", v(&[0, 1])), ("Z3^7", v(&[0, 0, 1]))] {
        let (a, o) = Oracle::catalog(name);
        let ann = o.annihilator();
        assert_eq!(ann.len(), 1);
        assert_eq!(rank(vec![ann[0].clone(), basis.clone()]), 1);
        assert_eq!(annihilator(&a), Subspace::span(a.dim(), [basis]).unwrap());
    }
    let (a, o) = Oracle::catalog("Z2^1");
    let c = o.centralizer(&[v(&[1, 0])]);
    assert_eq!(c.len(), 1);
    let lib = centralizer(&a, &Subspace::span(2, [v(&[1, 0])]).unwrap()).unwrap();
    assert_eq!(lib.space, Subspace::span(2, [v(&[0, 1])]).unwrap());
}

#[test]
fn annihilator_of_a_direct_sum() {
    let (z21, _) = Oracle::catalog("Z2^1");
    let (z31, _) = Oracle::catalog("Z3^1");
    let s = direct_sum(&z21, &z31);
    let o = Oracle::new(5, &[(0, 0, 1, int(1))]);
    assert_eq!(o.annihilator().len(), 4);
    assert_eq!(s.dim(), 5);
    assert_eq!(
        annihilator(&s),
        Subspace::span(
            5,
            [
                v(&[0, 1, 0, 0, 0]),
                v(&[0, 0, 1, 0, 0]),
                v(&[0, 0, 0, 1, 0]),
                v(&[0, 0, 0, 0, 1])
            ]
        )
        .unwrap()
    );
}

#[test]
fn z21_quasi_centroid_only_kills_the_corner() {
    let (a, o) = Oracle::catalog("Z2^1");
    let qc = o.qcentroid();
    assert_eq!(qc.len(), 3);
    let lib = solve_space(&a, SpaceKind::QuasiCentroid);
    assert!(same_span(&lib.basis(), &qc));
    assert!(lib.basis().iter().all(|m| *m.get(0, 1) == zero()));
}

#[test]
fn z21_quasi_derivation_projection() {
    let (a, o) = Oracle::catalog("Z2^1");
    let proj = o.qder_projection();
    assert_eq!(proj.len(), 3);
    let q = solve_quasi_derivations(&a);
    assert!(same_span(&q.projection().basis(), &proj));
    assert!(q.projection().basis().iter().all(|m| *m.get(0, 1) == zero()));
    for (d, c) in q.basis_pairs() {
        assert_eq!(c.get(1, 1), &(int(2) * d.get(0, 0)));
    }
}

#[test]
fn identity_is_not_a_derivation_of_z21() {
    let (a, _) = Oracle::catalog("Z2^1");
    let c = verify_member(&a, MemberKind::Derivation, &MatrixQ::identity(2), None).unwrap();
    assert!(!c.valid);
    assert_eq!(c.first_violation, Some((0, 0)));
}

/// Lower central series of a span of flattened `n×n` matrices.
fn oracle_series(n: usize, basis: Vec<Vec<Q>>) -> Vec<usize> {
    let bracket = |x: &[Q], y: &[Q]| -> Vec<Q> {
        let prod = |a: &[Q], b: &[Q]| -> Vec<Q> {
            (0..n * n)
                .map(|rc| {
                    let (r, c) = (rc / n, rc % n);
                    (0..n).map(|t| &a[r * n + t] * &b[t * n + c]).sum()
                })
                .collect()
        };
        prod(x, y)
            .into_iter()
            .zip(prod(y, x))
            .map(|(a, b)| a - b)
            .collect()
    };
    let mut dims = vec![basis.len()];
    let mut current = basis.clone();
    while dims.last() != Some(&0) {
        let next = independent(
            basis
                .iter()
                .flat_map(|x| current.iter().map(move |y| (x, y)))
                .map(|(x, y)| bracket(x, y))
                .collect(),
        );
        let repeat = next.len() == current.len();
        dims.push(next.len());
        current = next;
        if repeat {
            break;
        }
    }
    dims
}

#[test]
fn derivations_of_z21_are_not_nilpotent() {
    let (a, o) = Oracle::catalog("Z2^1");
    let der = o.derivations();
    assert_eq!(der.len(), 2);
    assert_eq!(oracle_series(2, der), vec![2, 1, 1]);
    let lib = lie_closure(&solve_space(&a, SpaceKind::Derivation));
    assert!(lib.closure_verified && !lib.nilpotent);
    assert_eq!(lib.lower_central_series[..3], [2, 1, 1]);
}

#[test]
fn z21_is_small() {
    let (a, o) = Oracle::catalog("Z2^1");
    let central = o.central();
    assert_eq!(central.len(), 2);
    let mut s = central;
    s.push(v(&[1, 0, 0, 1]));
    let qc = o.qcentroid();
    assert_eq!(rank(s.clone()), 3);
    assert_eq!(rank(s.into_iter().chain(qc).collect()), 3);
    assert!(smallness(&a).is_small);
}

#[test]
fn quasi_characteristic_nilpotency() {
    let zero_alg = AlgebraPresentation::zero("k^1", 1);
    assert_eq!(
        oracle_series(1, Oracle::of(&zero_alg).qder_projection()),
        vec![1, 0]
    );
    assert!(quasi_char_nilpotent(&zero_alg));
    let (z21, o) = Oracle::catalog("Z2^1");
    let series = oracle_series(2, o.qder_projection());
    assert_ne!(series.last(), Some(&0));
    assert!(!quasi_char_nilpotent(&z21));
}

#[test]
fn z21_claim_examples() {
    let (a, o) = Oracle::catalog("Z2^1");
    // d = diag(1, 2), p = e1: [d, L_e1] = L_{d(e1)}.
    let d = [v(&[1, 0]), v(&[0, 2])];
    let left_mul = |p: &[Q]| -> Vec<Vec<Q>> {
        let cols: Vec<Vec<Q>> = (0..2).map(|j| o.mul(p, &o.unit(j))).collect();
        (0..2)
            .map(|r| (0..2).map(|c| cols[c][r].clone()).collect())
            .collect()
    };
    let mm = |x: &[Vec<Q>], y: &[Vec<Q>]| -> Vec<Vec<Q>> {
        (0..2)
            .map(|r| {
                (0..2)
                    .map(|c| (0..2).map(|t| &x[r][t] * &y[t][c]).sum())
                    .collect()
            })
            .collect()
    };
    let l = left_mul(&o.unit(0));
    let comm: Vec<Vec<Q>> = mm(&d, &l)
        .into_iter()
        .zip(mm(&l, &d))
        .map(|(x, y)| x.into_iter().zip(y).map(|(a, b)| a - b).collect())
        .collect();
    assert_eq!(comm, left_mul(&v(&[1, 0])));

    let verdicts = reconcile_claims(&a);
    let get = |id: &str| verdicts.iter().find(|c| c.claim_id == id).unwrap();
    assert!(get("Prop2.7.L").holds);
    let p = get("Prop3.12.1");
    assert!(!p.holds && p.reverify(&a));
    // id is in QΓ and is central only if Z² = 0.
    assert!(rank(o.qcentroid().into_iter().chain([v(&[1, 0, 0, 1])]).collect()) == 3);
    assert!(rank(o.central().into_iter().chain([v(&[1, 0, 0, 1])]).collect()) == 3);
}

fn sum_oracle(a: &AlgebraPresentation, b: &AlgebraPresentation) -> Oracle {
    let s = a.dim();
    let mut products: Vec<_> = a
        .nonzero_constants()
        .map(|(i, j, k, c)| (i, j, k, c.clone()))
        .collect();
    products.extend(
        b.nonzero_constants()
            .map(|(i, j, k, c)| (i + s, j + s, k + s, c.clone())),
    );
    Oracle::new(a.dim() + b.dim(), &products)
}

#[test]
fn direct_sum_quasi_centroids() {
    let (z21, _) = Oracle::catalog("Z2^1");
    let k1 = AlgebraPresentation::zero("k^1", 1);
    for (b, lhs) in [(z21.clone(), 10), (k1, 7)] {
        let o = sum_oracle(&z21, &b);
        assert_eq!(o.qcentroid().len(), lhs);
        let check = direct_sum_theorem_check(&z21, &b);
        assert_eq!(check.lhs_dim, lhs);
        assert!(check.verdict.reverify(&direct_sum(&z21, &b)));
    }
}

#[test]
fn catalog_rows_against_the_oracle() {
    let report = reconcile_catalog(&CatalogSelection::Names(vec!["Z2^1".into(), "Z3^6".into()]), 4).unwrap();
    let z21 = &report.instances[0];
    let row = z21
        .table_rows
        .iter()
        .find(|t| t.table == Table::QuasiCentroid)
        .unwrap();
    assert_eq!(row.recomputed_dim, Oracle::catalog("Z2^1").1.qcentroid().len());
    assert!(!row.matches && row.extra.is_some());

    let e = catalog().iter().find(|e| e.name == "Z3^6").unwrap();
    let mut dims = Vec::new();
    for lambda in [1, 2, 3, 5] {
        let values = BTreeMap::from([("lambda".to_string(), int(lambda))]);
        let a = e.instantiate(&values).unwrap();
        let o = Oracle::of(&a);
        let sp = SolvedSpaces::solve(&a);
        assert_eq!(sp.qcentroid.dim(), o.qcentroid().len());
        assert_eq!(sp.der.dim(), o.derivations().len());
        dims.push(sp.qcentroid.dim());
    }
    assert!(dims.windows(2).all(|w| w[0] == w[1]));
    let family = report.families.iter().find(|f| f.entry == "Z3^6").unwrap();
    assert!(family.constant);
}
