//! The classified Zinbiel algebras of dimensions 2 to 4, the tables claimed
//! for them, and the comparison of those tables with recomputed spaces.

mod data;
mod grid;
mod reconcile;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::AlgebraPresentation;
use crate::linear::{int, parse_scalar, Scalar};

pub use grid::{eval_cell, eval_coefficient, CellValue, ClaimedGrid, GridError};
pub use reconcile::{
    reconcile_catalog, reconcile_instance, AnalyzedInstance, CatalogSelection, DimensionReport,
    DirectSumReport, FamilyStability, InstanceReport, KnownIssue, ReconciliationReport, SampleKind,
    SmallnessRow, SpaceDims, TableRowReport,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog algebra `{0}`")]
    UnknownName(String),
    #[error("{entry} requires parameter `{param}`")]
    MissingParam { entry: String, param: String },
    #[error("{entry} has no parameter `{param}`")]
    UnexpectedParam { entry: String, param: String },
    #[error("parameter `{param}` = `{value}` is not a rational number")]
    NonRational { param: String, value: String },
    #[error("malformed catalog data for {entry}: {source}")]
    Data { entry: String, source: GridError },
}

/// Which table a claimed row belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Table {
    QuasiCentroid,
    Derivation,
    QuasiDerivation,
}

impl Table {
    pub fn short_name(self) -> &'static str {
        match self {
            Table::QuasiCentroid => "qcentroid",
            Table::Derivation => "der",
            Table::QuasiDerivation => "qder",
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// Parameter values a table row applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    Always,
    Equal(&'static str, i64),
    NotEqual(&'static str, i64),
}

impl Condition {
    pub fn applies(&self, params: &BTreeMap<String, Scalar>) -> bool {
        match *self {
            Condition::Always => true,
            Condition::Equal(p, v) => params.get(p) == Some(&int(v)),
            Condition::NotEqual(p, v) => params.get(p).is_some_and(|x| *x != int(v)),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Always => f.write_str("all"),
            Condition::Equal(p, v) => write!(f, "{p} = {v}"),
            Condition::NotEqual(p, v) => write!(f, "{p} != {v}"),
        }
    }
}

/// One printed row of a quasi-centroid, derivation or quasi-derivation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub table: Table,
    pub condition: Condition,
    /// Cells separated by `,`, rows by `;`, in printed order.
    pub grid: &'static str,
    /// The printed dimension; derivation tables print none.
    pub stated_dim: Option<usize>,
    /// The printed smallness label, quasi-centroid rows only.
    pub small: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParam {
    pub name: &'static str,
    /// Values at which the printed tables split.
    pub special: &'static [i64],
    pub note: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub dim: usize,
    pub params: &'static [FamilyParam],
    /// 1-based `(i, j, k, coefficient)`.
    pub products: &'static [(usize, usize, usize, &'static str)],
    /// Named subexpressions used inside grid cells, such as `g`.
    pub abbreviations: &'static [(&'static str, &'static str)],
    pub rows: &'static [TableRow],
    pub known_issues: &'static [&'static str],
    pub shares_products_with: Option<&'static str>,
}

/// Claimed smallness and dimension range for one algebra dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionClaim {
    pub dim: usize,
    pub small: &'static [&'static str],
    pub not_small: &'static [&'static str],
    pub dim_range: (usize, usize),
    pub note: &'static str,
}

pub fn catalog() -> &'static [CatalogEntry] {
    &data::CATALOG
}

pub fn dimension_claims() -> &'static [DimensionClaim] {
    &data::DIMENSION_CLAIMS
}

fn normalize_name(name: &str) -> String {
    name.trim().replace('_', "^").to_ascii_uppercase()
}

/// Looks up an entry; `z3_6` and `Z3^6` both name `Z3^6`.
pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    let key = normalize_name(name);
    catalog().iter().find(|e| normalize_name(e.name) == key)
}

fn canonical_param(name: &str) -> &str {
    match name {
        "λ" => "lambda",
        "α" => "alpha",
        other => other,
    }
}

impl CatalogEntry {
    pub fn param_names(&self) -> Vec<&'static str> {
        self.params.iter().map(|p| p.name).collect()
    }

    /// The presentation at the given parameter values.
    pub fn instantiate(
        &self,
        values: &BTreeMap<String, Scalar>,
    ) -> Result<AlgebraPresentation, CatalogError> {
        for key in values.keys() {
            if !self.params.iter().any(|p| p.name == key) {
                return Err(CatalogError::UnexpectedParam {
                    entry: self.name.to_string(),
                    param: key.clone(),
                });
            }
        }
        let mut a = AlgebraPresentation::zero(self.name, self.dim);
        for p in self.params {
            let v = values.get(p.name).ok_or_else(|| CatalogError::MissingParam {
                entry: self.name.to_string(),
                param: p.name.to_string(),
            })?;
            a = a.with_param(p.name, v.clone());
        }
        for &(i, j, k, coef) in self.products {
            let c = eval_coefficient(coef, values).map_err(|source| CatalogError::Data {
                entry: self.name.to_string(),
                source,
            })?;
            a.set_constant(i - 1, j - 1, k - 1, c)
                .expect("indices within dim");
        }
        Ok(a)
    }

    /// Rows that apply at the given parameter values.
    pub fn rows_at<'a>(
        &'a self,
        values: &'a BTreeMap<String, Scalar>,
    ) -> impl Iterator<Item = &'a TableRow> + 'a {
        self.rows.iter().filter(move |r| r.condition.applies(values))
    }

    pub fn claimed_grid(
        &self,
        row: &TableRow,
        values: &BTreeMap<String, Scalar>,
    ) -> Result<ClaimedGrid, CatalogError> {
        ClaimedGrid::parse(row.grid, self.dim, values, self.abbreviations).map_err(|source| {
            CatalogError::Data {
                entry: self.name.to_string(),
                source,
            }
        })
    }
}

/// Parses textual parameter values and builds the catalog algebra.
///
/// Accepts `λ`/`α` as aliases for `lambda`/`alpha`.
pub fn get_algebra(
    name: &str,
    params: &BTreeMap<String, String>,
) -> Result<AlgebraPresentation, CatalogError> {
    let e = entry(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    let mut values = BTreeMap::new();
    for (k, v) in params {
        let key = canonical_param(k.trim()).to_string();
        let parsed = parse_scalar(v.trim()).ok_or_else(|| CatalogError::NonRational {
            param: key.clone(),
            value: v.clone(),
        })?;
        values.insert(key, parsed);
    }
    e.instantiate(&values)
}

/// `count` generic sample values: 1, then primes, skipping `special`.
pub fn generic_samples(special: &[i64], count: usize) -> Vec<i64> {
    let is_prime = |k: i64| k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| k % d != 0);
    (1..)
        .filter(|&k| k == 1 || is_prime(k))
        .filter(|k| !special.contains(k))
        .take(count)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_zinbiel;
    use crate::linear::ratio;

    fn no_params() -> BTreeMap<String, String> {
        BTreeMap::new()
    }

    #[test]
    fn z21_from_catalog() {
        let a = get_algebra("Z2^1", &no_params()).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.constant(0, 0, 1), &int(1));
        assert_eq!(a.nonzero_constants().count(), 1);
    }

    #[test]
    fn z34_half_coefficients() {
        let a = get_algebra("Z3^4", &no_params()).unwrap();
        assert_eq!(a.constant(0, 1, 2), &ratio(1, 2));
        assert_eq!(a.constant(1, 0, 2), &ratio(-1, 2));
    }

    #[test]
    fn z36_at_lambda_two() {
        let p = BTreeMap::from([("λ".to_string(), "2".to_string())]);
        let a = get_algebra("Z3^6", &p).unwrap();
        assert_eq!(a.constant(0, 0, 2), &int(1));
        assert_eq!(a.constant(0, 1, 2), &int(1));
        assert_eq!(a.constant(1, 1, 2), &int(2));
        assert_eq!(a.params().get("lambda"), Some(&int(2)));
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(
            get_algebra("Z5^1", &no_params()),
            Err(CatalogError::UnknownName(_))
        ));
        assert!(matches!(
            get_algebra("Z3^6", &no_params()),
            Err(CatalogError::MissingParam { .. })
        ));
        let extra = BTreeMap::from([("alpha".to_string(), "1".to_string())]);
        assert!(matches!(
            get_algebra("Z2^1", &extra),
            Err(CatalogError::UnexpectedParam { .. })
        ));
        let bad = BTreeMap::from([("lambda".to_string(), "sqrt2".to_string())]);
        assert!(matches!(
            get_algebra("Z3^6", &bad),
            Err(CatalogError::NonRational { .. })
        ));
        assert_eq!(entry("z4_12").unwrap().name, "Z4^12");
    }

    #[test]
    fn every_entry_is_zinbiel_at_samples_and_special_values() {
        for e in catalog() {
            let mut points = vec![BTreeMap::new()];
            if let Some(p) = e.params.first() {
                points = generic_samples(p.special, 4)
                    .into_iter()
                    .chain(p.special.iter().copied())
                    .map(|v| BTreeMap::from([(p.name.to_string(), int(v))]))
                    .collect();
            }
            for values in points {
                let a = e.instantiate(&values).unwrap();
                assert!(check_zinbiel(&a).holds, "{} {:?}", e.name, values);
                for row in e.rows_at(&values) {
                    e.claimed_grid(row, &values).unwrap();
                }
            }
        }
    }

    #[test]
    fn every_row_applies_somewhere() {
        for e in catalog() {
            for row in e.rows {
                let applies = match e.params.first() {
                    None => row.condition.applies(&BTreeMap::new()),
                    Some(p) => generic_samples(p.special, 4)
                        .into_iter()
                        .chain(p.special.iter().copied())
                        .any(|v| {
                            row.condition
                                .applies(&BTreeMap::from([(p.name.to_string(), int(v))]))
                        }),
                };
                assert!(applies, "{} {}", e.name, row.condition);
            }
        }
    }

    #[test]
    fn sample_sequence() {
        assert_eq!(generic_samples(&[0], 4), vec![1, 2, 3, 5]);
        assert_eq!(generic_samples(&[0, 1], 4), vec![2, 3, 5, 7]);
        assert_eq!(generic_samples(&[], 6), vec![1, 2, 3, 5, 7, 11]);
    }
}
