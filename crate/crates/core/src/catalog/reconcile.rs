//! Recomputes every catalog row and compares it with the claimed tables.

use std::collections::BTreeMap;

use super::{
    catalog, dimension_claims, entry, generic_samples, get_algebra, CatalogEntry, CatalogError, Table,
    TableRow,
};
use crate::algebra::{annihilator, check_zinbiel, power_chain, AlgebraPresentation};
use crate::linear::{int, MatrixQ, Scalar, Subspace};
use crate::solver::{
    pairwise_operator_space, pairwise_pair_space, vectorize, verify_member, verify_pair, OperatorSpace,
    SolvedSpaces,
};
use crate::theory::{
    direct_sum_centralizer_check, direct_sum_theorem_check, reconcile_claims_with, smallness_from,
    ClaimVerdict, DirectSumCheck,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogSelection {
    All,
    Names(Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SampleKind {
    /// The entry has no parameters.
    Fixed,
    Generic,
    /// A value where the printed tables split.
    Special,
}

impl SampleKind {
    pub fn short_name(self) -> &'static str {
        match self {
            SampleKind::Fixed => "fixed",
            SampleKind::Generic => "generic",
            SampleKind::Special => "special",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SpaceDims {
    pub der: usize,
    pub centroid: usize,
    pub qcentroid: usize,
    pub cder: usize,
    pub qder: usize,
    pub qder_pairs: usize,
}

impl SpaceDims {
    fn of(sp: &SolvedSpaces) -> Self {
        Self {
            der: sp.der.dim(),
            centroid: sp.centroid.dim(),
            qcentroid: sp.qcentroid.dim(),
            cder: sp.cder.dim(),
            qder: sp.qder.projection().dim(),
            qder_pairs: sp.qder.dim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRowReport {
    pub table: Table,
    pub condition: String,
    pub recomputed_dim: usize,
    /// Printed dimension, or the number of distinct free symbols when the
    /// table prints none.
    pub claimed_dim: usize,
    pub claimed_span_dim: usize,
    /// The claimed grid spans the recomputed space read cell `(i, j)` as
    /// matrix entry `(i, j)`.
    pub equal_direct: bool,
    /// The same with the grid transposed.
    pub equal_transposed: bool,
    /// For quasi-centroid rows: whether the grid spans the centroid instead.
    pub equals_centroid: Option<bool>,
    pub matches: bool,
    pub recomputed_grid: Vec<Vec<String>>,
    /// A recomputed member outside the claimed span, when there is one.
    pub extra: Option<MatrixQ>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallnessRow {
    pub recomputed: bool,
    pub claimed: Option<bool>,
    pub matches: Option<bool>,
    pub dim_cder_plus_scalars: usize,
    pub composition_closed: bool,
    pub witness: Option<MatrixQ>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceReport {
    pub entry: String,
    pub params: BTreeMap<String, Scalar>,
    pub label: String,
    pub sample: SampleKind,
    pub zinbiel: bool,
    pub nil_index: Option<usize>,
    pub annihilator_dim: usize,
    pub dims: SpaceDims,
    /// Every basis element satisfies its identity and the pairwise solve
    /// gives the same dimensions.
    pub verified: bool,
    pub table_rows: Vec<TableRowReport>,
    pub smallness: SmallnessRow,
    pub claims: Vec<ClaimVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyStability {
    pub entry: String,
    pub param: String,
    pub generic: Vec<(Scalar, SpaceDims)>,
    pub constant: bool,
    /// Special values with their dims and whether they differ from the
    /// first generic sample.
    pub special: Vec<(Scalar, SpaceDims, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub dim: usize,
    pub claimed_small: Vec<String>,
    pub recomputed_small: Vec<String>,
    pub claimed_range: (usize, usize),
    pub recomputed_range: (usize, usize),
    pub small_matches: bool,
    pub range_matches: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSumReport {
    pub left: String,
    pub right: String,
    pub theorem: DirectSumCheck,
    pub centralizers: Vec<ClaimVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownIssue {
    pub entry: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconciliationReport {
    pub samples: usize,
    pub instances: Vec<InstanceReport>,
    pub families: Vec<FamilyStability>,
    pub dimensions: Vec<DimensionReport>,
    pub direct_sums: Vec<DirectSumReport>,
    pub known_issues: Vec<KnownIssue>,
}

impl ReconciliationReport {
    pub fn table_rows(&self) -> impl Iterator<Item = (&InstanceReport, &TableRowReport)> {
        self.instances
            .iter()
            .flat_map(|i| i.table_rows.iter().map(move |r| (i, r)))
    }

    /// Disagreements of any kind: table rows, smallness labels, falsified
    /// claims, unstable families, unverified solves.
    pub fn finding_count(&self) -> usize {
        let per_instance: usize = self
            .instances
            .iter()
            .map(|i| {
                i.table_rows.iter().filter(|r| !r.matches).count()
                    + usize::from(i.smallness.matches == Some(false))
                    + i.claims.iter().filter(|c| !c.holds).count()
                    + usize::from(!i.verified)
                    + usize::from(!i.zinbiel)
            })
            .sum();
        per_instance
            + self.families.iter().filter(|f| !f.constant).count()
            + self
                .dimensions
                .iter()
                .filter(|d| !d.small_matches || !d.range_matches)
                .count()
            + self
                .direct_sums
                .iter()
                .map(|d| {
                    usize::from(!d.theorem.verdict.holds) + d.centralizers.iter().filter(|c| !c.holds).count()
                })
                .sum::<usize>()
    }
}

fn label(name: &str, params: &BTreeMap<String, Scalar>) -> String {
    if params.is_empty() {
        return name.to_string();
    }
    let inner: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{name}[{}]", inner.join(","))
}

fn points(e: &CatalogEntry, samples: usize) -> Vec<(BTreeMap<String, Scalar>, SampleKind)> {
    match e.params.first() {
        None => vec![(BTreeMap::new(), SampleKind::Fixed)],
        Some(p) => {
            let at = |v: i64| BTreeMap::from([(p.name.to_string(), int(v))]);
            generic_samples(p.special, samples)
                .into_iter()
                .map(|v| (at(v), SampleKind::Generic))
                .chain(p.special.iter().map(|&v| (at(v), SampleKind::Special)))
                .collect()
        }
    }
}

fn space_verified(a: &AlgebraPresentation, space: &OperatorSpace) -> bool {
    let kind = space.kind().member_kind();
    space
        .basis()
        .iter()
        .all(|m| verify_member(a, kind, m, None).is_ok_and(|c| c.valid))
        && pairwise_operator_space(a, space.kind()).dim() == space.dim()
}

fn verified(a: &AlgebraPresentation, sp: &SolvedSpaces) -> bool {
    [&sp.der, &sp.centroid, &sp.qcentroid, &sp.cder]
        .into_iter()
        .all(|s| space_verified(a, s))
        && sp
            .qder
            .basis_pairs()
            .iter()
            .all(|(d, c)| verify_pair(a, d, c).is_ok_and(|r| r.valid))
        && pairwise_pair_space(a).dim() == sp.qder.dim()
}

fn recomputed_for(sp: &SolvedSpaces, table: Table) -> &OperatorSpace {
    match table {
        Table::QuasiCentroid => &sp.qcentroid,
        Table::Derivation => &sp.der,
        Table::QuasiDerivation => sp.qder.projection(),
    }
}

fn compare_row(
    e: &CatalogEntry,
    row: &TableRow,
    values: &BTreeMap<String, Scalar>,
    sp: &SolvedSpaces,
) -> Result<TableRowReport, CatalogError> {
    let grid = e.claimed_grid(row, values)?;
    let space = recomputed_for(sp, row.table);
    let direct = grid.span(false);
    let transposed = grid.span(true);
    let equal_direct = &direct == space.subspace();
    let equal_transposed = &transposed == space.subspace();
    let equals_centroid = (row.table == Table::QuasiCentroid)
        .then(|| &direct == sp.centroid.subspace() || &transposed == sp.centroid.subspace());
    let claimed_dim = row.stated_dim.unwrap_or(grid.symbols().len());
    let matches = claimed_dim == space.dim() && (equal_direct || equal_transposed);

    // compare against whichever reading of the grid lies inside the
    // recomputed space, preferring the direct one
    let inside = |s: &Subspace| s.is_subspace_of(space.subspace());
    let reference = if inside(&direct) || !inside(&transposed) {
        &direct
    } else {
        &transposed
    };
    let form = space.parametric_form();
    let extra_param = (0..form.params().len()).find(|&r| !reference.contains(&vectorize(&form.indicator(r))));
    let extra = extra_param.map(|r| form.indicator(r));

    let mut note = format!(
        "recomputed dim {}, claimed dim {}, claimed grid spans {} (direct {}, transposed {})",
        space.dim(),
        claimed_dim,
        direct.dim().max(transposed.dim()),
        if equal_direct { "equal" } else { "differs" },
        if equal_transposed { "equal" } else { "differs" },
    );
    if let Some(r) = extra_param {
        note.push_str(&format!(
            "; recomputed parameter {} lies outside the claimed span",
            form.params()[r]
        ));
    }
    if equals_centroid == Some(true) && !matches {
        note.push_str("; the claimed grid spans the centroid");
    }
    Ok(TableRowReport {
        table: row.table,
        condition: row.condition.to_string(),
        recomputed_dim: space.dim(),
        claimed_dim,
        claimed_span_dim: direct.dim().max(transposed.dim()),
        equal_direct,
        equal_transposed,
        equals_centroid,
        matches,
        recomputed_grid: form.rendered(),
        extra,
        note,
    })
}

/// One catalog algebra together with its solved spaces and reconciliation.
#[derive(Clone, Debug)]
pub struct AnalyzedInstance {
    pub algebra: AlgebraPresentation,
    pub spaces: SolvedSpaces,
    pub report: InstanceReport,
}

/// Reconciles a single catalog algebra at textual parameter values.
pub fn reconcile_instance(
    name: &str,
    params: &BTreeMap<String, String>,
) -> Result<AnalyzedInstance, CatalogError> {
    let e = entry(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    let algebra = get_algebra(name, params)?;
    let values = algebra.params().clone();
    let sample = match e.params.first() {
        None => SampleKind::Fixed,
        Some(p) if p.special.iter().any(|&v| values.get(p.name) == Some(&int(v))) => SampleKind::Special,
        Some(_) => SampleKind::Generic,
    };
    let spaces = SolvedSpaces::solve(&algebra);
    let report = instance_report(e, values, sample, &algebra, &spaces)?;
    Ok(AnalyzedInstance {
        algebra,
        spaces,
        report,
    })
}

fn analyze_instance(
    e: &CatalogEntry,
    values: BTreeMap<String, Scalar>,
    sample: SampleKind,
) -> Result<InstanceReport, CatalogError> {
    let a = e.instantiate(&values)?;
    let sp = SolvedSpaces::solve(&a);
    instance_report(e, values, sample, &a, &sp)
}

fn instance_report(
    e: &CatalogEntry,
    values: BTreeMap<String, Scalar>,
    sample: SampleKind,
    a: &AlgebraPresentation,
    sp: &SolvedSpaces,
) -> Result<InstanceReport, CatalogError> {
    let table_rows = e
        .rows_at(&values)
        .map(|row| compare_row(e, row, &values, sp))
        .collect::<Result<Vec<_>, _>>()?;
    let s = smallness_from(&sp.qcentroid, &sp.cder);
    let claimed = e
        .rows_at(&values)
        .find(|r| r.table == Table::QuasiCentroid)
        .and_then(|r| r.small);
    let chain = power_chain(a, e.dim + 1);
    Ok(InstanceReport {
        entry: e.name.to_string(),
        label: label(e.name, &values),
        params: values,
        sample,
        zinbiel: check_zinbiel(a).holds,
        nil_index: chain.nil_index,
        annihilator_dim: annihilator(a).dim(),
        dims: SpaceDims::of(sp),
        verified: verified(a, sp),
        table_rows,
        smallness: SmallnessRow {
            recomputed: s.is_small,
            claimed,
            matches: claimed.map(|c| c == s.is_small),
            dim_cder_plus_scalars: s.dim_cder_plus_scalars,
            composition_closed: s.composition_closed,
            witness: s.witness,
        },
        claims: reconcile_claims_with(a, sp),
    })
}

fn family(e: &CatalogEntry, instances: &[InstanceReport]) -> Option<FamilyStability> {
    let p = e.params.first()?;
    let value = |i: &InstanceReport| i.params[p.name].clone();
    let generic: Vec<(Scalar, SpaceDims)> = instances
        .iter()
        .filter(|i| i.sample == SampleKind::Generic)
        .map(|i| (value(i), i.dims.clone()))
        .collect();
    let constant = generic.windows(2).all(|w| w[0].1 == w[1].1);
    let first = generic.first().map(|g| g.1.clone());
    let special = instances
        .iter()
        .filter(|i| i.sample == SampleKind::Special)
        .map(|i| (value(i), i.dims.clone(), first.as_ref() != Some(&i.dims)))
        .collect();
    Some(FamilyStability {
        entry: e.name.to_string(),
        param: p.name.to_string(),
        generic,
        constant,
        special,
    })
}

fn dimension_reports(instances: &[InstanceReport]) -> Vec<DimensionReport> {
    dimension_claims()
        .iter()
        .map(|claim| {
            let of_dim: Vec<&InstanceReport> = instances
                .iter()
                .filter(|i| entry(&i.entry).is_some_and(|e| e.dim == claim.dim))
                .collect();
            let mut names: Vec<String> = Vec::new();
            for i in &of_dim {
                if !names.contains(&i.entry) {
                    names.push(i.entry.clone());
                }
            }
            // a class counts as small when every non-special instance is
            let recomputed_small: Vec<String> = names
                .into_iter()
                .filter(|name| {
                    of_dim
                        .iter()
                        .filter(|i| &i.entry == name && i.sample != SampleKind::Special)
                        .all(|i| i.smallness.recomputed)
                })
                .collect();
            let dims: Vec<usize> = of_dim.iter().map(|i| i.dims.qcentroid).collect();
            let recomputed_range = (
                dims.iter().copied().min().unwrap_or(0),
                dims.iter().copied().max().unwrap_or(0),
            );
            let claimed_small: Vec<String> = claim.small.iter().map(|s| s.to_string()).collect();
            DimensionReport {
                dim: claim.dim,
                small_matches: claimed_small == recomputed_small,
                range_matches: claim.dim_range == recomputed_range,
                claimed_small,
                recomputed_small,
                claimed_range: claim.dim_range,
                recomputed_range,
                note: claim.note.to_string(),
            }
        })
        .collect()
}

fn direct_sum_reports() -> Vec<DirectSumReport> {
    let get = |name: &str| {
        entry(name)
            .expect("catalog entry")
            .instantiate(&BTreeMap::new())
            .expect("no params")
    };
    let trivial = AlgebraPresentation::zero("k^1", 1);
    let pairs = [
        (get("Z2^1"), get("Z2^1")),
        (get("Z2^1"), trivial),
        (get("Z2^1"), get("Z3^1")),
        (get("Z3^1"), get("Z3^1")),
        (get("Z2^1"), get("Z3^7")),
    ];
    pairs
        .iter()
        .map(|(a, b)| DirectSumReport {
            left: a.name().to_string(),
            right: b.name().to_string(),
            theorem: direct_sum_theorem_check(a, b),
            centralizers: direct_sum_centralizer_check(a, b),
        })
        .collect()
}

/// Recomputes the selected entries; families are sampled at `samples`
/// generic values plus their special values. Whole-catalog statements
/// and direct-sum checks are included only for [`CatalogSelection::All`].
pub fn reconcile_catalog(
    selection: &CatalogSelection,
    samples: usize,
) -> Result<ReconciliationReport, CatalogError> {
    let entries: Vec<&CatalogEntry> = match selection {
        CatalogSelection::All => catalog().iter().collect(),
        CatalogSelection::Names(names) => names
            .iter()
            .map(|n| entry(n).ok_or_else(|| CatalogError::UnknownName(n.clone())))
            .collect::<Result<_, _>>()?,
    };
    let mut instances = Vec::new();
    let mut families = Vec::new();
    let mut known_issues = Vec::new();
    for e in entries {
        let start = instances.len();
        for (values, kind) in points(e, samples) {
            instances.push(analyze_instance(e, values, kind)?);
        }
        families.extend(family(e, &instances[start..]));
        for text in e.known_issues {
            known_issues.push(KnownIssue {
                entry: e.name.to_string(),
                text: text.to_string(),
            });
        }
        for i in &instances[start..] {
            if !i.zinbiel {
                known_issues.push(KnownIssue {
                    entry: e.name.to_string(),
                    text: format!("{} fails the Zinbiel identity", i.label),
                });
            }
        }
    }
    let (dimensions, direct_sums) = match selection {
        CatalogSelection::All => (dimension_reports(&instances), direct_sum_reports()),
        CatalogSelection::Names(_) => (Vec::new(), Vec::new()),
    };
    Ok(ReconciliationReport {
        samples,
        instances,
        families,
        dimensions,
        direct_sums,
        known_issues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> CatalogSelection {
        CatalogSelection::Names(v.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn z21_quasi_centroid_row_is_a_mismatch_with_an_extra_parameter() {
        let r = reconcile_catalog(&names(&["Z2^1"]), 4).unwrap();
        let inst = &r.instances[0];
        let row = inst
            .table_rows
            .iter()
            .find(|t| t.table == Table::QuasiCentroid)
            .unwrap();
        assert_eq!((row.recomputed_dim, row.claimed_dim), (3, 2));
        assert!(!row.matches);
        assert!(row.extra.is_some());
        assert!(inst.verified);
        assert_eq!(inst.smallness.matches, Some(true));
        let der = inst
            .table_rows
            .iter()
            .find(|t| t.table == Table::Derivation)
            .unwrap();
        assert!(der.matches && der.equal_direct);
    }

    #[test]
    fn z31_quasi_centroid_row_matches() {
        let r = reconcile_catalog(&names(&["Z3^1"]), 4).unwrap();
        let row = &r.instances[0].table_rows[0];
        assert_eq!((row.recomputed_dim, row.claimed_dim), (9, 9));
        assert!(row.matches);
        assert_eq!(r.instances[0].smallness.matches, Some(true));
    }

    #[test]
    fn z36_family_is_constant_and_lambda_zero_is_separate() {
        let r = reconcile_catalog(&names(&["Z3^6"]), 4).unwrap();
        let f = &r.families[0];
        let values: Vec<Scalar> = f.generic.iter().map(|g| g.0.clone()).collect();
        assert_eq!(values, vec![int(1), int(2), int(3), int(5)]);
        assert!(f.constant);
        assert_eq!(f.generic[0].1.qcentroid, 4);
        assert_eq!(f.special.len(), 1);
        assert_eq!(f.special[0].0, int(0));
    }

    #[test]
    fn unknown_names_are_errors() {
        assert!(reconcile_catalog(&names(&["Z9^9"]), 4).is_err());
    }
}
