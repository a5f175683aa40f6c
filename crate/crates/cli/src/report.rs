//! JSON documents. Rationals are exact `"p/q"` strings (`"p"` when the
//! denominator is 1); every map is a `BTreeMap`, so output is deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use zinbiel_core::algebra::{annihilator, check_zinbiel, power_chain, AlgebraPresentation};
use zinbiel_core::catalog::{
    CatalogEntry, DimensionReport, DirectSumReport, FamilyStability, InstanceReport, ReconciliationReport,
    SpaceDims, TableRowReport,
};
use zinbiel_core::linear::{parse_scalar, MatrixQ, Scalar};
use zinbiel_core::solver::{SolvedSpaces, SpaceKind};
use zinbiel_core::theory::ClaimVerdict;

pub fn q(x: &Scalar) -> String {
    x.to_string()
}

fn matrix(m: &MatrixQ) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(q).collect()).collect()
}

fn params(p: &BTreeMap<String, Scalar>) -> BTreeMap<String, String> {
    p.iter().map(|(k, v)| (k.clone(), q(v))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    pub dim: usize,
    pub params: BTreeMap<String, String>,
    /// `[i, j, k, coefficient]`, 1-based.
    pub products: Vec<(usize, usize, usize, String)>,
}

impl AlgebraJson {
    pub fn of(a: &AlgebraPresentation) -> Self {
        Self {
            name: a.name().to_string(),
            dim: a.dim(),
            params: params(a.params()),
            products: a
                .nonzero_constants()
                .map(|(i, j, k, c)| (i + 1, j + 1, k + 1, q(c)))
                .collect(),
        }
    }

    /// Rebuilds the presentation; `None` on malformed data.
    pub fn to_presentation(&self) -> Option<AlgebraPresentation> {
        let mut a = AlgebraPresentation::zero(self.name.clone(), self.dim);
        for (k, v) in &self.params {
            a = a.with_param(k.clone(), parse_scalar(v)?);
        }
        for (i, j, k, c) in &self.products {
            let (i, j, k) = (i.checked_sub(1)?, j.checked_sub(1)?, k.checked_sub(1)?);
            a.set_constant(i, j, k, parse_scalar(c)?).ok()?;
        }
        Some(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsJson {
    pub zinbiel: bool,
    pub nil_index: Option<usize>,
    pub annihilator_dim: usize,
}

impl FlagsJson {
    pub fn of(a: &AlgebraPresentation) -> Self {
        Self {
            zinbiel: check_zinbiel(a).holds,
            nil_index: power_chain(a, a.dim() + 1).nil_index,
            annihilator_dim: annihilator(a).dim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub dim: usize,
    /// Each basis element as a matrix whose column `j` is the image of `e_j`.
    pub basis: Vec<Vec<Vec<String>>>,
    pub parametric: Vec<Vec<String>>,
    /// Quasi-derivations only: dimension of the space of pairs `(d, d′)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_dim: Option<usize>,
}

/// One reconciliation line: either a claim check or a table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_row: Option<String>,
    pub recomputed: String,
    pub claimed: String,
    #[serde(rename = "match")]
    pub matches: bool,
    pub note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ReconRow {
    pub fn claim(c: &ClaimVerdict) -> Self {
        Self {
            claim_id: Some(c.claim_id.clone()),
            table_row: None,
            recomputed: if c.holds { "holds" } else { "falsified" }.to_string(),
            claimed: "holds".to_string(),
            matches: c.holds,
            note: c.note.clone(),
            witness: c.counterexample.as_ref().map(|w| w.to_string()),
        }
    }

    pub fn table(label: &str, r: &TableRowReport) -> Self {
        Self {
            claim_id: None,
            table_row: Some(format!("{label} {} ({})", r.table, r.condition)),
            recomputed: r.recomputed_dim.to_string(),
            claimed: r.claimed_dim.to_string(),
            matches: r.matches,
            note: r.note.clone(),
            witness: r.extra.as_ref().map(|m| format!("{m:?}")),
        }
    }

    pub fn smallness(label: &str, i: &InstanceReport) -> Option<Self> {
        let s = &i.smallness;
        let word = |b: bool| if b { "small" } else { "not small" }.to_string();
        Some(Self {
            claim_id: None,
            table_row: Some(format!("{label} smallness")),
            recomputed: word(s.recomputed),
            claimed: word(s.claimed?),
            matches: s.matches?,
            note: format!(
                "dim QΓ {}, dim C_d + scalars {}",
                i.dims.qcentroid, s.dim_cder_plus_scalars
            ),
            witness: s.witness.as_ref().map(|m| format!("{m:?}")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisJson {
    pub algebra: AlgebraJson,
    pub flags: FlagsJson,
    pub spaces: BTreeMap<String, SpaceJson>,
    pub reconciliation: Vec<ReconRow>,
}

pub fn space_json(sp: &SolvedSpaces, kind: SpaceKind) -> SpaceJson {
    let space = sp.get(kind);
    SpaceJson {
        dim: space.dim(),
        basis: space.basis().iter().map(matrix).collect(),
        parametric: space.parametric_form().rendered(),
        pair_dim: (kind == SpaceKind::QuasiDerivationProjection).then(|| sp.qder.dim()),
    }
}

pub fn analysis_json(
    a: &AlgebraPresentation,
    sp: &SolvedSpaces,
    kinds: &[SpaceKind],
    claims: &[ClaimVerdict],
    table: Option<&InstanceReport>,
) -> AnalysisJson {
    let mut reconciliation: Vec<ReconRow> = Vec::new();
    if let Some(i) = table {
        reconciliation.extend(i.table_rows.iter().map(|r| ReconRow::table(&i.label, r)));
        reconciliation.extend(ReconRow::smallness(&i.label, i));
    }
    reconciliation.extend(claims.iter().map(ReconRow::claim));
    AnalysisJson {
        algebra: AlgebraJson::of(a),
        flags: FlagsJson::of(a),
        spaces: kinds
            .iter()
            .map(|&k| (k.short_name().to_string(), space_json(sp, k)))
            .collect(),
        reconciliation,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsJson {
    pub der: usize,
    pub qder: usize,
    pub qder_pairs: usize,
    pub centroid: usize,
    pub qcentroid: usize,
    pub cder: usize,
}

impl From<&SpaceDims> for DimsJson {
    fn from(d: &SpaceDims) -> Self {
        Self {
            der: d.der,
            qder: d.qder,
            qder_pairs: d.qder_pairs,
            centroid: d.centroid,
            qcentroid: d.qcentroid,
            cder: d.cder,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub label: String,
    pub entry: String,
    pub params: BTreeMap<String, String>,
    pub sample: String,
    pub flags: FlagsJson,
    pub dims: DimsJson,
    pub verified: bool,
    pub reconciliation: Vec<ReconRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub entry: String,
    pub param: String,
    pub generic: Vec<(String, DimsJson)>,
    pub constant: bool,
    /// `(value, dims, differs from the generic dims)`.
    pub special: Vec<(String, DimsJson, bool)>,
}

impl From<&FamilyStability> for FamilyJson {
    fn from(f: &FamilyStability) -> Self {
        Self {
            entry: f.entry.clone(),
            param: f.param.clone(),
            generic: f.generic.iter().map(|(v, d)| (q(v), d.into())).collect(),
            constant: f.constant,
            special: f.special.iter().map(|(v, d, x)| (q(v), d.into(), *x)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionJson {
    pub dim: usize,
    pub claimed_small: Vec<String>,
    pub recomputed_small: Vec<String>,
    pub claimed_range: (usize, usize),
    pub recomputed_range: (usize, usize),
    pub small_matches: bool,
    pub range_matches: bool,
    pub note: String,
}

impl From<&DimensionReport> for DimensionJson {
    fn from(d: &DimensionReport) -> Self {
        Self {
            dim: d.dim,
            claimed_small: d.claimed_small.clone(),
            recomputed_small: d.recomputed_small.clone(),
            claimed_range: d.claimed_range,
            recomputed_range: d.recomputed_range,
            small_matches: d.small_matches,
            range_matches: d.range_matches,
            note: d.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadingJson {
    pub reading: String,
    pub rhs_dim: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectSumJson {
    pub left: String,
    pub right: String,
    pub lhs_dim: usize,
    pub readings: Vec<ReadingJson>,
    pub reconciliation: Vec<ReconRow>,
}

impl From<&DirectSumReport> for DirectSumJson {
    fn from(d: &DirectSumReport) -> Self {
        Self {
            left: d.left.clone(),
            right: d.right.clone(),
            lhs_dim: d.theorem.lhs_dim,
            readings: d
                .theorem
                .readings
                .iter()
                .map(|r| ReadingJson {
                    reading: r.reading.to_string(),
                    rhs_dim: r.rhs_dim,
                    equal: r.equal,
                })
                .collect(),
            reconciliation: std::iter::once(&d.theorem.verdict)
                .chain(&d.centralizers)
                .map(ReconRow::claim)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryJson {
    pub instances: usize,
    pub table_rows: usize,
    pub table_mismatches: usize,
    pub falsified_claims: usize,
    pub findings: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconcileJson {
    pub samples: usize,
    pub summary: SummaryJson,
    pub instances: Vec<InstanceJson>,
    pub families: Vec<FamilyJson>,
    pub dimensions: Vec<DimensionJson>,
    pub direct_sums: Vec<DirectSumJson>,
    pub known_issues: Vec<(String, String)>,
}

fn instance_json(i: &InstanceReport) -> InstanceJson {
    let mut reconciliation: Vec<ReconRow> = i
        .table_rows
        .iter()
        .map(|r| ReconRow::table(&i.label, r))
        .collect();
    reconciliation.extend(ReconRow::smallness(&i.label, i));
    reconciliation.extend(i.claims.iter().map(ReconRow::claim));
    InstanceJson {
        label: i.label.clone(),
        entry: i.entry.clone(),
        params: params(&i.params),
        sample: i.sample.short_name().to_string(),
        flags: FlagsJson {
            zinbiel: i.zinbiel,
            nil_index: i.nil_index,
            annihilator_dim: i.annihilator_dim,
        },
        dims: (&i.dims).into(),
        verified: i.verified,
        reconciliation,
    }
}

pub fn reconcile_json(r: &ReconciliationReport) -> ReconcileJson {
    ReconcileJson {
        samples: r.samples,
        summary: SummaryJson {
            instances: r.instances.len(),
            table_rows: r.table_rows().count(),
            table_mismatches: r.table_rows().filter(|(_, t)| !t.matches).count(),
            falsified_claims: r
                .instances
                .iter()
                .flat_map(|i| &i.claims)
                .filter(|c| !c.holds)
                .count(),
            findings: r.finding_count(),
        },
        instances: r.instances.iter().map(instance_json).collect(),
        families: r.families.iter().map(Into::into).collect(),
        dimensions: r.dimensions.iter().map(Into::into).collect(),
        direct_sums: r.direct_sums.iter().map(Into::into).collect(),
        known_issues: r
            .known_issues
            .iter()
            .map(|k| (k.entry.clone(), k.text.clone()))
            .collect(),
    }
}

/// One line for `catalog list`.
pub fn entry_line(e: &CatalogEntry) -> String {
    let mut line = format!("{:<6} dim {}", e.name, e.dim);
    for p in e.params {
        let special: Vec<String> = p.special.iter().map(|v| v.to_string()).collect();
        line.push_str(&format!("  param {} (special {})", p.name, special.join(", ")));
    }
    if let Some(other) = e.shares_products_with {
        line.push_str(&format!("  [products as {other}]"));
    }
    line
}
