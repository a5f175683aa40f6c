//! Embedded classification data. Products are 1-based `(i, j, k, coefficient)`
//! meaning `e_i e_j` has `coefficient` on `e_k`. Table grids are written row
//! by row exactly as printed: the quasi-centroid tables place the image of
//! `e_i` in row `i`, the derivation tables place it in column `i`.

use super::{CatalogEntry, Condition, FamilyParam, Table, TableRow};

use Condition::{Always, Equal, NotEqual};
use Table::{Derivation as Der, QuasiCentroid as QC, QuasiDerivation as QDer};

const fn qc(condition: Condition, grid: &'static str, dim: usize, small: bool) -> TableRow {
    TableRow {
        table: QC,
        condition,
        grid,
        stated_dim: Some(dim),
        small: Some(small),
    }
}

const fn der(condition: Condition, grid: &'static str) -> TableRow {
    TableRow {
        table: Der,
        condition,
        grid,
        stated_dim: None,
        small: None,
    }
}

const fn qder(condition: Condition, grid: &'static str) -> TableRow {
    TableRow {
        table: QDer,
        condition,
        grid,
        stated_dim: None,
        small: None,
    }
}

const LAMBDA: &[FamilyParam] = &[FamilyParam {
    name: "lambda",
    special: &[0],
    note: "classified with lambda != 0; the tables also carry a lambda = 0 row",
}];

const ALPHA: &[FamilyParam] = &[FamilyParam {
    name: "alpha",
    special: &[0, 1],
    note: "tables split at alpha = 0 and alpha = 1",
}];

const QDER_4_FULL: &str = "a11,a12,a13,0;a21,a22,a23,0;a31,a32,a33,0;a41,a42,a43,2*d33";
const DER_4_6: &str = "d22,0,0,0;0,d22,0,0;d31,d32,2*d22,0;d41,d42,0,2*d22";
const QDER_4_6: &str = "a11,a12,0,0;a21,a22,0,0;a31,a32,2*d22,0;a41,a42,0,2*d22";
const QDER_3_4: &str = "a11,a12,0;a21,a22,0;a31,a32,d11+d22";
const PRODUCTS_4_12: &[(usize, usize, usize, &str)] = &[(1, 2, 3, "1"), (2, 1, 4, "1")];
const SHARED_4_12: &str =
    "printed with the same products as Z4^12 (e1e2=e3, e2e1=e4) although its claimed tables differ; \
     distinct tables cannot all arise from one algebra";

pub(super) static CATALOG: [CatalogEntry; 24] = [
    CatalogEntry {
        name: "Z2^1",
        dim: 2,
        params: &[],
        products: &[(1, 1, 2, "1")],
        abbreviations: &[],
        rows: &[
            qc(Always, "a22,0;a21,a22", 2, true),
            der(Always, "d11,0;d21,2*d11"),
            qder(Always, "a11,0;a21,2*d11"),
        ],
        known_issues: &[
            "the quasi-centroid row derives a12 = 0, a22 = a11 and calls the result the centroid; \
             both the centroid and the quasi-centroid are recomputed for comparison",
        ],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z3^1",
        dim: 3,
        params: &[],
        products: &[],
        abbreviations: &[],
        rows: &[
            qc(Always, "a11,a12,a13;a21,a22,a23;a31,a32,a33", 9, true),
            der(Always, "d11,d12,d33;d21,d22,d23;d31,d32,d33"),
            qder(Always, "a11,a12,a33;a21,a22,a23;a31,a32,a33"),
        ],
        known_issues: &[
            "the worked quasi-centroid computation uses structure constants gamma_13^2 = gamma_31^2 = 1 \
             and arrives at a 3-parameter grid, although the class is abelian; the abelian class is used",
        ],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z3^2",
        dim: 3,
        params: &[],
        products: &[(1, 1, 3, "1")],
        abbreviations: &[],
        rows: &[
            qc(Always, "a33,a12,0;a21,a22,0;a31,a32,a33", 6, false),
            der(Always, "d11,0,0;d21,d22,0;d31,d32,2*d11"),
            qder(Always, "a11,a12,0;a21,a22,0;a31,a32,2*d11"),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z3^3",
        dim: 3,
        params: &[],
        products: &[(1, 1, 3, "1"), (2, 2, 3, "1")],
        abbreviations: &[],
        rows: &[
            qc(Always, "a33,a12,0;0,a33,0;a31,a32,a33", 4, true),
            der(Always, "d22,-d21,0;d21,d22,0;d31,d32,2*d22"),
            qder(Always, "a11,a12,0;a21,a22,0;a31,a32,2*d22"),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z3^4",
        dim: 3,
        params: &[],
        products: &[(1, 2, 3, "1/2"), (2, 1, 3, "-1/2")],
        abbreviations: &[],
        rows: &[
            qc(Always, "a33,0,0;0,a12,0;a31,a32,a33", 4, false),
            der(Always, "d33-d22,d12,0;d21,d22,0;d31,d32,d33"),
            qder(Always, QDER_3_4),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z3^5",
        dim: 3,
        params: &[],
        products: &[(2, 1, 3, "1")],
        abbreviations: &[],
        rows: &[
            qc(Always, "a11,a12,a13;0,a22,a23;a31,a32,a33", 8, false),
            der(Always, "d33-d22,0,0;0,d22,0;d31,d32,d33"),
            qder(Always, QDER_3_4),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z3^6",
        dim: 3,
        params: LAMBDA,
        products: &[(1, 1, 3, "1"), (1, 2, 3, "1"), (2, 2, 3, "lambda")],
        abbreviations: &[("g", "-lambda*a22 + lambda*a33")],
        rows: &[
            qc(NotEqual("lambda", 0), "a33,g,0;0,a22,0;a31,a32,a33", 4, false),
            qc(Equal("lambda", 0), "a33,0,0;a21,a22,0;a31,a32,a33", 5, false),
            der(NotEqual("lambda", 0), "d33-d22,d33-2*d22,0;-d33+2*d22,d22,0;d31,d32,d33"),
            der(Equal("lambda", 0), "d33-d22,0,0;-d33+2*d22,d22,0;d31,d32,d33"),
            qder(NotEqual("lambda", 0), "a11,a12,0;a21,a22,0;a31,a32,-d21+2*d22"),
            qder(Equal("lambda", 0), "a11,a12,0;a21,a22,0;a31,a32,-d21+2*d22"),
        ],
        known_issues: &[
            "the classification requires lambda != 0 while the tables also list lambda = 0; \
             lambda = 0 is computed as a separate special value",
        ],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z3^7",
        dim: 3,
        params: &[],
        products: &[(1, 1, 2, "1"), (1, 2, 3, "1/2"), (2, 1, 3, "1")],
        abbreviations: &[],
        rows: &[
            qc(Always, "a33,0,0;a32,a33,0;a31,a32,a33", 4, true),
            der(Always, "d11,0,0;d21,2*d11,0;d31,3/2*d21,3*d11"),
            qder(Always, "a11,0,0;a21,2*d11,0;a31,3/2*d21,d11+d22"),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^1",
        dim: 4,
        params: &[],
        products: &[
            (1, 1, 2, "1"),
            (1, 2, 3, "1"),
            (2, 1, 3, "2"),
            (1, 3, 4, "1"),
            (2, 2, 4, "3"),
            (3, 1, 4, "3"),
        ],
        abbreviations: &[],
        rows: &[
            qc(Always, "a44,0,0,0;a21,a44,0,0;a31,2*a21,a44,0;a41,3*a31,3*a21,a44", 10, true),
            der(Always, "1/2*d22,0,0,0;1/3*d32,d22,0,0;1/4*d42,d32,3/2*d22,0;d41,d42,2*d32,2*d22"),
            qder(Always, "a11,0,0,0;a21,2*d11,0,0;a31,d32,d11+d22,0;a41,4*d31,2*d32,2*d22"),
        ],
        known_issues: &[
            "the worked quasi-centroid computation for this class gives a different grid \
             (a11, a22, a31, a32, a33, a41, a43, a44 free) from the table row",
        ],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^2",
        dim: 4,
        params: &[],
        products: &[(1, 1, 3, "1"), (1, 2, 4, "1"), (1, 3, 4, "1"), (3, 1, 4, "2")],
        abbreviations: &[],
        rows: &[
            qc(Always, "a44,0,0,0;a21,a22,0,0;a31,a32,a44,0;a41,a42,2*a31,a44", 9, false),
            der(Always, "d11,0,0,0;d43-3*d31,2*d11,0,0;d31,0,2*d11,0;d41,d42,d43,3*d11"),
            qder(Always, "a11,a12,0,0;a21,a22,0,0;a31,a32,2*d11,0;a41,a42,d21+3*d31,d11+d33"),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^3",
        dim: 4,
        params: &[],
        products: &[(1, 1, 3, "1"), (1, 3, 4, "1"), (2, 2, 4, "1"), (3, 1, 4, "2")],
        abbreviations: &[],
        rows: &[
            qc(Always, "a44,0,0,0;0,a44,0,0;a31,a32,a44,0;a41,a42,2*a31,a44", 7, true),
            der(Always, "d11,0,0,0;0,3/2*d11,0,0;d31,0,2*d11,0;d41,d42,3*d31,3*d11"),
            qder(Always, "a11,a12,0,0;a21,a22,0,0;a31,a32,4*d22-3*d33,0;a41,a42,3*d31,2*d22"),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^4",
        dim: 4,
        params: &[],
        products: &[(1, 2, 3, "1"), (1, 3, 4, "1"), (2, 1, 3, "-1")],
        abbreviations: &[],
        rows: &[
            qc(Always, "a44,0,0,0;0,a22,0,0;a31,a32,a44,0;a41,a42,0,a44", 6, false),
            der(Always, "-d33+d44,0,0,0;d21,-d44+2*d33,0,0;0,0,d33,0;d41,d42,0,d44"),
            qder(Always, "a11,a12,0,0;a21,a22,0,0;a31,a32,d11+d22,0;a41,a42,0,d11+d33"),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^5",
        dim: 4,
        params: &[],
        products: &[(1, 2, 3, "1"), (1, 3, 4, "1"), (2, 1, 3, "-1"), (2, 2, 4, "1")],
        abbreviations: &[],
        rows: &[
            qc(Always, "a44,0,0,0;0,a44,0,0;a31,a32,a44,0;a41,a42,0,a44", 6, true),
            der(Always, "1/2*d22,0,0,0;-d43,d22,0,0;0,2*d43,3/2*d22,0;d41,d42,d43,2*d22"),
            qder(Always, "a11,a12,0,0;a21,a22,0,0;a31,a32,3*d22-d33,0;a41,a42,-d21,2*d22"),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^6",
        dim: 4,
        params: &[],
        products: &[
            (1, 1, 4, "1"),
            (1, 2, 3, "1"),
            (2, 1, 3, "-1"),
            (2, 2, 3, "-2"),
            (2, 2, 4, "1"),
        ],
        abbreviations: &[("h", "-2*a43 + a44")],
        rows: &[
            qc(Always, "a44,-a43,0,0;a43,h,0,0;a31,a32,h,-a43;a41,a42,a43,a44", 9, false),
            der(Always, DER_4_6),
            qder(Always, QDER_4_6),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^7",
        dim: 4,
        params: &[],
        products: &[(1, 2, 3, "1"), (2, 1, 4, "1"), (2, 2, 3, "-1")],
        abbreviations: &[],
        rows: &[
            qc(Always, "a33,-a33+a22,0,a14;0,a22,0,a24;a31,a32,a33,a34;a41,a42,0,a44", 9, false),
            der(Always, DER_4_6),
            qder(Always, QDER_4_6),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^8",
        dim: 4,
        params: ALPHA,
        products: &[(1, 1, 3, "1"), (1, 2, 4, "1"), (2, 1, 3, "-alpha"), (2, 2, 4, "-1")],
        abbreviations: &[],
        rows: &[
            qc(
                Always,
                "alpha*a21+a33,-alpha*a21+a21+a22-a33,0,0;a21,a22,0,0;a31,a32,a33,0;a41,a42,0,alpha*a21-a21+a33",
                7,
                false,
            ),
            der(
                NotEqual("alpha", 0),
                "d11,d12,0,0;d21,d12+d11-d21,0,0;d31,d32,2*d11-d21,d12;d41,d42,d21,d12+d11-2*d21",
            ),
            der(Equal("alpha", 0), "d11,0,0,0;0,d11,0,0;d31,d32,2*d11,0;d41,d42,0,2*d11"),
            qder(NotEqual("alpha", 0), "a11,a12,0,0;a21,a22,0,0;a31,a32,a33,d12;a41,a42,d21,d12+a33-d21"),
            qder(Equal("alpha", 0), "a11,a12,0,0;a21,a22,0,0;a31,a32,a33,0;a41,a42,0,a33"),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^9",
        dim: 4,
        params: ALPHA,
        products: &[
            (1, 1, 4, "1"),
            (1, 2, 4, "alpha"),
            (2, 1, 4, "-alpha"),
            (2, 2, 4, "1"),
            (3, 3, 4, "1"),
        ],
        abbreviations: &[],
        rows: &[
            qc(Always, "a44,a12,a13,0;0,-alpha*a12+a44,a23,0;0,0,a44,0;a41,a42,a43,a44", 6, false),
            der(NotEqual("alpha", 0), "d22,-d21,d13,0;d21,d22,d23,0;-d13,-d23,d22,0;d41,d42,d43,2*d22"),
            der(Equal("alpha", 0), "d22,-d21,0,0;d21,d22,0,0;0,0,d22,0;d41,d42,d43,2*d22"),
            qder(NotEqual("alpha", 0), QDER_4_FULL),
            qder(Equal("alpha", 0), QDER_4_FULL),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^10",
        dim: 4,
        params: &[],
        products: &[
            (1, 1, 4, "1"),
            (1, 3, 4, "1"),
            (2, 1, 4, "-1"),
            (2, 2, 4, "1"),
            (3, 1, 4, "1"),
        ],
        abbreviations: &[],
        rows: &[
            qc(Always, "a44,0,0,0;0,a44,a23,0;0,a32,a33,0;a41,a42,a43,a44", 7, false),
            der(Always, "d33,0,0,0;-d32,d33,0,0;0,d32,d33,0;d41,d42,d43,2*d33"),
            qder(Always, QDER_4_FULL),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^11",
        dim: 4,
        params: &[],
        products: &[(1, 1, 4, "1"), (1, 2, 4, "1"), (2, 1, 4, "-1"), (3, 3, 4, "1")],
        abbreviations: &[],
        rows: &[
            qc(Always, "a44,0,a13,0;0,a22,a23,0;0,0,a44,0;a41,a42,a43,a44", 7, false),
            der(Always, "d33,0,0,0;d21,d33,0,0;0,0,d33,0;d41,d42,d43,2*d33"),
            qder(Always, QDER_4_FULL),
        ],
        known_issues: &[],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^12",
        dim: 4,
        params: &[],
        products: PRODUCTS_4_12,
        abbreviations: &[],
        rows: &[
            qc(Always, "a33,0,0,a14;0,a22,0,a24;a31,a32,a33,a34;a41,a42,0,a44", 10, false),
            der(Always, "d44-d22,0,0,0;0,d22,0,0;d31,d32,d44,0;d41,d42,0,d44"),
            qder(Always, "a11,a12,0,0;a21,a22,0,0;a31,a32,d11+d22,0;a41,a42,0,d11+d22"),
        ],
        known_issues: &[
            "Z4^12 through Z4^16 are printed with identical products e1e2=e3, e2e1=e4; \
             this entry uses them as printed",
        ],
        shares_products_with: None,
    },
    CatalogEntry {
        name: "Z4^13",
        dim: 4,
        params: &[],
        products: PRODUCTS_4_12,
        abbreviations: &[],
        rows: &[
            qc(Always, "a33,a34,0,0;0,a44,0,0;a31,a32,a33,a34;a41,a42,0,a44", 7, false),
            der(Always, "d33-d22,d12,0,0;0,d22,0,0;d31,d32,d33,0;d41,d42,0,2*d22"),
            qder(Always, "a11,a12,0,0;a21,a22,0,0;a31,a32,d11+d22,0;a41,a42,0,2*d22"),
        ],
        known_issues: &[SHARED_4_12],
        shares_products_with: Some("Z4^12"),
    },
    CatalogEntry {
        name: "Z4^14",
        dim: 4,
        params: &[],
        products: PRODUCTS_4_12,
        abbreviations: &[],
        rows: &[
            qc(Always, "a11,a12,0,a14;0,a33,0,a24;a31,a32,a33,a34;a41,a42,0,a44", 11, false),
            der(Always, "d44-d22,d43,0,0;0,d22,0,0;d31,d32,2*d22,0;d41,d42,d43,d44"),
            qder(Always, "a11,a12,0,0;a21,a22,0,0;a31,a32,2*d22,0;a41,a42,d12,d11+d22"),
        ],
        known_issues: &[SHARED_4_12],
        shares_products_with: Some("Z4^12"),
    },
    CatalogEntry {
        name: "Z4^15",
        dim: 4,
        params: ALPHA,
        products: PRODUCTS_4_12,
        abbreviations: &[],
        rows: &[
            qc(NotEqual("alpha", 0), "a44,a43,0,0;a21,a33,0,0;a31,a32,a33,a21;a41,a42,a43,a44", 7, false),
            qc(Equal("alpha", 0), "a44,a43,0,0;0,a33,0,0;a31,a32,a33,0;a41,a42,a43,a44", 8, false),
            der(
                NotEqual("alpha", 1),
                "d44-d22,-1/2*d43*alpha+1/2*d43,0,0;0,d22,0,0;d31,d32,2*d22,0;d41,d42,d43,d44",
            ),
            qder(NotEqual("alpha", 1), "a11,a12,0,0;a21,a22,0,0;a31,a32,2*d22,0;a41,a42,a43,d11+d22"),
        ],
        known_issues: &[
            SHARED_4_12,
            "the tables split on alpha but alpha does not occur in the printed products, \
             so the recomputed spaces cannot depend on it",
        ],
        shares_products_with: Some("Z4^12"),
    },
    CatalogEntry {
        name: "Z4^16",
        dim: 4,
        params: &[],
        products: PRODUCTS_4_12,
        abbreviations: &[],
        rows: &[
            qc(Always, "a44,0,a13,0;0,a22,a23,0;0,0,a44,0;a41,a42,a43,a44", 7, false),
            der(Always, "2*d33-d22,d12,0,0;d21,d22,0,0;0,0,d33,0;d41,d42,d43,2*d33"),
            qder(Always, QDER_4_FULL),
        ],
        known_issues: &[SHARED_4_12],
        shares_products_with: Some("Z4^12"),
    },
];

/// Statements about each dimension as a whole: which classes are small and
/// the range of quasi-centroid dimensions.
pub(super) static DIMENSION_CLAIMS: [super::DimensionClaim; 3] = [
    super::DimensionClaim {
        dim: 2,
        small: &["Z2^1"],
        not_small: &[],
        dim_range: (2, 2),
        note: "every class small, quasi-centroid dimension two",
    },
    super::DimensionClaim {
        dim: 3,
        small: &["Z3^1", "Z3^3", "Z3^7"],
        not_small: &["Z3^2", "Z3^4", "Z3^5", "Z3^6"],
        dim_range: (4, 9),
        note: "all classes except Z3^2, Z3^4, Z3^5, Z3^6 small; dimensions between 4 and 9",
    },
    super::DimensionClaim {
        dim: 4,
        small: &["Z4^1", "Z4^3", "Z4^5", "Z4^9"],
        not_small: &[],
        dim_range: (7, 10),
        note: "dimensions between 7 and 10; the smallness statement lists Z4^1, Z4^3, Z4^5, Z4^9 \
               and then says every class is small and also that none is",
    },
];
