//! Command dispatch. Every command returns its exit code and output text;
//! nothing here touches stdout directly.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use zinbiel_core::algebra::{check_zinbiel, AlgebraPresentation};
use zinbiel_core::catalog::{
    catalog, entry, reconcile_catalog, reconcile_instance, CatalogError, CatalogSelection, InstanceReport,
    ReconciliationReport,
};
use zinbiel_core::linear::{parse_scalar, Scalar};
use zinbiel_core::solver::{SolvedSpaces, SpaceKind};
use zinbiel_core::theory::reconcile_claims_with;

use crate::file::{parse_algebra_file, ParseError};
use crate::report::{
    analysis_json, entry_line, q, reconcile_json, AnalysisJson, DimsJson, FlagsJson, ReconRow,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDING: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "zinbiel",
    about = "Exact operator spaces of finite-dimensional Zinbiel algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Checks the Zinbiel identity on every basis triple.
    Check { file: PathBuf },
    /// Solves the operator spaces of an algebra file.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        output: SpaceOutput,
    },
    /// Built-in classified algebras.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Compares recomputed spaces with the claimed tables.
    Reconcile {
        /// Catalog names; ignored with `--all`.
        names: Vec<String>,
        #[arg(long)]
        all: bool,
        /// Generic parameter samples per family.
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long)]
        json: bool,
        /// Exit with status 1 when any mismatch or falsified claim is found.
        #[arg(long)]
        strict: bool,
    },
    /// Space dimensions of a family across parameter values.
    Sweep {
        name: String,
        #[arg(long)]
        param: String,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    List,
    Analyze {
        name: String,
        /// `name=value`, repeatable.
        #[arg(long = "param", value_parser = parse_key_value)]
        params: Vec<(String, String)>,
        #[command(flatten)]
        output: SpaceOutput,
    },
}

#[derive(Debug, Args)]
struct SpaceOutput {
    /// Comma-separated subset of der,qder,centroid,qcentroid,cder.
    #[arg(long, value_delimiter = ',')]
    spaces: Vec<SpaceKind>,
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Text output (the default).
    #[arg(long)]
    table: bool,
}

impl SpaceOutput {
    fn kinds(&self) -> Vec<SpaceKind> {
        if self.spaces.is_empty() {
            return SpaceKind::ALL.to_vec();
        }
        let mut kinds = self.spaces.clone();
        kinds.sort_unstable();
        kinds.dedup();
        kinds
    }
}

fn parse_key_value(s: &str) -> Result<(String, String), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => (EXIT_INPUT, format!("error: {e}\n")),
    }
}

fn dispatch(command: Command) -> Result<(i32, String), CliError> {
    match command {
        Command::Check { file } => check(&read_algebra(&file)?),
        Command::Analyze { file, output } => {
            let a = read_algebra(&file)?;
            let sp = SolvedSpaces::solve(&a);
            let claims = reconcile_claims_with(&a, &sp);
            let doc = analysis_json(&a, &sp, &output.kinds(), &claims, None);
            render_analysis(&doc, output.json)
        }
        Command::Catalog(CatalogCommand::List) => {
            let mut out = String::new();
            for e in catalog() {
                writeln!(out, "{}", entry_line(e)).unwrap();
            }
            Ok((EXIT_OK, out))
        }
        Command::Catalog(CatalogCommand::Analyze { name, params, output }) => {
            let params: BTreeMap<String, String> = params.into_iter().collect();
            let inst = reconcile_instance(&name, &params)?;
            let doc = analysis_json(
                &inst.algebra,
                &inst.spaces,
                &output.kinds(),
                &inst.report.claims,
                Some(&inst.report),
            );
            render_analysis(&doc, output.json)
        }
        Command::Reconcile {
            names,
            all,
            samples,
            json,
            strict,
        } => {
            let selection = match (all, names.is_empty()) {
                (true, _) => CatalogSelection::All,
                (false, false) => CatalogSelection::Names(names),
                (false, true) => {
                    return Err(CliError::Usage(
                        "reconcile needs --all or at least one NAME".into(),
                    ))
                }
            };
            let report = reconcile_catalog(&selection, samples)?;
            let out = if json {
                to_json(&reconcile_json(&report))
            } else {
                reconcile_text(&report)
            };
            let code = if strict && report.finding_count() > 0 {
                EXIT_FINDING
            } else {
                EXIT_OK
            };
            Ok((code, out))
        }
        Command::Sweep {
            name,
            param,
            values,
            json,
        } => sweep(&name, &param, &values, json),
    }
}

fn read_algebra(path: &PathBuf) -> Result<AlgebraPresentation, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_algebra_file(&text).map_err(|source| CliError::Parse { path: shown, source })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn check(a: &AlgebraPresentation) -> Result<(i32, String), CliError> {
    let c = check_zinbiel(a);
    let out = match c.witness {
        None => format!(
            "{}: Zinbiel identity holds on all {} basis triples\n",
            a.name(),
            a.dim().pow(3)
        ),
        Some(w) => {
            let defect: Vec<String> = w.defect.coords().iter().map(q).collect();
            format!(
                "{}: Zinbiel identity fails at (e{} e{}) e{}; defect [{}]\n",
                a.name(),
                w.i + 1,
                w.j + 1,
                w.k + 1,
                defect.join(", ")
            )
        }
    };
    Ok((EXIT_OK, out))
}

fn render_analysis(doc: &AnalysisJson, json: bool) -> Result<(i32, String), CliError> {
    if json {
        return Ok((EXIT_OK, to_json(doc)));
    }
    let mut out = String::new();
    let a = &doc.algebra;
    let params: Vec<String> = a.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    write!(out, "{}  dim {}", a.name, a.dim).unwrap();
    if !params.is_empty() {
        write!(out, "  {}", params.join(" ")).unwrap();
    }
    writeln!(out).unwrap();
    write_flags(&mut out, &doc.flags);
    for (kind, space) in &doc.spaces {
        writeln!(out).unwrap();
        write!(out, "{kind}  dim {}", space.dim).unwrap();
        if let Some(p) = space.pair_dim {
            write!(out, "  (pairs {p})").unwrap();
        }
        writeln!(out).unwrap();
        write_grid(&mut out, &space.parametric);
    }
    if !doc.reconciliation.is_empty() {
        writeln!(out).unwrap();
        writeln!(out, "reconciliation").unwrap();
        for r in &doc.reconciliation {
            write_recon_row(&mut out, r);
        }
    }
    Ok((EXIT_OK, out))
}

fn write_flags(out: &mut String, f: &FlagsJson) {
    let nil = f.nil_index.map_or("none".to_string(), |s| s.to_string());
    writeln!(
        out,
        "zinbiel {}  nil-index {nil}  annihilator dim {}",
        if f.zinbiel { "yes" } else { "no" },
        f.annihilator_dim
    )
    .unwrap();
}

fn write_grid(out: &mut String, grid: &[Vec<String>]) {
    let width = grid
        .iter()
        .flatten()
        .map(|c| c.chars().count())
        .max()
        .unwrap_or(1);
    for row in grid {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:<width$}")).collect();
        writeln!(out, "  [ {} ]", cells.join("  ")).unwrap();
    }
}

fn write_recon_row(out: &mut String, r: &ReconRow) {
    let what = r.claim_id.as_deref().or(r.table_row.as_deref()).unwrap_or("");
    let verdict = if r.matches { "ok" } else { "MISMATCH" };
    writeln!(
        out,
        "  {verdict:<8} {what}: recomputed {}, claimed {}",
        r.recomputed, r.claimed
    )
    .unwrap();
    if !r.matches {
        if !r.note.is_empty() {
            writeln!(out, "           {}", r.note).unwrap();
        }
        if let Some(w) = &r.witness {
            writeln!(out, "           witness {w}").unwrap();
        }
    }
}

fn instance_text(out: &mut String, i: &InstanceReport) {
    let d = &i.dims;
    writeln!(
        out,
        "{}: der {} qder {} (pairs {}) centroid {} qcentroid {} cder {}{}",
        i.label,
        d.der,
        d.qder,
        d.qder_pairs,
        d.centroid,
        d.qcentroid,
        d.cder,
        if i.verified { "" } else { "  UNVERIFIED" }
    )
    .unwrap();
    let mut rows: Vec<ReconRow> = i
        .table_rows
        .iter()
        .map(|r| ReconRow::table(&i.label, r))
        .collect();
    rows.extend(ReconRow::smallness(&i.label, i));
    rows.extend(i.claims.iter().filter(|c| !c.holds).map(ReconRow::claim));
    for r in &rows {
        write_recon_row(out, r);
    }
}

fn reconcile_text(r: &ReconciliationReport) -> String {
    let mut out = String::new();
    for i in &r.instances {
        instance_text(&mut out, i);
    }
    if !r.families.is_empty() {
        writeln!(out, "\nfamilies").unwrap();
        for f in &r.families {
            let generic: Vec<String> = f.generic.iter().map(|(v, _)| q(v)).collect();
            writeln!(
                out,
                "  {} {}: generic {{{}}} {}",
                f.entry,
                f.param,
                generic.join(","),
                if f.constant { "constant" } else { "NOT constant" }
            )
            .unwrap();
            for (v, _, differs) in &f.special {
                let how = if *differs {
                    "differs from generic"
                } else {
                    "same as generic"
                };
                writeln!(out, "    {}={}: {how}", f.param, q(v)).unwrap();
            }
        }
    }
    if !r.dimensions.is_empty() {
        writeln!(out, "\ndimensions").unwrap();
        for d in &r.dimensions {
            writeln!(
                out,
                "  dim {}: small {:?} (claimed {:?}) {}; qcentroid range {:?} (claimed {:?}) {}",
                d.dim,
                d.recomputed_small,
                d.claimed_small,
                if d.small_matches { "ok" } else { "MISMATCH" },
                d.recomputed_range,
                d.claimed_range,
                if d.range_matches { "ok" } else { "MISMATCH" },
            )
            .unwrap();
        }
    }
    if !r.direct_sums.is_empty() {
        writeln!(out, "\ndirect sums").unwrap();
        for s in &r.direct_sums {
            let readings: Vec<String> = s
                .theorem
                .readings
                .iter()
                .map(|x| format!("{} {}{}", x.reading, x.rhs_dim, if x.equal { " =" } else { "" }))
                .collect();
            writeln!(
                out,
                "  {} + {}: lhs {}; {}",
                s.left,
                s.right,
                s.theorem.lhs_dim,
                readings.join(", ")
            )
            .unwrap();
            for c in std::iter::once(&s.theorem.verdict).chain(&s.centralizers) {
                write_recon_row(&mut out, &ReconRow::claim(c));
            }
        }
    }
    if !r.known_issues.is_empty() {
        writeln!(out, "\nknown issues").unwrap();
        for k in &r.known_issues {
            writeln!(out, "  {}: {}", k.entry, k.text).unwrap();
        }
    }
    writeln!(
        out,
        "\n{} instances, {} findings",
        r.instances.len(),
        r.finding_count()
    )
    .unwrap();
    out
}

#[derive(serde::Serialize)]
struct SweepRow {
    value: String,
    special: bool,
    differs: bool,
    zinbiel: bool,
    verified: bool,
    dims: DimsJson,
}

fn sweep(name: &str, param: &str, values: &[String], json: bool) -> Result<(i32, String), CliError> {
    let e = entry(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    let param = match param.trim() {
        "λ" => "lambda",
        "α" => "alpha",
        other => other,
    };
    let p = e
        .params
        .iter()
        .find(|p| p.name == param)
        .ok_or_else(|| CatalogError::UnexpectedParam {
            entry: e.name.to_string(),
            param: param.to_string(),
        })?;
    let is_special = |v: &Scalar| p.special.iter().any(|&s| Scalar::from_integer(s.into()) == *v);
    let mut rows = Vec::new();
    for text in values {
        let v = parse_scalar(text.trim()).ok_or_else(|| CatalogError::NonRational {
            param: param.to_string(),
            value: text.clone(),
        })?;
        let inst = reconcile_instance(
            e.name,
            &BTreeMap::from([(param.to_string(), text.trim().to_string())]),
        )?;
        rows.push(SweepRow {
            special: is_special(&v),
            value: q(&v),
            differs: false,
            zinbiel: inst.report.zinbiel,
            verified: inst.report.verified,
            dims: (&inst.report.dims).into(),
        });
    }
    if let Some(reference) = rows.iter().find(|r| !r.special).map(|r| r.dims.clone()) {
        for r in &mut rows {
            r.differs = r.dims != reference;
        }
    }
    if json {
        return Ok((EXIT_OK, to_json(&rows)));
    }
    let mut out = String::new();
    writeln!(
        out,
        "{:>8}  {:>4} {:>4} {:>5} {:>8} {:>9} {:>4}",
        p.name, "der", "qder", "pairs", "centroid", "qcentroid", "cder"
    )
    .unwrap();
    for r in &rows {
        let d = &r.dims;
        let mut marks = Vec::new();
        if r.special {
            marks.push("special");
        }
        if r.differs {
            marks.push("differs");
        }
        if !r.verified {
            marks.push("UNVERIFIED");
        }
        writeln!(
            out,
            "{:>8}  {:>4} {:>4} {:>5} {:>8} {:>9} {:>4}  {}",
            r.value,
            d.der,
            d.qder,
            d.qder_pairs,
            d.centroid,
            d.qcentroid,
            d.cder,
            marks.join(" ")
        )
        .unwrap();
    }
    Ok((EXIT_OK, out))
}
