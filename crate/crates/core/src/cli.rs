//! Command-line front end.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::census::{census_with, closed_form_count, CountReport, Methods};
use crate::error::{Error, Result};
use crate::golden::{golden_rows, same_type, GoldenRow, NodeIndex};
use crate::involution::{affine_kinds, classify_involutions, graded_data, graded_data_with, CaseTag, InvolutionSpec};
use crate::rootsys::{build_affine_default, AffineKind, FiniteKind};

#[derive(Debug, Parser)]
#[command(name = "z2ab", version, about = "Count abelian b0-stable subalgebras of g1 for involutions of simple Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List involution classes with their Kac tuples.
    ListInvolutions {
        #[command(flatten)]
        select: Selection,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count abelian subalgebras by the chosen methods.
    Count {
        #[command(flatten)]
        select: Selection,
        #[command(flatten)]
        run: RunOptions,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cross-check every class against the reference tables.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
        #[command(flatten)]
        run: RunOptions,
    },
    /// Print the reference tables next to the closed-form counts.
    Tables {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// List the subalgebras of one class as weight sets.
    Ideals {
        #[command(flatten)]
        select: Selection,
        #[arg(long, value_enum, default_value_t = SetMethod::Minuscule)]
        method: SetMethod,
    },
}

#[derive(Debug, Args)]
pub struct Selection {
    /// Finite type such as `F4`, or `all`.
    #[arg(long = "type", default_value = "all")]
    pub type_arg: String,
    /// Largest rank when `--type all`.
    #[arg(long, default_value_t = 6)]
    pub max_rank: usize,
    #[arg(long, conflicts_with = "q")]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub k: Option<u8>,
    /// Keep only classes of this case.
    #[arg(long, value_enum)]
    pub case: Option<CaseArg>,
}

#[derive(Debug, Args)]
pub struct RunOptions {
    #[arg(long, value_enum, default_value_t = Method::All)]
    pub method: Method,
    /// The oracle runs under `--method all` only up to this rank.
    #[arg(long, default_value_t = 6)]
    pub oracle_max_rank: usize,
    /// Directory holding one JSON report per class.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Minuscule,
    Oracle,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetMethod {
    Minuscule,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Hermitian,
    SemisimpleK1,
    SemisimpleK2,
}

impl From<CaseArg> for CaseTag {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Hermitian => CaseTag::Hermitian,
            CaseArg::SemisimpleK1 => CaseTag::SemisimpleK1,
            CaseArg::SemisimpleK2 => CaseTag::SemisimpleK2,
        }
    }
}

/// Runs the command line and returns the exit code: 0 on success, 1 on any
/// disagreement or internal failure, 2 on invalid input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            i32::from(!ok)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidRank { .. }
                | Error::UnknownType(_)
                | Error::UnsupportedAffine(_)
                | Error::InvalidSpec(_)
                | Error::Input(_) => 2,
                _ => 1,
            }
        }
    }
}

/// Text to print and whether every check passed.
fn execute(command: &Command) -> Result<(String, bool)> {
    match command {
        Command::ListInvolutions { select, format } => list_involutions(select, *format),
        Command::Count { select, run, format } => {
            let specs = select_specs(select)?;
            let reports = compute_reports(&specs, run)?;
            let ok = reports.iter().all(|r| r.agree);
            Ok((render_reports(&reports, *format)?, ok))
        }
        Command::Verify { max_rank, run } => verify(*max_rank, run),
        Command::Tables { max_rank, format } => tables(*max_rank, *format),
        Command::Ideals { select, method } => ideals(select, *method),
    }
}

fn base_types(select: &Selection) -> Result<Vec<FiniteKind>> {
    if select.type_arg.eq_ignore_ascii_case("all") {
        Ok(FiniteKind::all_up_to(select.max_rank))
    } else {
        Ok(vec![select.type_arg.parse()?])
    }
}

fn select_specs(select: &Selection) -> Result<Vec<InvolutionSpec>> {
    let bases = base_types(select)?;
    if select.p.is_some() || select.q.is_some() {
        let [base] = bases.as_slice() else {
            return Err(Error::Input("--p and --q need a single --type".into()));
        };
        let spec = match (select.p, select.q) {
            (Some(p), _) => InvolutionSpec::semisimple(AffineKind::new(*base, select.k.unwrap_or(1))?, p)?,
            (_, Some(q)) => {
                if select.k == Some(2) {
                    return Err(Error::Input("hermitian classes have k = 1".into()));
                }
                InvolutionSpec::hermitian(*base, q)?
            }
            _ => unreachable!(),
        };
        return Ok(vec![spec]);
    }
    let mut out = Vec::new();
    for base in bases {
        for spec in classify_involutions(base)? {
            let k_ok = select.k.is_none_or(|k| spec.affine.twist() == k);
            let case_ok = select.case.is_none_or(|c| spec.case == CaseTag::from(c));
            if k_ok && case_ok {
                out.push(spec);
            }
        }
    }
    Ok(out)
}

fn methods_for(spec: &InvolutionSpec, run: &RunOptions) -> Methods {
    let rank = spec.base().rank();
    match run.method {
        Method::Formula => Methods { minuscule: false, oracle: false },
        Method::Minuscule => Methods { minuscule: true, oracle: false },
        Method::Oracle => Methods { minuscule: false, oracle: true },
        Method::All => Methods { minuscule: true, oracle: rank <= run.oracle_max_rank },
    }
}

/// Reports in the order of `specs`, computed in parallel.
fn compute_reports(specs: &[InvolutionSpec], run: &RunOptions) -> Result<Vec<CountReport>> {
    let kinds: BTreeSet<String> = specs.iter().map(|s| s.affine.to_string()).collect();
    let windows: Vec<(AffineKind, Arc<_>)> = kinds
        .par_iter()
        .map(|name| {
            let affine = specs.iter().find(|s| s.affine.to_string() == *name).unwrap().affine;
            Ok((affine, Arc::new(build_affine_default(affine)?)))
        })
        .collect::<Result<_>>()?;
    specs
        .par_iter()
        .map(|spec| {
            let roots = windows.iter().find(|(a, _)| *a == spec.affine).unwrap().1.clone();
            cached_report(spec, roots, methods_for(spec, run), run.cache.as_deref())
        })
        .collect()
}

fn cached_report(
    spec: &InvolutionSpec,
    roots: Arc<crate::rootsys::AffineRootSystem>,
    methods: Methods,
    cache: Option<&Path>,
) -> Result<CountReport> {
    let path = cache.map(|dir| dir.join(format!("{}.json", crate::census::spec_key(&spec.affine.to_string(), &spec.s))));
    if let Some(path) = &path {
        if let Ok(text) = std::fs::read_to_string(path) {
            if let Ok(report) = serde_json::from_str::<CountReport>(&text) {
                let gd = graded_data_with(spec, roots.clone())?;
                let formula = closed_form_count(&gd, &gd.roots.finite_part()?)?;
                let fresh = report.count_formula == formula.count
                    && report.ingredients == formula.ingredients
                    && report.s == spec.s
                    && report.count_minuscule.is_some() == methods.minuscule
                    && report.count_oracle.is_some() == methods.oracle;
                if fresh {
                    return Ok(report);
                }
            }
        }
    }
    let report = census_with(spec, roots, methods)?.report;
    if let Some(path) = &path {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
    }
    Ok(report)
}

fn opt(c: Option<u128>) -> String {
    c.map_or_else(|| "-".to_string(), |c| c.to_string())
}

fn index_label(r: &CountReport) -> String {
    match r.q {
        Some(q) => format!("q={q}"),
        None => format!("p={}", r.p),
    }
}

fn tuple(s: &[crate::Int], sep: &str) -> String {
    s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn finite_type_name(affine_type: &str) -> String {
    crate::golden::parse_affine(affine_type)
        .and_then(|a| a.finite_type())
        .map_or_else(|_| "?".to_string(), |k| k.to_string())
}

pub fn render_reports(reports: &[CountReport], format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(reports)?;
            out.push('\n');
        }
        Format::Text => {
            for r in reports {
                let verdict = if r.agree { "agree" } else { "DISAGREE" };
                writeln!(
                    out,
                    "{} {} g0={}: formula={} minuscule={} oracle={} {verdict}",
                    r.affine_type,
                    index_label(r),
                    r.g0,
                    r.count_formula,
                    opt(r.count_minuscule),
                    opt(r.count_oracle)
                )
                .unwrap();
            }
        }
        Format::Csv => {
            out.push_str("base_type,affine_type,s,k,case,p,q,g0,count_formula,count_minuscule,count_oracle,agree\n");
            for r in reports {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    r.base_type,
                    r.affine_type,
                    tuple(&r.s, ";"),
                    r.k,
                    r.case,
                    r.p,
                    r.q.map_or(String::new(), |q| q.to_string()),
                    r.g0,
                    r.count_formula,
                    r.count_minuscule.map_or(String::new(), |c| c.to_string()),
                    r.count_oracle.map_or(String::new(), |c| c.to_string()),
                    r.agree
                )
                .unwrap();
            }
        }
        Format::Md => {
            out.push_str("| type | p/q | Δ_f | g0 | formula | minuscule | oracle | agree |\n");
            out.push_str("|---|---|---|---|---|---|---|---|\n");
            for r in reports {
                writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} | {} |",
                    r.affine_type,
                    index_label(r),
                    finite_type_name(&r.affine_type),
                    r.g0,
                    r.count_formula,
                    opt(r.count_minuscule),
                    opt(r.count_oracle),
                    if r.agree { "yes" } else { "no" }
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct InvolutionRow {
    affine_type: String,
    s: Vec<crate::Int>,
    k: crate::Int,
    case: CaseTag,
    p: usize,
    q: Option<usize>,
    g0: String,
}

fn list_involutions(select: &Selection, format: Format) -> Result<(String, bool)> {
    let rows = select_specs(select)?
        .par_iter()
        .map(|spec| {
            Ok(InvolutionRow {
                affine_type: spec.affine.to_string(),
                s: spec.s.clone(),
                k: spec.k(),
                case: spec.case,
                p: spec.p,
                q: spec.q,
                g0: graded_data(spec)?.g0_type(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = String::new();
    let idx = |r: &InvolutionRow| r.q.map_or_else(|| format!("p={}", r.p), |q| format!("q={q}"));
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(&rows)?;
            out.push('\n');
        }
        Format::Text => {
            for r in &rows {
                writeln!(out, "{} s=({}) k={} {} {} g0={}", r.affine_type, tuple(&r.s, ","), r.k, r.case, idx(r), r.g0)
                    .unwrap();
            }
        }
        Format::Csv => {
            out.push_str("affine_type,s,k,case,p,q,g0\n");
            for r in &rows {
                let q = r.q.map_or(String::new(), |q| q.to_string());
                writeln!(out, "{},{},{},{},{},{},{}", r.affine_type, tuple(&r.s, ";"), r.k, r.case, r.p, q, r.g0).unwrap();
            }
        }
        Format::Md => {
            out.push_str("| type | s | k | case | p/q | g0 |\n|---|---|---|---|---|---|\n");
            for r in &rows {
                writeln!(out, "| {} | ({}) | {} | {} | {} | {} |", r.affine_type, tuple(&r.s, ","), r.k, r.case, idx(r), r.g0)
                    .unwrap();
            }
        }
    }
    Ok((out, true))
}

/// Golden rows of `base`, each with the canonical tuple of its class.
fn golden_for(base: FiniteKind, rows: &[GoldenRow]) -> Result<Vec<(GoldenRow, AffineKind, Vec<crate::Int>)>> {
    let kinds = affine_kinds(base);
    rows.iter()
        .filter(|r| kinds.contains(&r.affine))
        .map(|r| {
            let spec = r.spec()?;
            Ok((r.clone(), spec.affine, spec.canonical_form()))
        })
        .collect()
}

fn verify(max_rank: usize, run: &RunOptions) -> Result<(String, bool)> {
    let mut bases = FiniteKind::all_up_to(max_rank);
    for e in FiniteKind::exceptional() {
        if !bases.contains(&e) {
            bases.push(e);
        }
    }
    let mut specs = Vec::new();
    for base in &bases {
        specs.extend(classify_involutions(*base)?);
    }
    let reports = compute_reports(&specs, run)?;
    let table = golden_rows();
    let mut out = String::new();
    let mut failures = 0;
    let mut matched_rows = 0;
    let mut expected_rows = 0;
    for base in &bases {
        let golden = golden_for(*base, &table)?;
        expected_rows += golden.len();
        for (spec, report) in specs.iter().zip(&reports).filter(|(s, _)| s.base() == *base) {
            let delta_f = spec.affine.finite_type()?.to_string();
            let rows: Vec<&GoldenRow> =
                golden.iter().filter(|(_, a, s)| *a == spec.affine && *s == spec.s).map(|(r, _, _)| r).collect();
            matched_rows += rows.len();
            let table_ok = !rows.is_empty()
                && rows.iter().all(|r| {
                    r.count == report.count_formula && same_type(&r.g0, &report.g0) && same_type(&r.delta_f, &delta_f)
                });
            let ok = report.agree && table_ok;
            if !ok {
                failures += 1;
            }
            let table_count = rows.first().map_or_else(|| "missing".to_string(), |r| r.count.to_string());
            writeln!(
                out,
                "{} {} {} g0={} formula={} minuscule={} oracle={} table={}",
                if ok { "ok  " } else { "FAIL" },
                spec.affine,
                match spec.q {
                    Some(q) => format!("q={q}"),
                    None => format!("p={}", spec.p),
                },
                report.g0,
                report.count_formula,
                opt(report.count_minuscule),
                opt(report.count_oracle),
                table_count
            )
            .unwrap();
        }
    }
    if matched_rows != expected_rows {
        failures += 1;
        writeln!(out, "FAIL {} table rows match no class", expected_rows - matched_rows).unwrap();
    }
    writeln!(out, "{} classes, {} table rows, {failures} failures", specs.len(), matched_rows).unwrap();
    Ok((out, failures == 0))
}

fn tables(max_rank: usize, format: Format) -> Result<(String, bool)> {
    let rows: Vec<GoldenRow> = golden_rows().into_iter().filter(|r| r.affine.base().rank() <= max_rank).collect();
    let computed = rows
        .par_iter()
        .map(|r| {
            let gd = graded_data(&r.spec()?)?;
            Ok(closed_form_count(&gd, &gd.roots.finite_part()?)?.count)
        })
        .collect::<Result<Vec<u128>>>()?;
    let ok = rows.iter().zip(&computed).all(|(r, c)| r.count == *c);
    let mut out = String::new();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                affine_type: String,
                k: u8,
                p_or_q: String,
                delta_f_type: &'a str,
                g0_type: &'a str,
                count: u128,
                computed: u128,
            }
            let v: Vec<Row> = rows
                .iter()
                .zip(&computed)
                .map(|(r, c)| Row {
                    affine_type: r.affine.to_string(),
                    k: r.k(),
                    p_or_q: r.index.to_string(),
                    delta_f_type: &r.delta_f,
                    g0_type: &r.g0,
                    count: r.count,
                    computed: *c,
                })
                .collect();
            out = serde_json::to_string_pretty(&v)?;
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("affine_type,k,p_or_q,delta_f_type,g0_type,count,computed\n");
            for (r, c) in rows.iter().zip(&computed) {
                writeln!(out, "{},{c}", r.to_csv_line()).unwrap();
            }
        }
        Format::Text | Format::Md => {
            for (title, pick) in [
                ("k = 1, semisimple g0", 0),
                ("k = 2", 1),
                ("hermitian, type of [g0, g0]", 2),
            ] {
                writeln!(out, "### {title}\n").unwrap();
                out.push_str("| type | p/q | Δ_f | g0 | count | computed |\n|---|---|---|---|---|---|\n");
                for (r, c) in rows.iter().zip(&computed) {
                    let group = match (r.index, r.k()) {
                        (NodeIndex::Q(_), _) => 2,
                        (_, 1) => 0,
                        _ => 1,
                    };
                    if group == pick {
                        writeln!(out, "| {} | {} | {} | {} | {} | {c} |", r.affine, r.index, r.delta_f, r.g0, r.count)
                            .unwrap();
                    }
                }
                out.push('\n');
            }
        }
    }
    Ok((out, ok))
}

fn ideals(select: &Selection, method: SetMethod) -> Result<(String, bool)> {
    let specs = select_specs(select)?;
    let [spec] = specs.as_slice() else {
        return Err(Error::Input(format!("`ideals` needs exactly one class, the selection has {}", specs.len())));
    };
    let methods = match method {
        SetMethod::Minuscule => Methods { minuscule: true, oracle: false },
        SetMethod::Oracle => Methods { minuscule: false, oracle: true },
    };
    let census = census_with(spec, Arc::new(build_affine_default(spec.affine)?), methods)?;
    let sets = census.minuscule.or(census.oracle).expect("one method ran");
    let mut out = String::new();
    writeln!(out, "{} {} g0={}", spec.affine, census.report.q.map_or_else(|| format!("p={}", spec.p), |q| format!("q={q}")), census.report.g0).unwrap();
    for s in &sets {
        writeln!(out, "{s}").unwrap();
    }
    writeln!(out, "count: {}", sets.len()).unwrap();
    Ok((out, sets.len() as u128 == census.report.count_formula))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["z2ab"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn count_f4() {
        let (code, out, _) = run_str(&["count", "--type", "F4", "--p", "1", "--method", "all"]);
        assert_eq!(code, 0);
        assert_eq!(out, "F4^(1) p=1 g0=A1xC3: formula=23 minuscule=23 oracle=23 agree\n");
    }

    #[test]
    fn invalid_inputs_exit_2() {
        assert_eq!(run_str(&["count", "--type", "Z9"]).0, 2);
        assert_eq!(run_str(&["count", "--type", "B3", "--p", "1"]).0, 2);
        assert_eq!(run_str(&["count", "--bogus"]).0, 2);
        assert_eq!(run_str(&["ideals", "--type", "A3"]).0, 2);
    }

    #[test]
    fn ideals_listing() {
        let (code, out, _) = run_str(&["ideals", "--type", "A1", "--q", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "A1^(1) q=1 g0=T1\n{}\n{(0,1)}\n{(1,0)}\ncount: 3\n");
    }

    #[test]
    fn empty_selection_gives_header() {
        let (code, out, _) = run_str(&["count", "--type", "G2", "--k", "2", "--format", "md"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2);
    }
}
