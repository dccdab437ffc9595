//! The `eqcolor` command-line tool.
//!
//! Exit codes: 0 success, 1 infeasible (or a failed check), 2 usage or
//! domain error, 3 search budget exceeded.

pub mod sweep;

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::closedform::{equitable_threshold_product_with, Case1Reading, ProductSpec, ThresholdReport};
use crate::colorer::{color_multipartite, color_product, Construction};
use crate::error::{Error, Result};
use crate::graphs::dimacs::{parse_coloring, parse_graph, write_coloring_json, write_coloring_lines, write_graph};
use crate::graphs::{build_multipartite, build_product, verify_coloring, Coloring, Graph, Verdict};
use crate::oracle::{self, k_colorable, thresholds_from_profile};

pub use sweep::{enumerate_specs, run_sweep, SweepConfig, SweepReport, SweepRow};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INFEASIBLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "eqcolor",
    version,
    about = "Equitable colorings of K_{m1..mr} x K_n and complete multipartite graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form equitable chromatic number and threshold of a product.
    Compute(ComputeArgs),
    /// Build and verify an equitable k-coloring.
    Construct(ConstructArgs),
    /// Check a coloring file against a DIMACS graph.
    Verify(VerifyArgs),
    /// Exact search on the explicit graph.
    Oracle(OracleArgs),
    /// Write the graph in DIMACS format.
    Graph(GraphArgs),
    /// Compare the closed forms with exact search over a box of specs.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Part sizes m_1,...,m_r.
    #[arg(long, value_delimiter = ',', required = true)]
    pub parts: Vec<usize>,
    /// Order of the complete factor K_n.
    #[arg(long)]
    pub n: usize,
}

impl SpecArgs {
    fn spec(&self) -> Result<ProductSpec> {
        ProductSpec::new(self.parts.clone(), self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    Floor,
    Ceiling,
}

impl From<Reading> for Case1Reading {
    fn from(r: Reading) -> Self {
        match r {
            Reading::Floor => Case1Reading::Floor,
            Reading::Ceiling => Case1Reading::Ceiling,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
    /// Also (or, when m > n, only) run the exact search.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value = "floor")]
    pub reading: Reading,
    #[arg(long, env = "EQCOLOR_BUDGET", default_value_t = oracle::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColoringFormat {
    /// `s v c` lines.
    Dimacs,
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "dimacs")]
    pub format: ColoringFormat,
    /// Color the complete multipartite graph K_{n*m_1,...,n*m_r} instead.
    #[arg(long)]
    pub multipartite: bool,
    #[arg(long, env = "EQCOLOR_BUDGET", default_value_t = oracle::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write the coloring here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    pub coloring: PathBuf,
    /// Number of colors, for `s v c` files whose top colors are unused.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Decide a single k instead of computing both thresholds.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub multipartite: bool,
    #[arg(long, env = "EQCOLOR_BUDGET", default_value_t = oracle::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub multipartite: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    pub max_r: usize,
    #[arg(long, default_value_t = 2)]
    pub max_part: usize,
    #[arg(long, default_value_t = 5)]
    pub max_n: usize,
    /// Largest vertex count handed to the exact search.
    #[arg(long, default_value_t = 18)]
    pub oracle_cap: usize,
    #[arg(long, env = "EQCOLOR_BUDGET", default_value_t = oracle::DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, value_enum, default_value = "floor")]
    pub reading: Reading,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
    /// Restrict to one spec (requires --n).
    #[arg(long, value_delimiter = ',', requires = "n")]
    pub parts: Option<Vec<usize>>,
    #[arg(long, requires = "parts")]
    pub n: Option<usize>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            code
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Compute(a) => cmd_compute(&a, out),
        Command::Construct(a) => cmd_construct(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Oracle(a) => cmd_oracle(&a, out),
        Command::Graph(a) => cmd_graph(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "eqcolor: {e}");
            if matches!(e, Error::OutOfScope { .. }) {
                let _ = writeln!(
                    err,
                    "eqcolor: rerun with --oracle for an exact answer on the explicit graph"
                );
            }
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Domain(format!("write failed: {e}")))
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))
}

fn spec_label(spec: &ProductSpec) -> String {
    let parts: Vec<String> = spec.parts().iter().map(|p| p.to_string()).collect();
    format!("K_{{{}}} x K_{}", parts.join(","), spec.n())
}

/// The stable JSON object of `compute`.
#[derive(Serialize)]
struct ComputeJson<'a> {
    parts: &'a [usize],
    n: usize,
    chi_eq: usize,
    chi_eq_star: usize,
    h: usize,
    h_star: Option<usize>,
    case: &'static str,
    lin_chang_bound: usize,
}

#[derive(Serialize)]
struct OracleJson<'a> {
    parts: &'a [usize],
    n: usize,
    oracle_chi_eq: usize,
    oracle_chi_eq_star: usize,
}

pub fn compute_json(spec: &ProductSpec, report: &ThresholdReport) -> String {
    serde_json::to_string(&ComputeJson {
        parts: spec.parts(),
        n: spec.n(),
        chi_eq: report.chi_eq,
        chi_eq_star: report.chi_eq_star,
        h: report.h,
        h_star: report.h_star,
        case: report.case.as_str(),
        lin_chang_bound: report.lin_chang_bound,
    })
    .expect("plain data serializes")
}

fn compute_text(spec: &ProductSpec, r: &ThresholdReport) -> String {
    let t = &r.condition_trace;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{}  (r = {}, m = {}, n = {})",
        spec_label(spec),
        spec.r(),
        spec.m(),
        spec.n()
    );
    let _ = writeln!(s, "χ=  = {}  (h = {})", r.chi_eq, r.h);
    let hs = r.h_star.map_or("-".to_string(), |h| h.to_string());
    let _ = writeln!(s, "χ=* = {}  ({}, h* = {})", r.chi_eq_star, r.case.as_str(), hs);
    let _ = writeln!(s, "ceil(mn/(m+1)) = {}", r.lin_chang_bound);
    let part = t
        .part_without_partition
        .map_or("none".to_string(), |i| (i + 1).to_string());
    let _ = writeln!(
        s,
        "case split: floor sum short = {}, ceiling sum short = {}, part without (m+1)-partition = {}",
        t.floor_sum_short, t.ceiling_sum_short, part
    );
    s
}

fn oracle_thresholds(g: &Graph, budget: u64) -> Result<(usize, usize)> {
    let profile = oracle::feasibility_profile(g, budget)?;
    Ok(thresholds_from_profile(&profile))
}

fn cmd_compute(a: &ComputeArgs, out: &mut dyn Write) -> Result<u8> {
    let spec = a.spec.spec()?;
    let report = match equitable_threshold_product_with(&spec, a.reading.into()) {
        Ok(r) => Some(r),
        Err(Error::OutOfScope { .. }) if a.oracle => None,
        Err(e) => return Err(e),
    };
    let exact = if a.oracle {
        Some(oracle_thresholds(&build_product(&spec), a.budget)?)
    } else {
        None
    };

    let text = match (a.format, &report, exact) {
        (ReportFormat::Json, Some(r), _) => compute_json(&spec, r) + "\n",
        (ReportFormat::Json, None, Some((chi, star))) => {
            let j = OracleJson {
                parts: spec.parts(),
                n: spec.n(),
                oracle_chi_eq: chi,
                oracle_chi_eq_star: star,
            };
            serde_json::to_string(&j).expect("plain data serializes") + "\n"
        }
        (ReportFormat::Text, r, exact) => {
            let mut s = match r {
                Some(r) => compute_text(&spec, r),
                None => format!(
                    "{}  (m = {} > n = {}, closed forms do not apply)\n",
                    spec_label(&spec),
                    spec.m(),
                    spec.n()
                ),
            };
            if let Some((chi, star)) = exact {
                let _ = writeln!(s, "exact search: χ= = {chi}, χ=* = {star}");
            }
            s
        }
        (ReportFormat::Json, None, None) => unreachable!("out-of-scope specs without --oracle return early"),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn render_coloring(c: &Coloring, format: ColoringFormat) -> String {
    match format {
        ColoringFormat::Dimacs => write_coloring_lines(c),
        ColoringFormat::Json => write_coloring_json(c) + "\n",
        ColoringFormat::Text => {
            let mut s = String::new();
            for (i, class) in c.classes().iter().enumerate() {
                let members: Vec<String> = class.iter().map(|v| (v + 1).to_string()).collect();
                let _ = writeln!(s, "color {}: {}", i + 1, members.join(" "));
            }
            s
        }
    }
}

fn cmd_construct(a: &ConstructArgs, out: &mut dyn Write) -> Result<u8> {
    let spec = a.spec.spec()?;
    if a.k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let (graph, coloring) = if a.multipartite {
        let sizes = spec.block_sizes();
        (build_multipartite(&sizes)?, color_multipartite(&sizes, a.k)?)
    } else {
        let c = match color_product(&spec, a.k, a.budget)? {
            Construction::Witness { coloring, .. } => Some(coloring),
            Construction::Infeasible => None,
        };
        (build_product(&spec), c)
    };
    let Some(coloring) = coloring else {
        emit(out, &format!("infeasible: no equitable {}-coloring\n", a.k))?;
        return Ok(EXIT_INFEASIBLE);
    };
    let verdict = verify_coloring(&graph, &coloring)?;
    assert!(verdict.is_ok(), "constructed coloring failed verification: {verdict}");

    let text = render_coloring(&coloring, a.format);
    match &a.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let graph = parse_graph(&read_file(&a.graph)?)?;
    let coloring = parse_coloring(&read_file(&a.coloring)?, a.k)?;
    let verdict = verify_coloring(&graph, &coloring)?;
    emit(out, &format!("{verdict}\n"))?;
    Ok(if matches!(verdict, Verdict::Ok) {
        EXIT_OK
    } else {
        EXIT_INFEASIBLE
    })
}

fn explicit_graph(spec: &SpecArgs, multipartite: bool) -> Result<Graph> {
    let spec = spec.spec()?;
    if multipartite {
        build_multipartite(&spec.block_sizes())
    } else {
        Ok(build_product(&spec))
    }
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<u8> {
    let g = explicit_graph(&a.spec, a.multipartite)?;
    match a.k {
        Some(k) => {
            let r = k_colorable(&g, k, a.budget)?;
            if r.feasible {
                emit(out, &format!("feasible k={k} (nodes {})\n", r.nodes_explored))?;
                Ok(EXIT_OK)
            } else {
                emit(out, &format!("infeasible k={k} (nodes {})\n", r.nodes_explored))?;
                Ok(EXIT_INFEASIBLE)
            }
        }
        None => {
            let (chi, star) = oracle_thresholds(&g, a.budget)?;
            emit(out, &format!("χ= = {chi}\nχ=* = {star}\n"))?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_graph(a: &GraphArgs, out: &mut dyn Write) -> Result<u8> {
    let g = explicit_graph(&a.spec, a.multipartite)?;
    emit(out, &write_graph(&g))?;
    Ok(EXIT_OK)
}

fn sweep_text(report: &SweepReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<14} {:>3} {:>8} {:>7} {:>8} {:>6}",
        "spec", "k", "formula", "oracle", "colorer", "agree"
    );
    let show = |v: Option<bool>| v.map_or("-".to_string(), |b| if b { "yes".into() } else { "no".into() });
    for r in &report.rows {
        let parts: Vec<String> = r.parts.iter().map(|p| p.to_string()).collect();
        let label = format!("({}) n={}", parts.join(","), r.n);
        let flag = if r.budget_exceeded { "  budget" } else { "" };
        let _ = writeln!(
            s,
            "{:<14} {:>3} {:>8} {:>7} {:>8} {:>6}{}",
            label,
            r.k,
            show(r.formula_feasible),
            show(r.oracle_feasible),
            show(r.colorer_feasible),
            show(r.agree),
            flag
        );
    }
    let _ = writeln!(s);
    for sp in &report.specs {
        let parts: Vec<String> = sp.parts.iter().map(|p| p.to_string()).collect();
        let exact = match (sp.oracle_chi_eq, sp.oracle_chi_eq_star) {
            (Some(a), Some(b)) => format!("{a}/{b}"),
            _ => "-".into(),
        };
        let _ = writeln!(
            s,
            "({}) n={}: formula χ=/χ=* = {}/{} ({}), exact = {}, reading supported: {:?}{}",
            parts.join(","),
            sp.n,
            sp.chi_eq,
            sp.chi_eq_star,
            sp.case.as_str(),
            exact,
            sp.reading_support,
            if sp.thresholds_match == Some(false) {
                "  MISMATCH"
            } else {
                ""
            }
        );
    }
    let _ = writeln!(
        s,
        "rows: {}, disagreements: {}, threshold mismatches: {}, budget exceeded: {}",
        report.rows.len(),
        report.disagreements,
        report.threshold_mismatches,
        report.budget_exceeded_rows
    );
    s
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<u8> {
    let cfg = SweepConfig {
        max_r: a.max_r,
        max_part: a.max_part,
        max_n: a.max_n,
        oracle_cap: a.oracle_cap.min(oracle::MAX_VERTICES),
        budget: a.budget,
        reading: a.reading.into(),
    };
    let specs = match (&a.parts, a.n) {
        (Some(parts), Some(n)) => {
            let spec = ProductSpec::new(parts.clone(), n)?;
            if !spec.formula_applicable() {
                return Err(Error::OutOfScope { m: spec.m(), n });
            }
            vec![spec]
        }
        _ => enumerate_specs(&cfg),
    };
    let report = run_sweep(&specs, &cfg)?;
    let text = match a.format {
        ReportFormat::Json => serde_json::to_string(&report).expect("plain data serializes") + "\n",
        ReportFormat::Text => sweep_text(&report),
    };
    emit(out, &text)?;
    Ok(if report.all_agree() { EXIT_OK } else { EXIT_INFEASIBLE })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_from_args(
            std::iter::once("eqcolor").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn compute_json_schema() {
        let (code, out, _) = run_args(&["compute", "--parts", "1,2", "--n", "3", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let keys = [
            "parts",
            "n",
            "chi_eq",
            "chi_eq_star",
            "h",
            "h_star",
            "case",
            "lin_chang_bound",
        ];
        let at: Vec<usize> = keys.iter().map(|k| out.find(&format!("\"{k}\":")).unwrap()).collect();
        assert!(at.windows(2).all(|w| w[0] < w[1]), "{out}");
    }

    #[test]
    fn out_of_scope_exits_two() {
        let (code, _, err) = run_args(&["compute", "--parts", "3,3", "--n", "2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--oracle"));
        let (code, out, _) = run_args(&["compute", "--parts", "3,3", "--n", "2", "--oracle"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("exact search"));
    }

    #[test]
    fn construct_exit_codes() {
        let (code, out, _) = run_args(&["construct", "--parts", "1,1", "--n", "3", "--k", "2"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 6);
        let (code, _, _) = run_args(&["construct", "--parts", "1,1", "--n", "3", "--k", "1"]);
        assert_eq!(code, EXIT_INFEASIBLE);
        let (code, _, _) = run_args(&["construct", "--parts", "1,1", "--n", "3", "--k", "0"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn bad_arguments_exit_two() {
        assert_eq!(run_args(&["compute", "--parts", "x", "--n", "3"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["compute", "--parts", "0", "--n", "3"]).0, EXIT_USAGE);
    }

    #[test]
    fn oracle_single_k() {
        let (code, out, _) = run_args(&["oracle", "--parts", "3,3", "--n", "1", "--k", "3", "--multipartite"]);
        assert_eq!(code, EXIT_INFEASIBLE);
        assert!(out.starts_with("infeasible"));
    }
}
