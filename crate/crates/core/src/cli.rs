//! Command-line surface: argument parsing, dispatch, verification suites and
//! report rendering.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::canon::{bar_matrix, CanonStore, DiskCache};
use crate::coeff::{GammaLaurent, SpecName, Specialization};
use crate::conject::{conj_check, family_2x3_cells, m2_cells, ConjectureVariant, VariantName};
use crate::error::{Error, Result};
use crate::expnat::{
    bar_via_factorization, key_mu_sides, key_tau_sides, label_2x2, CellOperators, FactorOrder, LocalExp,
};
use crate::matgrid::{cells_up_to, enumerate_cell, hasse_graph, MatIdx, PathOrder};
use crate::minors::{delta_compatibility, quantum_minor, MinorSpec};
use crate::oqpq::{Algebra, Element};
use crate::qcomb;
use crate::uqminus::embed::verify_embedding;

pub const CACHE_ENV: &str = "QCANON_CACHE";
pub const DEFAULT_CACHE: &str = ".qcanon-cache";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Qidentities,
    Exponential,
    Minors,
    Positivity,
    Embedding,
    Conjecture,
}

#[derive(Debug, Parser)]
#[command(name = "qcanon", version, about = "Dual canonical bases of quantum matrix algebras")]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Parameter specialization: generic, official or ast.
    #[arg(long, global = true, default_value = "generic", value_parser = parse_spec)]
    pub spec: SpecName,
    /// Directory for solved tables; falls back to $QCANON_CACHE, then ./.qcanon-cache.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Compute non-generic tables by specializing the generic one.
    #[arg(long, global = true)]
    pub reuse_generic: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every b(A) in one cell.
    Cell {
        #[arg(long, value_parser = parse_list::<u32>)]
        rows: List<u32>,
        #[arg(long, value_parser = parse_list::<u32>)]
        cols: List<u32>,
    },
    /// One basis element b(A).
    Basis {
        #[arg(long, value_parser = parse_matrix)]
        matrix: MatIdx,
    },
    /// The bar image of Z(A).
    Bar {
        #[arg(long, value_parser = parse_matrix)]
        matrix: MatIdx,
    },
    /// Structure constants of b(A)b(B).
    Product {
        #[arg(long, value_parser = parse_matrix)]
        left: MatIdx,
        #[arg(long, value_parser = parse_matrix)]
        right: MatIdx,
    },
    /// A quantum minor as a basis element.
    Minor {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_list::<usize>)]
        rows: List<usize>,
        #[arg(long, value_parser = parse_list::<usize>)]
        cols: List<usize>,
    },
    /// The move graph below A, as DOT.
    Graph {
        #[arg(long, value_parser = parse_matrix)]
        matrix: MatIdx,
    },
    /// Compare the conjectured closed formula with the solver.
    Conjecture {
        /// 2 checks all 2×2 cells; 3 checks the 2×3 family.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_entry: u32,
        #[arg(long, value_parser = parse_variant)]
        variant: Option<VariantName>,
        #[arg(long, value_parser = parse_path_order)]
        path_order: Option<PathOrder>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_mass: Option<u32>,
        #[arg(long, value_parser = parse_order)]
        order: Option<FactorOrder>,
    },
}

fn parse_spec(s: &str) -> Result<SpecName> {
    s.parse()
}

fn parse_matrix(s: &str) -> Result<MatIdx> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<VariantName> {
    s.parse()
}

fn parse_path_order(s: &str) -> Result<PathOrder> {
    s.parse()
}

fn parse_order(s: &str) -> Result<FactorOrder> {
    s.parse()
}

/// A comma-separated list such as `2,1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct List<T>(pub Vec<T>);

impl<T> std::ops::Deref for List<T> {
    type Target = Vec<T>;
    fn deref(&self) -> &Vec<T> {
        &self.0
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<List<T>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad list entry {x:?} in {s:?}"))))
        .collect::<Result<Vec<T>>>()
        .map(List)
}

/// The rendered output and exit code of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome { stdout: String::new(), stderr: message, code: 2 }
    }
}

/// Parses `argv` (including the program name).
pub fn parse_invocation<I, T>(argv: I) -> std::result::Result<Invocation, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Invocation::try_parse_from(argv)
}

/// Parses and executes; never panics on bad input.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_invocation(argv) {
        Ok(inv) => execute(&inv),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome::usage(text)
            }
        }
    }
}

fn cache_dir(inv: &Invocation) -> PathBuf {
    inv.cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE))
}

fn store(inv: &Invocation, n: usize, spec: SpecName) -> CanonStore {
    CanonStore::new(Arc::new(Algebra::new(n, Specialization::new(spec))))
        .with_disk(DiskCache::new(cache_dir(inv)))
        .with_generic_reuse(inv.reuse_generic)
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_) | Error::MarginMismatch { .. } | Error::SizeMismatch(_) | Error::IndexOutOfRange(_)
    )
}

pub fn execute(inv: &Invocation) -> Outcome {
    match dispatch(inv) {
        Ok(report) => render(inv, report),
        Err(e) if is_input_error(&e) => Outcome::usage(format!("error: {e}\n")),
        Err(e) => {
            let stdout = match inv.format {
                Format::Json => format!("{}\n", pretty(&json!({ "command": command_name(&inv.command), "error": e.to_string() }))),
                _ => String::new(),
            };
            Outcome { stdout, stderr: format!("error: {e}\n"), code: 1 }
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Cell { .. } => "cell",
        Command::Basis { .. } => "basis",
        Command::Bar { .. } => "bar",
        Command::Product { .. } => "product",
        Command::Minor { .. } => "minor",
        Command::Graph { .. } => "graph",
        Command::Conjecture { .. } => "conjecture",
        Command::Verify { .. } => "verify",
    }
}

/// Command results before formatting.
enum Report {
    Elements { inputs: Value, items: Vec<(String, Element)> },
    Product { inputs: Value, terms: Vec<(MatIdx, GammaLaurent)>, positive: bool },
    Graph { inputs: Value, dot: String, nodes: Vec<String>, edges: Vec<Value> },
    Conjecture { inputs: Value, body: Value, summary: Vec<String> },
    Verify { inputs: Value, checks: Vec<Check> },
}

/// One named verdict of a suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), holds, detail: detail.into() }
    }
}

fn dispatch(inv: &Invocation) -> Result<Report> {
    let spec = inv.spec;
    let spec_json = json!(spec.as_str());
    match &inv.command {
        Command::Cell { rows, cols } => {
            let cell = enumerate_cell(rows, cols)?;
            let table = store(inv, rows.len(), spec).table(rows, cols)?;
            let items = cell
                .by_rho_desc()
                .into_iter()
                .map(|a| {
                    let b = table.b(&a).expect("member of the cell");
                    (format!("b({a})"), b)
                })
                .collect();
            Ok(Report::Elements { inputs: json!({ "rows": rows.0, "cols": cols.0, "spec": spec_json }), items })
        }
        Command::Basis { matrix } => {
            let b = store(inv, matrix.n(), spec).b(matrix)?;
            Ok(Report::Elements {
                inputs: json!({ "matrix": matrix.to_string(), "spec": spec_json }),
                items: vec![(format!("b({matrix})"), b)],
            })
        }
        Command::Bar { matrix } => {
            let alg = Algebra::new(matrix.n(), Specialization::new(spec));
            let x = alg.bar(&Element::norm(matrix.clone()))?;
            Ok(Report::Elements {
                inputs: json!({ "matrix": matrix.to_string(), "spec": spec_json }),
                items: vec![(format!("bar Z({matrix})"), x)],
            })
        }
        Command::Product { left, right } => {
            if left.n() != right.n() {
                return Err(Error::SizeMismatch(format!("{left} and {right}")));
            }
            let sc = store(inv, left.n(), spec).structure_constants(left, right)?;
            let mut terms: Vec<(MatIdx, GammaLaurent)> = sc.coefficients.into_iter().collect();
            terms.reverse();
            Ok(Report::Product {
                inputs: json!({ "left": left.to_string(), "right": right.to_string(), "spec": spec_json }),
                terms,
                positive: sc.positive,
            })
        }
        Command::Minor { n, rows, cols } => {
            let m = MinorSpec::new(*n, rows.0.clone(), cols.0.clone())?;
            let b = quantum_minor(&m, &store(inv, *n, spec))?;
            let label = format!("minor({}|{})", join(rows), join(cols));
            Ok(Report::Elements { inputs: json!({ "n": n, "rows": rows.0, "cols": cols.0, "spec": spec_json }), items: vec![(label, b)] })
        }
        Command::Graph { matrix } => {
            let h = hasse_graph(matrix);
            let edges = h
                .edges
                .iter()
                .map(|(a, l, b)| json!({ "from": a.to_string(), "label": l.to_string(), "to": b.to_string() }))
                .collect();
            Ok(Report::Graph {
                inputs: json!({ "matrix": matrix.to_string() }),
                dot: h.to_dot(),
                nodes: h.nodes.iter().map(MatIdx::to_string).collect(),
                edges,
            })
        }
        Command::Conjecture { n, max_entry, variant, path_order } => {
            let cells = match n {
                2 => m2_cells(*max_entry),
                3 => family_2x3_cells(*max_entry),
                _ => return Err(Error::SizeMismatch(format!("conjecture harness covers n = 2 or 3, got {n}"))),
            };
            let variants: Vec<ConjectureVariant> = ConjectureVariant::all()
                .into_iter()
                .filter(|v| variant.is_none_or(|x| x == v.name) && path_order.is_none_or(|p| p == v.path_order))
                .collect();
            let report = conj_check(&cells, &variants, &store(inv, *n, spec))?;
            let summary = report
                .variants
                .iter()
                .map(|v| format!("{}: {} mismatches{}", v.variant, v.mismatches.len(), if v.match_all { " (match-all)" } else { "" }))
                .collect();
            Ok(Report::Conjecture {
                inputs: json!({
                    "n": n,
                    "max_entry": max_entry,
                    "variant": variant.map(|v| v.as_str()),
                    "path_order": path_order.map(|p| p.as_str()),
                    "spec": spec_json,
                }),
                body: report.to_json(),
                summary,
            })
        }
        Command::Verify { suite, n, max_mass, order } => {
            let checks = run_suite(inv, *suite, *n, *max_mass, *order)?;
            let inputs = json!({
                "suite": format!("{suite:?}").to_lowercase(),
                "n": n,
                "max_mass": max_mass,
                "order": order.map(|o| o.to_string()),
                "spec": spec_json,
            });
            Ok(Report::Verify { inputs, checks })
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Runs one suite and returns its verdicts.
pub fn run_suite(
    inv: &Invocation,
    suite: Suite,
    n: Option<usize>,
    max_mass: Option<u32>,
    order: Option<FactorOrder>,
) -> Result<Vec<Check>> {
    match suite {
        Suite::Qidentities => Ok(vec![
            Check::new("gaussian-recursion", qcomb::gaussian_recursion_holds(8), "n ≤ 8, both bases"),
            Check::new("alternating-sum", (1..=8).all(qcomb::alternating_sum_vanishes), "s ≤ 8"),
            Check::new("exp-multiplicative", qcomb::exp_multiplicative_holds(6)?, "YX = q²XY on a + b ≤ 6"),
            Check::new("exp-inverse", qcomb::exp_inverse_holds(6)?, "a + b ≤ 6"),
        ]),
        Suite::Exponential => {
            let n = n.unwrap_or(2);
            let max_mass = max_mass.unwrap_or(if n == 2 { 6 } else { 4 });
            exponential_suite(n, max_mass, order.unwrap_or(FactorOrder::FROZEN), inv.spec)
        }
        Suite::Minors => {
            let st = store(inv, 2, inv.spec);
            let bound = max_mass.unwrap_or(2);
            let mut out = Vec::new();
            for a in small_2x2(bound) {
                let r = delta_compatibility(&a, &st)?;
                let detail = format!(
                    "product {} commutation {} shift {} covariance {}",
                    r.product_rule, r.commutation, r.basis_shift, r.covariance
                );
                out.push(Check::new(format!("delta {a}"), r.all(), detail));
            }
            Ok(out)
        }
        Suite::Positivity => {
            let n = n.unwrap_or(2);
            let st = store(inv, n, inv.spec);
            let mut out = Vec::new();
            for (a, b) in positivity_pairs(n, max_mass.unwrap_or(if n == 2 { 5 } else { 4 })) {
                let sc = st.structure_constants(&a, &b)?;
                out.push(Check::new(format!("b({a}) b({b})"), sc.positive, format!("{} terms", sc.coefficients.len())));
            }
            Ok(out)
        }
        Suite::Embedding => {
            let st = store(inv, 2, SpecName::Official);
            let r = verify_embedding(&st, max_mass.unwrap_or(3))?;
            Ok(r.relations
                .iter()
                .map(|c| Check::new(format!("relation {}", c.label), c.holds, ""))
                .chain(r.phi_fixed.iter().map(|c| Check::new(format!("phi-fixed {}", c.label), c.holds, "")))
                .collect())
        }
        Suite::Conjecture => {
            let st2 = store(inv, 2, inv.spec);
            let st3 = store(inv, 3, inv.spec);
            let bound = max_mass.unwrap_or(2);
            let mut out = Vec::new();
            for (family, report) in [
                ("m2", conj_check(&m2_cells(bound), &ConjectureVariant::all(), &st2)?),
                ("2x3", conj_check(&family_2x3_cells(bound), &ConjectureVariant::all(), &st3)?),
            ] {
                let best = report.variants.iter().min_by_key(|v| v.mismatches.len()).expect("variants");
                let detail = format!("fewest mismatches: {} ({})", best.variant, best.mismatches.len());
                out.push(Check::new(format!("{family} some variant matches"), report.any_match_all(), detail));
            }
            Ok(out)
        }
    }
}

/// All `2×2` matrices with entries at most `bound`.
pub fn small_2x2(bound: u32) -> Vec<MatIdx> {
    let k = bound + 1;
    (0..k.pow(4))
        .map(|code| MatIdx::from_entries(2, (0..4).map(|p| (code / k.pow(p)) % k).collect()).expect("four entries"))
        .collect()
}

/// Ordered pairs of nonzero matrices with total mass at most `max_total`.
pub fn positivity_pairs(n: usize, max_total: u32) -> Vec<(MatIdx, MatIdx)> {
    let mats: Vec<MatIdx> = cells_up_to(n, max_total.saturating_sub(1)).into_iter().flat_map(|c| c.members).collect();
    let mut out = Vec::new();
    for a in &mats {
        for b in &mats {
            if a.mass() + b.mass() <= max_total {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn exponential_suite(n: usize, max_mass: u32, order: FactorOrder, spec: SpecName) -> Result<Vec<Check>> {
    let alg = Algebra::new(n, Specialization::new(spec));
    let mut out = Vec::new();
    for cell in cells_up_to(n, max_mass) {
        bar_matrix(&alg, &cell)?;
        let mut bad = 0;
        for a in &cell.members {
            if bar_via_factorization(a, order)? != alg.bar(&Element::norm(a.clone()))? {
                bad += 1;
            }
        }
        let name = format!("factorization {order} {}|{}", join(&cell.rows), join(&cell.cols));
        out.push(Check::new(name, bad == 0, format!("{bad} of {} members differ", cell.members.len())));
    }
    if n == 2 {
        for cell in cells_up_to(2, max_mass.max(8)) {
            let ops = CellOperators::new(cell.clone())?;
            let (mut bar_ok, mut inv_ok) = (true, true);
            for a in &cell.members {
                let z = Element::norm(a.clone());
                bar_ok &= ops.apply(label_2x2(), LocalExp::Bar, &z)? == alg.bar(&z)?;
                let there = ops.apply(label_2x2(), LocalExp::Inverse, &z)?;
                inv_ok &= ops.apply(label_2x2(), LocalExp::Forward, &there)? == z;
            }
            let id = format!("{}|{}", join(&cell.rows), join(&cell.cols));
            out.push(Check::new(format!("local bar {id}"), bar_ok, ""));
            out.push(Check::new(format!("local inverse {id}"), inv_ok, ""));
        }
        for a in small_2x2(3) {
            for r in 1..=a.mass() + 1 {
                let (l, rr) = key_tau_sides(&a, r)?;
                let (m, mm) = key_mu_sides(&a, r)?;
                out.push(Check::new(format!("key {a} r={r}"), l == rr && m == mm, ""));
            }
        }
    }
    Ok(out)
}

fn render(inv: &Invocation, report: Report) -> Outcome {
    let name = command_name(&inv.command);
    let mut code = 0;
    let stdout = match report {
        Report::Elements { inputs, items } => match inv.format {
            Format::Json => {
                let results: Vec<Value> = items.iter().map(|(l, e)| json!({ "label": l, "element": e.to_json() })).collect();
                pretty(&json!({ "command": name, "inputs": inputs, "results": results }))
            }
            Format::Latex => items.iter().map(|(l, e)| format!("{l} = {}", e.to_latex())).collect::<Vec<_>>().join("\n"),
            Format::Text if items.len() == 1 => items[0].1.to_string(),
            Format::Text => items.iter().map(|(l, e)| format!("{l} = {e}")).collect::<Vec<_>>().join("\n"),
        },
        Report::Product { inputs, terms, positive } => match inv.format {
            Format::Json => {
                let results: Vec<Value> =
                    terms.iter().map(|(d, c)| json!({ "matrix": d.to_string(), "coeff": c.to_json() })).collect();
                pretty(&json!({ "command": name, "inputs": inputs, "results": results, "positive": positive }))
            }
            _ => {
                let mut lines: Vec<String> = terms.iter().map(|(d, c)| format!("b({d}): {c}")).collect();
                lines.push(format!("nonnegative: {positive}"));
                lines.join("\n")
            }
        },
        Report::Graph { inputs, dot, nodes, edges } => match inv.format {
            Format::Json => pretty(&json!({ "command": name, "inputs": inputs, "nodes": nodes, "edges": edges })),
            _ => dot.trim_end().to_string(),
        },
        Report::Conjecture { inputs, body, summary } => match inv.format {
            Format::Json => pretty(&json!({ "command": name, "inputs": inputs, "report": body })),
            _ => summary.join("\n"),
        },
        Report::Verify { inputs, checks } => {
            let all = checks.iter().all(|c| c.holds);
            if !all {
                code = 1;
            }
            match inv.format {
                Format::Json => {
                    let list: Vec<Value> =
                        checks.iter().map(|c| json!({ "check": c.name, "holds": c.holds, "detail": c.detail })).collect();
                    pretty(&json!({ "command": name, "inputs": inputs, "checks": list, "all": all }))
                }
                _ => {
                    let mut lines: Vec<String> = checks
                        .iter()
                        .map(|c| {
                            let tag = if c.holds { "PASS" } else { "FAIL" };
                            if c.detail.is_empty() { format!("{tag} {}", c.name) } else { format!("{tag} {} ({})", c.name, c.detail) }
                        })
                        .collect();
                    let failed = checks.iter().filter(|c| !c.holds).count();
                    lines.push(format!("{} checks, {failed} failed", checks.len()));
                    lines.join("\n")
                }
            }
        }
    };
    Outcome { stdout: format!("{stdout}\n"), stderr: String::new(), code }
}
