//! Command-line surface: solvers, gadget builders, verifiers and the two
//! reduction round-trip pipelines, glued into reproducible reports.
//!
//! Reports are JSON on stdout, human summaries on stderr. Exit codes:
//! 0 success, 1 property violated, 2 malformed input, 3 budget exhausted.

use clap::{Args, Parser, Subcommand};
use regnum::budget::Budget;
use regnum::coloring;
use regnum::families::{self, FamilySpec};
use regnum::graph::{Graph, JsonGraph};
use regnum::partition::{
    decide_reg2_bivalent, reg_at_most, reg_exact, verify_partition, Decision, RegularPartition,
    SolveError,
};
use regnum::reduce::{
    assignment_from_partition, blob_decide_3p, cubic_pendant_transform, gadget_formula, gadget_hc,
    gadget_ic, gadget_three_partition, mixed_patterns, partition_from_3p_solution,
    partition_from_assignment, solve_3p_bruteforce, verify_fragment_contract, GadgetGraph,
    ThreePartitionInstance,
};
use regnum::sat::{
    check_cubic23, nae_satisfiable_exact, nae_solve_bruteforce, normalize_to_cubic23,
    MonotoneFormula, BRUTE_FORCE_MAX_VARS,
};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "regnum",
    version,
    about = "Exact regular edge-partition toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact solvers with certificates.
    Solve {
        #[command(subcommand)]
        what: SolveWhat,
    },
    /// Gadget builders.
    Gadget {
        #[command(subcommand)]
        what: GadgetWhat,
    },
    /// Formula transformation passes.
    Normalize {
        #[command(subcommand)]
        what: NormalizeWhat,
    },
    /// Deterministic family constructors, written as edge-list text.
    Generate {
        /// zebra|complete|complete-bipartite|star|cycle|path|petersen|random-tree|random-graph
        family: String,
        /// Integer parameters of the family.
        params: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the edge list here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Certificate and contract verifiers.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Full if-and-only-if pipelines for the two reductions.
    Roundtrip {
        #[command(subcommand)]
        what: RoundtripWhat,
    },
}

#[derive(Args)]
struct BudgetArg {
    /// Search-node budget (deterministic effort unit).
    #[arg(long, default_value_t = 5_000_000)]
    budget: u64,
}

impl BudgetArg {
    fn get(&self) -> Budget {
        Budget::new(self.budget)
    }
}

#[derive(Subcommand)]
enum SolveWhat {
    /// Regular number of a graph, with a verifying partition certificate.
    Reg {
        graph: String,
        /// Decide reg <= t instead of computing the exact value.
        #[arg(long)]
        at_most: Option<usize>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Chromatic index with witness coloring.
    Chi {
        graph: String,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Minimum fourth color class of a cubic graph.
    Sigma {
        graph: String,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// NAE satisfiability of a monotone formula.
    Nae { formula: String },
}

#[derive(Subcommand)]
enum GadgetWhat {
    /// Hub gadget of a 3-partition instance.
    #[command(name = "3p")]
    ThreePartition {
        /// JSON instance: {"k": ..., "values": [...]}.
        instance: String,
        #[command(flatten)]
        output: GadgetOutput,
    },
    /// Formula graph of a cubic (2,3) monotone formula.
    Formula {
        formula: String,
        #[command(flatten)]
        output: GadgetOutput,
    },
    /// Pendant transform of a cubic graph; also solves reg on the result.
    Pendant {
        graph: String,
        /// The edge to remove, as `u,v`; the second endpoint is rejoined.
        #[arg(long)]
        edge: String,
        #[command(flatten)]
        output: GadgetOutput,
        #[command(flatten)]
        budget: BudgetArg,
    },
}

#[derive(Args)]
struct GadgetOutput {
    /// Write the gadget's edge list here (otherwise embedded in the report).
    #[arg(long)]
    out: Option<String>,
    /// Write the provenance sidecar JSON here.
    #[arg(long)]
    provenance: Option<String>,
    /// Write a DOT rendering here.
    #[arg(long)]
    dot: Option<String>,
}

#[derive(Subcommand)]
enum NormalizeWhat {
    /// Monotone NAE 3-SAT to the cubic (2,3) fragment.
    Nae {
        formula: String,
        /// Write the normalized formula here (otherwise embedded).
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// Check a partition certificate against its graph.
    Partition { graph: String, partition: String },
    /// Enumerate a clause fragment's external contract.
    Fragment {
        /// hc | ic
        which: String,
        #[command(flatten)]
        budget: BudgetArg,
    },
}

#[derive(Subcommand)]
enum RoundtripWhat {
    /// 3-partition: brute force vs blob decision vs gadget certificate.
    T1 { instance: String },
    /// Formula satisfiability vs two-part regularity of its gadget.
    T2 {
        formula: String,
        #[command(flatten)]
        budget: BudgetArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Violated,
    Malformed,
    Budget,
}

impl Status {
    fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violated => 1,
            Status::Malformed => 2,
            Status::Budget => 3,
        }
    }
}

#[derive(Serialize)]
struct RunReport {
    command: Vec<String>,
    inputs: BTreeMap<String, String>,
    result: Value,
    status: Status,
}

struct Failure {
    status: Status,
    message: String,
    result: Option<Value>,
}

impl Failure {
    fn malformed(message: impl Into<String>) -> Self {
        Failure {
            status: Status::Malformed,
            message: message.into(),
            result: None,
        }
    }

    fn violated(message: impl Into<String>, result: Value) -> Self {
        Failure {
            status: Status::Violated,
            message: message.into(),
            result: Some(result),
        }
    }

    fn budget(message: impl Into<String>, result: Value) -> Self {
        Failure {
            status: Status::Budget,
            message: message.into(),
            result: Some(result),
        }
    }
}

struct Ctx {
    inputs: BTreeMap<String, String>,
}

impl Ctx {
    fn new() -> Self {
        Ctx {
            inputs: BTreeMap::new(),
        }
    }

    fn read(&mut self, path: &str) -> Result<String, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::malformed(format!("cannot read {}: {}", path, e)))?;
        let mut hasher = Sha256::new();
        hasher.update(text.as_bytes());
        let digest: String = hasher
            .finalize()
            .iter()
            .map(|b| format!("{:02x}", b))
            .collect();
        self.inputs
            .insert(path.to_string(), format!("sha256:{}", digest));
        Ok(text)
    }

    fn load_graph(&mut self, path: &str) -> Result<Graph, Failure> {
        let text = self.read(path)?;
        if text.trim_start().starts_with('{') {
            let j: JsonGraph = serde_json::from_str(&text)
                .map_err(|e| Failure::malformed(format!("{}: {}", path, e)))?;
            Graph::from_json(&j).map_err(|e| Failure::malformed(format!("{}: {}", path, e)))
        } else {
            Graph::from_edge_list_text(&text)
                .map_err(|e| Failure::malformed(format!("{}: {}", path, e)))
        }
    }

    fn load_formula(&mut self, path: &str) -> Result<MonotoneFormula, Failure> {
        let text = self.read(path)?;
        MonotoneFormula::from_dimacs(&text)
            .map_err(|e| Failure::malformed(format!("{}: {}", path, e)))
    }

    fn load_instance(&mut self, path: &str) -> Result<ThreePartitionInstance, Failure> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| Failure::malformed(format!("{}: {}", path, e)))
    }
}

fn write_file(path: &str, content: &str) -> Result<(), Failure> {
    fs::write(path, content)
        .map_err(|e| Failure::malformed(format!("cannot write {}: {}", path, e)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let mut ctx = Ctx::new();
    let outcome = run(&cli.command, &mut ctx);
    let (result, status, summary) = match outcome {
        Ok((result, summary)) => (result, Status::Ok, summary),
        Err(failure) => (
            failure
                .result
                .unwrap_or_else(|| json!({ "error": failure.message })),
            failure.status,
            failure.message,
        ),
    };
    let report = RunReport {
        command,
        inputs: ctx.inputs,
        result,
        status,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    eprintln!("{}", summary);
    ExitCode::from(status.exit_code())
}

fn run(command: &Command, ctx: &mut Ctx) -> Result<(Value, String), Failure> {
    match command {
        Command::Solve { what } => run_solve(what, ctx),
        Command::Gadget { what } => run_gadget(what, ctx),
        Command::Normalize { what } => run_normalize(what, ctx),
        Command::Generate {
            family,
            params,
            seed,
            out,
        } => run_generate(family, params, *seed, out.as_deref()),
        Command::Verify { what } => run_verify(what, ctx),
        Command::Roundtrip { what } => run_roundtrip(what, ctx),
    }
}

fn run_solve(what: &SolveWhat, ctx: &mut Ctx) -> Result<(Value, String), Failure> {
    match what {
        SolveWhat::Reg {
            graph,
            at_most,
            budget,
        } => {
            let g = ctx.load_graph(graph)?;
            match at_most {
                Some(0) => Err(Failure::malformed("--at-most needs a positive part count")),
                Some(t) => {
                    let (decision, stats) =
                        reg_at_most(&g, *t, budget.get()).map_err(solve_failure)?;
                    let (yes, certificate) = match decision {
                        Decision::Yes(cert) => (true, Some(cert)),
                        Decision::No => (false, None),
                    };
                    let summary = format!("reg <= {}: {}", t, yes);
                    Ok((
                        json!({
                            "at_most": t,
                            "decision": yes,
                            "certificate": certificate,
                            "stats": stats,
                        }),
                        summary,
                    ))
                }
                None => {
                    let report = reg_exact(&g, budget.get()).map_err(solve_failure)?;
                    let summary = format!(
                        "reg = {} ({} parts verified, {} nodes)",
                        report.value,
                        report.certificate.part_count(),
                        report.stats.nodes
                    );
                    Ok((serde_json::to_value(&report).unwrap(), summary))
                }
            }
        }
        SolveWhat::Chi { graph, budget } => {
            let g = ctx.load_graph(graph)?;
            let (chi, witness, stats) =
                coloring::chi_prime_exact(&g, budget.get()).map_err(coloring_failure)?;
            let summary = format!("chi' = {} (Δ = {})", chi, g.max_degree());
            Ok((
                json!({ "chi_prime": chi, "coloring": witness, "stats": stats }),
                summary,
            ))
        }
        SolveWhat::Sigma { graph, budget } => {
            let g = ctx.load_graph(graph)?;
            let (report, stats) =
                coloring::sigma_cubic(&g, budget.get()).map_err(coloring_failure)?;
            let summary = format!("sigma = {}", report.sigma);
            Ok((
                json!({
                    "sigma": report.sigma,
                    "coloring": report.coloring,
                    "fourth_class": report.fourth_class,
                    "stats": stats,
                }),
                summary,
            ))
        }
        SolveWhat::Nae { formula } => {
            let f = ctx.load_formula(formula)?;
            let (satisfiable, model, method) = solve_nae(&f);
            let summary = format!("NAE satisfiable: {} ({})", satisfiable, method);
            Ok((
                json!({ "satisfiable": satisfiable, "model": model, "method": method }),
                summary,
            ))
        }
    }
}

/// Enumeration below the brute-force cap, complete backtracking beyond it.
fn solve_nae(f: &MonotoneFormula) -> (bool, Option<Vec<bool>>, &'static str) {
    if f.variable_count() <= BRUTE_FORCE_MAX_VARS {
        let model = nae_solve_bruteforce(f).expect("cap checked");
        (model.is_some(), model, "enumeration")
    } else {
        let model = nae_satisfiable_exact(f);
        (model.is_some(), model, "backtracking")
    }
}

fn gadget_payload(gadget: &GadgetGraph, output: &GadgetOutput) -> Result<Value, Failure> {
    let text = gadget.graph.to_edge_list_text();
    let mut payload = json!({
        "vertices": gadget.graph.vertex_count(),
        "edges": gadget.graph.edge_count(),
        "degree_set": gadget.graph.degree_profile().degree_set(),
    });
    match &output.out {
        Some(path) => {
            write_file(path, &text)?;
            payload["graph_file"] = json!(path);
        }
        None => payload["graph"] = json!(text),
    }
    if let Some(path) = &output.provenance {
        write_file(
            path,
            &serde_json::to_string_pretty(&gadget.provenance_json()).unwrap(),
        )?;
        payload["provenance_file"] = json!(path);
    }
    if let Some(path) = &output.dot {
        write_file(path, &gadget.to_dot())?;
        payload["dot_file"] = json!(path);
    }
    Ok(payload)
}

fn run_gadget(what: &GadgetWhat, ctx: &mut Ctx) -> Result<(Value, String), Failure> {
    match what {
        GadgetWhat::ThreePartition { instance, output } => {
            let inst = ctx.load_instance(instance)?;
            let gadget =
                gadget_three_partition(&inst).map_err(|e| Failure::malformed(e.to_string()))?;
            let bipartite = gadget.graph.is_bipartite().is_bipartite();
            let mut payload = gadget_payload(&gadget, output)?;
            payload["bipartite"] = json!(bipartite);
            let summary = format!(
                "hub gadget: {} vertices, {} edges, bipartite: {}",
                gadget.graph.vertex_count(),
                gadget.graph.edge_count(),
                bipartite
            );
            Ok((payload, summary))
        }
        GadgetWhat::Formula { formula, output } => {
            let f = ctx.load_formula(formula)?;
            let gadget = gadget_formula(&f).map_err(|e| Failure::malformed(e.to_string()))?;
            let payload = gadget_payload(&gadget, output)?;
            let summary = format!(
                "formula gadget: {} vertices, {} edges",
                gadget.graph.vertex_count(),
                gadget.graph.edge_count()
            );
            Ok((payload, summary))
        }
        GadgetWhat::Pendant {
            graph,
            edge,
            output,
            budget,
        } => {
            let g = ctx.load_graph(graph)?;
            let (u, v) = parse_edge(edge)?;
            let gadget =
                cubic_pendant_transform(&g, u, v).map_err(|e| Failure::malformed(e.to_string()))?;
            let mut payload = gadget_payload(&gadget, output)?;
            let delta = gadget.graph.max_degree();
            let report = reg_exact(&gadget.graph, budget.get()).map_err(solve_failure)?;
            payload["reg"] = json!(report.value);
            payload["max_degree"] = json!(delta);
            payload["certificate"] = serde_json::to_value(&report.certificate).unwrap();
            payload["stats"] = serde_json::to_value(report.stats).unwrap();
            let summary = format!("pendant transform: reg = {}, Δ = {}", report.value, delta);
            Ok((payload, summary))
        }
    }
}

fn parse_edge(spec: &str) -> Result<(usize, usize), Failure> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure::malformed("expected --edge u,v"));
    }
    let u = parts[0]
        .trim()
        .parse()
        .map_err(|_| Failure::malformed("bad edge endpoint"))?;
    let v = parts[1]
        .trim()
        .parse()
        .map_err(|_| Failure::malformed("bad edge endpoint"))?;
    Ok((u, v))
}

fn run_normalize(what: &NormalizeWhat, ctx: &mut Ctx) -> Result<(Value, String), Failure> {
    match what {
        NormalizeWhat::Nae { formula, out } => {
            let f = ctx.load_formula(formula)?;
            let (normalized, trace) =
                normalize_to_cubic23(&f).map_err(|e| Failure::malformed(e.to_string()))?;
            let text = normalized.to_dimacs();
            let mut payload = json!({
                "variables": normalized.variable_count(),
                "clauses": normalized.clauses().len(),
                "cubic23": check_cubic23(&normalized).is_ok(),
                "trace": trace,
            });
            match out {
                Some(path) => {
                    write_file(path, &text)?;
                    payload["formula_file"] = json!(path);
                }
                None => payload["formula"] = json!(text),
            }
            let summary = format!(
                "normalized to {} variables, {} clauses",
                normalized.variable_count(),
                normalized.clauses().len()
            );
            Ok((payload, summary))
        }
    }
}

fn run_generate(
    family: &str,
    params: &[usize],
    seed: u64,
    out: Option<&str>,
) -> Result<(Value, String), Failure> {
    let spec = match (family, params) {
        ("zebra", [n]) => FamilySpec::Zebra { n: *n },
        ("complete", [n]) => FamilySpec::Complete { n: *n },
        ("complete-bipartite", [a, b]) => FamilySpec::CompleteBipartite { a: *a, b: *b },
        ("star", [r]) => FamilySpec::Star { r: *r },
        ("cycle", [n]) => FamilySpec::Cycle { n: *n },
        ("path", [n]) => FamilySpec::Path { n: *n },
        ("petersen", []) => FamilySpec::Petersen,
        ("random-tree", [n]) => FamilySpec::RandomTree { n: *n, seed },
        ("random-graph", [n, m]) => FamilySpec::RandomGraph { n: *n, m: *m, seed },
        _ => {
            return Err(Failure::malformed(format!(
                "unknown family or wrong parameter count: {} {:?}",
                family, params
            )))
        }
    };
    let graph = families::generate(&spec).map_err(|e| Failure::malformed(e.to_string()))?;
    let text = graph.to_edge_list_text();
    let summary = format!(
        "{}: {} vertices, {} edges",
        family,
        graph.vertex_count(),
        graph.edge_count()
    );
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok((
                json!({
                    "family": family,
                    "vertices": graph.vertex_count(),
                    "edges": graph.edge_count(),
                    "graph_file": path,
                }),
                summary,
            ))
        }
        None => {
            // Raw edge-list on stdout for piping; the report is the text.
            print!("{}", text);
            std::process::exit(0);
        }
    }
}

fn run_verify(what: &VerifyWhat, ctx: &mut Ctx) -> Result<(Value, String), Failure> {
    match what {
        VerifyWhat::Partition { graph, partition } => {
            let g = ctx.load_graph(graph)?;
            let text = ctx.read(partition)?;
            let cert: RegularPartition = serde_json::from_str(&text)
                .map_err(|e| Failure::malformed(format!("{}: {}", partition, e)))?;
            match verify_partition(&g, &cert.parts) {
                Ok(regularities) => {
                    if regularities == cert.regularities {
                        let summary = format!(
                            "certificate verifies: {} parts, regularities {:?}",
                            cert.parts.len(),
                            regularities
                        );
                        Ok((
                            json!({ "verified": true, "regularities": regularities }),
                            summary,
                        ))
                    } else {
                        Err(Failure::violated(
                            "regularities mismatch",
                            json!({
                                "verified": false,
                                "declared": cert.regularities,
                                "computed": regularities,
                            }),
                        ))
                    }
                }
                Err(violation) => Err(Failure::violated(
                    violation.to_string(),
                    json!({ "verified": false, "violation": violation.to_string() }),
                )),
            }
        }
        VerifyWhat::Fragment { which, budget } => {
            let (fragment, arity) = match which.as_str() {
                "hc" => (gadget_hc(), 3usize),
                "ic" => (gadget_ic(), 2usize),
                other => {
                    return Err(Failure::malformed(format!(
                        "unknown fragment {:?}, expected hc or ic",
                        other
                    )))
                }
            };
            let patterns = verify_fragment_contract(&fragment, budget.get())
                .map_err(|e| Failure::malformed(e.to_string()))?;
            let expected = mixed_patterns(arity);
            let holds = patterns == expected;
            let render = |set: &std::collections::BTreeSet<Vec<u8>>| -> Vec<String> {
                set.iter()
                    .map(|p| p.iter().map(|&l| if l == 0 { 'A' } else { 'B' }).collect())
                    .collect()
            };
            let payload = json!({
                "fragment": which,
                "achievable": render(&patterns),
                "expected": render(&expected),
                "contract_holds": holds,
            });
            if holds {
                Ok((payload, format!("{} contract holds", which)))
            } else {
                Err(Failure::violated(
                    format!("{} contract violated", which),
                    payload,
                ))
            }
        }
    }
}

fn run_roundtrip(what: &RoundtripWhat, ctx: &mut Ctx) -> Result<(Value, String), Failure> {
    match what {
        RoundtripWhat::T1 { instance } => {
            let inst = ctx.load_instance(instance)?;
            let grouping =
                solve_3p_bruteforce(&inst).map_err(|e| Failure::malformed(e.to_string()))?;
            let blob = blob_decide_3p(&inst).map_err(|e| Failure::malformed(e.to_string()))?;
            let gadget =
                gadget_three_partition(&inst).map_err(|e| Failure::malformed(e.to_string()))?;
            let bipartite = gadget.graph.is_bipartite().is_bipartite();
            let numeric = grouping.is_some();
            let mut payload = json!({
                "three_partition": numeric,
                "blob_decision": blob,
                "bipartite": bipartite,
                "vertices": gadget.graph.vertex_count(),
                "edges": gadget.graph.edge_count(),
            });
            let mut ok = numeric == blob && bipartite;
            if let Some(groups) = &grouping {
                match partition_from_3p_solution(&inst, groups, &gadget) {
                    Ok(cert) => {
                        payload["certificate_parts"] = json!(cert.part_count());
                        payload["regularities"] = json!(cert.regularities);
                        payload["certificate"] = serde_json::to_value(&cert).unwrap();
                    }
                    Err(e) => {
                        payload["certificate_error"] = json!(e.to_string());
                        ok = false;
                    }
                }
            }
            payload["agreement"] = json!(ok);
            if ok {
                let summary = format!(
                    "3-partition answer {} matches blob decision; gadget checks pass",
                    numeric
                );
                Ok((payload, summary))
            } else {
                Err(Failure::violated("round trip disagreement", payload))
            }
        }
        RoundtripWhat::T2 { formula, budget } => {
            let f = ctx.load_formula(formula)?;
            check_cubic23(&f).map_err(|e| Failure::malformed(e.to_string()))?;
            let (satisfiable, model, method) = solve_nae(&f);
            let gadget = gadget_formula(&f).map_err(|e| Failure::malformed(e.to_string()))?;
            let (cert, stats) =
                decide_reg2_bivalent(&gadget.graph, budget.get()).map_err(solve_failure)?;
            let reg2 = cert.is_some();
            let mut payload = json!({
                "satisfiable": satisfiable,
                "sat_method": method,
                "reg2": reg2,
                "stats": stats,
                "vertices": gadget.graph.vertex_count(),
                "edges": gadget.graph.edge_count(),
            });
            let mut ok = satisfiable == reg2;
            if let (true, Some(model)) = (ok, model.as_ref()) {
                match partition_from_assignment(&f, model, &gadget, budget.get()) {
                    Ok(cert_fwd) => {
                        payload["model_certificate"] = serde_json::to_value(&cert_fwd).unwrap();
                    }
                    Err(e) => {
                        payload["forward_error"] = json!(e.to_string());
                        ok = false;
                    }
                }
            }
            if let (true, Some(cert)) = (ok, cert.as_ref()) {
                let direct = assignment_from_partition(&f, &gadget, cert);
                let flipped = RegularPartition {
                    parts: vec![cert.parts[1].clone(), cert.parts[0].clone()],
                    regularities: cert.regularities.clone(),
                };
                let extracted =
                    direct.or_else(|_| assignment_from_partition(&f, &gadget, &flipped));
                match extracted {
                    Ok(assignment) => {
                        payload["extracted_model"] = json!(assignment);
                    }
                    Err(e) => {
                        payload["backward_error"] = json!(e.to_string());
                        ok = false;
                    }
                }
            }
            payload["agreement"] = json!(ok);
            if ok {
                let summary = format!(
                    "SAT={} matches reg2={}; certificates cross-verified",
                    satisfiable, reg2
                );
                Ok((payload, summary))
            } else {
                Err(Failure::violated("round trip disagreement", payload))
            }
        }
    }
}

fn solve_failure(e: SolveError) -> Failure {
    match e {
        SolveError::Exhausted {
            lower,
            upper,
            certificate,
            stats,
        } => Failure::budget(
            format!("budget exhausted: {} <= reg <= {:?}", lower, upper),
            json!({
                "proven_lower_bound": lower,
                "verified_upper_bound": upper,
                "certificate": certificate,
                "stats": stats,
            }),
        ),
        SolveError::Budget(b) => Failure::budget(b.to_string(), json!({ "error": b.to_string() })),
        other => Failure::malformed(other.to_string()),
    }
}

fn coloring_failure(e: coloring::ColoringError) -> Failure {
    match e {
        coloring::ColoringError::Budget(b) => {
            Failure::budget(b.to_string(), json!({ "error": b.to_string() }))
        }
        other => Failure::malformed(other.to_string()),
    }
}
