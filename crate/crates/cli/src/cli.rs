//! Argument definitions and the command implementations.

use crate::format::{self, labels_path, parse_structure, AnyStructure};
use crate::record::RunRecord;
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use eppa_core::bounds::*;
use eppa_core::coherent::make_coherent_extender;
use eppa_core::directed::{build_directed_valuation_witness, build_paley_tournament, DirectedValuation};
use eppa_core::hyper::{build_hypergraph_valuation_witness, HyperValuation};
use eppa_core::kkfree::build_kkfree_witness_capped;
use eppa_core::kneser::{build_kneser_witness_capped, build_relational_kneser_witness_capped};
use eppa_core::search::find_embedding;
use eppa_core::valuation::{build_valuation_witness, ValuationExtender, ValuationGraph};
use eppa_core::verify::*;
use eppa_core::{Count, Digraph, EppaError, Graph, Structure, MATERIALIZE_CAP};
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::sync::Arc;
use std::time::Duration;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "eppa", version, about = "Build and verify EPPA-witnesses, compute lower bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Largest host any construction may materialize.
    #[arg(long, global = true, env = "EPPA_MAX_VERTICES", default_value_t = MATERIALIZE_CAP)]
    pub max_vertices: usize,

    /// Give up (exit 3) after this many seconds.
    #[arg(long, global = true, env = "EPPA_TIMEOUT_SECS")]
    pub timeout_secs: Option<u64>,

    /// Append a JSON-lines run record to this file.
    #[arg(long, global = true)]
    pub log: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a witness for the input structure.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Check that H is a witness for G under an embedding.
    Verify(VerifyArgs),
    /// Lower and upper bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// The finite homogeneous graphs.
    Catalog(CatalogArgs),
    /// Smallest witness by exhaustive host enumeration.
    SearchMin(SearchMinArgs),
    /// Lower bounds over seeded random graphs.
    RandomExp(RandomExpArgs),
    /// Coherence of the lifted valuation extender.
    Coherence(CoherenceArgs),
    /// The Paley tournament on Z_q.
    Paley(PaleyArgs),
}

#[derive(Args, Debug)]
pub struct WitnessIo {
    /// Input structure file.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Verify the witness exhaustively.
    #[arg(long)]
    pub verify: bool,
    /// extender, search or both; defaults to both when an extender exists.
    #[arg(long)]
    pub strategy: Option<Strategy>,
    /// Write the host here, labels next to it in `<path>.labels`.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum WitnessCmd {
    /// Valuation host H_n for a graph.
    Valuation {
        #[command(flatten)]
        io: WitnessIo,
        /// Host parameter, at least the input order.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Intersection host for a graph or digraph.
    Kneser {
        #[command(flatten)]
        io: WitnessIo,
        /// Subset size, at least the maximum degree.
        #[arg(long)]
        d: Option<usize>,
    },
    /// K_k-free host for a K_k-free graph.
    Kkfree {
        #[command(flatten)]
        io: WitnessIo,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Valuation host over Z_3 (or Z_4 with --bidirectional) for a digraph.
    Directed {
        #[command(flatten)]
        io: WitnessIo,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        bidirectional: bool,
    },
    /// Valuation host for a uniform hypergraph.
    Hypergraph {
        #[command(flatten)]
        io: WitnessIo,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Base structure.
    #[arg(long)]
    pub g: PathBuf,
    /// Candidate host.
    #[arg(long)]
    pub h: PathBuf,
    /// Comma-separated images of the base vertices; found by search if absent.
    #[arg(long, value_delimiter = ',')]
    pub embedding: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    /// Independent-set lower bound for a graph.
    Hrus {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, default_value = "exact")]
        mode: BoundMode,
    },
    /// Bounds for the cycle C_n.
    Cycles {
        #[arg(long)]
        n: usize,
    },
    /// Maximum-degree lower bounds for a graph.
    Degrees {
        #[arg(long, short)]
        input: PathBuf,
    },
    /// Cycle bounds for a range of n.
    Table {
        #[arg(long, default_value_t = 4)]
        from: usize,
        #[arg(long, default_value_t = 12)]
        to: usize,
    },
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    /// Report where this graph sits in the catalog.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Check every entry and its complement for homogeneity.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct SearchMinArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    /// Largest host order tried.
    #[arg(long, default_value_t = 7)]
    pub max_m: usize,
    /// Only test vertex-transitive hosts; the result is then conditional.
    #[arg(long)]
    pub prune_transitive: bool,
    /// Cap on marked hosts held at one level.
    #[arg(long, env = "EPPA_MAX_HOSTS", default_value_t = 2_000_000)]
    pub max_hosts: usize,
    /// Re-verify the certificate by search.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RandomExpArgs {
    #[arg(long)]
    pub n: usize,
    /// `0.5`, `1/2` or `c/n`.
    #[arg(long, default_value = "1/2")]
    pub p: EdgeProbability,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct CoherenceArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    /// Host parameter of the valuation witness.
    #[arg(long)]
    pub n: Option<usize>,
    /// all (every composable pair) or substructure.
    #[arg(long, default_value = "all")]
    pub scope: CoherenceScope,
    /// Also verify the witness property through the lifted extender.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct PaleyArgs {
    /// A prime congruent to 3 mod 4.
    #[arg(long)]
    pub q: u64,
    /// Base digraph to embed; without it the tournament is checked against itself.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub verify: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// What a command printed and recorded.
#[derive(Debug, Default)]
pub struct Report {
    pub text: String,
    pub outputs: Map<String, Value>,
    /// `Some(false)` makes the process exit with code 1.
    pub verdict: Option<bool>,
    pub seed: Option<u64>,
    /// Raw bytes of every input file, for the digest.
    pub inputs: Vec<Vec<u8>>,
}

impl Report {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn put(&mut self, key: &str, v: impl Into<Value>) {
        self.outputs.insert(key.to_string(), v.into());
    }

    fn read(&mut self, path: &Path) -> Result<AnyStructure> {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let text = String::from_utf8_lossy(&bytes).into_owned();
        self.inputs.push(bytes);
        parse_structure(&text).with_context(|| format!("parsing {}", path.display()))
    }

    fn read_graph(&mut self, path: &Path) -> Result<Graph> {
        match self.read(path)? {
            AnyStructure::Graph(g) => Ok(g),
            other => bail!("{} holds a {}, expected a graph", path.display(), other.kind_name()),
        }
    }

    fn read_digraph(&mut self, path: &Path) -> Result<Digraph> {
        match self.read(path)? {
            AnyStructure::Digraph(g) => Ok(g),
            other => bail!("{} holds a {}, expected a digraph", path.display(), other.kind_name()),
        }
    }
}

#[derive(Debug)]
struct Timeout(u64);

impl std::fmt::Display for Timeout {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "timed out after {} s", self.0)
    }
}

impl std::error::Error for Timeout {}

/// Exit code for an error: 3 for caps and timeouts, 2 otherwise.
pub fn exit_code_for(e: &anyhow::Error) -> i32 {
    let capacity = e.chain().any(|c| {
        c.downcast_ref::<EppaError>().is_some_and(EppaError::is_capacity) || c.downcast_ref::<Timeout>().is_some()
    });
    if capacity {
        EXIT_CAPACITY
    } else {
        EXIT_USAGE
    }
}

fn check_cap(what: &str, count: Count, cap: usize) -> Result<()> {
    if count > Count::from(cap) {
        return Err(EppaError::capacity(what, count, cap).into());
    }
    Ok(())
}

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Extender => "extender",
        Strategy::Search => "search",
        Strategy::Both => "both",
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn verify_into<S: Structure>(w: &Witness<S>, strategy: Option<Strategy>, report: &mut Report) -> Result<()> {
    let strategy = strategy.unwrap_or(if w.extender.is_some() { Strategy::Both } else { Strategy::Search });
    let r = verify_witness(w, strategy)?;
    let verdict = if r.passed() { "pass" } else { "fail" };
    report.line(format!(
        "verdict={verdict} strategy={} checked={} extended={} failures={}",
        strategy_name(strategy),
        r.checked,
        r.extended,
        r.failure_count
    ));
    if let Some(f) = r.failures.first() {
        report.line(format!("counterexample: {:?}: {}", f.partial, f.reason));
    }
    report.put(
        "verify",
        json!({
            "strategy": strategy_name(strategy),
            "checked": r.checked,
            "extended": r.extended,
            "failures": r.failure_count,
            "counterexample": r.failures.first().map(|f| format!("{:?}", f.partial)),
            "passed": r.passed(),
        }),
    );
    report.verdict = Some(r.passed());
    Ok(())
}

fn write_host(path: &Path, text: String, labels: Option<&[String]>, report: &mut Report) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    report.line(format!("wrote {}", path.display()));
    if let Some(labels) = labels {
        let lp = labels_path(path);
        std::fs::write(&lp, format::write_labels(labels)).with_context(|| format!("writing {}", lp.display()))?;
        report.line(format!("wrote {}", lp.display()));
    }
    Ok(())
}

fn emit_witness<S: Structure>(
    w: &Witness<S>,
    io: &WitnessIo,
    write: fn(&S) -> String,
    report: &mut Report,
) -> Result<()> {
    report.line(format!("construction: {}", w.construction));
    report.line(format!(
        "base vertices={} host vertices={} host relations={}",
        w.base.order(),
        w.host.order(),
        w.host.relation_count()
    ));
    report.line(format!("embedding: {}", join(&w.embedding)));
    report.put("construction", w.construction.clone());
    report.put("base_vertices", w.base.order());
    report.put("host_vertices", w.host.order());
    report.put("host_relations", w.host.relation_count());
    report.put("embedding", w.embedding.clone());
    if let Some(path) = &io.output {
        write_host(path, write(&w.host), w.labels.as_deref(), report)?;
    }
    if io.verify {
        verify_into(w, io.strategy, report)?;
    }
    Ok(())
}

fn witness(cmd: &WitnessCmd, cap: usize, report: &mut Report) -> Result<()> {
    match cmd {
        WitnessCmd::Valuation { io, n } => {
            let g = report.read_graph(&io.input)?;
            let n = n.unwrap_or(g.order());
            check_cap("valuation host vertices", ValuationGraph::vertex_count(n as u64), cap)?;
            let w = build_valuation_witness(&g, Some(n))?;
            emit_witness(&w, io, format::write_graph, report)
        }
        WitnessCmd::Kneser { io, d } => match report.read(&io.input)? {
            AnyStructure::Graph(g) => {
                let w = build_kneser_witness_capped(&g, *d, cap)?;
                emit_witness(&w, io, format::write_graph, report)
            }
            AnyStructure::Digraph(g) => {
                let w = build_relational_kneser_witness_capped(&g, *d, cap)?;
                emit_witness(&w, io, format::write_digraph, report)
            }
            AnyStructure::Hypergraph(_) => bail!("the intersection construction takes a graph or digraph"),
        },
        WitnessCmd::Kkfree { io, k } => {
            let g = report.read_graph(&io.input)?;
            let w = build_kkfree_witness_capped(&g, *k, cap)?;
            emit_witness(&w, io, format::write_graph, report)
        }
        WitnessCmd::Directed { io, n, bidirectional } => {
            let g = report.read_digraph(&io.input)?;
            let n = n.unwrap_or(g.order()).max(1);
            let q = if *bidirectional { 4 } else { 3 };
            check_cap("directed valuation host vertices", DirectedValuation::vertex_count(n as u64, q), cap)?;
            let w = build_directed_valuation_witness(&g, Some(n), *bidirectional)?;
            emit_witness(&w, io, format::write_digraph, report)
        }
        WitnessCmd::Hypergraph { io, n } => {
            let AnyStructure::Hypergraph(g) = report.read(&io.input)? else {
                bail!("{} does not hold a hypergraph", io.input.display());
            };
            let n = n.unwrap_or(g.order()).max(g.uniformity());
            check_cap(
                "hypergraph valuation host vertices",
                HyperValuation::vertex_count(n as u64, g.uniformity() as u64),
                cap,
            )?;
            let w = build_hypergraph_valuation_witness(&g, Some(n))?;
            emit_witness(&w, io, format::write_hypergraph, report)
        }
    }
}

fn verify_pair<S: Structure>(g: S, h: S, embedding: Option<Vec<usize>>, report: &mut Report) -> Result<()> {
    let embedding = match embedding {
        Some(e) => e,
        None if g == h => (0..g.order()).collect(),
        None => match find_embedding(&g, &h, &[]) {
            Some(e) => e,
            None => {
                report.line("verdict=fail: G is not an induced substructure of H");
                report.put("embeds", false);
                report.verdict = Some(false);
                return Ok(());
            }
        },
    };
    report.line(format!("embedding: {}", join(&embedding)));
    report.put("embedding", embedding.clone());
    let w = Witness::new(g, h, embedding, "input")?;
    verify_into(&w, Some(Strategy::Search), report)
}

fn verify(args: &VerifyArgs, report: &mut Report) -> Result<()> {
    let g = report.read(&args.g)?;
    let h = report.read(&args.h)?;
    let e = args.embedding.clone();
    match (g, h) {
        (AnyStructure::Graph(g), AnyStructure::Graph(h)) => verify_pair(g, h, e, report),
        (AnyStructure::Digraph(g), AnyStructure::Digraph(h)) => verify_pair(g, h, e, report),
        (AnyStructure::Hypergraph(g), AnyStructure::Hypergraph(h)) => {
            if g.uniformity() != h.uniformity() {
                bail!("uniformities differ: {} and {}", g.uniformity(), h.uniformity());
            }
            verify_pair(g, h, e, report)
        }
        (g, h) => bail!("kinds differ: {} and {}", g.kind_name(), h.kind_name()),
    }
}

fn bounds(cmd: &BoundsCmd, report: &mut Report) -> Result<()> {
    match cmd {
        BoundsCmd::Hrus { input, mode } => {
            let g = report.read_graph(input)?;
            let c = lower_bound_hrus(&g, *mode)?;
            c.validate(&g)?;
            let ks: Vec<String> = c.witnesses.iter().map(|(v, k)| format!("{v}:{k}")).collect();
            report.line(format!("lower={}", c.value));
            report.line(format!("independent set: {}", join(&c.independent_set)));
            report.line(format!("vertex:k {}", ks.join(" ")));
            report.line(format!("complemented={}", c.complemented));
            report.put("lower", c.value.to_string());
            report.put("independent_set", c.independent_set.clone());
            report.put("complemented", c.complemented);
        }
        BoundsCmd::Cycles { n } => {
            let b = cycle_bounds(*n)?;
            report.line(b.to_string());
            report.put("lower", b.lower.to_string());
            report.put("upper", b.upper.to_string());
            if let Some(h) = &b.homogeneous {
                report.line(format!("eppa={h} (homogeneous)"));
                report.put("homogeneous", h.to_string());
            }
        }
        BoundsCmd::Degrees { input } => {
            let g = report.read_graph(input)?;
            let r = degree_bounds(&g);
            let show = |c: &Option<Count>| c.as_ref().map_or("-".to_string(), |c| c.to_string());
            report.line(format!("max degree={} neighbourhood independence={}", r.max_degree, r.neighbourhood_independence));
            report.line(format!("lower={}", show(&r.bound)));
            report.line(format!("regular triangle-free lower={}", show(&r.regular_triangle_free_bound)));
            if r.homogeneous_subgraph {
                report.line("induced subgraph of a homogeneous graph: no bound claimed");
            }
            report.put("max_degree", r.max_degree);
            report.put("lower", r.bound.as_ref().map(|c| c.to_string()));
            report.put("regular_triangle_free_lower", r.regular_triangle_free_bound.as_ref().map(|c| c.to_string()));
            report.put("homogeneous_subgraph", r.homogeneous_subgraph);
        }
        BoundsCmd::Table { from, to } => {
            if from > to {
                bail!("empty range {from}..{to}");
            }
            let mut rows = Vec::new();
            for n in *from..=*to {
                let b = cycle_bounds(n)?;
                report.line(format!("n={n} {b}"));
                rows.push(json!({"n": n, "lower": b.lower.to_string(), "upper": b.upper.to_string()}));
            }
            report.put("rows", rows);
        }
    }
    Ok(())
}

fn catalog(args: &CatalogArgs, report: &mut Report) -> Result<()> {
    let mut all_ok = true;
    let mut entries = Vec::new();
    for entry in homogeneous_catalog() {
        let g = materialize(entry)?;
        let mut line = format!("{entry} vertices={} edges={}", g.order(), g.edge_count());
        if args.verify {
            let ok = is_homogeneous(&g)? && is_homogeneous(&g.complement())?;
            all_ok &= ok;
            line.push_str(if ok { " homogeneous" } else { " NOT homogeneous" });
        }
        report.line(line);
        entries.push(entry.to_string());
    }
    report.put("entries", entries);
    if args.verify {
        report.verdict = Some(all_ok);
    }
    if let Some(path) = &args.input {
        let g = report.read_graph(path)?;
        match is_subgraph_of_homogeneous(&g) {
            Some(e) => {
                report.line(format!("input embeds into {} at {}", e.entry, join(&e.embedding)));
                report.put("embeds_into", e.entry.to_string());
            }
            None => {
                report.line("input is not an induced subgraph of a finite homogeneous graph");
                report.put("embeds_into", Value::Null);
            }
        }
    }
    Ok(())
}

fn search_min(args: &SearchMinArgs, report: &mut Report) -> Result<()> {
    let g = report.read_graph(&args.input)?;
    let opts = MinSearchOptions { max_m: args.max_m, prune_transitive: args.prune_transitive, max_hosts: args.max_hosts };
    let outcome = min_witness_search(&g, &opts)?;
    let (levels, conditional) = match &outcome {
        MinSearchOutcome::Found { levels, conditional_on_transitivity, .. }
        | MinSearchOutcome::Exhausted { levels, conditional_on_transitivity, .. } => (levels, *conditional_on_transitivity),
    };
    for (m, hosts) in levels {
        report.line(format!("m={m} hosts={hosts}"));
    }
    report.put("levels", levels.iter().map(|&(m, h)| json!([m, h])).collect::<Vec<_>>());
    report.put("conditional_on_transitivity", conditional);
    let suffix = if conditional { " (assuming a vertex-transitive minimum)" } else { "" };
    match outcome {
        MinSearchOutcome::Found { value, witness, .. } => {
            report.line(format!("minimum={value}{suffix}"));
            report.put("minimum", value);
            if let Some(path) = &args.output {
                write_host(path, format::write_graph(&witness.host), None, report)?;
            }
            if args.verify {
                verify_into(&witness, Some(Strategy::Search), report)?;
            }
        }
        MinSearchOutcome::Exhausted { max_m, .. } => {
            report.line(format!("no witness on at most {max_m} vertices{suffix}"));
            report.put("minimum", Value::Null);
        }
    }
    Ok(())
}

fn random_exp(args: &RandomExpArgs, report: &mut Report) -> Result<()> {
    report.seed = Some(args.seed);
    let r = random_experiment(args.n, args.p, args.samples, args.seed)?;
    report.text.push_str(&r.summary());
    report.put("n", r.n);
    report.put("p", r.probability.to_string());
    report.put("samples", r.samples.len());
    report.put("min", r.min.to_string());
    report.put("median", r.median.to_string());
    report.put("max", r.max.to_string());
    report.put("summary", r.summary());
    Ok(())
}

fn coherence(args: &CoherenceArgs, report: &mut Report) -> Result<()> {
    let g = report.read_graph(&args.input)?;
    let n = args.n.unwrap_or(g.order());
    let base = ValuationExtender::new(g.clone(), ValuationGraph::new(n)?)?;
    let psi = make_coherent_extender(&g, Arc::new(base))?;
    let w = build_valuation_witness(&g, Some(n))?.with_extender(Arc::new(psi));
    let r = verify_coherence(&w, args.scope)?;
    report.line(format!("pairs={} violations={}", r.pairs_checked, r.violation_count));
    if let Some(v) = &r.first_violation {
        report.line(format!("violation: f={:?} g={:?} at host vertex {}", v.f, v.g, v.point));
    }
    report.put("pairs", r.pairs_checked);
    report.put("violations", r.violation_count);
    report.verdict = Some(r.passed());
    if args.verify {
        let coherent = r.passed();
        verify_into(&w, Some(Strategy::Extender), report)?;
        report.verdict = Some(coherent && report.verdict == Some(true));
    }
    Ok(())
}

fn paley(args: &PaleyArgs, report: &mut Report) -> Result<()> {
    let t = build_paley_tournament(args.q)?;
    report.line(format!("Paley({}) vertices={} arcs={}", args.q, t.order(), t.arc_count()));
    report.put("vertices", t.order());
    report.put("arcs", t.arc_count());
    if let Some(path) = &args.output {
        write_host(path, format::write_digraph(&t), None, report)?;
    }
    let base = match &args.input {
        Some(p) => Some(report.read_digraph(p)?),
        None => None,
    };
    if args.verify {
        verify_pair(base.unwrap_or_else(|| t.clone()), t, None, report)?;
    }
    Ok(())
}

fn execute(cli: &Cli, report: &mut Report) -> Result<()> {
    match &cli.command {
        Command::Witness(cmd) => witness(cmd, cli.max_vertices, report),
        Command::Verify(args) => verify(args, report),
        Command::Bounds(cmd) => bounds(cmd, report),
        Command::Catalog(args) => catalog(args, report),
        Command::SearchMin(args) => search_min(args, report),
        Command::RandomExp(args) => random_exp(args, report),
        Command::Coherence(args) => coherence(args, report),
        Command::Paley(args) => paley(args, report),
    }
}

/// Runs `cli`, honouring the timeout.
pub fn run(cli: Cli) -> Result<Report> {
    let Some(secs) = cli.timeout_secs else {
        let mut report = Report::default();
        execute(&cli, &mut report)?;
        return Ok(report);
    };
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let mut report = Report::default();
        let r = execute(&cli, &mut report).map(|()| report);
        let _ = tx.send(r);
    });
    rx.recv_timeout(Duration::from_secs(secs)).map_err(|_| anyhow!(Timeout(secs)))?
}

/// Parses `argv`, runs the command, prints and logs. Returns the exit code.
pub fn main_with_args(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let log = cli.log.clone();
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return exit_code_for(&e);
        }
    };
    print!("{}", report.text);
    if let Some(path) = log {
        let mut outputs = report.outputs.clone();
        if let Some(v) = report.verdict {
            outputs.insert("verdict".into(), v.into());
        }
        let record = RunRecord::new(argv, &report.inputs, report.seed, Value::Object(outputs));
        if let Err(e) = record.append_to(&path) {
            eprintln!("error: {e:#}");
            return EXIT_USAGE;
        }
    }
    match report.verdict {
        Some(false) => EXIT_VERIFY_FAILED,
        _ => EXIT_OK,
    }
}
