use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use dpbound::bounds::{
    self, check_witness, depth_lower_bound, expander_bound, kl_bound, max_separated, rectangle_bound,
    Certificate, MeasureId, SchnorrMode,
};
use dpbound::circuit::{Cut, Measure, WhichEnvelope};
use dpbound::equivalence::{decide, random_equivalence_test};
use dpbound::generators::{self as gens, Graph};
use dpbound::oracle;
use dpbound::polynomial::DEFAULT_TERM_CAP;
use dpbound::report;
use dpbound::{Circuit, Error, ExtInt, Polynomial, Result, SemiringId};

#[derive(Parser)]
#[command(name = "dpbound", version, about = "Semiring circuits and certified lower bounds for dynamic programs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every randomized path.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a polynomial family, graph or dynamic-programming circuit.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Evaluate a polynomial or circuit over a semiring at one point.
    Eval(EvalArgs),
    /// The polynomial a circuit produces.
    Produce(ProduceArgs),
    /// Structural decompositions of a single-output circuit.
    #[command(subcommand)]
    Decompose(DecomposeCmd),
    /// Decide whether two polynomials define the same function.
    Equiv(EquivArgs),
    /// Lower-bound certificates.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Exact minimum circuit sizes by exhaustive search (tiny inputs only).
    Oracle(OracleArgs),
    /// Desk-scale summary tables.
    Report(ReportArgs),
}

#[derive(Subcommand)]
enum GenCmd {
    Perm {
        #[arg(long)]
        n: usize,
    },
    Hc {
        #[arg(long)]
        n: usize,
    },
    Clique {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Rooted directed spanning trees (or undirected ones with --undirected).
    St {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        undirected: bool,
    },
    /// Simple paths between two nodes of K_n (default 0 and n−1).
    Stconn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
    },
    LayeredStconn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    Triangle {
        #[arg(long)]
        n: usize,
    },
    Mp {
        #[arg(long)]
        n: usize,
    },
    /// The connectivity polynomial (n ≤ 4) or, with --factors, its path factors.
    Conn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        factors: bool,
    },
    /// The parity polynomial of a graph.
    Fg {
        #[arg(long)]
        graph: PathBuf,
    },
    FloydWarshall {
        #[arg(long)]
        n: usize,
    },
    BellmanFord {
        #[arg(long)]
        n: usize,
    },
    /// A sum-of-monomials circuit producing the given polynomial.
    Naive {
        #[arg(long)]
        poly: PathBuf,
    },
    RandomGraph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    RandomPoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        #[arg(long)]
        multilinear: bool,
    },
    RandomCircuit {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        gates: usize,
        #[arg(long)]
        with_zero: bool,
    },
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, conflicts_with = "circuit", required_unless_present = "circuit")]
    poly: Option<PathBuf>,
    #[arg(long)]
    circuit: Option<PathBuf>,
    #[arg(long)]
    semiring: SemiringId,
    /// Comma-separated values, one per variable (`inf`, `-inf` allowed).
    #[arg(long, allow_hyphen_values = true)]
    at: String,
}

#[derive(Args)]
struct ProduceArgs {
    #[arg(long)]
    circuit: PathBuf,
    /// Only this output (0-based).
    #[arg(long)]
    output: Option<usize>,
    /// Emit the circuit in DOT instead.
    #[arg(long)]
    dot: bool,
    /// Keep coefficients (counts of parse graphs) instead of monomial sets.
    #[arg(long)]
    coefficients: bool,
    #[arg(long, default_value_t = DEFAULT_TERM_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum DecomposeCmd {
    /// Split the produced set at a gate: produce(g)·ext(g) ∪ F with g zeroed.
    Split {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        gate: usize,
    },
    /// Decompose along a node cut (comma-separated gate ids).
    Cut {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        nodes: String,
    },
    /// Balanced sum of products.
    Sop {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, value_enum, default_value_t = MeasureArg::Degree)]
        measure: MeasureArg,
    },
    /// A subcircuit producing the lower or higher envelope.
    Envelope {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, value_enum)]
        which: EnvelopeArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Degree,
    Length,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Degree => Measure::Degree,
            MeasureArg::Length => Measure::Length,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EnvelopeArg {
    Lower,
    Higher,
}

#[derive(Args)]
struct EquivArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    semiring: SemiringId,
    /// Comma-separated evaluation domain for undecided cases.
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<String>,
    /// Additionally run this many random trials (never claims equivalence).
    #[arg(long)]
    random_trials: Option<u64>,
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Largest separated sub-polynomial.
    Schnorr {
        #[arg(long)]
        poly: PathBuf,
        /// Exact clique search (default for at most 64 monomials).
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        #[arg(long)]
        greedy: bool,
    },
    /// (k,l)-freeness bound.
    Klfree {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        l: u64,
    },
    /// Factor-density rectangle bound.
    Rectangle {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, value_enum, default_value_t = MeasureArg::Degree)]
        measure: MeasureArg,
    },
    /// Matching-number bound for the parity polynomial of a graph.
    Expander {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Depth bound from factor-density decreases.
    Depth {
        #[arg(long)]
        poly: PathBuf,
    },
    /// Move a certificate to another measure of a polynomial.
    Transfer {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        to: MeasureId,
    },
    /// Re-verify a certificate's witness.
    Check {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        poly: PathBuf,
    },
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    poly: PathBuf,
    #[arg(long, default_value_t = oracle::MAX_SIZE)]
    max_size: usize,
    /// Compute mode over this semiring; produce mode when absent.
    #[arg(long)]
    semiring: Option<SemiringId>,
    /// Restrict compute mode to multilinear boolean circuits.
    #[arg(long, conflicts_with = "semiring")]
    multilinear_bool: bool,
    /// Comma-separated grid for the function-table path.
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<String>,
    /// Compare this certificate with the oracle value instead.
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, default_value_t = 5)]
    oracle_max_size: usize,
}

fn read_input(path: &PathBuf) -> Result<String> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn load<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn parse_values(s: &str) -> Result<Vec<ExtInt>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<ExtInt>())
        .collect()
}

/// What a command prints: JSON, plus an optional text rendering.
struct Output {
    json: serde_json::Value,
    text: Option<String>,
}

impl Output {
    fn json<T: Serialize>(v: &T) -> Result<Self> {
        Ok(Output { json: serde_json::to_value(v)?, text: None })
    }

    fn with_text(mut self, t: String) -> Self {
        self.text = Some(t);
        self
    }
}

fn poly_out(f: &Polynomial) -> Result<Output> {
    Ok(Output::json(f)?.with_text(format!("{}\n", f.pretty())))
}

fn cert_out(c: &Certificate) -> Result<Output> {
    let mut t = format!("{} ≥ {} ({:?})\n", c.applies_to, c.value, c.kind);
    for s in &c.chain {
        t.push_str(&format!("  {} → {} [{:?}]\n", s.from, s.to, s.tag));
    }
    t.push_str(&format!("  {}\n", c.note));
    Ok(Output::json(c)?.with_text(t))
}

fn run_gen(cmd: GenCmd, seed: u64) -> Result<Output> {
    match cmd {
        GenCmd::Perm { n } => poly_out(&gens::gen_perm(n)?),
        GenCmd::Hc { n } => poly_out(&gens::gen_hc(n)?),
        GenCmd::Clique { n, k } => poly_out(&gens::gen_clique(n, k)?),
        GenCmd::St { n, undirected } => poly_out(&if undirected {
            gens::gen_spanning_tree_undirected(n)?
        } else {
            gens::gen_spanning_tree(n)?
        }),
        GenCmd::Stconn { n, s, t } => {
            let s = s.unwrap_or(0);
            let t = t.unwrap_or(n.saturating_sub(1) as u32);
            poly_out(&gens::gen_stconn_pair(n, s, t)?)
        }
        GenCmd::LayeredStconn { n, d } => poly_out(&gens::gen_layered_stconn(n, d)?),
        GenCmd::Triangle { n } => poly_out(&gens::gen_triangle(n)?),
        GenCmd::Mp { n } => Output::json(&gens::gen_mp(n)?),
        GenCmd::Conn { n, factors } => {
            if factors {
                Output::json(&gens::gen_conn_factors(n)?)
            } else {
                poly_out(&gens::gen_conn(n)?)
            }
        }
        GenCmd::Fg { graph } => poly_out(&gens::gen_fg(&load::<Graph>(&graph)?)?),
        GenCmd::FloydWarshall { n } => Output::json(&gens::build_floyd_warshall(n)?),
        GenCmd::BellmanFord { n } => Output::json(&gens::build_bellman_ford(n)?),
        GenCmd::Naive { poly } => Output::json(&gens::build_naive(&load::<Polynomial>(&poly)?)?),
        GenCmd::RandomGraph { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::range(format!("edge probability {p} not in [0, 1]")));
            }
            Output::json(&gens::random_graph(n, p, seed))
        }
        GenCmd::RandomPoly { n, terms, max_degree, multilinear } => poly_out(&if multilinear {
            gens::random_multilinear_polynomial(n, terms, max_degree, seed)?
        } else {
            gens::random_polynomial(n, terms, max_degree, seed)?
        }),
        GenCmd::RandomCircuit { vars, gates, with_zero } => {
            Output::json(&gens::random_circuit(vars, gates, with_zero, seed)?)
        }
    }
}

fn run_eval(a: EvalArgs) -> Result<Output> {
    let point = parse_values(&a.at)?;
    if let Some(p) = a.poly {
        let f: Polynomial = load(&p)?;
        if point.len() != f.n_vars() {
            return Err(Error::Input(format!("{} values for {} variables", point.len(), f.n_vars())));
        }
        let v = f.evaluate(a.semiring, &point)?;
        return Ok(Output::json(&json!({ "semiring": a.semiring, "value": v }))?.with_text(format!("{v}\n")));
    }
    let c: Circuit = load(a.circuit.as_ref().expect("clap requires one source"))?;
    if point.len() != c.n_vars() {
        return Err(Error::Input(format!("{} values for {} variables", point.len(), c.n_vars())));
    }
    let vs = c.eval(a.semiring, &point)?;
    let text = vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    Ok(Output::json(&json!({ "semiring": a.semiring, "outputs": vs }))?.with_text(format!("{text}\n")))
}

fn run_produce(a: ProduceArgs) -> Result<Output> {
    let mut c: Circuit = load(&a.circuit)?;
    if let Some(k) = a.output {
        c = c.with_output(k)?;
    }
    if a.dot {
        let dot = c.to_dot();
        return Ok(Output { json: serde_json::Value::String(dot.clone()), text: Some(dot) });
    }
    let ps = if a.coefficients { c.produce(a.cap)? } else { c.produce_sets(a.cap)? };
    if ps.len() == 1 {
        poly_out(&ps[0])
    } else {
        let text = ps.iter().map(|p| p.pretty() + "\n").collect::<String>();
        Ok(Output::json(&ps)?.with_text(text))
    }
}

fn run_decompose(cmd: DecomposeCmd) -> Result<Output> {
    let cap = DEFAULT_TERM_CAP;
    match cmd {
        DecomposeCmd::Split { circuit, gate } => {
            let c: Circuit = load(&circuit)?;
            let (p, e, rest) = c.gate_split(gate, cap)?;
            let f = c.produce_sets(cap)?.remove(0);
            let recombined = p.mul_set(&e, cap)?.union_set(&rest)?;
            Output::json(&json!({
                "gate": gate, "produced": p, "ext": e, "rest": rest,
                "union_check": recombined.set_eq(&f),
            }))
        }
        DecomposeCmd::Cut { circuit, nodes } => {
            let c: Circuit = load(&circuit)?;
            let ids = nodes
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad gate id {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let parts = c.cut_decompose(&Cut::Node(ids), cap)?;
            let f = c.produce_sets(cap)?.remove(0);
            let mut acc = Polynomial::zero(c.n_vars());
            for p in &parts {
                acc = acc.union_set(&p.produced.mul_set(&p.ext, cap)?)?;
            }
            Output::json(&json!({ "parts": parts, "union_check": acc.set_eq(&f) }))
        }
        DecomposeCmd::Sop { circuit, measure } => {
            let c: Circuit = load(&circuit)?;
            let parts = c.sum_of_products_decompose(measure.into(), cap)?;
            let f = c.produce_sets(cap)?.remove(0);
            let mut acc = Polynomial::zero(c.n_vars());
            for p in &parts {
                acc = acc.union_set(&p.a.mul_set(&p.b, cap)?)?;
            }
            Output::json(&json!({
                "parts": parts,
                "union_check": acc.set_eq(&f),
                "product_gates": c.n_product_gates(),
            }))
        }
        DecomposeCmd::Envelope { circuit, which } => {
            let c: Circuit = load(&circuit)?;
            let w = match which {
                EnvelopeArg::Lower => WhichEnvelope::Lower,
                EnvelopeArg::Higher => WhichEnvelope::Higher,
            };
            Output::json(&c.envelope_subcircuit(w)?)
        }
    }
}

fn run_equiv(a: EquivArgs, seed: u64) -> Result<Output> {
    let f: Polynomial = load(&a.a)?;
    let h: Polynomial = load(&a.b)?;
    let domain = a.domain.as_deref().map(parse_values).transpose()?;
    let verdict = decide(&f, &h, a.semiring, domain.as_deref())?;
    let mut out = json!({ "semiring": a.semiring, "verdict": verdict });
    if let Some(trials) = a.random_trials {
        let dom = domain.unwrap_or_else(|| dpbound::equivalence::default_domain(a.semiring));
        out["random"] = serde_json::to_value(random_equivalence_test(&f, &h, a.semiring, &dom, trials, seed)?)?;
    }
    let text = match &verdict {
        v if v.is_equivalent() => "equivalent".to_string(),
        v if v.is_inequivalent() => "not equivalent".to_string(),
        v => format!("undecided: {v:?}"),
    };
    Ok(Output::json(&out)?.with_text(text + "\n"))
}

fn run_bound(cmd: BoundCmd) -> Result<Output> {
    match cmd {
        BoundCmd::Schnorr { poly, exact, greedy } => {
            let f: Polynomial = load(&poly)?;
            let mode = if greedy || (!exact && f.len() > 64) { SchnorrMode::Greedy } else { SchnorrMode::Exact };
            cert_out(&max_separated(&f, mode)?)
        }
        BoundCmd::Klfree { poly, k, l } => cert_out(&kl_bound(&load(&poly)?, k, l)?),
        BoundCmd::Rectangle { poly, measure } => cert_out(&rectangle_bound(&load(&poly)?, measure.into())?),
        BoundCmd::Expander { graph } => {
            let g: Graph = load(&graph)?;
            cert_out(&expander_bound(&g)?)
        }
        BoundCmd::Depth { poly } => cert_out(&depth_lower_bound(&load(&poly)?)?),
        BoundCmd::Transfer { cert, poly, to } => {
            let c: Certificate = load(&cert)?;
            cert_out(&bounds::transfer(&c, &load(&poly)?, to)?)
        }
        BoundCmd::Check { cert, poly } => {
            let c: Certificate = load(&cert)?;
            let r = check_witness(&load(&poly)?, &c)?;
            let text = format!("{}: {}\n", if r.ok { "valid" } else { "INVALID" }, r.detail);
            if !r.ok {
                return Err(Error::precondition(format!("certificate rejected: {}", r.detail)));
            }
            Ok(Output::json(&r)?.with_text(text))
        }
    }
}

fn run_oracle(a: OracleArgs) -> Result<Output> {
    let f: Polynomial = load(&a.poly)?;
    if let Some(cert) = a.cert {
        let c: Certificate = load(&cert)?;
        let r = oracle::verify_certificate(&f, &c, a.max_size)?;
        let text = format!(
            "{}: certificate {}, oracle {:?}{}\n",
            r.measure,
            r.cert_value,
            r.oracle,
            if r.violation { " VIOLATION" } else { "" }
        );
        return Ok(Output::json(&r)?.with_text(text));
    }
    let domain = a.domain.as_deref().map(parse_values).transpose()?;
    let size_text = |s: Option<usize>| s.map_or(format!("> {}", a.max_size), |s| s.to_string());
    if a.multilinear_bool {
        let r = oracle::min_multilinear_bool_size(&f, a.max_size)?;
        let t = format!("multilinear bool size {}\n", size_text(r.size()));
        return Ok(Output::json(&r)?.with_text(t));
    }
    match a.semiring {
        None => {
            let r = oracle::min_produce_size(&f, a.max_size)?;
            let t = format!("produce size {}\n", size_text(r.size));
            Ok(Output::json(&r)?.with_text(t))
        }
        Some(id) => {
            let r = oracle::min_compute_size(&f, id, a.max_size, domain.as_deref())?;
            let t = format!(
                "compute size over {id} {}{}\n",
                size_text(r.size()),
                if r.relative_to_domain { " (relative to domain)" } else { "" }
            );
            Ok(Output::json(&r)?.with_text(t))
        }
    }
}

fn run(cli: Cli) -> Result<Output> {
    match cli.cmd {
        Cmd::Gen(g) => run_gen(g, cli.seed),
        Cmd::Eval(a) => run_eval(a),
        Cmd::Produce(a) => run_produce(a),
        Cmd::Decompose(d) => run_decompose(d),
        Cmd::Equiv(a) => run_equiv(a, cli.seed),
        Cmd::Bound(b) => run_bound(b),
        Cmd::Oracle(a) => run_oracle(a),
        Cmd::Report(a) => {
            if a.oracle_max_size > oracle::MAX_SIZE {
                return Err(Error::range(format!("oracle max size above {}", oracle::MAX_SIZE)));
            }
            let r = report::build_report(a.oracle_max_size);
            let text = report::render_text(&r);
            Ok(Output::json(&r)?.with_text(text))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            let body = match (format, out.text) {
                (Format::Text, Some(t)) => t,
                _ => serde_json::to_string_pretty(&out.json).expect("values serialize") + "\n",
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
