use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lexwreath::autgroup::DEFAULT_BRUTE_LIMIT;
use lexwreath::verdict::QuantumLabel;
use lexwreath::verdict::{verify_sabidussi, DEFAULT_AUT_LIMIT, SWEEP_MAX_X, SWEEP_MAX_Y};
use lexwreath::{
    analyze, automorphism_group, brute_force_automorphisms, parse_graph6, parse_graph_text,
    parse_spec, write_graph6, AnalyzeOptions, Graph, Report,
};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::json;

const EXIT_SKIPPED: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_REFUSED: u8 = 65;
const WORKERS_ENV: &str = "LEXWREATH_WORKERS";

#[derive(Parser, Debug)]
#[command(
    name = "lexwreath",
    version,
    about = "Automorphism and decomposition checks for lexicographic graph products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit compact JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest product order for which automorphism cross-checks run.
    #[arg(long, global = true, default_value_t = DEFAULT_AUT_LIMIT as u64,
          value_parser = clap::value_parser!(u64).range(0..=64))]
    aut_limit: u64,

    /// Largest order accepted by brute-force enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BRUTE_LIMIT as u64,
          value_parser = clap::value_parser!(u64).range(0..=8))]
    brute_limit: u64,

    /// Worker threads for verify and scan. Overrides LEXWREATH_WORKERS.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,

    /// Include pair lists and polynomials in reports.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide the decomposition conditions for X∘Y.
    Analyze {
        x: String,
        y: String,
        /// Skip the automorphism-order cross-check.
        #[arg(long)]
        no_cross_check: bool,
    },
    /// Automorphism group order and generators.
    Aut {
        spec: String,
        /// Also count automorphisms by brute force.
        #[arg(long)]
        brute: bool,
    },
    /// Print X∘Y as graph6.
    Product {
        x: String,
        y: String,
        /// Add order, valence and connectivity.
        #[arg(long)]
        stats: bool,
    },
    /// Exhaustive check of the classical condition against automorphism orders.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_x: usize,
        #[arg(long, default_value_t = 3)]
        max_y: usize,
    },
    /// Analyze every pair from two graph6 files, one JSON line per pair.
    Scan {
        #[arg(long)]
        x_file: PathBuf,
        #[arg(long)]
        y_file: PathBuf,
        #[arg(long)]
        no_cross_check: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Refused(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Refused(_) => EXIT_REFUSED,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Refused(m) => m,
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze {
            x,
            y,
            no_cross_check,
        } => {
            let (x, y) = load_pair(x, y)?;
            cmd_analyze(cli, &x, &y, !no_cross_check)
        }
        Command::Aut { spec, brute } => cmd_aut(cli, &load_graph("graph", spec)?, *brute),
        Command::Product { x, y, stats } => {
            let (x, y) = load_pair(x, y)?;
            cmd_product(cli, &x.lex_product(&y), *stats)
        }
        Command::Verify { max_x, max_y } => cmd_verify(cli, *max_x, *max_y),
        Command::Scan {
            x_file,
            y_file,
            no_cross_check,
        } => cmd_scan(cli, x_file, y_file, !no_cross_check),
    }
}

fn load_pair(x: &str, y: &str) -> Result<(Graph, Graph), Failure> {
    if x == "-" && y == "-" {
        return Err(Failure::Usage(
            "stdin can supply only one of X and Y".into(),
        ));
    }
    Ok((load_graph("X", x)?, load_graph("Y", y)?))
}

/// A spec, or `-` for a graph read from stdin.
fn load_graph(role: &str, spec: &str) -> Result<Graph, Failure> {
    if spec == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("{role} from stdin: {e}")))?;
        return parse_graph_text(&text)
            .map_err(|e| Failure::Usage(format!("{role} from stdin: {e}")));
    }
    parse_spec(spec).map_err(|e| Failure::Usage(format!("{role} spec `{spec}` {e}")))
}

fn options(cli: &Cli, cross_check: bool) -> AnalyzeOptions {
    AnalyzeOptions {
        cross_check,
        aut_limit: cli.aut_limit as usize,
        verbose: cli.verbose,
    }
}

fn verdict_code(report: &Report) -> u8 {
    match report.quantum {
        QuantumLabel::Holds => 0,
        QuantumLabel::Fails => 1,
        QuantumLabel::NotApplicable => 2,
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn cmd_analyze(cli: &Cli, x: &Graph, y: &Graph, cross_check: bool) -> Outcome {
    let report = analyze(x, y, &options(cli, cross_check));
    if cli.json {
        println!("{}", to_json(&report));
    } else {
        print!("{}", render_report(&report));
    }
    Ok(verdict_code(&report))
}

fn yes_no(b: bool, yes: &str, no: &str) -> String {
    if b { yes } else { no }.to_string()
}

fn describe(s: &lexwreath::verdict::GraphSummary) -> String {
    let valence = s
        .valence
        .map_or("irregular".to_string(), |v| format!("{v}-regular"));
    format!(
        "{} vertices, {valence}, {}, complement {}",
        s.order,
        yes_no(s.connected, "connected", "disconnected"),
        yes_no(s.complement_connected, "connected", "disconnected"),
    )
}

fn render_report(r: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("X: {}", describe(&r.x_summary)));
    line(format!("Y: {}", describe(&r.y_summary)));
    line(format!(
        "Y twin pairs: {} with equal open neighborhoods, {} with equal closed neighborhoods",
        r.sabidussi_y.s_count, r.sabidussi_y.t_count
    ));
    if let (Some(s), Some(t)) = (&r.sabidussi_y.s_pairs, &r.sabidussi_y.t_pairs) {
        line(format!("  open: {s:?}"));
        line(format!("  closed: {t:?}"));
    }
    line(format!(
        "classical condition: {}",
        yes_no(r.classical_holds, "holds", "fails")
    ));
    let quantum = serde_json::to_value(r.quantum).expect("label serializes");
    match &r.quantum_reason {
        Some(reason) => line(format!(
            "quantum verdict: {} ({reason})",
            quantum.as_str().unwrap_or_default()
        )),
        None => line(format!(
            "quantum verdict: {}",
            quantum.as_str().unwrap_or_default()
        )),
    }
    let s = &r.spectral;
    if !s.applicable {
        line(format!(
            "spectral condition: not applicable ({})",
            s.reason.as_deref().unwrap_or("")
        ));
    } else if s.holds {
        line("spectral condition: holds".into());
    } else {
        match s.witness {
            Some(w) => line(format!(
                "spectral condition: fails (common root near {w:.6})"
            )),
            None => line("spectral condition: fails".into()),
        }
    }
    if let Some(p) = &s.polynomials {
        line(format!("  char poly X: {}", p.x_char_poly));
        line(format!("  char poly Y: {}", p.y_char_poly));
        line(format!("  shifted: {}", p.shifted));
        line(format!("  scaled: {}", p.scaled));
    }
    match (&r.cross_check, &r.cross_check_note) {
        (Some(c), _) => line(format!(
            "cross-check: |Aut(X*Y)| = {}, wreath order = {} ({})",
            c.aut_product_order,
            c.wreath_order,
            yes_no(c.equal, "equal", "different")
        )),
        (None, Some(note)) => line(format!("cross-check: skipped, {note}")),
        (None, None) => {}
    }
    out
}

fn cmd_aut(cli: &Cli, g: &Graph, brute: bool) -> Outcome {
    let n = g.vertex_count();
    let limit = cli.brute_limit as usize;
    if brute && n > limit {
        return Err(Failure::Refused(format!(
            "brute force refused: {n} vertices exceeds the limit of {limit}"
        )));
    }
    let group = automorphism_group(g);
    let generators: Vec<String> = group.generators().iter().map(ToString::to_string).collect();
    let brute_order = if brute {
        let all =
            brute_force_automorphisms(g, limit).map_err(|e| Failure::Refused(e.to_string()))?;
        Some(BigUint::from(all.len()))
    } else {
        None
    };
    let agrees = brute_order.as_ref().is_none_or(|b| b == group.order());
    if cli.json {
        let mut value = json!({
            "vertices": n,
            "order": group.order().to_string(),
            "generators": generators,
        });
        if let Some(b) = &brute_order {
            value["brute_force_order"] = json!(b.to_string());
            value["agrees"] = json!(agrees);
        }
        println!("{value}");
    } else {
        println!("order: {}", group.order());
        println!("generators: {}", generators.len());
        for gen in &generators {
            println!("  {gen}");
        }
        if let Some(b) = &brute_order {
            println!(
                "brute force: {b} automorphisms ({})",
                yes_no(agrees, "agrees", "DISAGREES")
            );
        }
    }
    Ok(if agrees { 0 } else { 1 })
}

fn cmd_product(cli: &Cli, g: &Graph, stats: bool) -> Outcome {
    let code = write_graph6(g).map_err(|e| Failure::Usage(e.to_string()))?;
    let summary = lexwreath::verdict::GraphSummary::of(g);
    if cli.json {
        let mut value = json!({ "graph6": code });
        if stats {
            value["order"] = json!(summary.order);
            value["valence"] = summary.valence.map_or(json!("irregular"), |v| json!(v));
            value["connected"] = json!(summary.connected);
        }
        println!("{value}");
    } else {
        println!("{code}");
        if stats {
            let valence = summary
                .valence
                .map_or("irregular".to_string(), |v| format!("{v}-regular"));
            println!(
                "{} vertices, {valence}, {}",
                summary.order,
                yes_no(summary.connected, "connected", "disconnected")
            );
        }
    }
    Ok(0)
}

/// Flag, then environment, then available parallelism.
fn worker_count(cli: &Cli) -> Result<usize, Failure> {
    if let Some(w) = cli.workers {
        return Ok(w as usize);
    }
    if let Ok(raw) = std::env::var(WORKERS_ENV) {
        return match raw.trim().parse::<usize>() {
            Ok(w) if w > 0 => Ok(w),
            _ => Err(Failure::Usage(format!(
                "{WORKERS_ENV} must be a positive integer, got `{raw}`"
            ))),
        };
    }
    Ok(std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn pool(cli: &Cli) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count(cli)?)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start workers: {e}")))
}

fn cmd_verify(cli: &Cli, max_x: usize, max_y: usize) -> Outcome {
    if max_x > SWEEP_MAX_X || max_y > SWEEP_MAX_Y {
        return Err(Failure::Refused(format!(
            "verify limits are --max-x <= {SWEEP_MAX_X} and --max-y <= {SWEEP_MAX_Y}"
        )));
    }
    let pool = pool(cli)?;
    let summary = pool
        .install(|| verify_sabidussi(max_x, max_y))
        .map_err(|e| Failure::Refused(e.to_string()))?;
    if cli.json {
        println!("{}", to_json(&summary));
    } else {
        println!("pairs checked: {}", summary.pairs_checked);
        println!("agreements: {}", summary.agreements);
        println!("wreath decompositions: {}", summary.wreath_pairs);
        println!("counterexamples: {}", summary.counterexamples.len());
        for c in &summary.counterexamples {
            println!(
                "  x={} y={} condition={} |Aut(x*y)|={} wreath={}",
                c.x, c.y, c.condition, c.aut_product_order, c.wreath_order
            );
        }
    }
    Ok(if summary.counterexamples.is_empty() {
        0
    } else {
        1
    })
}

/// Graphs from a graph6 corpus with their line numbers; malformed lines are
/// reported on stderr and returned as a count.
fn read_corpus(path: &Path) -> Result<(Vec<Graph>, usize), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut graphs = Vec::new();
    let mut skipped = 0;
    for (k, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match parse_graph6(line.as_bytes()) {
            Ok(g) => graphs.push(g),
            Err(e) => {
                eprintln!("{}:{}: {e}", path.display(), k + 1);
                skipped += 1;
            }
        }
    }
    Ok((graphs, skipped))
}

fn cmd_scan(cli: &Cli, x_file: &Path, y_file: &Path, cross_check: bool) -> Outcome {
    let (xs, x_bad) = read_corpus(x_file)?;
    let (ys, y_bad) = read_corpus(y_file)?;
    let opts = options(cli, cross_check);
    let pool = pool(cli)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for x in &xs {
        // one row at a time keeps the stream in (x, y) order
        let row: Vec<String> = pool.install(|| {
            ys.par_iter()
                .map(|y| to_json(&analyze(x, y, &opts)))
                .collect()
        });
        for line in row {
            writeln!(out, "{line}").map_err(|e| Failure::Usage(e.to_string()))?;
        }
        out.flush().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(if x_bad + y_bad > 0 { EXIT_SKIPPED } else { 0 })
}
