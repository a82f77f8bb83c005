use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use dist2::distance::{distance2_pair_count, distance_k_graph, find_triangle};
use dist2::families::{build_family_gp, build_family_gpp, find_spindle, move_vd, reduce_to_diameter_2, FamilyParams};
use dist2::report::{Payload, ReportDocument, RunInfo};
use dist2::search::{
    anneal_search, check_lemma_claims, verify_bound, AnnealOptions, AnnealStart, SearchReport, Source, VerifyOptions,
    DEFAULT_CEILING,
};
use dist2::structure::{find_induced_c6_variant, find_induced_claw, theorem_hypothesis_holds, two_clique_cover, Pattern};
use dist2::{dot, graph6, Error, Graph};

const EXIT_VIOLATED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;

#[derive(Parser)]
#[command(name = "dist2", version, about = "Pairs of vertices at distance two: search, checks and constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the report document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave out timestamp, wall time and worker count.
    #[arg(long)]
    reproducible: bool,
}

#[derive(Args)]
struct Jobs {
    /// Worker threads (default: all available cores).
    #[arg(long, env = "DIST2_JOBS")]
    jobs: Option<usize>,
}

impl Jobs {
    fn get(&self) -> usize {
        self.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the bound on e(G_2) over all connected graphs of one order.
    Verify {
        #[arg(long)]
        n: usize,
        /// Restrict to graphs of diameter at most two.
        #[arg(long)]
        diam2_only: bool,
        #[command(flatten)]
        jobs: Jobs,
        /// Allow orders above 10.
        #[arg(long)]
        long: bool,
        /// Read graphs from a graph6 file instead of generating them.
        #[arg(long)]
        from_file: Option<PathBuf>,
        /// Progress file for resumable runs.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Sweep the structural lemmas over all connected graphs of one order.
    Claims {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        output: Output,
    },
    /// Print structural data for graphs, one JSON object per line.
    Check {
        /// A graph6 string.
        #[arg(required_unless_present = "file", conflicts_with = "file")]
        graph: Option<String>,
        /// A file with one graph6 string per line.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Build one of the parametric families.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long, conflicts_with = "dot")]
        g6: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Graph transformations.
    Transform {
        #[command(subcommand)]
        op: TransformOp,
    },
    /// Print the distance-k graph as graph6.
    DistGraph {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: String,
    },
    /// Simulated annealing for large e(G_2).
    Anneal {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        restarts: u64,
        /// Start every restart from the path instead of the construction.
        #[arg(long)]
        from_path: bool,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum TransformOp {
    /// Apply the spindle move once, or reduce to diameter two with --trace.
    Move {
        #[arg(long)]
        input: String,
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gpp,
    Gp,
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

fn is_parse_error(e: &Error) -> bool {
    match e {
        Error::BadChar { .. } | Error::BadLength { .. } | Error::BadPadding => true,
        Error::Stream { source, .. } => is_parse_error(source),
        _ => false,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_parse_error(&e) { EXIT_PARSE } else { 1 })
        }
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Verify { n, diam2_only, jobs, long, from_file, checkpoint, output } => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            if from_file.is_none() && n > DEFAULT_CEILING && !long {
                return Err(Failure::Usage(format!("orders above {DEFAULT_CEILING} need --long")));
            }
            let source = from_file.clone().map_or(Source::Builtin, Source::Graph6File);
            let opts = VerifyOptions { diam2_only, workers: jobs.get(), source, long, checkpoint };
            let report = verify_bound(n, &opts)?;
            let mut params = Map::new();
            params.insert("n".into(), n.into());
            params.insert("diam2_only".into(), diam2_only.into());
            params.insert("long".into(), long.into());
            if let Some(f) = &from_file {
                params.insert("from_file".into(), f.display().to_string().into());
            }
            emit_search("verify", params, report, &output)
        }
        Command::Claims { n, jobs, output } => {
            let workers = jobs.get();
            let start = std::time::Instant::now();
            let report = check_lemma_claims(n, workers)?;
            let ok = report.asserted_hold();
            let mut params = Map::new();
            params.insert("n".into(), n.into());
            let mut doc = ReportDocument::new("claims", params, Payload::Claims(report));
            if !output.reproducible {
                doc.run = Some(run_info(start.elapsed().as_secs_f64(), workers));
            }
            write_doc(&doc, &output)?;
            Ok(if ok { 0 } else { EXIT_VIOLATED })
        }
        Command::Check { graph, file } => {
            let mut out = io::stdout().lock();
            match (graph, file) {
                (Some(s), _) => writeln!(out, "{}", check_json(&graph6::decode(s.trim())?))?,
                (None, Some(path)) => {
                    for g in graph6::read_stream(BufReader::new(File::open(path)?)) {
                        writeln!(out, "{}", check_json(&g?))?;
                    }
                }
                (None, None) => unreachable!("clap requires one input"),
            }
            Ok(0)
        }
        Command::Construct { family, x, y, g6: _, dot } => {
            let p = FamilyParams::new(x, y)?;
            let g = match family {
                Family::Gpp => build_family_gpp(p)?,
                Family::Gp => build_family_gp(p)?,
            };
            print_graph(&g, dot)?;
            Ok(0)
        }
        Command::Transform { op: TransformOp::Move { input, trace } } => {
            let g = graph6::decode(input.trim())?;
            if trace {
                let (h, r) = reduce_to_diameter_2(&g)?;
                let v = json!({
                    "input": graph6::encode(&g)?,
                    "output": graph6::encode(&h)?,
                    "steps": r.steps(),
                    "pairs": r.pairs,
                    "triangle_free": r.triangle_free,
                    "diameters": r.diameters,
                    "monotone": r.is_monotone(),
                });
                println!("{v}");
            } else {
                let s = find_spindle(&g)?;
                println!("{}", graph6::encode(&move_vd(&g, &s)?)?);
            }
            Ok(0)
        }
        Command::DistGraph { k, input } => {
            let g = graph6::decode(input.trim())?;
            println!("{}", graph6::encode(&distance_k_graph(&g, k)?.graph)?);
            Ok(0)
        }
        Command::Anneal { n, steps, seed, restarts, from_path, jobs, output } => {
            let init = if from_path { AnnealStart::Path } else { AnnealStart::Construction };
            let opts = AnnealOptions { steps, seed, restarts, workers: jobs.get(), init, ..Default::default() };
            let report = anneal_search(n, &opts)?;
            let mut params = Map::new();
            params.insert("n".into(), n.into());
            params.insert("steps".into(), steps.into());
            params.insert("seed".into(), seed.into());
            params.insert("restarts".into(), restarts.into());
            params.insert("init".into(), (if from_path { "path" } else { "construction" }).into());
            params.insert("t_start".into(), opts.t_start.into());
            params.insert("t_end".into(), opts.t_end.into());
            emit_search("anneal", params, report, &output)
        }
    }
}

fn run_info(wall: f64, workers: usize) -> RunInfo {
    RunInfo {
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        wall_time_seconds: wall,
        worker_count: workers,
    }
}

fn emit_search(command: &str, params: Map<String, Value>, report: SearchReport, output: &Output) -> Result<u8, Failure> {
    let holds = report.bound_holds;
    let run = run_info(report.wall_time_seconds, report.worker_count);
    let mut doc = ReportDocument::new(command, params, Payload::Search(report));
    if !output.reproducible {
        doc.run = Some(run);
    }
    write_doc(&doc, output)?;
    Ok(if holds { 0 } else { EXIT_VIOLATED })
}

fn write_doc(doc: &ReportDocument, output: &Output) -> Result<(), Failure> {
    match &output.out {
        Some(path) => dist2::report::write_report(doc, path)?,
        None => io::stdout().lock().write_all(doc.render()?.as_bytes())?,
    }
    Ok(())
}

fn print_graph(g: &Graph, as_dot: bool) -> Result<(), Failure> {
    if as_dot {
        print!("{}", dot::to_dot(g)?);
    } else {
        println!("{}", graph6::encode(g)?);
    }
    Ok(())
}

fn check_json(g: &Graph) -> Value {
    let g2_triangle = if g.is_connected() { find_triangle(&distance_k_graph(g, 2).expect("connected").graph) } else { None };
    let c6: Map<String, Value> = Pattern::C6_VARIANTS
        .iter()
        .map(|&p| {
            let key = serde_json::to_value(p).expect("pattern serialises");
            let w = find_induced_c6_variant(g, p).map(|w| w.vertices);
            (key.as_str().expect("pattern names are strings").to_string(), json!(w))
        })
        .collect();
    let covers: Vec<Value> = (0..g.n())
        .map(|v| match two_clique_cover(g, v) {
            Some(c) => json!([c.a.to_vec(), c.b.to_vec()]),
            None => Value::Null,
        })
        .collect();
    json!({
        "graph6": graph6::encode(g).expect("decoded graphs re-encode"),
        "n": g.n(),
        "connected": g.is_connected(),
        "diameter": g.diameter().finite(),
        "pairs_at_distance_2": distance2_pair_count(g),
        "g2_triangle_free": g.is_connected().then_some(g2_triangle.is_none()),
        "g2_triangle": g2_triangle.map(|(a, b, c)| [a, b, c]),
        "claw": find_induced_claw(g).map(|w| w.vertices),
        "c6_variants": c6,
        "two_clique_cover": covers,
        "hypothesis_vertex": theorem_hypothesis_holds(g),
    })
}
