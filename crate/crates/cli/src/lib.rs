//! The `isomat` command line: read a graph, run one computation, print JSON.

pub mod format;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use isomat_core::delta::{delta_matroid, transverse_cycles, zeta};
use isomat_core::equivalence::{equivalent, orbit_representatives, MoveSet};
use isomat_core::graph::LoopedSimpleGraph;
use isomat_core::isotropic::{enumerate_triangulations, ias, GroundElement};
use isomat_core::polynomials::{interlace_q, transversal_section, vertex_nullity_specialization, ParamAssignment};
use isomat_core::verify::{run_suite, Suite, SuiteConfig, SuiteReport};

use format::{parse_graph, Format, GraphDocument};

/// Exit status for a computation that failed on valid arguments.
pub const EXIT_DOMAIN: i32 = 1;
/// Exit status for malformed arguments.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "isomat", version, about = "Isotropic matroids, delta-matroids and interlace polynomials of looped simple graphs")]
struct Cli {
    /// Input format of graph files.
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    /// Indented output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Reject input graphs with more vertices than this.
    #[arg(long, global = true)]
    limit_n: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Size, components, loops and parallel pairs of the isotropic matroid.
    Info { graph: PathBuf },
    /// The interlace polynomial q and its vertex-nullity specialization.
    Interlace { graph: PathBuf },
    /// The transversal section for a parameter preset.
    Section {
        graph: PathBuf,
        /// ones, interlace or restricted.
        #[arg(long, default_value = "ones")]
        preset: String,
    },
    /// Feasible sets of the delta-matroid.
    Delta { graph: PathBuf },
    /// Transverse cycles and the cycle ζ at each vertex.
    Cycles { graph: PathBuf },
    /// Isomorphism classes reachable by a family of moves.
    Orbit {
        graph: PathBuf,
        /// loops, pivots, ppt or full-local.
        #[arg(long)]
        moves: MoveSet,
    },
    /// Whether the second graph is reachable from the first.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        moves: MoveSet,
    },
    /// Every triangulation of the ground set.
    Triangulations { graph: PathBuf },
    /// Run a property suite, or all of them.
    Verify {
        /// Suite name, or `all`.
        #[arg(long)]
        suite: String,
        /// Largest graph size; each suite has its own default.
        #[arg(long)]
        max_n: Option<usize>,
        /// Seed for the random-graph parts.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn error(code: i32, message: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_command<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CommandOutput::error(code, text)
            };
        }
    };
    match execute(&cli) {
        Ok((value, ok)) => {
            let mut stdout = if cli.pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            }
            .expect("JSON values serialize");
            stdout.push('\n');
            CommandOutput {
                code: if ok { 0 } else { EXIT_DOMAIN },
                stdout,
                stderr: String::new(),
            }
        }
        Err(msg) => CommandOutput::error(EXIT_DOMAIN, format!("error: {msg}\n")),
    }
}

fn read_graph(cli: &Cli, path: &PathBuf) -> Result<LoopedSimpleGraph, String> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| format!("reading stdin: {e}"))?
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?
    };
    let g = parse_graph(&text, cli.format).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(limit) = cli.limit_n {
        if g.n() > limit {
            return Err(format!("{} has {} vertices, above --limit-n {limit}", path.display(), g.n()));
        }
    }
    Ok(g)
}

fn names(elements: &[GroundElement]) -> Vec<String> {
    elements.iter().map(ToString::to_string).collect()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// The JSON result and whether the command succeeded.
fn execute(cli: &Cli) -> Result<(Value, bool), String> {
    let value = match &cli.command {
        Command::Info { graph } => {
            let g = read_graph(cli, graph)?;
            let m = ias(&g);
            let components: Vec<Vec<String>> = m.components().map_err(err)?.iter().map(|c| names(c)).collect();
            let cols = m.columns();
            let loops: Vec<String> = (0..m.len()).filter(|&i| cols[i] == 0).map(|i| m.ground()[i].to_string()).collect();
            let mut parallel = Vec::new();
            for i in 0..m.len() {
                for j in i + 1..m.len() {
                    if cols[i] != 0 && cols[i] == cols[j] {
                        parallel.push([m.ground()[i].to_string(), m.ground()[j].to_string()]);
                    }
                }
            }
            json!({
                "n": g.n(),
                "edges": g.edge_count(),
                "looped_vertices": g.looped_vertices(),
                "rank": m.rank(),
                "components": components,
                "matroid_loops": loops,
                "parallel_pairs": parallel,
            })
        }
        Command::Interlace { graph } => {
            let g = read_graph(cli, graph)?;
            json!({
                "q": interlace_q(&g).map_err(err)?.to_string(),
                "vertex_nullity": vertex_nullity_specialization(&g).map_err(err)?.to_string(),
            })
        }
        Command::Section { graph, preset } => {
            let g = read_graph(cli, graph)?;
            let p = ParamAssignment::preset(preset, g.n()).map_err(err)?;
            json!({
                "preset": preset,
                "section": transversal_section(&g, &p).map_err(err)?.to_string(),
            })
        }
        Command::Delta { graph } => {
            let g = read_graph(cli, graph)?;
            let d = delta_matroid(&g).map_err(err)?;
            json!({ "n": g.n(), "count": d.len(), "feasible": d.sets() })
        }
        Command::Cycles { graph } => {
            let g = read_graph(cli, graph)?;
            let cycles = transverse_cycles(&g).map_err(err)?;
            let zetas = (0..g.n())
                .map(|v| zeta(&g, v).map(|z| names(&z.elements())))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            let listed: Vec<Vec<String>> = cycles.iter().map(|c| names(&c.elements())).collect();
            json!({ "count": cycles.len(), "cycles": listed, "zeta": zetas })
        }
        Command::Orbit { graph, moves } => {
            let g = read_graph(cli, graph)?;
            let reps = orbit_representatives(&g, *moves).map_err(err)?;
            let docs: Vec<GraphDocument> = reps.values().map(GraphDocument::from_graph).collect();
            json!({ "moves": moves.name(), "size": reps.len(), "representatives": docs })
        }
        Command::Equiv { first, second, moves } => {
            let a = read_graph(cli, first)?;
            let b = read_graph(cli, second)?;
            json!({ "moves": moves.name(), "equivalent": equivalent(&a, &b, *moves).map_err(err)? })
        }
        Command::Triangulations { graph } => {
            let g = read_graph(cli, graph)?;
            let all = enumerate_triangulations(&g).map_err(err)?;
            let listed: Vec<Vec<Vec<String>>> = all.iter().map(|t| t.cells().iter().map(|c| names(c)).collect()).collect();
            json!({ "count": all.len(), "triangulations": listed })
        }
        Command::Verify { suite, max_n, seed } => {
            let all = suite == "all";
            let chosen: Vec<Suite> = if all {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>()?]
            };
            let mut reports = Vec::new();
            for s in chosen {
                let config = SuiteConfig {
                    // with `all`, an explicit size is capped per suite
                    max_n: max_n.map_or(s.default_max_n(), |k| if all { k.min(s.max_n_limit()) } else { k }),
                    seed: *seed,
                };
                reports.push(run_suite(s, config)?);
            }
            let ok = reports.iter().all(SuiteReport::ok);
            let cases: u64 = reports.iter().map(|r| r.cases).sum();
            let value = if let [r] = &reports[..] {
                report_json(r)
            } else {
                json!({ "ok": ok, "cases": cases, "suites": reports.iter().map(report_json).collect::<Vec<_>>() })
            };
            return Ok((value, ok));
        }
    };
    Ok((value, true))
}

fn report_json(r: &SuiteReport) -> Value {
    json!({
        "suite": r.suite.name(),
        "max_n": r.max_n,
        "ok": r.ok(),
        "cases": r.cases,
        "failure_count": r.failure_count,
        "failures": r.failures,
    })
}
