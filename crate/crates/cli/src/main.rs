use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use kneser_covers::cache::{CanonCache, CACHE_DIR_ENV};
use kneser_covers::graph::kneser_graph;
use kneser_covers::kneser::{bipartite_kneser, g_graph, FamilyIndex};
use kneser_covers::ncomplex::neighborhood_complex;
use kneser_covers::report::{
    aut_report, build_tasks, chroma_report, classify_report, ncomplex_report, run_tasks, select_tasks, Budgets,
    ChromaMode, Context, Grid,
};

/// Kneser graphs, their bipartite double covers and odd quotients.
#[derive(Parser)]
#[command(name = "kcover", version, about)]
struct Cli {
    /// Canonical-form cache directory
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,

    #[command(flatten)]
    budgets: BudgetArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest graph handed to canonical labeling
    #[arg(long, global = true, default_value_t = Budgets::default().canon_vertices)]
    budget_canon_vertices: usize,
    /// Search-tree nodes per canonical labeling
    #[arg(long, global = true, default_value_t = Budgets::default().canon_nodes)]
    budget_canon_nodes: u64,
    /// Branch-and-bound nodes per chromatic number
    #[arg(long, global = true, default_value_t = Budgets::default().coloring_nodes)]
    budget_coloring_nodes: u64,
    /// Simplices per homology computation
    #[arg(long, global = true, default_value_t = Budgets::default().simplices)]
    budget_simplices: u64,
    /// Total relator length in the Tietze pass
    #[arg(long, global = true, default_value_t = Budgets::default().tietze_length)]
    budget_tietze: usize,
    /// Automorphisms listed element by element
    #[arg(long, global = true, default_value_t = Budgets::default().group_elements)]
    budget_group_elements: u64,
}

impl From<&BudgetArgs> for Budgets {
    fn from(b: &BudgetArgs) -> Self {
        Budgets {
            canon_vertices: b.budget_canon_vertices,
            canon_nodes: b.budget_canon_nodes,
            coloring_nodes: b.budget_coloring_nodes,
            simplices: b.budget_simplices,
            tietze_length: b.budget_tietze,
            group_elements: b.budget_group_elements,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// K(n,k)
    Kneser,
    /// H(n,k) = K_2 × K(n,k), with parity
    Bipartite,
    /// G_i(n,k)
    G,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
    Dimacs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Constructive,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColoringFormat {
    Json,
    Sol,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph of one of the families
    Build {
        family: Family,
        n: usize,
        k: usize,
        i: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotients of H(n,k) by every τ×σ_i
    Classify {
        n: usize,
        k: usize,
        /// Enumerate every odd involution and match it to a class
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Automorphism group of G_i(n,k)
    Aut {
        n: usize,
        k: usize,
        i: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chromatic number of G_i(n,k)
    Chroma {
        n: usize,
        k: usize,
        i: usize,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
        /// Also write the coloring here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: ColoringFormat,
    },
    /// Neighborhood complex of G_i(n,k)
    Ncomplex {
        n: usize,
        k: usize,
        i: usize,
        /// Highest homology dimension; defaults to n − 2k − 1
        #[arg(long)]
        depth: Option<usize>,
        /// Also write the complex as JSON here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the claim registry, one JSON report per line
    VerifyAll {
        /// Largest n and k of the grid
        #[arg(long, num_args = 2, value_names = ["MAX_N", "MAX_K"], default_values_t = [7, 3])]
        grid: Vec<usize>,
        /// Claim ids or prefixes, e.g. `thm2` or `thm3.chi`
        #[arg(long)]
        only: Vec<String>,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn write_output(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report json");
    s.push('\n');
    s
}

fn verdict_code(v: &Value) -> ExitCode {
    if v["verdict"] == "fail" {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let cache = CanonCache::from_option_or_env(cli.cache_dir.as_deref())?;
    let ctx = Context::new(Budgets::from(&cli.budgets), cache);
    match cli.command {
        Command::Build {
            family,
            n,
            k,
            i,
            format,
            out,
        } => {
            let name = match family {
                Family::Kneser => format!("K_{n}_{k}"),
                Family::Bipartite => format!("H_{n}_{k}"),
                Family::G => format!("G{}_{n}_{k}", i.unwrap_or(0)),
            };
            let (graph, parity_json) = match family {
                Family::Kneser => (kneser_graph(n, k)?, None),
                Family::Bipartite => {
                    let h = bipartite_kneser(n, k)?;
                    let json = h.bigraph.to_json();
                    (h.bigraph.graph().clone(), Some(json))
                }
                Family::G => {
                    let i = i.ok_or("family g needs the index i")?;
                    FamilyIndex::new(n, k, i)?;
                    (g_graph(n, k, i)?, None)
                }
            };
            let text = match format {
                GraphFormat::Json => parity_json.unwrap_or_else(|| graph.to_json()),
                GraphFormat::Dot => graph.to_dot(&name),
                GraphFormat::Dimacs => graph.to_dimacs(Some(&name)),
            };
            write_output(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { n, k, exhaustive, out } => {
            let r = classify_report(&ctx, n, k, exhaustive)?;
            write_output(out.as_deref(), &pretty(&r))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Aut { n, k, i, out } => {
            let r = aut_report(&ctx, n, k, i)?;
            write_output(out.as_deref(), &pretty(&r))?;
            Ok(verdict_code(&r))
        }
        Command::Chroma {
            n,
            k,
            i,
            mode,
            out,
            format,
        } => {
            let mode = match mode {
                Mode::Exact => ChromaMode::Exact,
                Mode::Constructive => ChromaMode::Constructive,
                Mode::Both => ChromaMode::Both,
            };
            let (r, coloring) = chroma_report(&ctx, n, k, i, mode)?;
            write_output(None, &pretty(&r))?;
            if let Some(path) = out {
                let text = match format {
                    ColoringFormat::Json => coloring.to_json(),
                    ColoringFormat::Sol => coloring.to_sol(),
                };
                fs::write(path, text)?;
            }
            Ok(verdict_code(&r))
        }
        Command::Ncomplex { n, k, i, depth, out } => {
            let depth = depth.unwrap_or_else(|| n.saturating_sub(2 * k + 1));
            let r = ncomplex_report(&ctx, n, k, i, depth)?;
            write_output(None, &pretty(&r))?;
            if let Some(path) = out {
                fs::write(path, neighborhood_complex(&g_graph(n, k, i)?)?.to_json())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyAll { grid, only, jobs, out } => {
            let grid = Grid {
                max_n: grid[0],
                max_k: grid[1],
            };
            let tasks = select_tasks(build_tasks(&grid), &only);
            let mut sink: Box<dyn Write> = match &out {
                Some(p) => Box::new(BufWriter::new(fs::File::create(p)?)),
                None => Box::new(io::stdout().lock()),
            };
            let mut io_error = None;
            let summary = run_tasks(&tasks, &ctx, jobs.max(1), |r| {
                let line = serde_json::to_string(r).expect("report json");
                if let Err(e) = writeln!(sink, "{line}").and_then(|_| sink.flush()) {
                    io_error.get_or_insert(e);
                }
            });
            if let Some(e) = io_error {
                return Err(e.into());
            }
            eprintln!(
                "{} pass, {} fail, {} inconclusive",
                summary.pass, summary.fail, summary.inconclusive
            );
            Ok(if summary.fail == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
