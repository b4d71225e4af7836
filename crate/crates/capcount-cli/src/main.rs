//! Command-line driver: graph ingestion and generators in front of the
//! counting, capacity, bound and stability machinery.
//!
//! Exit codes: 0 on success (and on every verified inequality), 1 when a
//! verified bound is violated (not expected to happen), 2 on usage errors.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use capcount::bounds::{self, format_sig9, BoundReport, VerifyTask};
use capcount::capacity::{capacity, CapacityProblem, DEFAULT_GRAD_TOL, DEFAULT_MAX_ITER};
use capcount::counting::{
    count_eulerian, count_orientations, count_perfect_matchings, DegreeTarget,
};
use capcount::graph::MultiGraph;
use capcount::poly::graph_polynomial;
use capcount::stability::{stability_test, StabilityVerdict, DEFAULT_TRIALS};

#[derive(Parser)]
#[command(
    name = "capcount",
    version,
    about = "Polynomial capacities, exact orientation/matching counts, and their lower bounds"
)]
struct Cli {
    /// Edge-list input file (one `u v` pair per line, `#` comments,
    /// optional `vertices N` header)
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Generator spec: complete_bipartite:N, cycle:N, complete:N,
    /// random_regular_bipartite:N:D, random_even_graph:N
    #[arg(long, global = true)]
    gen: Option<String>,

    /// Random seed (overrides the CAPCOUNT_SEED environment variable;
    /// default 0)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TaskKind {
    Matching,
    Eulerian,
    General,
}

#[derive(Subcommand)]
enum Command {
    /// Count orientations with prescribed in-degrees
    CountOrientations {
        /// In-degree vector: comma list, `indeg-half`, or `matching:K`
        #[arg(long)]
        r: String,
    },
    /// Count perfect matchings across a bipartition
    CountMatchings {
        /// Bipartition as `0,1,2:3,4,5`; inferred by 2-coloring if omitted
        #[arg(long)]
        bipartition: Option<String>,
    },
    /// Count Eulerian orientations (all degrees must be even)
    CountEulerian,
    /// Compute the capacity of the graph polynomial at a given exponent
    Capacity {
        /// Exponent vector: comma list, `indeg-half`, or `matching:K`
        #[arg(long)]
        alpha: String,
        /// Gradient-norm stopping tolerance
        #[arg(long, default_value_t = DEFAULT_GRAD_TOL)]
        tol: f64,
        /// Iteration cap for the optimizer
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
    },
    /// Compute the applicable lower bounds without asserting them
    Bound {
        #[arg(long, value_enum)]
        task: TaskKind,
        /// In-degree vector for --task general
        #[arg(long)]
        r: Option<String>,
        /// Bipartition for --task matching (inferred if omitted)
        #[arg(long)]
        bipartition: Option<String>,
    },
    /// Count, bound, and assert count >= bound (exit 1 on violation)
    Verify {
        #[arg(long, value_enum)]
        task: TaskKind,
        /// In-degree vector for --task general
        #[arg(long)]
        r: Option<String>,
        /// Bipartition for --task matching (inferred if omitted)
        #[arg(long)]
        bipartition: Option<String>,
    },
    /// Randomized line-restriction stability test of the graph polynomial
    StabilityTest {
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u32,
    },
    /// Emit the selected graph in edge-list format
    Gen,
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn resolve_seed(cli: &Cli) -> Result<u64, UsageError> {
    if let Some(seed) = cli.seed {
        return Ok(seed);
    }
    match std::env::var("CAPCOUNT_SEED") {
        Ok(s) => s
            .parse::<u64>()
            .map_err(|e| UsageError(format!("bad CAPCOUNT_SEED `{s}`: {e}"))),
        Err(_) => Ok(0),
    }
}

fn generate(spec: &str, seed: u64) -> Result<MultiGraph, UsageError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let arg = |i: usize| -> Result<usize, UsageError> {
        parts
            .get(i)
            .ok_or_else(|| UsageError(format!("generator `{spec}` is missing argument {i}")))?
            .parse::<usize>()
            .map_err(|e| UsageError(format!("bad generator argument in `{spec}`: {e}")))
    };
    let g = match parts[0] {
        "complete_bipartite" => MultiGraph::complete_bipartite(arg(1)?)?,
        "cycle" => MultiGraph::cycle(arg(1)?)?,
        "complete" => MultiGraph::complete(arg(1)?)?,
        "random_regular_bipartite" => MultiGraph::random_regular_bipartite(arg(1)?, arg(2)?, seed)?,
        "random_even_graph" => MultiGraph::random_even_graph(arg(1)?, seed)?,
        other => {
            return Err(UsageError(format!(
                "unknown generator `{other}`; expected complete_bipartite, cycle, complete, random_regular_bipartite, or random_even_graph"
            )))
        }
    };
    Ok(g)
}

/// The single input source: a file or a generator spec, never both.
fn load_graph(cli: &Cli, seed: u64) -> Result<(MultiGraph, String), UsageError> {
    match (&cli.input, &cli.gen) {
        (Some(_), Some(_)) => Err(UsageError(
            "--input and --gen are mutually exclusive".into(),
        )),
        (None, None) => Err(UsageError("one of --input or --gen is required".into())),
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            let g = MultiGraph::from_edge_list_str(&text)?;
            let id = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            Ok((g, id))
        }
        (None, Some(spec)) => Ok((generate(spec, seed)?, spec.clone())),
    }
}

/// Exponent/in-degree vector spec: a comma list, `indeg-half`, or
/// `matching:K` (1 on the first K vertices, degree-1 on the rest).
fn parse_vector_spec(spec: &str, g: &MultiGraph) -> Result<Vec<f64>, UsageError> {
    if spec == "indeg-half" {
        return Ok(g.degrees().iter().map(|&d| d as f64 / 2.0).collect());
    }
    if let Some(k) = spec.strip_prefix("matching:") {
        let k: usize = k
            .parse()
            .map_err(|e| UsageError(format!("bad matching size in `{spec}`: {e}")))?;
        if k > g.vertex_count() {
            return Err(UsageError(format!(
                "matching side {k} exceeds vertex count {}",
                g.vertex_count()
            )));
        }
        let degrees = g.degrees();
        return Ok((0..g.vertex_count())
            .map(|v| {
                if v < k {
                    1.0
                } else {
                    (degrees[v] as f64 - 1.0).max(0.0)
                }
            })
            .collect());
    }
    let values: Result<Vec<f64>, _> = spec.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let values = values.map_err(|e| UsageError(format!("bad vector `{spec}`: {e}")))?;
    if values.len() != g.vertex_count() {
        return Err(UsageError(format!(
            "vector `{spec}` has {} entries for {} vertices",
            values.len(),
            g.vertex_count()
        )));
    }
    Ok(values)
}

fn parse_integer_vector_spec(spec: &str, g: &MultiGraph) -> Result<Vec<u32>, UsageError> {
    let values = parse_vector_spec(spec, g)?;
    values
        .into_iter()
        .map(|x| {
            if x.fract() == 0.0 && (0.0..=f64::from(u32::MAX)).contains(&x) {
                Ok(x as u32)
            } else {
                Err(UsageError(format!(
                    "entry {x} is not a non-negative integer"
                )))
            }
        })
        .collect()
}

/// `0,1,2:3,4,5`, or inferred by 2-coloring when absent.
fn resolve_bipartition(
    spec: Option<&str>,
    g: &MultiGraph,
) -> Result<(Vec<usize>, Vec<usize>), UsageError> {
    match spec {
        Some(s) => {
            let (a, b) = s
                .split_once(':')
                .ok_or_else(|| UsageError(format!("bipartition `{s}` needs the form A:B")))?;
            let parse_side = |side: &str| -> Result<Vec<usize>, UsageError> {
                if side.trim().is_empty() {
                    return Ok(Vec::new());
                }
                side.split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<usize>()
                            .map_err(|e| UsageError(format!("bad vertex in `{s}`: {e}")))
                    })
                    .collect()
            };
            let (a, b) = (parse_side(a)?, parse_side(b)?);
            g.validate_bipartition(&a, &b)?;
            Ok((a, b))
        }
        None => g
            .two_coloring()
            .ok_or_else(|| UsageError("graph is not bipartite".into())),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), UsageError> {
    match &cli.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_text(cli: &Cli, report: &BoundReport) -> String {
    match cli.format {
        Format::Csv => format!("{}\n{}\n", BoundReport::CSV_HEADER, report.csv_row()),
        Format::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "graph:             {}", report.graph_id);
            let _ = writeln!(out, "task:              {}", report.task);
            let _ = writeln!(out, "exact count:       {}", report.exact_count);
            let _ = writeln!(
                out,
                "capacity bound:    {}",
                format_sig9(report.capacity_bound)
            );
            if let Some(b) = report.specialized_bound {
                let _ = writeln!(out, "specialized bound: {}", format_sig9(b));
            }
            if let Some(b) = report.lasvergnas_bound {
                let _ = writeln!(out, "las vergnas bound: {}", format_sig9(b));
            }
            let _ = writeln!(
                out,
                "capacity value:    {} ({})",
                format_sig9(report.capacity_value),
                report.capacity_flag
            );
            let _ = writeln!(out, "slack ratio:       {}", format_sig9(report.slack_ratio));
            let _ = writeln!(
                out,
                "verdict:           {}",
                if report.passes { "PASS" } else { "FAIL" }
            );
            out
        }
    }
}

fn build_task(
    kind: TaskKind,
    r: Option<&str>,
    bipartition: Option<&str>,
    g: &MultiGraph,
) -> Result<VerifyTask, UsageError> {
    match kind {
        TaskKind::Matching => {
            let (a, b) = resolve_bipartition(bipartition, g)?;
            Ok(VerifyTask::Matching { a, b })
        }
        TaskKind::Eulerian => Ok(VerifyTask::Eulerian),
        TaskKind::General => {
            let spec = r.ok_or_else(|| UsageError("--task general needs --r".into()))?;
            Ok(VerifyTask::General {
                r: parse_integer_vector_spec(spec, g)?,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, UsageError> {
    let seed = resolve_seed(cli)?;
    let (graph, graph_id) = load_graph(cli, seed)?;

    match &cli.command {
        Command::Gen => {
            emit(cli, &graph.to_edge_list_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CountOrientations { r } => {
            let r = DegreeTarget::new(parse_integer_vector_spec(r, &graph)?);
            let result = count_orientations(&graph, &r)?;
            emit(cli, &format!("{}\n", result.count))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CountEulerian => {
            let result = count_eulerian(&graph)?;
            emit(cli, &format!("{}\n", result.count))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CountMatchings { bipartition } => {
            let (a, b) = resolve_bipartition(bipartition.as_deref(), &graph)?;
            let result = count_perfect_matchings(&graph, &a, &b)?;
            emit(cli, &format!("{}\n", result.count))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Capacity {
            alpha,
            tol,
            max_iter,
        } => {
            let alpha = parse_vector_spec(alpha, &graph)?;
            let poly = graph_polynomial::<f64>(&graph);
            let prob = CapacityProblem::new(poly, alpha)?;
            let res = capacity(&prob, *tol, *max_iter)?;
            let mut out = String::new();
            let _ = writeln!(out, "value:          {}", format_sig9(res.value));
            let _ = writeln!(out, "attainment:     {}", res.attainment);
            if let Some(m) = &res.minimizer {
                let coords: Vec<String> = m.iter().map(|x| format_sig9(*x)).collect();
                let _ = writeln!(out, "minimizer:      {}", coords.join(","));
            }
            let _ = writeln!(out, "iterations:     {}", res.iterations);
            let _ = writeln!(
                out,
                "gradient norm:  {}",
                format_sig9(res.gradient_norm_final)
            );
            let _ = writeln!(out, "converged:      {}", res.converged);
            emit(cli, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound {
            task,
            r,
            bipartition,
        } => {
            let task = build_task(*task, r.as_deref(), bipartition.as_deref(), &graph)?;
            let report = bounds::verify(&graph, &graph_id, &task)?;
            emit(cli, &report_text(cli, &report))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            task,
            r,
            bipartition,
        } => {
            let task = build_task(*task, r.as_deref(), bipartition.as_deref(), &graph)?;
            let report = bounds::verify(&graph, &graph_id, &task)?;
            emit(cli, &report_text(cli, &report))?;
            Ok(if report.passes {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::StabilityTest { trials } => {
            let poly = graph_polynomial::<f64>(&graph);
            let verdict = stability_test(&poly, *trials, seed)?;
            let text = match verdict {
                StabilityVerdict::CertifiedRealRooted => "certified-real-rooted\n".to_string(),
                StabilityVerdict::NotFalsified { trials } => {
                    format!("not-falsified after {trials} trials\n")
                }
                StabilityVerdict::CertifiedNotStable { witness } => {
                    let v: Vec<String> = witness.base.iter().map(|x| format_sig9(*x)).collect();
                    let u: Vec<String> =
                        witness.direction.iter().map(|x| format_sig9(*x)).collect();
                    format!(
                        "certified-not-stable\nwitness base:      {}\nwitness direction: {}\n",
                        v.join(","),
                        u.join(",")
                    )
                }
            };
            emit(cli, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
