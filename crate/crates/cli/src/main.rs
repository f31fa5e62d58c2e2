//! Command-line front end for the `alphasat` library.
//!
//! Exit codes: 0 on success, 1 on a negative verdict (unsatisfiable, no
//! guarantee, failed check), 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alphasat::io::{read_dimacs, read_hypergraph, write_dimacs, write_hypergraph};
use alphasat::lll::{solve_alpha_intersecting, SolveOutcome};
use alphasat::maximal::{build_maximal, min_edges_bound, BuildMode, DEFAULT_ENUMERATION_BUDGET};
use alphasat::oracle::{brute_force_sat, SatResult};
use alphasat::pipeline::{upper_bound_pipeline, PipelineOptions};
use alphasat::shrink::{shrink_formula, shrink_hypergraph};
use alphasat::thresholds::{guarantee_check, ThresholdBounds};
use alphasat::unsat::{build_unsat, EdgeOrder};
use alphasat::{complete_formula, Assignment, CnfFormula, CoverageCap, Hypergraph, MetricsReport};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "alphasat", version, about = "Alpha-intersecting CNF toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a maximal k-uniform alpha-intersecting hypergraph.
    GenMaximal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Sample candidates, stopping after this many consecutive rejections.
        #[arg(long)]
        sample_budget: Option<u64>,
    },
    /// Delete the beta highest-degree vertices of every edge or clause.
    Shrink {
        #[arg(long)]
        beta: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Choose clause polarities greedily to cover assignments.
    BuildUnsat {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Order::Input)]
        order: Order,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the uncovered count after each step as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run the dense construction and report its measurements.
    Pipeline {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        with_polarity: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Solve an alpha-intersecting k-CNF by shrinking and resampling.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_resamples: Option<u64>,
    },
    /// Print structural measurements of a formula or hypergraph.
    Metrics {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the lower and upper threshold bounds.
    Thresholds {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: usize,
    },
    /// Decide satisfiability by exhaustive search.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Write the complete k-CNF with all 2^k polarities.
    Complete {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Input,
    Shuffle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CliResult = Result<ExitCode, Failure>;

enum Input {
    Formula(CnfFormula),
    Hypergraph(Hypergraph),
}

impl Input {
    fn hypergraph(&self) -> Hypergraph {
        match self {
            Input::Formula(f) => f.induced_hypergraph(),
            Input::Hypergraph(h) => h.clone(),
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn is_hypergraph_file(path: &Path, text: &str) -> bool {
    match path.extension().and_then(|e| e.to_str()) {
        Some("hyg") => true,
        Some("cnf") => false,
        _ => text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('c'))
            .is_some_and(|l| l.split_whitespace().nth(1) == Some("hyg")),
    }
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let text = read_text(path)?;
    let wrap = |e: alphasat::Error| Failure(format!("{}: {e}", path.display()));
    if is_hypergraph_file(path, &text) {
        read_hypergraph(&text).map(Input::Hypergraph).map_err(wrap)
    } else {
        read_dimacs(&text).map(Input::Formula).map_err(wrap)
    }
}

fn read_formula(path: &Path) -> Result<CnfFormula, Failure> {
    match read_input(path)? {
        Input::Formula(f) => Ok(f),
        Input::Hypergraph(_) => Err(Failure(format!(
            "{}: expected a DIMACS CNF",
            path.display()
        ))),
    }
}

fn print_json(value: &impl Serialize) -> Result<(), Failure> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// DIMACS-style model: `v` for true, `-v` for false, 1-indexed.
fn model_literals(a: &Assignment) -> Vec<i64> {
    a.bits()
        .iter()
        .enumerate()
        .map(|(i, &b)| if b { i as i64 + 1 } else { -(i as i64 + 1) })
        .collect()
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn gen_maximal(
    n: usize,
    k: usize,
    alpha: usize,
    seed: u64,
    out: &Path,
    sample_budget: Option<u64>,
) -> CliResult {
    let mode = match sample_budget {
        Some(patience) => BuildMode::Sampling { patience },
        None => BuildMode::Exhaustive {
            budget: DEFAULT_ENUMERATION_BUDGET,
        },
    };
    let build = build_maximal(n, k, alpha, seed, mode)?;
    write_text(out, &write_hypergraph(&build.hypergraph))?;
    print_json(&json!({
        "n": n,
        "k": k,
        "alpha": alpha,
        "m": build.hypergraph.m(),
        "min_edges_bound": min_edges_bound(n, k, alpha)?.to_string(),
        "certified_maximal": build.certified_maximal,
        "cover_index_size": build.cover_index_size,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn shrink(beta: usize, input: &Path, out: &Path) -> CliResult {
    let text = match read_input(input)? {
        Input::Formula(f) => write_dimacs(&shrink_formula(&f, beta)?),
        Input::Hypergraph(h) => write_hypergraph(&shrink_hypergraph(&h, beta)?),
    };
    write_text(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn build_unsat_cmd(
    input: &Path,
    out: &Path,
    order: Order,
    seed: u64,
    trace: Option<&Path>,
    cap: CoverageCap,
) -> CliResult {
    let h = read_input(input)?.hypergraph();
    let order = match order {
        Order::Input => EdgeOrder::Input,
        Order::Shuffle => EdgeOrder::Shuffle { seed },
    };
    let build = build_unsat(&h, order, cap)?;
    write_text(out, &write_dimacs(&build.formula))?;
    if let Some(path) = trace {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["step", "uncovered"])?;
        for (step, count) in build.trace.iter().enumerate() {
            w.write_record([step.to_string(), count.to_string()])?;
        }
        w.flush()?;
    }
    print_json(&json!({
        "n": h.n(),
        "m": h.m(),
        "final_uncovered": build.final_uncovered,
        "unsat": build.is_unsat(),
    }))?;
    Ok(verdict(build.is_unsat()))
}

fn pipeline(
    k: usize,
    alpha: usize,
    n: Option<usize>,
    with_polarity: bool,
    seed: u64,
    out_dir: &Path,
    cap: CoverageCap,
) -> CliResult {
    let opts = PipelineOptions {
        n_override: n,
        with_polarity,
        seed,
        cap,
        ..Default::default()
    };
    let out = upper_bound_pipeline(k, alpha, &opts)?;
    fs::create_dir_all(out_dir).map_err(|e| Failure(format!("{}: {e}", out_dir.display())))?;
    write_text(
        &out_dir.join("hypergraph.hyg"),
        &write_hypergraph(&out.hypergraph),
    )?;
    write_text(&out_dir.join("shrunk.hyg"), &write_hypergraph(&out.shrunk))?;
    if let Some(f) = &out.formula {
        write_text(&out_dir.join("formula.cnf"), &write_dimacs(f))?;
    }
    if let Some(f) = &out.shrunk_formula {
        write_text(&out_dir.join("shrunk.cnf"), &write_dimacs(f))?;
    }
    let report = serde_json::to_string_pretty(&out.report)?;
    write_text(&out_dir.join("report.json"), &report)?;
    println!("{report}");
    Ok(verdict(out.report.all_ok()))
}

fn solve(input: &Path, k: usize, alpha: usize, seed: u64, max_resamples: Option<u64>) -> CliResult {
    let f = read_formula(input)?;
    match solve_alpha_intersecting(&f, k, alpha, seed, max_resamples)? {
        SolveOutcome::Solved {
            assignment,
            resamples,
            condition,
        } => {
            print_json(&json!({
                "status": "solved",
                "resamples": resamples,
                "condition": condition,
                "model": model_literals(&assignment),
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        SolveOutcome::NoGuarantee {
            condition,
            metrics,
            witness,
        } => {
            print_json(&json!({
                "status": "no_guarantee",
                "condition": condition,
                "shrunk_metrics": metrics,
                "witness": witness,
            }))?;
            Ok(ExitCode::from(1))
        }
    }
}

#[derive(Serialize)]
struct MetricsRow {
    n: usize,
    m: usize,
    width: Option<usize>,
    alpha_measured: usize,
    i: usize,
    delta_vertex: usize,
    delta_clause: usize,
    #[serde(rename = "L_n")]
    l_n: Option<f64>,
    #[serde(rename = "L_m")]
    l_m: Option<f64>,
    #[serde(rename = "L_i")]
    l_i: Option<f64>,
    guaranteed_by: String,
}

fn metrics(input: &Path, alpha: Option<usize>, k: Option<usize>, format: Format) -> CliResult {
    let report: MetricsReport = match read_input(input)? {
        Input::Formula(f) => f.metrics(),
        Input::Hypergraph(h) => MetricsReport::of_hypergraph(&h),
    };
    let check = match alpha {
        Some(alpha) => {
            let k = k
                .or(report.width)
                .ok_or_else(|| Failure("--k is required when the input is not uniform".into()))?;
            Some(guarantee_check(&report, k, alpha)?)
        }
        None => None,
    };
    let guaranteed_by: Vec<&str> = check
        .iter()
        .flat_map(|c| c.guaranteed_by.iter().map(|g| g.name()))
        .collect();
    match format {
        Format::Json => print_json(&json!({
            "metrics": report,
            "lower_bounds": check.as_ref().map(|c| c.bounds),
            "guaranteed_by": check.as_ref().map(|_| &guaranteed_by),
        }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.serialize(MetricsRow {
                n: report.n,
                m: report.m,
                width: report.width,
                alpha_measured: report.alpha_measured,
                i: report.i,
                delta_vertex: report.delta_vertex,
                delta_clause: report.delta_clause,
                l_n: check.as_ref().map(|c| c.bounds.l_n),
                l_m: check.as_ref().map(|c| c.bounds.l_m),
                l_i: check.as_ref().map(|c| c.bounds.l_i),
                guaranteed_by: guaranteed_by.join(";"),
            })?;
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(input: &Path, cap: CoverageCap) -> CliResult {
    let f = read_formula(input)?;
    match brute_force_sat(&f, cap)? {
        SatResult::Sat(a) => {
            let lits: Vec<String> = model_literals(&a).iter().map(i64::to_string).collect();
            println!("SAT");
            println!("v {} 0", lits.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        SatResult::Unsat => {
            println!("UNSAT");
            Ok(ExitCode::from(1))
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let cap = || CoverageCap::from_env();
    match cli.command {
        Command::GenMaximal {
            n,
            k,
            alpha,
            seed,
            out,
            sample_budget,
        } => gen_maximal(n, k, alpha, seed, &out, sample_budget),
        Command::Shrink { beta, input, out } => shrink(beta, &input, &out),
        Command::BuildUnsat {
            input,
            out,
            order,
            seed,
            trace,
        } => build_unsat_cmd(&input, &out, order, seed, trace.as_deref(), cap()?),
        Command::Pipeline {
            k,
            alpha,
            n,
            with_polarity,
            seed,
            out_dir,
        } => pipeline(k, alpha, n, with_polarity, seed, &out_dir, cap()?),
        Command::Solve {
            input,
            k,
            alpha,
            seed,
            max_resamples,
        } => solve(&input, k, alpha, seed, max_resamples),
        Command::Metrics {
            input,
            alpha,
            k,
            format,
        } => metrics(&input, alpha, k, format),
        Command::Thresholds { k, alpha } => {
            print_json(&ThresholdBounds::new(k, alpha)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input } => verify(&input, cap()?),
        Command::Complete { k, out } => {
            write_text(&out, &write_dimacs(&complete_formula(k)?))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
