//! `csp`: propagate signals, run the evaluation protocols, benchmark.
//!
//! Exit codes: 0 success, 2 input or configuration error, 3 when every
//! `(class, fold)` cell of an evaluation was degenerate.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use csp_core::bench::{run_bench, DEFAULT_REPETITIONS};
use csp_core::io::{self, format_sig17, DatasetBundle, ReportFormat};
use csp_core::{
    propagate, run_classification, run_retrieval, CspError, Method, PropagationConfig, SignalMatrix, Task,
    TaskSpec, Variant,
};

#[derive(Parser)]
#[command(name = "csp", version, about = "Convolutional signal propagation on hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate a node signal and write `nodeId,value...` rows
    Propagate(PropagateArgs),
    /// k-fold one-vs-rest classification scored by ROC-AUC
    Classify(EvalArgs),
    /// Positive-only retrieval scored by precision at k
    Retrieve(EvalArgs),
    /// Time CSP layers 1-3 and Naive Bayes fit + score
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
struct PropagationArgs {
    #[arg(long, default_value = "row", value_parser = parse_variant)]
    variant: Variant,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 1)]
    layers: usize,
}

impl PropagationArgs {
    fn config(&self) -> PropagationConfig {
        PropagationConfig { variant: self.variant, layers: self.layers, alpha: self.alpha }
    }
}

#[derive(Args)]
struct PropagateArgs {
    #[arg(long)]
    incidence: PathBuf,
    /// `nodeId,<column>...`; defaults to one indicator column per class of `--labels`
    #[arg(long)]
    signal: Option<PathBuf>,
    #[arg(long)]
    labels: Option<PathBuf>,
    #[command(flatten)]
    propagation: PropagationArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    incidence: PathBuf,
    #[arg(long)]
    labels: PathBuf,
    #[arg(long, default_value = "csp", value_parser = parse_method)]
    method: Method,
    /// Dataset name for the report and reference-count checks; defaults to the incidence file's directory name
    #[arg(long)]
    dataset: Option<String>,
    #[command(flatten)]
    propagation: PropagationArgs,
    #[arg(long, default_value_t = 10)]
    folds: usize,
    #[arg(long = "top-k", default_value_t = 100)]
    top_k: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = csp_core::naive_bayes::DEFAULT_SMOOTHING)]
    smoothing: f64,
    /// Worker threads; 0 uses every core
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: ReportFormat,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, required_unless_present = "synthetic", conflicts_with = "synthetic")]
    incidence: Option<PathBuf>,
    /// Generate a random hypergraph instead: nodes, edges, incidences, seed
    #[arg(long, num_args = 4, value_names = ["N", "M", "NNZ", "SEED"])]
    synthetic: Option<Vec<u64>>,
    #[arg(long, default_value_t = DEFAULT_REPETITIONS)]
    repetitions: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: ReportFormat,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: CspError| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: CspError| e.to_string())
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: CspError| e.to_string())
}

enum Failure {
    Input(CspError),
    Degenerate,
}

impl From<CspError> for Failure {
    fn from(e: CspError) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn write_output(path: Option<&Path>, body: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, body)?,
        None => std::io::stdout().write_all(body)?,
    }
    Ok(())
}

fn cmd_propagate(args: PropagateArgs) -> Result<(), Failure> {
    let cfg = args.propagation.config();
    cfg.validate()?;
    let universe = args.signal.as_deref().or(args.labels.as_deref());
    let (h, ids) = io::load_incidence(&args.incidence, universe)?;
    let (x0, columns) = match (&args.signal, &args.labels) {
        (Some(signal), _) => (io::load_signal(signal, &ids)?, io::signal_columns(signal)?),
        (None, Some(labels)) => {
            let labels = io::load_labels(labels, &ids)?;
            let mut values = Vec::with_capacity(h.n_nodes() * labels.n_classes());
            for c in 0..labels.n_classes() {
                values.extend(labels.binary(c).into_iter().map(|b| if b { 1.0 } else { 0.0 }));
            }
            let x = SignalMatrix::from_col_major(h.n_nodes(), labels.n_classes(), values)?;
            (x, labels.class_names().to_vec())
        }
        (None, None) => {
            return Err(CspError::InvalidConfig("propagate needs --signal or --labels".into()).into());
        }
    };
    let x = propagate(&h, &x0, &cfg)?;
    let mut body = Vec::new();
    io::write_signal(&x, &ids, &columns, &mut body)?;
    write_output(args.output.as_deref(), &body)
}

fn dataset_name(args: &EvalArgs) -> String {
    args.dataset.clone().unwrap_or_else(|| {
        args.incidence
            .canonicalize()
            .ok()
            .and_then(|p| p.parent().and_then(|d| d.file_name()).map(|s| s.to_string_lossy().into_owned()))
            .unwrap_or_else(|| "dataset".to_owned())
    })
}

fn cmd_evaluate(args: EvalArgs, task: Task) -> Result<(), Failure> {
    let spec = TaskSpec {
        task,
        method: args.method,
        propagation: args.propagation.config(),
        folds: args.folds,
        top_k: args.top_k,
        seed: args.seed,
        smoothing: args.smoothing,
        jobs: args.jobs,
    };
    spec.validate()?;
    let name = dataset_name(&args);
    let bundle = DatasetBundle::load(&name, &args.incidence, &args.labels)?;
    for w in bundle.profile_warnings() {
        eprintln!("warning: {w}");
    }
    let report = match task {
        Task::Classification => run_classification(&bundle.hypergraph, &bundle.labels, &spec, &name)?,
        Task::Retrieval => run_retrieval(&bundle.hypergraph, &bundle.labels, &spec, &name)?,
    };
    if !report.skipped.is_empty() {
        eprintln!("skipped {} degenerate (class, fold) cells", report.skipped.len());
    }
    if let Some(path) = &args.output {
        io::write_report(&report, path, args.format)?;
    }
    match report.mean_metric {
        Some(v) => {
            println!("mean_metric={}", format_sig17(v));
            Ok(())
        }
        None => Err(Failure::Degenerate),
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let (name, h) = match (&args.incidence, &args.synthetic) {
        (Some(path), _) => ("incidence".to_owned(), io::load_incidence(path, None)?.0),
        (None, Some(v)) => {
            let [n, m, nnz, seed] = [v[0], v[1], v[2], v[3]].map(|x| x as usize);
            let h = csp_core::synth::random_hypergraph(n, m, nnz, seed as u64)?;
            (format!("synthetic-{n}-{m}-{nnz}-{seed}"), h)
        }
        (None, None) => unreachable!("clap enforces one source"),
    };
    if args.repetitions == 0 {
        return Err(CspError::InvalidConfig("repetitions must be at least 1".into()).into());
    }
    let report = run_bench(&name, &h, args.repetitions, args.seed)?;
    let body = match args.format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report).map_err(CspError::from)?;
            s.push('\n');
            s
        }
        ReportFormat::Csv => report.to_csv(),
    };
    write_output(args.output.as_deref(), body.as_bytes())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Propagate(a) => cmd_propagate(a),
        Command::Classify(a) => cmd_evaluate(a, Task::Classification),
        Command::Retrieve(a) => cmd_evaluate(a, Task::Retrieval),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Degenerate) => {
            eprintln!("error: every (class, fold) cell was degenerate; no metric to report");
            ExitCode::from(3)
        }
    }
}
