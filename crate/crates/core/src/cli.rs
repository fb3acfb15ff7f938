//! `chainreach` command-line interface.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{emit_plot_data, run_bench, write_bench_csv, BenchGrid};
use crate::decomposition::{concatenate, nh_conc, node_order_paths, ChainDecomposition};
use crate::error::{Error, Result};
use crate::generators::{GeneratorConfig, Model, ModelKind};
use crate::graph::Dag;
use crate::index::ReachIndex;
use crate::io;
use crate::reduction::{reduce, reduce_outgoing};
use crate::width::fulkerson_width;

#[derive(Debug, Parser)]
#[command(
    name = "chainreach",
    version,
    about = "Chain-decomposition reachability toolkit for DAGs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random DAG as an edge list.
    Gen(GenArgs),
    /// Write a chain decomposition (one chain per line).
    Decompose(DecomposeArgs),
    /// Remove chain-detectable transitive edges.
    Reduce(ReduceArgs),
    /// Build a reachability index file.
    Index(IndexArgs),
    /// Answer one reachability query from an index file.
    Query(QueryArgs),
    /// Write the transitive closure as an edge list.
    Closure(InOut),
    /// Compute the width and a minimum chain decomposition.
    Width(WidthArgs),
    /// Run the experiment grid and write CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct InOut {
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Er,
    Ba,
    Ws,
    Pb,
}

impl From<ModelArg> for ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Er => ModelKind::Er,
            ModelArg::Ba => ModelKind::Ba,
            ModelArg::Ws => ModelKind::Ws,
            ModelArg::Pb => ModelKind::Pb,
        }
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    n: usize,
    /// Target edges per vertex; used for any model parameter not given.
    #[arg(long, default_value_t = 10.0)]
    degree: f64,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0.3)]
    b: f64,
    #[arg(long, default_value_t = 100)]
    paths: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    /// Chain heuristic with online concatenation.
    Nh,
    /// Node-order path decomposition.
    Paths,
    /// Node-order paths followed by concatenation.
    Concat,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[command(flatten)]
    io: InOut,
    #[arg(long, value_enum, default_value_t = Method::Nh)]
    method: Method,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[command(flatten)]
    io: InOut,
    /// Chain file to reduce with instead of the heuristic decomposition.
    #[arg(long)]
    chains: Option<PathBuf>,
    /// Skip the incoming-edge pass.
    #[arg(long)]
    outgoing_only: bool,
}

#[derive(Debug, Args)]
struct IndexArgs {
    #[command(flatten)]
    io: InOut,
    #[arg(long)]
    chains: Option<PathBuf>,
    /// Reduce the graph before indexing.
    #[arg(long)]
    reduce_first: bool,
}

#[derive(Debug, Args)]
struct QueryArgs {
    /// Index file.
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    source: usize,
    target: usize,
}

#[derive(Debug, Args)]
struct WidthArgs {
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Where to write the minimum chain decomposition.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [ModelArg::Er, ModelArg::Ba, ModelArg::Ws, ModelArg::Pb])]
    model: Vec<ModelArg>,
    #[arg(long, value_delimiter = ',', default_values_t = [2000])]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [5.0, 10.0, 20.0, 40.0])]
    degree: Vec<f64>,
    /// First seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of consecutive seeds per cell.
    #[arg(long, default_value_t = 2)]
    seeds: u64,
    #[arg(long, default_value_t = 0.3)]
    b: f64,
    #[arg(long, default_value_t = 100)]
    paths: usize,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Also write the index/closure timing series per degree.
    #[arg(long)]
    plot: Option<PathBuf>,
    #[arg(long)]
    with_width: bool,
    #[arg(long)]
    reduce_first: bool,
}

/// An [`Error`] tagged with the processing stage it came from.
#[derive(Debug)]
struct StageError {
    stage: &'static str,
    source: Error,
}

trait Stage<T> {
    fn stage(self, stage: &'static str) -> std::result::Result<T, StageError>;
}

impl<T> Stage<T> for Result<T> {
    fn stage(self, stage: &'static str) -> std::result::Result<T, StageError> {
        self.map_err(|source| StageError { stage, source })
    }
}

impl<T> Stage<T> for std::io::Result<T> {
    fn stage(self, stage: &'static str) -> std::result::Result<T, StageError> {
        self.map_err(|e| StageError {
            stage,
            source: Error::io("<stdout>", e),
        })
    }
}

type CliResult = std::result::Result<(), StageError>;

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit status: 0 on success, 1 on failure, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(StageError { stage, source }) => {
            let _ = writeln!(err, "error during {stage}: {source}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Decompose(a) => cmd_decompose(a, out, err),
        Command::Reduce(a) => cmd_reduce(a, out),
        Command::Index(a) => cmd_index(a, out, err),
        Command::Query(a) => cmd_query(a, out),
        Command::Closure(a) => cmd_closure(a, out),
        Command::Width(a) => cmd_width(a, out),
        Command::Bench(a) => cmd_bench(a, out, err),
    }
}

fn load_dag(path: &Path) -> std::result::Result<Dag, StageError> {
    let g = io::load_digraph(path).stage("load")?;
    g.to_dag().stage("topological sort")
}

/// Writes through `write` to `path`, or to `out` when no path is given.
fn emit<F>(path: Option<&Path>, out: &mut dyn Write, write: F) -> CliResult
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    match path {
        Some(p) => io::save_with(p, |w| write(w)).stage("write"),
        None => write(out).stage("write"),
    }
}

fn decomposition_for(
    dag: &Dag,
    chains: Option<&Path>,
) -> std::result::Result<ChainDecomposition, StageError> {
    match chains {
        Some(p) => io::load_chains(p, dag).stage("load chains"),
        None => Ok(nh_conc(dag).0),
    }
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> CliResult {
    let kind = ModelKind::from(a.model);
    let mut config = GeneratorConfig::for_degree(kind, a.n, a.degree, a.seed, a.b, a.paths);
    config.model = match config.model {
        Model::Er { p } => Model::Er {
            p: a.p.unwrap_or(p),
        },
        Model::Ba { m } => Model::Ba {
            m: a.m.unwrap_or(m),
        },
        Model::Ws { k, b } => Model::Ws {
            k: a.k.unwrap_or(k),
            b,
        },
        pb @ Model::Pb { .. } => pb,
    };
    let dag = config.generate().stage("generate")?;
    let header = [config.describe()];
    emit(a.output.as_deref(), out, |w| {
        io::write_edge_list(w, &dag, &header)
    })
}

fn cmd_decompose(a: DecomposeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let dag = load_dag(&a.io.input)?.sort_adjacency_lists();
    let (dec, stats) = match a.method {
        Method::Nh => nh_conc(&dag),
        Method::Concat => concatenate(&dag, &node_order_paths(&dag)),
        Method::Paths => {
            let paths = node_order_paths(&dag);
            let k = paths.chain_count();
            let stats = crate::decomposition::ConcatStats {
                k_p: k,
                k_c: k,
                ..Default::default()
            };
            (paths, stats)
        }
    };
    let _ = writeln!(
        err,
        "k_p={} k_c={} concatenations={} path_len={}",
        stats.k_p, stats.k_c, stats.c, stats.total_path_len
    );
    emit(a.io.output.as_deref(), out, |w| io::write_chains(w, &dec))
}

fn cmd_reduce(a: ReduceArgs, out: &mut dyn Write) -> CliResult {
    let dag = load_dag(&a.io.input)?.sort_adjacency_lists();
    let dec = decomposition_for(&dag, a.chains.as_deref())?;
    let (reduced, stats) = if a.outgoing_only {
        reduce_outgoing(&dag, &dec)
    } else {
        reduce(&dag, &dec)
    };
    if let Some(path) = a.io.output.as_deref() {
        io::save_with(path, |w| io::write_edge_list(w, &reduced, &[])).stage("write")?;
    }
    writeln!(out, "removed_out,removed_in,remaining").stage("write")?;
    writeln!(
        out,
        "{},{},{}",
        stats.removed_out, stats.removed_in, stats.remaining
    )
    .stage("write")
}

fn cmd_index(a: IndexArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let dag = load_dag(&a.io.input)?.sort_adjacency_lists();
    let dec = decomposition_for(&dag, a.chains.as_deref())?;
    let ix = if a.reduce_first {
        let (reduced, _) = reduce(&dag, &dec);
        ReachIndex::build(&reduced, &dec)
    } else {
        ReachIndex::build(&dag, &dec)
    }
    .stage("index build")?;
    let (e_tr, e_red) = ix.edge_classification();
    let _ = writeln!(
        err,
        "n={} k_c={} e_tr={e_tr} e_red={e_red}",
        ix.vertex_count(),
        ix.chain_count()
    );
    emit(a.io.output.as_deref(), out, |w| io::write_index(w, &ix))
}

fn cmd_query(a: QueryArgs, out: &mut dyn Write) -> CliResult {
    let ix = io::load_index(&a.input).stage("load index")?;
    let answer = ix.query(a.source, a.target).stage("query")?;
    writeln!(out, "{answer}").stage("write")
}

fn cmd_closure(a: InOut, out: &mut dyn Write) -> CliResult {
    let dag = load_dag(&a.input)?.sort_adjacency_lists();
    let (dec, _) = nh_conc(&dag);
    let ix = ReachIndex::build(&dag, &dec).stage("index build")?;
    let m = ix.to_closure_matrix();
    emit(a.output.as_deref(), out, |w| {
        writeln!(w, "# transitive closure")?;
        writeln!(w, "{} {}", m.vertex_count(), m.proper_pair_count())?;
        for s in 0..m.vertex_count() {
            for t in m.row(s).ones().filter(|&t| t != s) {
                writeln!(w, "{s} {t}")?;
            }
        }
        w.flush()
    })
}

fn cmd_width(a: WidthArgs, out: &mut dyn Write) -> CliResult {
    let dag = load_dag(&a.input)?;
    let result = fulkerson_width(&dag);
    if let Some(path) = a.output.as_deref() {
        io::save_with(path, |w| io::write_chains(w, &result.chains)).stage("write")?;
    }
    let t = result.timings;
    let ms = |d: std::time::Duration| d.as_millis();
    writeln!(out, "width={}", result.width).stage("write")?;
    writeln!(out, "index_ms,bipartite_ms,matching_ms,total_ms").stage("write")?;
    writeln!(
        out,
        "{},{},{},{}",
        ms(t.index),
        ms(t.bipartite),
        ms(t.matching),
        ms(t.total())
    )
    .stage("write")
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let grid = BenchGrid {
        models: a.model.into_iter().map(ModelKind::from).collect(),
        sizes: a.n,
        degrees: a.degree,
        seeds: (a.seed..a.seed + a.seeds).collect(),
        ws_b: a.b,
        pb_paths: a.paths,
        with_width: a.with_width,
        reduce_first: a.reduce_first,
    };
    let records = run_bench(&grid, |r| {
        let _ = writeln!(
            err,
            "{} n={} degree={} seed={}: k_c={} tr_ratio={:.2}{}",
            r.cell.model,
            r.cell.n,
            r.cell.avg_degree,
            r.cell.seed,
            r.k_c,
            r.tr_ratio(),
            r.error
                .as_deref()
                .map(|e| format!(" error: {e}"))
                .unwrap_or_default()
        );
    });
    match a.csv.as_deref() {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| StageError {
                stage: "write",
                source: Error::io(path, e),
            })?;
            write_bench_csv(file, &records).stage("write")?;
        }
        None => write_bench_csv(&mut *out, &records).stage("write")?,
    }
    if let Some(path) = a.plot.as_deref() {
        let mut text = String::new();
        for model in &grid.models {
            let subset: Vec<_> = records
                .iter()
                .filter(|r| r.cell.model == *model)
                .cloned()
                .collect();
            let series = emit_plot_data(&subset);
            for (i, line) in series.lines().enumerate() {
                match (i, text.is_empty()) {
                    (0, true) => text.push_str(&format!("model,{line}\n")),
                    (0, false) => {}
                    _ => text.push_str(&format!("{model},{line}\n")),
                }
            }
        }
        fs::write(path, text).map_err(|e| StageError {
            stage: "write",
            source: Error::io(path, e),
        })?;
    }
    Ok(())
}
