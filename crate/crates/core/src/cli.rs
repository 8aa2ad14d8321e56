//! `qprofile` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algorithms::structured_corpus;
use crate::circuit::Circuit;
use crate::device::{grid_device, load_device, CouplingGraph};
use crate::error::{Error, Result};
use crate::evaluator::{evaluate, EVAL_FIELDS};
use crate::generator::{generate_corpus, generate_random_circuit, CorpusSpec, PRNG_NAME};
use crate::interaction::{build_interaction_graph, metric_vector, Metric};
use crate::mapper::{default_primitives, map_circuit, MapOptions, PlacementStrategy, PrimitiveSet, SwapMode};
use crate::profiler::{
    format_value, numeric_columns, pearson_matrix, records_csv, reduce_features, run_corpus, scatter_data,
    scatter_tsv, trend_report, trend_tsv, CorpusInput, Origin, DEFAULT_THRESHOLD, NA,
};
use crate::qasm::{emit_qasm, load_qasm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

/// Default scatter tables written by `bench`.
pub const DEFAULT_SCATTER: [(&str, &str); 6] = [
    ("two_q_fraction", "gate_overhead_pct"),
    ("n_gates", "fidelity_after"),
    ("gate_overhead_pct", "fidelity_decrease_pct"),
    ("max_degree", "gate_overhead_pct"),
    ("avg_shortest_path_hop", "gate_overhead_pct"),
    ("edge_weight_std_dev", "gate_overhead_pct"),
];

#[derive(Debug, Parser)]
#[command(name = "qprofile", version, about = "Map quantum circuits and profile their interaction graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Interaction-graph metrics (or edge lists) for QASM files
    Profile(ProfileArgs),
    /// Map one circuit onto a device and report its cost
    Map(MapArgs),
    /// Profile, map and correlate a whole corpus
    Bench(BenchArgs),
    /// Write seeded random circuits as QASM files
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Tsv,
    Edgelist,
}

/// `RxC` grid dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (r, c) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected RxC, got `{s}`"))?;
        let rows = r.trim().parse().map_err(|_| format!("bad row count `{r}`"))?;
        let cols = c.trim().parse().map_err(|_| format!("bad column count `{c}`"))?;
        if rows == 0 || cols == 0 {
            return Err("grid dimensions must be positive".into());
        }
        Ok(GridSpec { rows, cols })
    }
}

#[derive(Debug, Clone, Args)]
pub struct DeviceArgs {
    /// Device description file
    #[arg(long, conflicts_with = "grid")]
    pub device: Option<PathBuf>,
    /// Grid device, e.g. 10x10 (default when --device is absent)
    #[arg(long, value_parser = GridSpec::from_str)]
    pub grid: Option<GridSpec>,
}

impl DeviceArgs {
    fn load(&self) -> Result<CouplingGraph> {
        match (&self.device, self.grid) {
            (Some(path), _) => load_device(path),
            (None, Some(g)) => grid_device(g.rows, g.cols),
            (None, None) => grid_device(10, 10),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct MappingArgs {
    #[arg(long, default_value = "trivial", value_parser = PlacementStrategy::from_str)]
    pub placement: PlacementStrategy,
    /// SWAP accounting: one `swap` gate, or three CNOTs
    #[arg(long = "swap-as", default_value = "swap1", value_parser = SwapMode::from_str)]
    pub swap_as: SwapMode,
    /// Comma-separated primitive gate set (default: x,y,z,h,s,sdg,t,tdg,rx,ry,rz,cx,measure)
    #[arg(long, value_delimiter = ',')]
    pub primitives: Option<Vec<String>>,
}

impl MappingArgs {
    fn options(&self) -> Result<MapOptions> {
        let primitives: PrimitiveSet = match &self.primitives {
            None => default_primitives(),
            Some(list) => list
                .iter()
                .map(|s| s.trim().to_lowercase().parse().map_err(Error::InvalidArgument))
                .collect::<Result<_>>()?,
        };
        Ok(MapOptions {
            placement: self.placement,
            primitives,
            swap_mode: self.swap_as,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    /// QASM files or directories containing them
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Output directory (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MapArgs {
    /// QASM file to map
    pub input: PathBuf,
    #[command(flatten)]
    pub device: DeviceArgs,
    #[command(flatten)]
    pub mapping: MappingArgs,
    /// Output directory (defaults to the input's directory)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// QASM files or directories to include
    pub inputs: Vec<PathBuf>,
    /// Origin tag for file inputs
    #[arg(long, default_value = "real", value_parser = parse_origin)]
    pub origin: Origin,
    /// Number of random circuits to generate into the corpus
    #[arg(long, default_value_t = 0)]
    pub generate: usize,
    /// Number of structured algorithm circuits to generate into the corpus
    #[arg(long, default_value_t = 0)]
    pub algorithms: usize,
    #[arg(long, default_value = "2-16", value_parser = parse_usize_range)]
    pub qubits: (usize, usize),
    #[arg(long, default_value = "10-300", value_parser = parse_usize_range)]
    pub gates: (usize, usize),
    #[arg(long, default_value = "0.1-0.9", value_parser = parse_f64_range)]
    pub fraction: (f64, f64),
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub device: DeviceArgs,
    #[command(flatten)]
    pub mapping: MappingArgs,
    /// |r| at or above which a metric is dropped as redundant
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,
    /// Scatter table as X:Y (repeatable; a default set is written otherwise)
    #[arg(long = "scatter", value_parser = parse_pair)]
    pub scatter: Vec<(String, String)>,
    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, default_value = "bench_out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long)]
    pub qubits: usize,
    #[arg(long)]
    pub gates: usize,
    #[arg(long)]
    pub fraction: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

fn parse_origin(s: &str) -> std::result::Result<Origin, String> {
    match s {
        "real" => Ok(Origin::Real),
        "synthetic" => Ok(Origin::Synthetic),
        other => Err(format!("unknown origin `{other}` (real|synthetic)")),
    }
}

fn parse_usize_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once('-').unwrap_or((s, s));
    let lo = a.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok((lo, hi))
}

fn parse_f64_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once('-').unwrap_or((s, s));
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok((lo, hi))
}

fn parse_pair(s: &str) -> std::result::Result<(String, String), String> {
    let (x, y) = s.split_once(':').ok_or_else(|| format!("expected X:Y, got `{s}`"))?;
    Ok((x.to_owned(), y.to_owned()))
}

/// Parses arguments, runs the subcommand and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(cli, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs a parsed command, writing normal output to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32 {
    let result = match cli.command {
        Command::Profile(a) => cmd_profile(&a, out, err),
        Command::Map(a) => cmd_map(&a, out),
        Command::Bench(a) => cmd_bench(&a, out, err),
        Command::Gen(a) => cmd_gen(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DATA
        }
    }
}

/// Expands directories into their `.qasm` files, sorted by path.
pub fn collect_inputs(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| Error::io(p, e))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|f| f.is_file() && f.extension().is_some_and(|x| x == "qasm"))
                .collect();
            found.sort();
            files.extend(found);
        } else if p.exists() {
            files.push(p.clone());
        } else {
            return Err(Error::io(
                p,
                std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or directory"),
            ));
        }
    }
    Ok(files)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn ensure_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn metric_row(c: &Circuit, sep: char) -> String {
    let mv = metric_vector(c);
    let mut row = c.name().to_owned();
    for (_, v) in mv.iter() {
        row.push(sep);
        row.push_str(&v.map_or_else(|| NA.to_owned(), format_value));
    }
    row
}

fn metric_header(sep: char) -> String {
    let mut h = String::from("circuit");
    for m in Metric::ALL {
        h.push(sep);
        h.push_str(m.name());
    }
    h
}

pub fn cmd_profile(a: &ProfileArgs, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> Result<i32> {
    let files = collect_inputs(&a.inputs)?;
    if files.is_empty() {
        return Err(Error::InvalidArgument("no .qasm inputs found".into()));
    }
    let mut failures = 0;
    let mut circuits = Vec::new();
    for f in &files {
        match load_qasm(f) {
            Ok(c) => circuits.push(c),
            Err(e) => {
                failures += 1;
                let _ = writeln!(err, "{}: {e}", f.display());
            }
        }
    }

    match a.format {
        OutputFormat::Edgelist => {
            for c in &circuits {
                let text = build_interaction_graph(c).to_edge_list();
                match &a.out {
                    Some(dir) => {
                        ensure_dir(dir)?;
                        write_file(&dir.join(format!("{}.edgelist", c.name())), &text)?;
                    }
                    None => {
                        writeln!(out, "# {}", c.name()).map_err(io_err)?;
                        out.write_all(text.as_bytes()).map_err(io_err)?;
                    }
                }
            }
        }
        OutputFormat::Csv | OutputFormat::Tsv => {
            let sep = if a.format == OutputFormat::Csv { ',' } else { '\t' };
            let mut table = metric_header(sep);
            table.push('\n');
            for c in &circuits {
                table.push_str(&metric_row(c, sep));
                table.push('\n');
            }
            match &a.out {
                Some(dir) => {
                    ensure_dir(dir)?;
                    let ext = if sep == ',' { "csv" } else { "tsv" };
                    write_file(&dir.join(format!("profile.{ext}")), &table)?;
                }
                None => out.write_all(table.as_bytes()).map_err(io_err)?,
            }
        }
    }
    Ok(if failures == 0 { EXIT_OK } else { EXIT_DATA })
}

pub fn cmd_map(a: &MapArgs, out: &mut dyn std::io::Write) -> Result<i32> {
    let device = a.device.load()?;
    let options = a.mapping.options()?;
    let circuit = load_qasm(&a.input)?;
    let mapped = map_circuit(&circuit, &device, &options)?;

    let dir = match &a.out {
        Some(d) => d.clone(),
        None => a
            .input
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from(".")),
    };
    ensure_dir(&dir)?;
    write_file(&dir.join(format!("{}.mapped.qasm", circuit.name())), &emit_qasm(mapped.routed()))?;
    write_file(
        &dir.join(format!("{}.mapping.json", circuit.name())),
        &mapped.metadata_json(&device, &options),
    )?;

    let mut report = format!("circuit,{}\n{}", EVAL_FIELDS.join(","), circuit.name());
    match evaluate(&mapped, &device) {
        Ok(r) => {
            for v in r.values() {
                let _ = write!(report, ",{}", format_value(v));
            }
        }
        Err(_) => report.push_str(&format!(",{NA}").repeat(EVAL_FIELDS.len())),
    }
    report.push('\n');
    out.write_all(report.as_bytes()).map_err(io_err)?;
    Ok(EXIT_OK)
}

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> Result<i32> {
    let device = a.device.load()?;
    let options = a.mapping.options()?;

    let mut inputs: Vec<CorpusInput> = collect_inputs(&a.inputs)?
        .into_iter()
        .map(|p| CorpusInput::file(p, a.origin))
        .collect();
    if a.generate > 0 {
        let spec = CorpusSpec {
            count: a.generate,
            qubits: a.qubits,
            gates: a.gates,
            fraction: a.fraction,
        };
        inputs.extend(
            generate_corpus(&spec, a.seed)?
                .into_iter()
                .map(|c| CorpusInput::circuit(c, Origin::Synthetic)),
        );
    }
    if a.algorithms > 0 {
        inputs.extend(
            structured_corpus(a.algorithms, a.qubits, a.seed)
                .into_iter()
                .map(|c| CorpusInput::circuit(c, Origin::Real)),
        );
    }
    if inputs.is_empty() {
        return Err(Error::InvalidArgument("empty corpus: no inputs found and nothing generated".into()));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let run = pool.install(|| run_corpus(&inputs, &device, &options))?;
    for s in &run.skipped {
        let _ = writeln!(err, "skipped {}: {}", s.input, s.reason);
    }

    let names = numeric_columns();
    let matrix = pearson_matrix(&run.records, &names);
    let metric_names: Vec<&str> = Metric::ALL.iter().map(|m| m.name()).collect();
    let metric_matrix = pearson_matrix(&run.records, &metric_names);

    // All files are written after aggregation.
    ensure_dir(&a.out)?;
    write_file(&a.out.join("records.csv"), &records_csv(&run.records))?;
    let mut log = run.log_text(&device, &options);
    let _ = writeln!(log, "prng {PRNG_NAME} seed {}", a.seed);
    match (&matrix, &metric_matrix) {
        (Ok(m), Ok(mm)) => {
            write_file(&a.out.join("correlation.csv"), &m.to_csv())?;
            let reduced = reduce_features(mm, a.threshold)?;
            let mut text = format!("# threshold {}\n", format_value(a.threshold));
            for name in &reduced {
                text.push_str(name);
                text.push('\n');
            }
            write_file(&a.out.join("reduced_features.txt"), &text)?;
        }
        (Err(e), _) | (_, Err(e)) => {
            let _ = writeln!(log, "correlation skipped: {e}");
        }
    }

    let pairs: Vec<(String, String)> = if a.scatter.is_empty() {
        DEFAULT_SCATTER.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect()
    } else {
        a.scatter.clone()
    };
    for (x, y) in &pairs {
        let pts = scatter_data(&run.records, x, y)?;
        write_file(&a.out.join(format!("scatter_{x}_vs_{y}.tsv")), &scatter_tsv(&pts, x, y))?;
    }
    if let Ok(rows) = trend_report(
        &run.records,
        "gate_overhead_pct",
        &["max_degree", "avg_shortest_path_hop", "edge_weight_std_dev", "adjacency_std_dev", "min_degree"],
        0.1,
    ) {
        write_file(&a.out.join("trend.tsv"), &trend_tsv(&rows))?;
    }
    write_file(&a.out.join("run.log"), &log)?;

    writeln!(
        out,
        "{} records, {} skipped -> {}",
        run.records.len(),
        run.skipped.len(),
        a.out.display()
    )
    .map_err(io_err)?;
    Ok(if run.skipped.is_empty() { EXIT_OK } else { EXIT_DATA })
}

pub fn cmd_gen(a: &GenArgs, out: &mut dyn std::io::Write) -> Result<i32> {
    // Validate once up front so bad parameters fail before any file is written.
    generate_random_circuit(a.qubits, 0, a.fraction, a.seed)?;
    let circuits = (0..a.count)
        .map(|i| generate_random_circuit(a.qubits, a.gates, a.fraction, a.seed.wrapping_add(i as u64)))
        .collect::<Result<Vec<_>>>()?;
    ensure_dir(&a.out)?;
    let mut manifest = format!(
        "prng {PRNG_NAME}\nqubits {}\ngates {}\nfraction {}\nbase_seed {}\n",
        a.qubits, a.gates, a.fraction, a.seed
    );
    for c in &circuits {
        let file = format!("{}.qasm", c.name());
        write_file(&a.out.join(&file), &emit_qasm(c))?;
        let _ = writeln!(manifest, "file {file}");
    }
    write_file(&a.out.join("gen_manifest.txt"), &manifest)?;
    writeln!(out, "{} circuits -> {}", circuits.len(), a.out.display()).map_err(io_err)?;
    Ok(EXIT_OK)
}
