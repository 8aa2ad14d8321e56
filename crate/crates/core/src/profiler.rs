//! Corpus runs, Pearson correlation, redundancy reduction and tabular exports.

use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::circuit::Circuit;
use crate::device::{all_pairs_distance, CouplingGraph};
use crate::error::{Error, Result};
use crate::evaluator::{evaluate, EvalReport, EVAL_FIELDS};
use crate::interaction::{metric_vector, Metric, MetricVector};
use crate::mapper::{map_circuit_with, MapOptions};
use crate::qasm::{load_qasm, parse_qasm_named};

/// Missing-value marker in every exported table.
pub const NA: &str = "NA";

/// Provenance columns appended after metrics and evaluation fields.
pub const PROVENANCE_FIELDS: [&str; 4] = ["circuit", "origin", "device", "options"];

/// Default `|r|` at or above which a metric counts as redundant.
pub const DEFAULT_THRESHOLD: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Real,
    Synthetic,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Real => "real",
            Origin::Synthetic => "synthetic",
        })
    }
}

#[derive(Debug, Clone)]
pub enum CircuitSource {
    File(PathBuf),
    Text { name: String, text: String },
    Parsed(Circuit),
}

#[derive(Debug, Clone)]
pub struct CorpusInput {
    pub source: CircuitSource,
    pub origin: Origin,
}

impl CorpusInput {
    pub fn file(path: impl Into<PathBuf>, origin: Origin) -> Self {
        CorpusInput {
            source: CircuitSource::File(path.into()),
            origin,
        }
    }

    pub fn circuit(c: Circuit, origin: Origin) -> Self {
        CorpusInput {
            source: CircuitSource::Parsed(c),
            origin,
        }
    }

    pub fn name(&self) -> String {
        match &self.source {
            CircuitSource::File(p) => p.display().to_string(),
            CircuitSource::Text { name, .. } => name.clone(),
            CircuitSource::Parsed(c) => c.name().to_owned(),
        }
    }

    fn load(&self) -> Result<Circuit> {
        match &self.source {
            CircuitSource::File(p) => load_qasm(p),
            CircuitSource::Text { name, text } => parse_qasm_named(text, name),
            CircuitSource::Parsed(c) => Ok(c.clone()),
        }
    }
}

/// One profiled and mapped circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRecord {
    pub circuit: String,
    pub origin: Origin,
    pub metrics: MetricVector,
    /// `None` when the circuit has nothing to evaluate (all fields become NA).
    pub eval: Option<EvalReport>,
    pub device: String,
    pub options: String,
}

impl BenchmarkRecord {
    /// Numeric value of a metric or evaluation column; `Ok(None)` is NA.
    pub fn value(&self, column: &str) -> Result<Option<f64>> {
        if let Some(m) = Metric::from_name(column) {
            return Ok(self.metrics.get(m));
        }
        if let Some(i) = EVAL_FIELDS.iter().position(|&f| f == column) {
            return Ok(self.eval.map(|e| e.values()[i]));
        }
        Err(Error::UnknownMetric(column.to_owned()))
    }

    /// Cells in [`columns`] order.
    pub fn cells(&self) -> Vec<String> {
        let mut row: Vec<String> = self.metrics.iter().map(|(_, v)| format_cell(v)).collect();
        match self.eval {
            Some(e) => row.extend(e.values().iter().map(|&v| format_value(v))),
            None => row.extend(EVAL_FIELDS.iter().map(|_| NA.to_owned())),
        }
        row.extend([
            self.circuit.clone(),
            self.origin.to_string(),
            self.device.clone(),
            self.options.clone(),
        ]);
        row
    }
}

/// Canonical column list: metrics, then evaluation fields, then provenance.
pub fn columns() -> Vec<&'static str> {
    Metric::ALL
        .iter()
        .map(|m| m.name())
        .chain(EVAL_FIELDS)
        .chain(PROVENANCE_FIELDS)
        .collect()
}

/// Names of every numeric column usable in correlation and scatter tables.
pub fn numeric_columns() -> Vec<&'static str> {
    Metric::ALL.iter().map(|m| m.name()).chain(EVAL_FIELDS).collect()
}

/// Rounds to 12 significant digits and prints the shortest exact form.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        return "0".to_owned();
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    rounded.to_string()
}

fn format_cell(v: Option<f64>) -> String {
    v.map_or_else(|| NA.to_owned(), format_value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skipped {
    pub input: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusRun {
    pub records: Vec<BenchmarkRecord>,
    pub skipped: Vec<Skipped>,
    /// Non-fatal remarks, e.g. circuits whose evaluation is NA.
    pub notes: Vec<String>,
}

impl CorpusRun {
    /// Line-oriented run log.
    pub fn log_text(&self, device: &CouplingGraph, options: &MapOptions) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "device {} ({} qubits, {} edges)", device.name(), device.n_qubits(), device.n_edges());
        if device.fidelity_defaulted() {
            let _ = writeln!(
                out,
                "fidelity defaults in use: single_q={} two_q={}",
                device.single_q_fidelity(),
                device.two_q_fidelity()
            );
        }
        for w in device.warnings() {
            let _ = writeln!(out, "device warning: {w}");
        }
        let _ = writeln!(out, "options {}", options.fingerprint());
        let _ = writeln!(out, "records {}", self.records.len());
        let _ = writeln!(out, "skipped {}", self.skipped.len());
        for s in &self.skipped {
            let _ = writeln!(out, "skip {}: {}", s.input, s.reason);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note {n}");
        }
        out
    }
}

enum Outcome {
    Record(BenchmarkRecord, Option<String>),
    Skip(Skipped),
}

fn process(input: &CorpusInput, d: &CouplingGraph, dist: &crate::device::DistanceMatrix, options: &MapOptions) -> Outcome {
    let skip = |e: Error| {
        Outcome::Skip(Skipped {
            input: input.name(),
            reason: e.to_string(),
        })
    };
    let circuit = match input.load() {
        Ok(c) => c,
        Err(e) => return skip(e),
    };
    let mapped = match map_circuit_with(&circuit, d, dist, options) {
        Ok(m) => m,
        Err(e) => return skip(e),
    };
    let (eval, note) = match evaluate(&mapped, d) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(format!("{}: evaluation NA ({e})", circuit.name()))),
    };
    Outcome::Record(
        BenchmarkRecord {
            circuit: circuit.name().to_owned(),
            origin: input.origin,
            metrics: metric_vector(&circuit),
            eval,
            device: d.name().to_owned(),
            options: options.fingerprint(),
        },
        note,
    )
}

/// Profiles, maps and evaluates every input, in parallel.
///
/// Records keep input order regardless of scheduling. Inputs that fail to
/// load or map are reported in [`CorpusRun::skipped`]; the run fails only if
/// nothing succeeds.
pub fn run_corpus(inputs: &[CorpusInput], d: &CouplingGraph, options: &MapOptions) -> Result<CorpusRun> {
    let dist = all_pairs_distance(d);
    let outcomes: Vec<Outcome> = inputs
        .par_iter()
        .map(|input| process(input, d, &dist, options))
        .collect();

    let mut run = CorpusRun {
        records: Vec::new(),
        skipped: Vec::new(),
        notes: Vec::new(),
    };
    for o in outcomes {
        match o {
            Outcome::Record(r, note) => {
                run.records.push(r);
                run.notes.extend(note);
            }
            Outcome::Skip(s) => run.skipped.push(s),
        }
    }
    if run.records.is_empty() {
        let detail = run
            .skipped
            .iter()
            .map(|s| format!("{}: {}", s.input, s.reason))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::InvalidArgument(format!(
            "no circuit in the corpus could be processed ({} inputs){}{}",
            inputs.len(),
            if detail.is_empty() { "" } else { ": " },
            detail
        )));
    }
    Ok(run)
}

/// Pearson product-moment correlation.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "vectors differ in length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::Degenerate(format!("{} sample(s), need 2", x.len())));
    }
    let constant = |v: &[f64]| v.iter().all(|&a| a == v[0]);
    if constant(x) || constant(y) {
        return Err(Error::Degenerate("constant vector".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    let r = sxy / (sxx * syy).sqrt();
    Ok(r.clamp(-1.0, 1.0))
}

/// Pearson over pairs where both sides are present. Returns the coefficient
/// (`None` when degenerate) and the number of complete pairs.
pub fn pearson_pairwise(x: &[Option<f64>], y: &[Option<f64>]) -> (Option<f64>, usize) {
    let (xs, ys): (Vec<f64>, Vec<f64>) = x
        .iter()
        .zip(y)
        .filter_map(|(a, b)| Some(((*a)?, (*b)?)))
        .unzip();
    (pearson(&xs, &ys).ok(), xs.len())
}

/// Symmetric matrix of Pearson coefficients over named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    names: Vec<String>,
    values: Vec<Option<f64>>,
    counts: Vec<usize>,
}

impl CorrelationMatrix {
    /// Builds a matrix from explicit coefficients; `values` must be square and symmetric.
    pub fn new(names: Vec<String>, values: Vec<Vec<Option<f64>>>) -> Result<Self> {
        let n = names.len();
        if values.len() != n || values.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument("correlation matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if values[i][j] != values[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "correlation matrix not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(CorrelationMatrix {
            names,
            values: values.into_iter().flatten().collect(),
            counts: vec![0; n * n],
        })
    }

    /// All-pairs correlation of `columns` with pairwise NA deletion.
    pub fn from_columns(names: Vec<String>, columns: &[Vec<Option<f64>>]) -> Result<Self> {
        let n = names.len();
        if columns.len() != n {
            return Err(Error::InvalidArgument("one column per name required".into()));
        }
        let mut values = vec![None; n * n];
        let mut counts = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let (r, count) = pearson_pairwise(&columns[i], &columns[j]);
                let r = if i == j { r.map(|_| 1.0) } else { r };
                values[i * n + j] = r;
                values[j * n + i] = r;
                counts[i * n + j] = count;
                counts[j * n + i] = count;
            }
        }
        Ok(CorrelationMatrix { names, values, counts })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i * self.len() + j]
    }

    /// Number of complete pairs behind entry `(i, j)`.
    pub fn count(&self, i: usize, j: usize) -> usize {
        self.counts[i * self.len() + j]
    }

    pub fn get_by_name(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.names.iter().position(|n| n == a)?;
        let j = self.names.iter().position(|n| n == b)?;
        self.get(i, j)
    }

    /// CSV with a leading `metric` column; NA for degenerate cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric");
        for n in &self.names {
            out.push(',');
            out.push_str(n);
        }
        out.push('\n');
        for (i, n) in self.names.iter().enumerate() {
            out.push_str(n);
            for j in 0..self.len() {
                out.push(',');
                out.push_str(&format_cell(self.get(i, j)));
            }
            out.push('\n');
        }
        out
    }
}

/// Correlation matrix over the named numeric columns of `records`.
pub fn pearson_matrix(records: &[BenchmarkRecord], metric_names: &[&str]) -> Result<CorrelationMatrix> {
    if records.len() < 2 {
        return Err(Error::Degenerate(format!(
            "{} record(s), need at least 2",
            records.len()
        )));
    }
    let columns = metric_names
        .iter()
        .map(|name| records.iter().map(|r| r.value(name)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    CorrelationMatrix::from_columns(metric_names.iter().map(|s| s.to_string()).collect(), &columns)
}

/// Greedy keep-first reduction: a metric is kept iff `|r| < threshold`
/// against every metric kept before it. NA correlations never disqualify.
pub fn reduce_features(m: &CorrelationMatrix, threshold: f64) -> Result<Vec<String>> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "threshold {threshold} outside (0, 1]"
        )));
    }
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..m.len() {
        let redundant = kept
            .iter()
            .any(|&k| m.get(i, k).is_some_and(|r| r.abs() >= threshold));
        if !redundant {
            kept.push(i);
        }
    }
    Ok(kept.into_iter().map(|i| m.names()[i].clone()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterPoint {
    pub x: f64,
    pub y: f64,
    pub origin: Origin,
}

/// `(x, y, origin)` rows for two columns, NA rows dropped.
pub fn scatter_data(records: &[BenchmarkRecord], x_metric: &str, y_metric: &str) -> Result<Vec<ScatterPoint>> {
    let mut out = Vec::with_capacity(records.len());
    for r in records {
        let (x, y) = (r.value(x_metric)?, r.value(y_metric)?);
        if let (Some(x), Some(y)) = (x, y) {
            out.push(ScatterPoint {
                x,
                y,
                origin: r.origin,
            });
        }
    }
    if records.is_empty() {
        // still validate names
        let probe = numeric_columns();
        for name in [x_metric, y_metric] {
            if !probe.contains(&name) {
                return Err(Error::UnknownMetric(name.to_owned()));
            }
        }
    }
    Ok(out)
}

pub fn scatter_tsv(points: &[ScatterPoint], x_metric: &str, y_metric: &str) -> String {
    let mut out = format!("{x_metric}\t{y_metric}\torigin\n");
    for p in points {
        let _ = writeln!(out, "{}\t{}\t{}", format_value(p.x), format_value(p.y), p.origin);
    }
    out
}

/// Mean of one column over the whole corpus versus over its top-`target` share.
#[derive(Debug, Clone, PartialEq)]
pub struct TrendRow {
    pub metric: String,
    pub corpus_mean: f64,
    pub top_mean: f64,
}

/// Compares metric means in the top `fraction` of records ranked by `target`
/// (descending, ties by input order) against the corpus means.
pub fn trend_report(
    records: &[BenchmarkRecord],
    target: &str,
    metrics: &[&str],
    fraction: f64,
) -> Result<Vec<TrendRow>> {
    let mut ranked: Vec<(usize, f64)> = Vec::new();
    for (i, r) in records.iter().enumerate() {
        if let Some(v) = r.value(target)? {
            ranked.push((i, v));
        }
    }
    if ranked.is_empty() {
        return Err(Error::Degenerate(format!("no values for `{target}`")));
    }
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let top_n = ((ranked.len() as f64 * fraction).ceil() as usize).clamp(1, ranked.len());
    let top: Vec<usize> = ranked[..top_n].iter().map(|&(i, _)| i).collect();
    let all: Vec<usize> = ranked.iter().map(|&(i, _)| i).collect();

    let mean = |idx: &[usize], name: &str| -> Result<f64> {
        let mut sum = 0.0;
        let mut n = 0usize;
        for &i in idx {
            if let Some(v) = records[i].value(name)? {
                sum += v;
                n += 1;
            }
        }
        Ok(if n == 0 { f64::NAN } else { sum / n as f64 })
    };
    metrics
        .iter()
        .map(|&m| {
            Ok(TrendRow {
                metric: m.to_owned(),
                corpus_mean: mean(&all, m)?,
                top_mean: mean(&top, m)?,
            })
        })
        .collect()
}

pub fn trend_tsv(rows: &[TrendRow]) -> String {
    let mut out = String::from("metric\tcorpus_mean\ttop_mean\tdirection\n");
    for r in rows {
        let dir = if r.top_mean > r.corpus_mean {
            "higher"
        } else if r.top_mean < r.corpus_mean {
            "lower"
        } else {
            "equal"
        };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{dir}",
            r.metric,
            format_value(r.corpus_mean),
            format_value(r.top_mean)
        );
    }
    out
}

/// Writes records as RFC-4180 CSV with a header row.
pub fn write_csv<W: Write>(records: &[BenchmarkRecord], w: W) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(w);
    let to_io = |e: csv::Error| -> std::io::Error { e.into() };
    wtr.write_record(columns())
        .map_err(|e| Error::io("<csv>", to_io(e)))?;
    for r in records {
        wtr.write_record(r.cells())
            .map_err(|e| Error::io("<csv>", to_io(e)))?;
    }
    wtr.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn records_csv(records: &[BenchmarkRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory does not fail");
    String::from_utf8(buf).expect("csv output is utf-8")
}

pub fn export_csv(records: &[BenchmarkRecord], path: &Path) -> Result<()> {
    if records.is_empty() {
        return Err(Error::InvalidArgument("no records to export".into()));
    }
    std::fs::write(path, records_csv(records)).map_err(|e| Error::io(path, e))
}
