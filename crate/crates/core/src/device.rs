//! Device coupling graphs and hop-distance tables.
//!
//! Device file format, one directive per line, `#` starts a comment:
//!
//! ```text
//! name = surface7
//! n_qubits = 7
//! single_q_fidelity = 0.999     # optional, default 0.999
//! two_q_fidelity = 0.99         # optional, default 0.99
//! edge 0 2
//! edge 0 3 0.985                # optional per-edge two-qubit fidelity
//! ```
//!
//! `n_qubits` must appear before the first `edge`. Edges are undirected and
//! listing one twice keeps a single edge and records a warning.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::interaction::bfs;

pub const DEFAULT_SINGLE_Q_FIDELITY: f64 = 0.999;
pub const DEFAULT_TWO_Q_FIDELITY: f64 = 0.99;

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingGraph {
    name: String,
    n_qubits: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    single_q_fidelity: f64,
    two_q_fidelity: f64,
    edge_fidelity: BTreeMap<(usize, usize), f64>,
    defaulted_fidelity: bool,
    warnings: Vec<String>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn check_fidelity(f: f64) -> Result<f64> {
    if f > 0.0 && f <= 1.0 {
        Ok(f)
    } else {
        Err(Error::InvalidArgument(format!("fidelity {f} outside (0, 1]")))
    }
}

impl CouplingGraph {
    /// Builds a device with default fidelities. Edges must be in range and non-loops.
    pub fn new(name: impl Into<String>, n_qubits: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut d = CouplingGraph {
            name: name.into(),
            n_qubits,
            edges: BTreeSet::new(),
            adjacency: Vec::new(),
            single_q_fidelity: DEFAULT_SINGLE_Q_FIDELITY,
            two_q_fidelity: DEFAULT_TWO_Q_FIDELITY,
            edge_fidelity: BTreeMap::new(),
            defaulted_fidelity: true,
            warnings: Vec::new(),
        };
        for &(a, b) in edges {
            d.insert_edge(a, b).map_err(Error::InvalidArgument)?;
        }
        d.rebuild_adjacency();
        Ok(d)
    }

    /// Overrides both uniform fidelities.
    pub fn with_fidelities(mut self, single_q: f64, two_q: f64) -> Result<Self> {
        self.single_q_fidelity = check_fidelity(single_q)?;
        self.two_q_fidelity = check_fidelity(two_q)?;
        self.defaulted_fidelity = false;
        Ok(self)
    }

    /// Sets a per-edge two-qubit fidelity; the edge must exist.
    pub fn with_edge_fidelity(mut self, a: usize, b: usize, f: f64) -> Result<Self> {
        if !self.edges.contains(&key(a, b)) {
            return Err(Error::InvalidArgument(format!("no edge ({a}, {b}) on device")));
        }
        self.edge_fidelity.insert(key(a, b), check_fidelity(f)?);
        Ok(self)
    }

    fn insert_edge(&mut self, a: usize, b: usize) -> std::result::Result<bool, String> {
        if a >= self.n_qubits || b >= self.n_qubits {
            return Err(format!(
                "edge ({a}, {b}) references a qubit >= n_qubits = {}",
                self.n_qubits
            ));
        }
        if a == b {
            return Err(format!("self-loop on qubit {a}"));
        }
        Ok(self.edges.insert(key(a, b)))
    }

    fn rebuild_adjacency(&mut self) {
        let mut adj = vec![Vec::new(); self.n_qubits];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        self.adjacency = adj;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbor list of physical qubit `q`.
    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    pub fn degree(&self, q: usize) -> usize {
        self.adjacency[q].len()
    }

    pub fn single_q_fidelity(&self) -> f64 {
        self.single_q_fidelity
    }

    pub fn two_q_fidelity(&self) -> f64 {
        self.two_q_fidelity
    }

    /// Two-qubit fidelity for a gate on `{a, b}`, honoring per-edge overrides.
    pub fn pair_fidelity(&self, a: usize, b: usize) -> f64 {
        self.edge_fidelity
            .get(&key(a, b))
            .copied()
            .unwrap_or(self.two_q_fidelity)
    }

    /// True when the uniform fidelities were not given explicitly.
    pub fn fidelity_defaulted(&self) -> bool {
        self.defaulted_fidelity
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> Result<bool> {
        for q in [a, b] {
            if q >= self.n_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    size: self.n_qubits,
                });
            }
        }
        Ok(a != b && self.edges.contains(&key(a, b)))
    }

    /// Serializes to the device file format; [`parse_device`] reads it back.
    pub fn to_device_file(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name = {}", self.name);
        let _ = writeln!(out, "n_qubits = {}", self.n_qubits);
        if !self.defaulted_fidelity {
            let _ = writeln!(out, "single_q_fidelity = {}", self.single_q_fidelity);
            let _ = writeln!(out, "two_q_fidelity = {}", self.two_q_fidelity);
        }
        for &(a, b) in &self.edges {
            match self.edge_fidelity.get(&(a, b)) {
                Some(f) => {
                    let _ = writeln!(out, "edge {a} {b} {f}");
                }
                None => {
                    let _ = writeln!(out, "edge {a} {b}");
                }
            }
        }
        out
    }
}

/// `rows x cols` nearest-neighbor grid, qubits numbered row-major.
pub fn grid_device(rows: usize, cols: usize) -> Result<CouplingGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument(format!(
            "grid dimensions must be positive, got {rows}x{cols}"
        )));
    }
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let q = r * cols + c;
            if c + 1 < cols {
                edges.push((q, q + 1));
            }
            if r + 1 < rows {
                edges.push((q, q + cols));
            }
        }
    }
    CouplingGraph::new(format!("grid{rows}x{cols}"), rows * cols, &edges)
}

pub fn load_device(path: &Path) -> Result<CouplingGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "device".to_owned());
    parse_device(&text, &stem)
}

/// Parses device-file text. `default_name` is used when no `name` line is present.
pub fn parse_device(text: &str, default_name: &str) -> Result<CouplingGraph> {
    let mut name = default_name.to_owned();
    let mut n_qubits: Option<usize> = None;
    let mut single = None;
    let mut two = None;
    let mut edges: Vec<(usize, usize, Option<f64>, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("edge") {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if !(2..=3).contains(&fields.len()) || !rest.starts_with(char::is_whitespace) {
                return Err(Error::syntax(line, "expected `edge <a> <b> [fidelity]`"));
            }
            let n = n_qubits.ok_or_else(|| Error::syntax(line, "`n_qubits` must precede edges"))?;
            let a = parse_num::<usize>(line, fields[0])?;
            let b = parse_num::<usize>(line, fields[1])?;
            if a >= n || b >= n {
                return Err(Error::index(line, format!("edge ({a}, {b}) with n_qubits = {n}")));
            }
            if a == b {
                return Err(Error::syntax(line, format!("self-loop on qubit {a}")));
            }
            let fid = match fields.get(2) {
                Some(f) => Some(check_fidelity(parse_num::<f64>(line, f)?)?),
                None => None,
            };
            edges.push((a, b, fid, line));
            continue;
        }
        let (k, v) = content
            .split_once('=')
            .ok_or_else(|| Error::syntax(line, format!("expected `key = value`, found `{content}`")))?;
        let (k, v) = (k.trim(), v.trim());
        match k {
            "name" => name = v.to_owned(),
            "n_qubits" => {
                if n_qubits.is_some() {
                    return Err(Error::syntax(line, "duplicate `n_qubits`"));
                }
                n_qubits = Some(parse_num(line, v)?);
            }
            "single_q_fidelity" => single = Some(check_fidelity(parse_num(line, v)?)?),
            "two_q_fidelity" => two = Some(check_fidelity(parse_num(line, v)?)?),
            other => return Err(Error::syntax(line, format!("unknown key `{other}`"))),
        }
    }

    let n = n_qubits.ok_or_else(|| Error::syntax(text.lines().count().max(1), "missing `n_qubits`"))?;
    let mut d = CouplingGraph::new(name, n, &[])?;
    d.defaulted_fidelity = single.is_none() || two.is_none();
    d.single_q_fidelity = single.unwrap_or(DEFAULT_SINGLE_Q_FIDELITY);
    d.two_q_fidelity = two.unwrap_or(DEFAULT_TWO_Q_FIDELITY);
    for (a, b, fid, line) in edges {
        let fresh = d.insert_edge(a, b).map_err(|msg| Error::syntax(line, msg))?;
        if !fresh {
            d.warnings
                .push(format!("line {line}: duplicate edge ({a}, {b}) ignored"));
        }
        if let Some(f) = fid {
            d.edge_fidelity.insert(key(a, b), f);
        }
    }
    d.rebuild_adjacency();
    Ok(d)
}

fn parse_num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::syntax(line, format!("bad number `{s}`")))
}

/// All-pairs hop distances on a device.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    // u32::MAX marks unreachable pairs
    dist: Vec<u32>,
}

impl DistanceMatrix {
    const UNREACHABLE: u32 = u32::MAX;

    pub fn size(&self) -> usize {
        self.n
    }

    /// Hop distance, `None` when unreachable.
    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        match self.dist[a * self.n + b] {
            Self::UNREACHABLE => None,
            d => Some(d as usize),
        }
    }
}

pub fn all_pairs_distance(d: &CouplingGraph) -> DistanceMatrix {
    let n = d.n_qubits();
    let mut dist = vec![DistanceMatrix::UNREACHABLE; n * n];
    for s in 0..n {
        for (t, h) in bfs(&d.adjacency, s).into_iter().enumerate() {
            if let Some(h) = h {
                dist[s * n + t] = h as u32;
            }
        }
    }
    DistanceMatrix { n, dist }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shapes() {
        let g = grid_device(2, 2).unwrap();
        assert_eq!((g.n_qubits(), g.n_edges()), (4, 4));
        let line = grid_device(1, 3).unwrap();
        assert_eq!((line.n_qubits(), line.n_edges()), (3, 2));
        let big = grid_device(10, 10).unwrap();
        assert_eq!((big.n_qubits(), big.n_edges()), (100, 180));
        assert!(grid_device(0, 3).is_err());
    }

    #[test]
    fn grid_degrees() {
        for (r, c) in [(2, 2), (3, 4), (5, 5)] {
            let g = grid_device(r, c).unwrap();
            assert_eq!(g.n_edges(), 2 * r * c - r - c);
            assert!((0..g.n_qubits()).all(|q| (2..=4).contains(&g.degree(q))));
        }
    }

    #[test]
    fn adjacency_queries() {
        let line = grid_device(1, 3).unwrap();
        assert!(line.are_adjacent(0, 1).unwrap());
        assert!(!line.are_adjacent(0, 2).unwrap());
        assert!(!line.are_adjacent(1, 1).unwrap());
        assert!(line.are_adjacent(0, 3).is_err());
    }

    #[test]
    fn distances() {
        let line = grid_device(1, 3).unwrap();
        let dm = all_pairs_distance(&line);
        assert_eq!(dm.get(0, 2), Some(2));
        assert_eq!(dm.get(1, 0), Some(1));
        let split = CouplingGraph::new("split", 4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(all_pairs_distance(&split).get(0, 3), None);
    }

    #[test]
    fn parse_line_device() {
        let d = parse_device("n_qubits = 3\nedge 0 1\nedge 1 2\n", "line").unwrap();
        assert_eq!(d.name(), "line");
        assert_eq!(d.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert!(d.fidelity_defaulted());
        assert_eq!(d.single_q_fidelity(), 0.999);
        assert_eq!(d.two_q_fidelity(), 0.99);
    }

    #[test]
    fn duplicate_edge_warns() {
        let d = parse_device("n_qubits = 3\nedge 0 1\nedge 1 0\n", "dup").unwrap();
        assert_eq!(d.n_edges(), 1);
        assert_eq!(d.warnings().len(), 1);
        assert!(d.warnings()[0].contains("line 3"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_device("n_qubits = 3\nedge 0 7\n", "x"),
            Err(Error::Index { line: 2, .. })
        ));
        assert!(matches!(
            parse_device("n_qubits = 3\ntwo_q_fidelity = 1.5\n", "x"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            parse_device("n_qubits = 3\nedge 0 1 0\n", "x"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(parse_device("edge 0 1\n", "x"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_device("n_qubits = 2\nfoo\n", "x"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_device("# only comment\n", "x"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn edge_override() {
        let d = parse_device(
            "name = t\nn_qubits = 3\nsingle_q_fidelity = 0.9995\ntwo_q_fidelity = 0.98\nedge 0 1 0.95\nedge 1 2\n",
            "x",
        )
        .unwrap();
        assert!(!d.fidelity_defaulted());
        assert_eq!(d.pair_fidelity(1, 0), 0.95);
        assert_eq!(d.pair_fidelity(1, 2), 0.98);
    }

    #[test]
    fn file_round_trip() {
        let g = grid_device(3, 4).unwrap();
        assert_eq!(parse_device(&g.to_device_file(), "other").unwrap(), g);

        let custom = grid_device(2, 3)
            .unwrap()
            .with_fidelities(0.9999, 0.995)
            .unwrap()
            .with_edge_fidelity(1, 4, 0.97)
            .unwrap();
        assert_eq!(parse_device(&custom.to_device_file(), "other").unwrap(), custom);
    }
}
