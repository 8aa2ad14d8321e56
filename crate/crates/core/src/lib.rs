//! Quantum circuit mapping and interaction-graph profiling.
//!
//! The crate covers the full path from a QASM file to a correlation table:
//!
//! - [`qasm`] / [`circuit`]: parse, build and serialize circuits;
//!   [`generator`] and [`algorithms`] produce synthetic and structured corpora.
//! - [`interaction`]: weighted interaction graph of a circuit and its metrics.
//! - [`device`]: coupling graphs (grids or device files) and hop distances.
//! - [`mapper`]: decomposition, placement, SWAP routing and ASAP scheduling.
//! - [`evaluator`]: gate/depth overhead and gate-product fidelity.
//! - [`profiler`]: corpus runs, Pearson matrices, redundancy reduction, CSV/TSV.
//! - [`cli`]: the `qprofile` command line.

pub mod algorithms;
pub mod circuit;
pub mod cli;
pub mod device;
pub mod error;
pub mod evaluator;
pub mod generator;
pub mod interaction;
pub mod mapper;
pub mod profiler;
pub mod qasm;

pub use circuit::{circuit_depth, two_qubit_fraction, Circuit, Gate, GateKind};
pub use device::{all_pairs_distance, grid_device, load_device, CouplingGraph, DistanceMatrix};
pub use error::{Error, Result};
pub use evaluator::{evaluate, estimate_fidelity, EvalReport};
pub use generator::generate_random_circuit;
pub use interaction::{build_interaction_graph, metric_vector, InteractionGraph, Metric, MetricVector};
pub use mapper::{map_circuit, schedule_asap, MapOptions, MappedCircuit, Placement, PlacementStrategy, SwapMode};
pub use profiler::{pearson, pearson_matrix, reduce_features, run_corpus, BenchmarkRecord, CorrelationMatrix};
pub use qasm::{emit_qasm, parse_qasm};
