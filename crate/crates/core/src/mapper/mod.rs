//! The mapping pipeline: decompose, place, route, schedule.

mod decompose;
mod placement;
mod route;
mod schedule;

use std::fmt;
use std::str::FromStr;

pub use decompose::{decompose, default_primitives, PrimitiveSet};
pub use placement::{degree_placement, trivial_placement, Placement};
pub use route::{route, route_with};
pub use schedule::{schedule_asap, Schedule};

use crate::circuit::Circuit;
use crate::device::{all_pairs_distance, CouplingGraph, DistanceMatrix};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlacementStrategy {
    #[default]
    Trivial,
    Degree,
}

impl fmt::Display for PlacementStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlacementStrategy::Trivial => "trivial",
            PlacementStrategy::Degree => "degree",
        })
    }
}

impl FromStr for PlacementStrategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "trivial" => Ok(PlacementStrategy::Trivial),
            "degree" => Ok(PlacementStrategy::Degree),
            other => Err(format!("unknown placement strategy `{other}`")),
        }
    }
}

/// How inserted SWAPs appear in the routed circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SwapMode {
    /// One `swap` gate per SWAP.
    #[default]
    Swap1,
    /// Three `cx` gates per SWAP.
    Cnot3,
}

impl SwapMode {
    /// Gates emitted per inserted SWAP.
    pub fn gates_per_swap(self) -> usize {
        match self {
            SwapMode::Swap1 => 1,
            SwapMode::Cnot3 => 3,
        }
    }
}

impl fmt::Display for SwapMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SwapMode::Swap1 => "swap1",
            SwapMode::Cnot3 => "cnot3",
        })
    }
}

impl FromStr for SwapMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "swap1" => Ok(SwapMode::Swap1),
            "cnot3" => Ok(SwapMode::Cnot3),
            other => Err(format!("unknown swap accounting mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapOptions {
    pub placement: PlacementStrategy,
    pub primitives: PrimitiveSet,
    pub swap_mode: SwapMode,
}

impl Default for MapOptions {
    fn default() -> Self {
        MapOptions {
            placement: PlacementStrategy::Trivial,
            primitives: default_primitives(),
            swap_mode: SwapMode::Swap1,
        }
    }
}

impl MapOptions {
    /// Stable one-line description, recorded next to every result.
    pub fn fingerprint(&self) -> String {
        let prims: Vec<&str> = self.primitives.iter().map(|k| k.mnemonic()).collect();
        format!(
            "placement={};swap={};primitives={}",
            self.placement,
            self.swap_mode,
            prims.join("+")
        )
    }
}

/// Where a routed gate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateOrigin {
    /// Index into the (decomposed) source circuit.
    Source(usize),
    /// Part `part` of the `index`-th inserted SWAP (always 0 in `swap1` mode).
    Swap { index: usize, part: u8 },
}

/// Result of routing: the physical circuit plus everything needed to audit it.
#[derive(Debug, Clone, PartialEq)]
pub struct MappedCircuit {
    routed: Circuit,
    origins: Vec<GateOrigin>,
    initial_placement: Placement,
    final_placement: Placement,
    n_swaps_inserted: usize,
    source: Circuit,
    swap_mode: SwapMode,
    source_depth: usize,
    routed_depth: usize,
}

impl MappedCircuit {
    fn new(
        routed: Circuit,
        origins: Vec<GateOrigin>,
        initial_placement: Placement,
        final_placement: Placement,
        n_swaps_inserted: usize,
        source: Circuit,
        swap_mode: SwapMode,
    ) -> Self {
        let source_depth = schedule_asap(&source).depth;
        let routed_depth = schedule_asap(&routed).depth;
        MappedCircuit {
            routed,
            origins,
            initial_placement,
            final_placement,
            n_swaps_inserted,
            source,
            swap_mode,
            source_depth,
            routed_depth,
        }
    }

    /// Circuit over physical qubits.
    pub fn routed(&self) -> &Circuit {
        &self.routed
    }

    /// One entry per routed gate.
    pub fn origins(&self) -> &[GateOrigin] {
        &self.origins
    }

    pub fn initial_placement(&self) -> &Placement {
        &self.initial_placement
    }

    pub fn final_placement(&self) -> &Placement {
        &self.final_placement
    }

    pub fn n_swaps_inserted(&self) -> usize {
        self.n_swaps_inserted
    }

    /// The decomposed source circuit that was routed.
    pub fn source(&self) -> &Circuit {
        &self.source
    }

    /// Gate count of the decomposed source, measurements excluded.
    pub fn source_gate_count(&self) -> usize {
        self.source.gate_count()
    }

    pub fn swap_mode(&self) -> SwapMode {
        self.swap_mode
    }

    pub fn source_depth(&self) -> usize {
        self.source_depth
    }

    pub fn routed_depth(&self) -> usize {
        self.routed_depth
    }

    /// JSON sidecar describing the mapping.
    pub fn metadata_json(&self, device: &CouplingGraph, options: &MapOptions) -> String {
        let value = serde_json::json!({
            "circuit": self.routed.name(),
            "device": device.name(),
            "device_fidelity_defaulted": device.fidelity_defaulted(),
            "options": options.fingerprint(),
            "placement": options.placement.to_string(),
            "swap_accounting": self.swap_mode.to_string(),
            "initial_placement": self.initial_placement.as_slice(),
            "final_placement": self.final_placement.as_slice(),
            "n_swaps_inserted": self.n_swaps_inserted,
            "source_gate_count": self.source_gate_count(),
            "routed_gate_count": self.routed.gate_count(),
            "source_depth": self.source_depth,
            "routed_depth": self.routed_depth,
        });
        let mut text = serde_json::to_string_pretty(&value).expect("json value serializes");
        text.push('\n');
        text
    }
}

/// Decompose, place and route `c` on `d`.
pub fn map_circuit(c: &Circuit, d: &CouplingGraph, options: &MapOptions) -> Result<MappedCircuit> {
    map_circuit_with(c, d, &all_pairs_distance(d), options)
}

/// [`map_circuit`] with a precomputed distance table for `d`.
pub fn map_circuit_with(
    c: &Circuit,
    d: &CouplingGraph,
    dist: &DistanceMatrix,
    options: &MapOptions,
) -> Result<MappedCircuit> {
    let decomposed = decompose(c, &options.primitives)?;
    let placement = match options.placement {
        PlacementStrategy::Trivial => trivial_placement(&decomposed, d)?,
        PlacementStrategy::Degree => degree_placement(&decomposed, d)?,
    };
    route_with(&decomposed, d, dist, &placement, options.swap_mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Gate, GateKind::*};
    use crate::device::grid_device;

    #[test]
    fn satisfiable_circuit_unchanged() {
        let grid = grid_device(2, 3).unwrap();
        let c = Circuit::from_gates(
            "ok",
            6,
            vec![Gate::pair(Cx, 0, 1), Gate::pair(Cx, 1, 4), Gate::single(T, 5)],
        )
        .unwrap();
        let m = map_circuit(&c, &grid, &MapOptions::default()).unwrap();
        assert_eq!(m.n_swaps_inserted(), 0);
        assert_eq!(m.routed().gates(), c.gates());
        assert_eq!(m.routed_depth(), m.source_depth());
    }

    #[test]
    fn one_swap_on_line() {
        let line = grid_device(1, 3).unwrap();
        let c = Circuit::from_gates(
            "fig1",
            3,
            vec![Gate::pair(Cx, 0, 1), Gate::pair(Cx, 1, 2), Gate::pair(Cx, 0, 2)],
        )
        .unwrap();
        let m = map_circuit(&c, &line, &MapOptions::default()).unwrap();
        assert_eq!(m.n_swaps_inserted(), 1);
        assert_eq!(m.routed().gate_count(), 4);
        // CX(0,1), CX(1,2), SWAP(0,1), CX(1,2): a single dependency chain
        assert_eq!(m.source_depth(), 3);
        assert_eq!(m.routed_depth(), 4);
    }

    #[test]
    fn cz_decomposed_before_routing() {
        let line = grid_device(1, 2).unwrap();
        let c = Circuit::from_gates("cz", 2, vec![Gate::pair(Cz, 0, 1)]).unwrap();
        let m = map_circuit(&c, &line, &MapOptions::default()).unwrap();
        assert_eq!(m.source_gate_count(), 3);
        assert_eq!(m.routed().gates()[1], Gate::pair(Cx, 0, 1));
    }

    #[test]
    fn too_wide() {
        let grid = grid_device(2, 2).unwrap();
        let c = Circuit::new("wide", 5);
        assert!(matches!(
            map_circuit(&c, &grid, &MapOptions::default()),
            Err(crate::Error::Capacity { .. })
        ));
    }

    #[test]
    fn option_parsing_and_fingerprint() {
        assert_eq!("degree".parse::<PlacementStrategy>().unwrap(), PlacementStrategy::Degree);
        assert_eq!("cnot3".parse::<SwapMode>().unwrap(), SwapMode::Cnot3);
        assert!("bogus".parse::<SwapMode>().is_err());
        assert_eq!(
            MapOptions::default().fingerprint(),
            "placement=trivial;swap=swap1;primitives=x+y+z+h+s+sdg+t+tdg+rx+ry+rz+cx+measure"
        );
    }

    #[test]
    fn metadata_sidecar() {
        let line = grid_device(1, 3).unwrap();
        let c = Circuit::from_gates("c", 3, vec![Gate::pair(Cx, 0, 2)]).unwrap();
        let opts = MapOptions::default();
        let m = map_circuit(&c, &line, &opts).unwrap();
        let v: serde_json::Value = serde_json::from_str(&m.metadata_json(&line, &opts)).unwrap();
        assert_eq!(v["n_swaps_inserted"], 1);
        assert_eq!(v["final_placement"], serde_json::json!([1, 0, 2]));
        assert_eq!(v["device"], "grid1x3");
    }
}
