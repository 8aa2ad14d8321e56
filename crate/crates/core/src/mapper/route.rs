use crate::circuit::{Circuit, Gate, GateKind};
use crate::device::{all_pairs_distance, CouplingGraph, DistanceMatrix};
use crate::error::{Error, Result};

use super::placement::Placement;
use super::{GateOrigin, MappedCircuit, SwapMode};

/// Greedy router: see [`route_with`].
pub fn route(c: &Circuit, d: &CouplingGraph, p: &Placement, mode: SwapMode) -> Result<MappedCircuit> {
    route_with(c, d, &all_pairs_distance(d), p, mode)
}

/// Routes `c` gate by gate in program order.
///
/// A two-qubit gate whose operands sit on non-adjacent physical qubits first
/// walks its first operand along the lexicographically smallest shortest path
/// toward the second, one SWAP per hop, until the two are neighbors.
pub fn route_with(
    c: &Circuit,
    d: &CouplingGraph,
    dist: &DistanceMatrix,
    p: &Placement,
    mode: SwapMode,
) -> Result<MappedCircuit> {
    if p.len() != c.n_qubits() {
        return Err(Error::InvalidArgument(format!(
            "placement covers {} qubits, circuit has {}",
            p.len(),
            c.n_qubits()
        )));
    }
    let n_phys = d.n_qubits();
    let mut v2p = p.as_slice().to_vec();
    let mut p2v = p.inverse(n_phys);
    let mut routed = Vec::with_capacity(c.gates().len());
    let mut origins = Vec::with_capacity(c.gates().len());
    let mut n_swaps = 0usize;

    for (idx, g) in c.gates().iter().enumerate() {
        if g.is_two_qubit() {
            let (u, v) = (g.qubits()[0], g.qubits()[1]);
            let target = v2p[v];
            let mut here = v2p[u];
            let mut remaining = dist.get(here, target).ok_or(Error::Routing(here, target))?;
            while remaining > 1 {
                let next = d
                    .neighbors(here)
                    .iter()
                    .copied()
                    .find(|&n| dist.get(n, target) == Some(remaining - 1))
                    .expect("a neighbor one hop closer exists on a shortest path");
                let parts: &[(usize, usize)] = match mode {
                    SwapMode::Swap1 => &[(here, next)],
                    SwapMode::Cnot3 => &[(here, next), (next, here), (here, next)],
                };
                for (part, &(a, b)) in parts.iter().enumerate() {
                    let kind = match mode {
                        SwapMode::Swap1 => GateKind::Swap,
                        SwapMode::Cnot3 => GateKind::Cx,
                    };
                    routed.push(Gate::pair(kind, a, b));
                    origins.push(GateOrigin::Swap {
                        index: n_swaps,
                        part: part as u8,
                    });
                }
                p2v.swap(here, next);
                for loc in [here, next] {
                    if let Some(virt) = p2v[loc] {
                        v2p[virt] = loc;
                    }
                }
                n_swaps += 1;
                here = next;
                remaining -= 1;
            }
        }
        routed.push(g.map_qubits(|q| v2p[q]));
        origins.push(GateOrigin::Source(idx));
    }

    let routed = Circuit::from_gates(c.name(), n_phys, routed)?;
    Ok(MappedCircuit::new(
        routed,
        origins,
        p.clone(),
        Placement::new(v2p, n_phys)?,
        n_swaps,
        c.clone(),
        mode,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind::*;
    use crate::device::grid_device;

    #[test]
    fn line_needs_one_swap() {
        let line = grid_device(1, 3).unwrap();
        let c = Circuit::from_gates("c", 3, vec![Gate::pair(Cx, 0, 2)]).unwrap();
        let m = route(&c, &line, &Placement::identity(3), SwapMode::Swap1).unwrap();
        assert_eq!(m.n_swaps_inserted(), 1);
        assert_eq!(
            m.routed().gates(),
            &[Gate::pair(Swap, 0, 1), Gate::pair(Cx, 1, 2)]
        );
        assert_eq!(m.final_placement().as_slice(), &[1, 0, 2]);
    }

    #[test]
    fn cnot3_mode_emits_three_cx() {
        let line = grid_device(1, 3).unwrap();
        let c = Circuit::from_gates("c", 3, vec![Gate::pair(Cx, 2, 0)]).unwrap();
        let m = route(&c, &line, &Placement::identity(3), SwapMode::Cnot3).unwrap();
        assert_eq!(m.n_swaps_inserted(), 1);
        assert_eq!(
            m.routed().gates(),
            &[
                Gate::pair(Cx, 2, 1),
                Gate::pair(Cx, 1, 2),
                Gate::pair(Cx, 2, 1),
                Gate::pair(Cx, 1, 0)
            ]
        );
    }

    #[test]
    fn adjacent_gates_untouched() {
        let grid = grid_device(2, 2).unwrap();
        let c = Circuit::from_gates(
            "c",
            4,
            vec![Gate::pair(Cx, 0, 1), Gate::single(H, 3), Gate::pair(Cz, 3, 1)],
        )
        .unwrap();
        let m = route(&c, &grid, &Placement::identity(4), SwapMode::Swap1).unwrap();
        assert_eq!(m.n_swaps_inserted(), 0);
        assert_eq!(m.routed().gates(), c.gates());
    }

    #[test]
    fn lexicographic_path_choice() {
        // 2x2 grid: 0-1, 0-2, 1-3, 2-3. From 0 to 3 both 1 and 2 work; 1 wins.
        let grid = grid_device(2, 2).unwrap();
        let c = Circuit::from_gates("c", 4, vec![Gate::pair(Cx, 0, 3)]).unwrap();
        let m = route(&c, &grid, &Placement::identity(4), SwapMode::Swap1).unwrap();
        assert_eq!(m.routed().gates()[0], Gate::pair(Swap, 0, 1));
    }

    #[test]
    fn swaps_through_free_locations() {
        let line = grid_device(1, 5).unwrap();
        let c = Circuit::from_gates("c", 2, vec![Gate::pair(Cx, 0, 1)]).unwrap();
        let p = Placement::new(vec![0, 4], 5).unwrap();
        let m = route(&c, &line, &p, SwapMode::Swap1).unwrap();
        assert_eq!(m.n_swaps_inserted(), 3);
        assert_eq!(m.final_placement().as_slice(), &[3, 4]);
    }

    #[test]
    fn unreachable_pair_fails() {
        let split = CouplingGraph::new("split", 4, &[(0, 1), (2, 3)]).unwrap();
        let c = Circuit::from_gates("c", 4, vec![Gate::pair(Cx, 0, 3)]).unwrap();
        assert!(matches!(
            route(&c, &split, &Placement::identity(4), SwapMode::Swap1),
            Err(Error::Routing(0, 3))
        ));
    }
}
