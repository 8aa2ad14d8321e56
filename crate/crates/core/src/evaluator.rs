//! Mapping cost: gate overhead, depth overhead and gate-product fidelity.

use crate::circuit::Circuit;
use crate::device::CouplingGraph;
use crate::error::{Error, Result};
use crate::mapper::{GateOrigin, MappedCircuit};

/// Column names of [`EvalReport`], in serialization order.
pub const EVAL_FIELDS: [&str; 6] = [
    "gate_overhead_pct",
    "depth_overhead_pct",
    "n_swaps",
    "fidelity_before",
    "fidelity_after",
    "fidelity_decrease_pct",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalReport {
    pub gate_overhead_pct: f64,
    pub depth_overhead_pct: f64,
    pub n_swaps: usize,
    pub fidelity_before: f64,
    pub fidelity_after: f64,
    pub fidelity_decrease_pct: f64,
}

impl EvalReport {
    /// Values in [`EVAL_FIELDS`] order.
    pub fn values(&self) -> [f64; 6] {
        [
            self.gate_overhead_pct,
            self.depth_overhead_pct,
            self.n_swaps as f64,
            self.fidelity_before,
            self.fidelity_after,
            self.fidelity_decrease_pct,
        ]
    }
}

fn overhead_pct(before: usize, after: usize, what: &str) -> Result<f64> {
    if before == 0 {
        return Err(Error::InvalidArgument(format!("{what} before mapping is 0")));
    }
    Ok(100.0 * (after as f64 - before as f64) / before as f64)
}

pub fn gate_overhead_pct(before: usize, after: usize) -> Result<f64> {
    overhead_pct(before, after, "gate count")
}

pub fn depth_overhead_pct(before: usize, after: usize) -> Result<f64> {
    overhead_pct(before, after, "depth")
}

/// Product of per-gate fidelities; measurements count as perfect.
pub fn estimate_fidelity(c: &Circuit, d: &CouplingGraph) -> f64 {
    c.gates()
        .iter()
        .filter(|g| !g.is_measure())
        .map(|g| match g.qubits() {
            [a, b] => d.pair_fidelity(*a, *b),
            _ => d.single_q_fidelity(),
        })
        .product()
}

/// Costs of `m` relative to its decomposed source.
///
/// `fidelity_before` is taken over the routed source gates only (same
/// physical operands, no inserted SWAPs), so per-edge fidelity overrides
/// apply equally to both sides.
pub fn evaluate(m: &MappedCircuit, d: &CouplingGraph) -> Result<EvalReport> {
    let source_gates = m.source_gate_count();
    if source_gates == 0 {
        return Err(Error::InvalidArgument(format!(
            "circuit `{}` has no gates to evaluate",
            m.source().name()
        )));
    }
    let gate_overhead = gate_overhead_pct(source_gates, m.routed().gate_count())?;
    let depth_overhead = depth_overhead_pct(m.source_depth(), m.routed_depth())?;

    let mut before = 1.0;
    let mut after = 1.0;
    for (g, origin) in m.routed().gates().iter().zip(m.origins()) {
        if g.is_measure() {
            continue;
        }
        let f = match g.qubits() {
            [a, b] => d.pair_fidelity(*a, *b),
            _ => d.single_q_fidelity(),
        };
        after *= f;
        if matches!(origin, GateOrigin::Source(_)) {
            before *= f;
        }
    }
    Ok(EvalReport {
        gate_overhead_pct: gate_overhead,
        depth_overhead_pct: depth_overhead,
        n_swaps: m.n_swaps_inserted(),
        fidelity_before: before,
        fidelity_after: after,
        fidelity_decrease_pct: 100.0 * (before - after) / before,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Gate, GateKind::*};
    use crate::device::grid_device;
    use crate::mapper::{map_circuit, MapOptions, SwapMode};

    #[test]
    fn overhead_arithmetic() {
        assert_eq!(gate_overhead_pct(10, 16).unwrap(), 60.0);
        assert_eq!(gate_overhead_pct(10, 10).unwrap(), 0.0);
        assert_eq!(gate_overhead_pct(10, 12).unwrap(), 20.0);
        assert_eq!(depth_overhead_pct(5, 7).unwrap(), 40.0);
        assert_eq!(depth_overhead_pct(3, 3).unwrap(), 0.0);
        assert!(gate_overhead_pct(0, 3).is_err());
        assert!(depth_overhead_pct(0, 0).is_err());
    }

    #[test]
    fn fidelity_products() {
        let d = grid_device(1, 3).unwrap();
        assert_eq!(estimate_fidelity(&Circuit::new("e", 3), &d), 1.0);

        let two = Circuit::from_gates("t", 3, vec![Gate::pair(Cx, 0, 1); 2]).unwrap();
        assert!((estimate_fidelity(&two, &d) - 0.9801).abs() < 1e-15);

        let mixed = Circuit::from_gates(
            "m",
            3,
            vec![
                Gate::single(H, 0),
                Gate::single(X, 1),
                Gate::single(Measure, 1),
                Gate::single(T, 2),
                Gate::pair(Cx, 1, 2),
            ],
        )
        .unwrap();
        let expected = 0.999f64 * 0.999 * 0.999 * 0.99;
        assert!((estimate_fidelity(&mixed, &d) - expected).abs() < 1e-15);
        assert!((expected - 0.987033).abs() < 5e-7);
    }

    #[test]
    fn edge_override_used() {
        let d = grid_device(1, 3).unwrap().with_edge_fidelity(1, 2, 0.9).unwrap();
        let c = Circuit::from_gates("c", 3, vec![Gate::pair(Cx, 2, 1), Gate::pair(Cx, 0, 1)]).unwrap();
        assert!((estimate_fidelity(&c, &d) - 0.9 * 0.99).abs() < 1e-15);
    }

    #[test]
    fn zero_swaps_zero_cost() {
        let d = grid_device(2, 2).unwrap();
        let c = Circuit::from_gates("c", 2, vec![Gate::single(H, 0), Gate::pair(Cx, 0, 1)]).unwrap();
        let m = map_circuit(&c, &d, &MapOptions::default()).unwrap();
        let r = evaluate(&m, &d).unwrap();
        assert_eq!(r.gate_overhead_pct, 0.0);
        assert_eq!(r.depth_overhead_pct, 0.0);
        assert_eq!(r.fidelity_decrease_pct, 0.0);
        assert_eq!(r.fidelity_before, r.fidelity_after);
    }

    #[test]
    fn one_swap_costs_one_two_qubit_gate() {
        let d = grid_device(1, 3).unwrap();
        let c = Circuit::from_gates("c", 3, vec![Gate::single(H, 0), Gate::pair(Cx, 0, 2)]).unwrap();
        let m = map_circuit(&c, &d, &MapOptions::default()).unwrap();
        let r = evaluate(&m, &d).unwrap();
        assert_eq!(r.n_swaps, 1);
        assert!((r.fidelity_after - r.fidelity_before * 0.99).abs() < 1e-15);
        assert!((r.fidelity_decrease_pct - 1.0).abs() < 1e-12);
        assert_eq!(r.gate_overhead_pct, 50.0);
        // H(0) | SWAP(0,1) | CX(1,2) versus H(0) | CX(0,2)
        assert_eq!(r.depth_overhead_pct, 50.0);
    }

    #[test]
    fn accounting_modes() {
        let d = grid_device(1, 3).unwrap();
        let c = Circuit::from_gates("c", 3, vec![Gate::pair(Cx, 0, 2)]).unwrap();
        let cnot3 = MapOptions {
            swap_mode: SwapMode::Cnot3,
            ..MapOptions::default()
        };
        let r1 = evaluate(&map_circuit(&c, &d, &MapOptions::default()).unwrap(), &d).unwrap();
        let r3 = evaluate(&map_circuit(&c, &d, &cnot3).unwrap(), &d).unwrap();
        assert_eq!(r1.gate_overhead_pct, 100.0);
        assert_eq!(r3.gate_overhead_pct, 300.0);
        assert!((r3.fidelity_after - 0.99f64.powi(4)).abs() < 1e-15);
    }

    #[test]
    fn empty_source_is_error() {
        let d = grid_device(2, 2).unwrap();
        let m = map_circuit(&Circuit::new("e", 2), &d, &MapOptions::default()).unwrap();
        assert!(evaluate(&m, &d).is_err());
    }
}
