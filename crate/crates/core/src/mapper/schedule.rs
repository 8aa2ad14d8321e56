use crate::circuit::Circuit;

/// ASAP cycle assignment with unit-time gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    /// Cycle of each gate in program order; `None` for measurements, which are not scheduled.
    pub cycles: Vec<Option<usize>>,
    pub depth: usize,
}

/// Places every gate at the earliest cycle after all earlier gates on its qubits.
pub fn schedule_asap(c: &Circuit) -> Schedule {
    // next free cycle per qubit
    let mut ready = vec![0usize; c.n_qubits()];
    let mut depth = 0;
    let cycles = c
        .gates()
        .iter()
        .map(|g| {
            if g.is_measure() {
                return None;
            }
            let cycle = g.qubits().iter().map(|&q| ready[q]).max().unwrap_or(0);
            for &q in g.qubits() {
                ready[q] = cycle + 1;
            }
            depth = depth.max(cycle + 1);
            Some(cycle)
        })
        .collect();
    Schedule { cycles, depth }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Gate, GateKind::*};

    #[test]
    fn parallel_then_joined() {
        let c = Circuit::from_gates(
            "c",
            2,
            vec![Gate::single(H, 0), Gate::single(H, 1), Gate::pair(Cx, 0, 1)],
        )
        .unwrap();
        let s = schedule_asap(&c);
        assert_eq!(s.cycles, vec![Some(0), Some(0), Some(1)]);
        assert_eq!(s.depth, 2);
    }

    #[test]
    fn chain() {
        let c = Circuit::from_gates(
            "c",
            4,
            vec![Gate::pair(Cx, 0, 1), Gate::pair(Cx, 1, 2), Gate::pair(Cx, 2, 3)],
        )
        .unwrap();
        let s = schedule_asap(&c);
        assert_eq!(s.cycles, vec![Some(0), Some(1), Some(2)]);
        assert_eq!(s.depth, 3);
    }

    #[test]
    fn empty_and_measure() {
        assert_eq!(schedule_asap(&Circuit::new("e", 3)).depth, 0);
        let c = Circuit::from_gates(
            "m",
            1,
            vec![Gate::single(X, 0), Gate::single(Measure, 0), Gate::single(X, 0)],
        )
        .unwrap();
        let s = schedule_asap(&c);
        assert_eq!(s.cycles, vec![Some(0), None, Some(1)]);
        assert_eq!(s.depth, 2);
    }
}
