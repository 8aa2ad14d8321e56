//! Structured circuits modelled on common algorithm kernels.
//!
//! These stand in for "real" benchmark circuits when building mixed corpora:
//! their interaction graphs are sparse and regular, unlike random circuits.
//! All builders emit gates from the default primitive set plus `swap`.

use std::f64::consts::PI;

use crate::circuit::{Circuit, Gate, GateKind};

struct Builder {
    circuit: Circuit,
}

impl Builder {
    fn new(name: String, n: usize) -> Self {
        Builder {
            circuit: Circuit::new(name, n),
        }
    }

    fn one(&mut self, kind: GateKind, q: usize) {
        self.circuit.push(Gate::single(kind, q)).expect("qubit in range");
    }

    fn rot(&mut self, kind: GateKind, q: usize, angle: f64) {
        self.circuit.push(Gate::rotation(kind, q, angle)).expect("qubit in range");
    }

    fn cx(&mut self, c: usize, t: usize) {
        self.circuit.push(Gate::pair(GateKind::Cx, c, t)).expect("qubit in range");
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.circuit.push(Gate::pair(GateKind::Swap, a, b)).expect("qubit in range");
    }

    /// Controlled phase via two CNOTs.
    fn cphase(&mut self, c: usize, t: usize, theta: f64) {
        self.rot(GateKind::Rz, c, theta / 2.0);
        self.cx(c, t);
        self.rot(GateKind::Rz, t, -theta / 2.0);
        self.cx(c, t);
        self.rot(GateKind::Rz, t, theta / 2.0);
    }

    /// Toffoli in the standard 6-CNOT Clifford+T form.
    fn ccx(&mut self, a: usize, b: usize, t: usize) {
        use GateKind::*;
        self.one(H, t);
        self.cx(b, t);
        self.one(Tdg, t);
        self.cx(a, t);
        self.one(T, t);
        self.cx(b, t);
        self.one(Tdg, t);
        self.cx(a, t);
        self.one(T, b);
        self.one(T, t);
        self.one(H, t);
        self.cx(a, b);
        self.one(T, a);
        self.one(Tdg, b);
        self.cx(a, b);
    }

    fn finish(self) -> Circuit {
        self.circuit
    }
}

/// GHZ state preparation on a CNOT chain.
pub fn ghz(n: usize) -> Circuit {
    let mut b = Builder::new(format!("ghz_n{n}"), n.max(1));
    b.one(GateKind::H, 0);
    for q in 1..n {
        b.cx(q - 1, q);
    }
    b.finish()
}

/// Textbook QFT with controlled phases and the final qubit reversal.
pub fn qft(n: usize) -> Circuit {
    let mut b = Builder::new(format!("qft_n{n}"), n.max(1));
    for i in 0..n {
        b.one(GateKind::H, i);
        for j in i + 1..n {
            b.cphase(j, i, PI / (1u64 << (j - i)) as f64);
        }
    }
    for i in 0..n / 2 {
        b.swap(i, n - 1 - i);
    }
    b.finish()
}

/// QAOA MaxCut ansatz on a ring graph.
pub fn qaoa_ring(n: usize, layers: usize) -> Circuit {
    let mut b = Builder::new(format!("qaoa_ring_n{n}_p{layers}"), n.max(2));
    for q in 0..n {
        b.one(GateKind::H, q);
    }
    for layer in 0..layers {
        let gamma = 0.4 + 0.1 * layer as f64;
        let beta = 0.7 - 0.1 * layer as f64;
        for q in 0..n {
            let r = (q + 1) % n;
            if r == q {
                continue;
            }
            b.cx(q, r);
            b.rot(GateKind::Rz, r, 2.0 * gamma);
            b.cx(q, r);
        }
        for q in 0..n {
            b.rot(GateKind::Rx, q, 2.0 * beta);
        }
    }
    b.finish()
}

/// Bernstein-Vazirani for the secret given by the low `n - 1` bits of `secret`;
/// qubit `n - 1` is the oracle ancilla.
pub fn bernstein_vazirani(n: usize, secret: u64) -> Circuit {
    let n = n.max(2);
    let anc = n - 1;
    let mut b = Builder::new(format!("bv_n{n}"), n);
    b.one(GateKind::X, anc);
    for q in 0..n {
        b.one(GateKind::H, q);
    }
    for q in 0..anc {
        if (secret >> q) & 1 == 1 {
            b.cx(q, anc);
        }
    }
    for q in 0..anc {
        b.one(GateKind::H, q);
        b.one(GateKind::Measure, q);
    }
    b.finish()
}

/// Hardware-efficient ansatz: RY layer then a linear CNOT ladder, repeated.
pub fn linear_ansatz(n: usize, layers: usize) -> Circuit {
    let mut b = Builder::new(format!("hea_n{n}_l{layers}"), n.max(1));
    for layer in 0..layers {
        for q in 0..n {
            b.rot(GateKind::Ry, q, 0.1 * (q + 1) as f64 + 0.3 * layer as f64);
        }
        for q in 1..n {
            b.cx(q - 1, q);
        }
    }
    b.finish()
}

/// Cuccaro ripple-carry adder on `bits`-bit registers (`2 * bits + 2` qubits),
/// Toffolis expanded to Clifford+T.
pub fn ripple_adder(bits: usize) -> Circuit {
    let bits = bits.max(1);
    let n = 2 * bits + 2;
    let b_reg = |i: usize| 1 + 2 * i;
    let a_reg = |i: usize| 2 + 2 * i;
    let z = n - 1;
    let mut b = Builder::new(format!("adder_{bits}bit"), n);

    let maj = |b: &mut Builder, c: usize, y: usize, x: usize| {
        b.cx(x, y);
        b.cx(x, c);
        b.ccx(c, y, x);
    };
    let uma = |b: &mut Builder, c: usize, y: usize, x: usize| {
        b.ccx(c, y, x);
        b.cx(x, c);
        b.cx(c, y);
    };

    maj(&mut b, 0, b_reg(0), a_reg(0));
    for i in 1..bits {
        maj(&mut b, a_reg(i - 1), b_reg(i), a_reg(i));
    }
    b.cx(a_reg(bits - 1), z);
    for i in (1..bits).rev() {
        uma(&mut b, a_reg(i - 1), b_reg(i), a_reg(i));
    }
    uma(&mut b, 0, b_reg(0), a_reg(0));
    b.finish()
}

/// A structured circuit on `n` qubits chosen by `family`
/// (0 = GHZ, 1 = QFT, 2 = QAOA ring, 3 = BV, 4 = ansatz, 5 = adder).
pub fn family_member(family: usize, n: usize, size_hint: usize) -> Circuit {
    match family % 6 {
        0 => ghz(n),
        1 => qft(n),
        2 => qaoa_ring(n, 1 + size_hint % 4),
        3 => bernstein_vazirani(n, 0x5555_5555_5555_5555 >> (size_hint % 3)),
        4 => linear_ansatz(n, 1 + size_hint % 5),
        _ => ripple_adder(((n.saturating_sub(2)) / 2).max(1)),
    }
}

/// `count` structured circuits with qubit counts drawn from `qubits` (inclusive),
/// cycling through the families. Deterministic in `seed`.
pub fn structured_corpus(count: usize, qubits: (usize, usize), seed: u64) -> Vec<Circuit> {
    use rand::Rng;
    let mut rng = crate::generator::rng_from_seed(seed);
    let (lo, hi) = (qubits.0.max(2), qubits.1.max(qubits.0.max(2)));
    (0..count)
        .map(|i| {
            let n = rng.gen_range(lo..=hi);
            let hint = rng.gen_range(0..60);
            let mut c = family_member(i, n, hint);
            c.set_name(format!("algo_{i:04}_{}", c.name()));
            c
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interaction::{build_interaction_graph, degree_stats};

    #[test]
    fn ghz_is_a_path() {
        let g = build_interaction_graph(&ghz(5));
        assert_eq!(g.n_edges(), 4);
        assert_eq!(degree_stats(&g), (1, 2, 1.6));
    }

    #[test]
    fn qft_is_complete() {
        let c = qft(5);
        let g = build_interaction_graph(&c);
        assert_eq!(g.n_edges(), 10);
        // 2 CNOTs per controlled phase plus the two reversal swaps
        assert_eq!(c.two_qubit_count(), 2 * 10 + 2);
    }

    #[test]
    fn ring_and_adder_shapes() {
        let ring = build_interaction_graph(&qaoa_ring(6, 2));
        assert_eq!(degree_stats(&ring), (2, 2, 2.0));
        assert_eq!(ring.total_weight(), 6 * 2 * 2);

        let adder = ripple_adder(3);
        assert_eq!(adder.n_qubits(), 8);
        assert_eq!(adder.two_qubit_count(), 2 * 3 * (2 + 6) + 1);
    }

    #[test]
    fn bv_uses_secret_bits() {
        let c = bernstein_vazirani(5, 0b1011);
        assert_eq!(c.two_qubit_count(), 3);
    }

    #[test]
    fn families_cover_all_builders() {
        for f in 0..6 {
            let c = family_member(f, 8, 3);
            assert!(c.n_qubits() <= 8 && c.gate_count() > 0, "family {f}");
        }
    }
}
