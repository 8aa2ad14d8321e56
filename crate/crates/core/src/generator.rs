//! Seeded random circuit generation.
//!
//! Uses ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through
//! `SeedableRng::seed_from_u64`. The stream is fixed for a given seed, so
//! generated corpora are reproducible across runs and platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Name recorded in output metadata for generated corpora.
pub const PRNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.3, seed_from_u64)";

const SINGLE_QUBIT_KINDS: [GateKind; 6] = [
    GateKind::X,
    GateKind::Y,
    GateKind::Z,
    GateKind::H,
    GateKind::S,
    GateKind::T,
];
const TWO_QUBIT_KINDS: [GateKind; 2] = [GateKind::Cx, GateKind::Cz];

/// Number of two-qubit gates the generator places for the given parameters.
pub fn two_qubit_gate_target(n_gates: usize, two_q_fraction: f64) -> usize {
    (two_q_fraction * n_gates as f64).round() as usize
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random circuit with exactly `round(two_q_fraction * n_gates)` two-qubit gates.
pub fn generate_random_circuit(
    n_qubits: usize,
    n_gates: usize,
    two_q_fraction: f64,
    seed: u64,
) -> Result<Circuit> {
    if n_qubits == 0 {
        return Err(Error::InvalidArgument("n_qubits must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&two_q_fraction) {
        return Err(Error::InvalidArgument(format!(
            "two-qubit fraction {two_q_fraction} outside [0, 1]"
        )));
    }
    let n_two = two_qubit_gate_target(n_gates, two_q_fraction);
    if n_two > 0 && n_qubits < 2 {
        return Err(Error::InvalidArgument(
            "two-qubit gates requested on a 1-qubit circuit".into(),
        ));
    }

    let mut rng = rng_from_seed(seed);
    let mut slots: Vec<bool> = (0..n_gates).map(|i| i < n_two).collect();
    slots.shuffle(&mut rng);

    let mut gates = Vec::with_capacity(n_gates);
    for two in slots {
        let gate = if two {
            let kind = TWO_QUBIT_KINDS[rng.gen_range(0..TWO_QUBIT_KINDS.len())];
            let a = rng.gen_range(0..n_qubits);
            let mut b = rng.gen_range(0..n_qubits - 1);
            if b >= a {
                b += 1;
            }
            Gate::pair(kind, a, b)
        } else {
            let kind = SINGLE_QUBIT_KINDS[rng.gen_range(0..SINGLE_QUBIT_KINDS.len())];
            Gate::single(kind, rng.gen_range(0..n_qubits))
        };
        gates.push(gate);
    }
    Circuit::from_gates(format!("random_q{n_qubits}_g{n_gates}_s{seed}"), n_qubits, gates)
}

/// Parameter ranges for a generated corpus; all bounds inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSpec {
    pub count: usize,
    pub qubits: (usize, usize),
    pub gates: (usize, usize),
    pub fraction: (f64, f64),
}

impl CorpusSpec {
    fn validate(&self) -> Result<()> {
        let (q0, q1) = self.qubits;
        let (g0, g1) = self.gates;
        let (f0, f1) = self.fraction;
        if q0 == 0 || q0 > q1 || g0 > g1 || !(0.0..=1.0).contains(&f0) || !(0.0..=1.0).contains(&f1) || f0 > f1 {
            return Err(Error::InvalidArgument(format!("bad corpus ranges {self:?}")));
        }
        if q1 < 2 && f1 > 0.0 {
            return Err(Error::InvalidArgument(
                "two-qubit gates requested on 1-qubit circuits".into(),
            ));
        }
        Ok(())
    }
}

/// Draws `spec.count` random circuits. Per-circuit sizes and seeds come from
/// one ChaCha8 stream seeded with `seed`; circuits are named `rand_NNNN`.
pub fn generate_corpus(spec: &CorpusSpec, seed: u64) -> Result<Vec<Circuit>> {
    spec.validate()?;
    let mut rng = rng_from_seed(seed);
    (0..spec.count)
        .map(|i| {
            let q = rng.gen_range(spec.qubits.0..=spec.qubits.1);
            let g = rng.gen_range(spec.gates.0..=spec.gates.1);
            let mut f = if spec.fraction.0 == spec.fraction.1 {
                spec.fraction.0
            } else {
                rng.gen_range(spec.fraction.0..=spec.fraction.1)
            };
            if q < 2 {
                f = 0.0;
            }
            let circuit_seed: u64 = rng.gen();
            let mut c = generate_random_circuit(q, g, f, circuit_seed)?;
            c.set_name(format!("rand_{i:04}"));
            Ok(c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::two_qubit_fraction;
    use proptest::prelude::*;

    #[test]
    fn single_qubit_forced() {
        let c = generate_random_circuit(1, 5, 0.0, 7).unwrap();
        assert_eq!(c.gates().len(), 5);
        assert!(c.gates().iter().all(|g| g.qubits() == [0]));
    }

    #[test]
    fn deterministic() {
        let a = generate_random_circuit(4, 10, 0.5, 42).unwrap();
        let b = generate_random_circuit(4, 10, 0.5, 42).unwrap();
        assert_eq!(a, b);
        let c = generate_random_circuit(4, 10, 0.5, 43).unwrap();
        assert_ne!(a.gates(), c.gates());
    }

    #[test]
    fn rounding_rule() {
        for seed in 0..5 {
            let c = generate_random_circuit(2, 10, 0.9, seed).unwrap();
            assert_eq!(c.two_qubit_count(), 9);
        }
        assert_eq!(two_qubit_gate_target(456, 0.135), 62);
    }

    #[test]
    fn invalid_arguments() {
        assert!(generate_random_circuit(1, 10, 0.95, 0).is_err());
        assert!(generate_random_circuit(3, 10, 1.5, 0).is_err());
        assert!(generate_random_circuit(3, 10, -0.1, 0).is_err());
        assert!(generate_random_circuit(0, 10, 0.0, 0).is_err());
        // rounds to zero two-qubit gates, so one qubit is fine
        assert!(generate_random_circuit(1, 4, 0.1, 0).is_ok());
    }

    #[test]
    fn corpus_within_ranges() {
        let spec = CorpusSpec {
            count: 30,
            qubits: (2, 9),
            gates: (5, 50),
            fraction: (0.1, 0.9),
        };
        let corpus = generate_corpus(&spec, 11).unwrap();
        assert_eq!(corpus.len(), 30);
        assert_eq!(corpus[3].name(), "rand_0003");
        for c in &corpus {
            assert!((2..=9).contains(&c.n_qubits()));
            assert!((5..=50).contains(&c.gates().len()));
        }
        assert_eq!(corpus, generate_corpus(&spec, 11).unwrap());
        let bad = CorpusSpec { qubits: (5, 2), ..spec };
        assert!(generate_corpus(&bad, 0).is_err());
    }

    proptest! {
        #[test]
        fn fraction_is_exact(q in 2usize..20, g in 1usize..400, f in 0.0f64..=1.0, seed: u64) {
            let c = generate_random_circuit(q, g, f, seed).unwrap();
            let expected = two_qubit_gate_target(g, f) as f64 / g as f64;
            prop_assert_eq!(two_qubit_fraction(&c), expected);
            prop_assert_eq!(c.gates().len(), g);
            for gate in c.gates() {
                prop_assert!(gate.qubits().iter().all(|&x| x < q));
            }
        }
    }
}
