use std::collections::BTreeSet;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Gate kinds a device executes natively.
pub type PrimitiveSet = BTreeSet<GateKind>;

/// `{X, Y, Z, H, S, SDG, T, TDG, RX, RY, RZ, CX, MEASURE}`.
pub fn default_primitives() -> PrimitiveSet {
    use GateKind::*;
    [X, Y, Z, H, S, Sdg, T, Tdg, Rx, Ry, Rz, Cx, Measure]
        .into_iter()
        .collect()
}

/// Rewrites every non-primitive gate using the known identities:
/// `SWAP(a,b) = CX(a,b) CX(b,a) CX(a,b)` and `CZ(a,b) = H(b) CX(a,b) H(b)`.
pub fn decompose(c: &Circuit, primitives: &PrimitiveSet) -> Result<Circuit> {
    if !primitives.contains(&GateKind::Cx) {
        return Err(Error::InvalidArgument(
            "primitive set must contain CX".into(),
        ));
    }
    let mut gates = Vec::with_capacity(c.gates().len());
    for g in c.gates() {
        if primitives.contains(&g.kind()) {
            gates.push(*g);
            continue;
        }
        match g.kind() {
            GateKind::Swap => {
                let (a, b) = (g.qubits()[0], g.qubits()[1]);
                gates.extend([
                    Gate::pair(GateKind::Cx, a, b),
                    Gate::pair(GateKind::Cx, b, a),
                    Gate::pair(GateKind::Cx, a, b),
                ]);
            }
            GateKind::Cz if primitives.contains(&GateKind::H) => {
                let (a, b) = (g.qubits()[0], g.qubits()[1]);
                gates.extend([
                    Gate::single(GateKind::H, b),
                    Gate::pair(GateKind::Cx, a, b),
                    Gate::single(GateKind::H, b),
                ]);
            }
            other => return Err(Error::NoDecomposition(other.mnemonic().to_owned())),
        }
    }
    Circuit::from_gates(c.name(), c.n_qubits(), gates)
}
