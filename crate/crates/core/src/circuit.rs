//! Circuit intermediate representation.
//!
//! A [`Circuit`] is an ordered list of [`Gate`]s over `n_qubits` virtual
//! qubits. Circuits are plain values: once built they are only read, so they
//! can be shared freely between threads.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mapper::schedule_asap;

/// Gate mnemonics understood by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateKind {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    Cx,
    Cz,
    Swap,
    Measure,
}

impl GateKind {
    pub const ALL: [GateKind; 16] = [
        GateKind::I,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::Cx,
        GateKind::Cz,
        GateKind::Swap,
        GateKind::Measure,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cx | GateKind::Cz | GateKind::Swap => 2,
            _ => 1,
        }
    }

    pub fn is_two_qubit(self) -> bool {
        self.arity() == 2
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz)
    }

    /// Lowercase QASM mnemonic.
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::I => "id",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::Swap => "swap",
            GateKind::Measure => "measure",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

impl FromStr for GateKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let kind = match s {
            "id" | "i" => GateKind::I,
            "x" => GateKind::X,
            "y" => GateKind::Y,
            "z" => GateKind::Z,
            "h" => GateKind::H,
            "s" => GateKind::S,
            "sdg" => GateKind::Sdg,
            "t" => GateKind::T,
            "tdg" => GateKind::Tdg,
            "rx" => GateKind::Rx,
            "ry" => GateKind::Ry,
            "rz" => GateKind::Rz,
            "cx" | "cnot" => GateKind::Cx,
            "cz" => GateKind::Cz,
            "swap" => GateKind::Swap,
            "measure" => GateKind::Measure,
            other => return Err(format!("unknown gate `{other}`")),
        };
        Ok(kind)
    }
}

/// A single gate application. Operand order matters for `cx` (control, target).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate {
    kind: GateKind,
    qubits: [usize; 2],
    angle: Option<f64>,
}

impl Gate {
    /// Validated constructor.
    pub fn new(kind: GateKind, qubits: &[usize], angle: Option<f64>) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidArgument(format!(
                "`{kind}` takes {} qubit(s), got {}",
                kind.arity(),
                qubits.len()
            )));
        }
        if kind.is_two_qubit() && qubits[0] == qubits[1] {
            return Err(Error::InvalidArgument(format!(
                "`{kind}` operands must be distinct, got q[{}] twice",
                qubits[0]
            )));
        }
        if kind.is_rotation() != angle.is_some() {
            return Err(Error::InvalidArgument(format!(
                "angle must be given exactly for rotation gates (`{kind}`)"
            )));
        }
        let mut q = [0; 2];
        q[..qubits.len()].copy_from_slice(qubits);
        Ok(Gate {
            kind,
            qubits: q,
            angle,
        })
    }

    /// Non-rotation single-qubit gate. Panics on a kind of the wrong shape.
    pub fn single(kind: GateKind, q: usize) -> Self {
        Self::new(kind, &[q], None).expect("single-qubit, non-rotation gate kind")
    }

    /// Two-qubit gate. Panics on a single-qubit kind or equal operands.
    pub fn pair(kind: GateKind, a: usize, b: usize) -> Self {
        Self::new(kind, &[a, b], None).expect("two-qubit gate with distinct operands")
    }

    /// Rotation gate. Panics if `kind` is not a rotation.
    pub fn rotation(kind: GateKind, q: usize, angle: f64) -> Self {
        Self::new(kind, &[q], Some(angle)).expect("rotation gate kind")
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits[..self.kind.arity()]
    }

    pub fn angle(&self) -> Option<f64> {
        self.angle
    }

    pub fn is_two_qubit(&self) -> bool {
        self.kind.is_two_qubit()
    }

    pub fn is_measure(&self) -> bool {
        self.kind == GateKind::Measure
    }

    /// Same gate with every operand passed through `f`.
    pub fn map_qubits(&self, mut f: impl FnMut(usize) -> usize) -> Gate {
        let mut g = *self;
        for q in &mut g.qubits[..self.kind.arity()] {
            *q = f(*q);
        }
        g
    }
}

/// An ordered gate list over `n_qubits` virtual qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    name: String,
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(name: impl Into<String>, n_qubits: usize) -> Self {
        Circuit {
            name: name.into(),
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(name: impl Into<String>, n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(name, n_qubits);
        c.gates.reserve(gates.len());
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    /// Appends a gate, rejecting operands outside the register.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::InvalidArgument(format!(
                "qubit {q} out of range for {}-qubit circuit",
                self.n_qubits
            )));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Number of gates that take part in cost accounting (measurements excluded).
    pub fn gate_count(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_measure()).count()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Applies `perm` to every operand. `perm` must be injective into `n_qubits`.
    pub fn relabeled(&self, perm: &[usize], n_qubits: usize) -> Result<Circuit> {
        let mut out = Circuit::new(self.name.clone(), n_qubits);
        for g in &self.gates {
            out.push(g.map_qubits(|q| perm[q]))?;
        }
        Ok(out)
    }
}

/// Share of two-qubit gates among all non-measurement gates; 0 for an empty circuit.
pub fn two_qubit_fraction(c: &Circuit) -> f64 {
    let total = c.gate_count();
    if total == 0 {
        return 0.0;
    }
    c.two_qubit_count() as f64 / total as f64
}

/// Number of ASAP cycles, see [`schedule_asap`].
pub fn circuit_depth(c: &Circuit) -> usize {
    schedule_asap(c).depth
}
