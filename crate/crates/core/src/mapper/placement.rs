use crate::circuit::Circuit;
use crate::device::CouplingGraph;
use crate::error::{Error, Result};
use crate::interaction::build_interaction_graph;

/// Injective assignment of virtual qubits to physical qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    virt_to_phys: Vec<usize>,
}

impl Placement {
    pub fn new(virt_to_phys: Vec<usize>, n_physical: usize) -> Result<Self> {
        let mut used = vec![false; n_physical];
        for (v, &p) in virt_to_phys.iter().enumerate() {
            if p >= n_physical {
                return Err(Error::InvalidArgument(format!(
                    "virtual qubit {v} placed on physical {p}, device has {n_physical}"
                )));
            }
            if std::mem::replace(&mut used[p], true) {
                return Err(Error::InvalidArgument(format!(
                    "physical qubit {p} assigned twice"
                )));
            }
        }
        Ok(Placement { virt_to_phys })
    }

    pub fn identity(n: usize) -> Self {
        Placement {
            virt_to_phys: (0..n).collect(),
        }
    }

    pub fn physical(&self, virt: usize) -> usize {
        self.virt_to_phys[virt]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.virt_to_phys
    }

    pub fn len(&self) -> usize {
        self.virt_to_phys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.virt_to_phys.is_empty()
    }

    /// Physical-to-virtual view over `n_physical` locations.
    pub fn inverse(&self, n_physical: usize) -> Vec<Option<usize>> {
        let mut inv = vec![None; n_physical];
        for (v, &p) in self.virt_to_phys.iter().enumerate() {
            inv[p] = Some(v);
        }
        inv
    }
}

fn check_capacity(c: &Circuit, d: &CouplingGraph) -> Result<()> {
    if c.n_qubits() > d.n_qubits() {
        return Err(Error::Capacity {
            needed: c.n_qubits(),
            available: d.n_qubits(),
        });
    }
    Ok(())
}

/// Virtual qubit `i` on physical qubit `i`.
pub fn trivial_placement(c: &Circuit, d: &CouplingGraph) -> Result<Placement> {
    check_capacity(c, d)?;
    Ok(Placement::identity(c.n_qubits()))
}

/// Pairs the busiest virtual qubits (by interaction-graph weighted degree)
/// with the best-connected physical qubits. Ties go to the lower index on
/// both sides. A circuit without two-qubit gates gets the identity.
pub fn degree_placement(c: &Circuit, d: &CouplingGraph) -> Result<Placement> {
    check_capacity(c, d)?;
    let ig = build_interaction_graph(c);
    if ig.n_edges() == 0 {
        return Ok(Placement::identity(c.n_qubits()));
    }
    let weighted = ig.weighted_degrees();
    let mut virt: Vec<usize> = (0..c.n_qubits()).collect();
    virt.sort_by_key(|&v| (std::cmp::Reverse(weighted[v]), v));
    let mut phys: Vec<usize> = (0..d.n_qubits()).collect();
    phys.sort_by_key(|&p| (std::cmp::Reverse(d.degree(p)), p));

    let mut map = vec![0; c.n_qubits()];
    for (&v, &p) in virt.iter().zip(&phys) {
        map[v] = p;
    }
    Placement::new(map, d.n_qubits())
}
