//! Writes the sample corpus shipped under `corpus/`.
//!
//! Usage: cargo run --example export_corpus -- [OUT_DIR]

use std::path::PathBuf;

use qprofile::algorithms::{bernstein_vazirani, ghz, linear_ansatz, qaoa_ring, qft, ripple_adder};
use qprofile::device::CouplingGraph;
use qprofile::{emit_qasm, generate_random_circuit, grid_device};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out: PathBuf = std::env::args().nth(1).unwrap_or_else(|| "corpus".into()).into();
    let qasm_dir = out.join("qasm");
    let dev_dir = out.join("devices");
    std::fs::create_dir_all(&qasm_dir)?;
    std::fs::create_dir_all(&dev_dir)?;

    let mut circuits = vec![
        ghz(5),
        ghz(12),
        qft(4),
        qft(8),
        qaoa_ring(6, 2),
        qaoa_ring(10, 1),
        bernstein_vazirani(6, 0b10110),
        linear_ansatz(8, 3),
        ripple_adder(2),
        ripple_adder(4),
    ];
    for (q, g, f, seed) in [(4, 40, 0.3, 1), (8, 120, 0.5, 2), (12, 200, 0.7, 3), (16, 300, 0.4, 4)] {
        circuits.push(generate_random_circuit(q, g, f, seed)?);
    }
    for c in &circuits {
        std::fs::write(qasm_dir.join(format!("{}.qasm", c.name())), emit_qasm(c))?;
    }

    let line3 = CouplingGraph::new("line3", 3, &[(0, 1), (1, 2)])?;
    let s7_edges = [(0, 2), (0, 3), (1, 3), (1, 4), (2, 5), (3, 5), (3, 6), (4, 6)];
    let surface7 = CouplingGraph::new("surface7", 7, &s7_edges)?;
    for d in [line3, surface7, grid_device(4, 4)?, grid_device(5, 5)?, grid_device(10, 10)?] {
        std::fs::write(dev_dir.join(format!("{}.dev", d.name())), d.to_device_file())?;
    }
    println!("{} circuits -> {}", circuits.len(), out.display());
    Ok(())
}
