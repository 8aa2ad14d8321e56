//! Brute-force oracles shared by the integration tests. They do not call the
//! library's own graph or routing helpers.
#![allow(dead_code)]

use qprofile::circuit::GateKind;
use qprofile::device::CouplingGraph;
use qprofile::interaction::InteractionGraph;
use qprofile::mapper::{GateOrigin, MappedCircuit};
use qprofile::SwapMode;

/// Replays the routed circuit while tracking which virtual qubit sits on each
/// physical location. Checks that every two-qubit gate acts on coupled qubits,
/// that the logical sequence equals the decomposed source exactly, and that the
/// reported final placement matches the replay.
pub fn check_routing(m: &MappedCircuit, d: &CouplingGraph) -> Result<(), String> {
    let n_phys = d.n_qubits();
    let coupled = |a: usize, b: usize| d.edges().any(|(x, y)| (x, y) == (a.min(b), a.max(b)));

    let mut at: Vec<Option<usize>> = vec![None; n_phys];
    for (v, &p) in m.initial_placement().as_slice().iter().enumerate() {
        if p >= n_phys || at[p].is_some() {
            return Err(format!("initial placement not injective at v{v}"));
        }
        at[p] = Some(v);
    }

    let routed = m.routed().gates();
    let mut logical = Vec::new();
    let mut swaps = 0;
    let mut i = 0;
    while i < routed.len() {
        let g = routed[i];
        if let [a, b] = *g.qubits() {
            if !coupled(a, b) {
                return Err(format!("gate {i} ({}) on uncoupled {a},{b}", g.kind()));
            }
        }
        let inserted = match m.swap_mode() {
            // With the default primitives the decomposed source has no SWAPs,
            // so every SWAP in the output was inserted by the router.
            SwapMode::Swap1 => g.kind() == GateKind::Swap,
            SwapMode::Cnot3 => matches!(m.origins()[i], GateOrigin::Swap { .. }),
        };
        if inserted {
            let (a, b) = (g.qubits()[0], g.qubits()[1]);
            if m.swap_mode() == SwapMode::Cnot3 {
                let triple = routed.get(i..i + 3).ok_or("truncated CNOT triple")?;
                let expect = [(a, b), (b, a), (a, b)];
                for (t, &(x, y)) in triple.iter().zip(&expect) {
                    if t.kind() != GateKind::Cx || t.qubits() != [x, y] {
                        return Err(format!("bad CNOT triple at {i}"));
                    }
                }
                i += 3;
            } else {
                i += 1;
            }
            at.swap(a, b);
            swaps += 1;
            continue;
        }
        let virt: Result<Vec<usize>, String> = g
            .qubits()
            .iter()
            .map(|&p| at[p].ok_or_else(|| format!("gate {i} on unoccupied physical {p}")))
            .collect();
        logical.push((g.kind(), virt?, g.angle()));
        i += 1;
    }

    let source: Vec<_> = m
        .source()
        .gates()
        .iter()
        .map(|g| (g.kind(), g.qubits().to_vec(), g.angle()))
        .collect();
    if logical != source {
        return Err(format!(
            "logical sequence differs from source ({} vs {} gates)",
            logical.len(),
            source.len()
        ));
    }
    if swaps != m.n_swaps_inserted() {
        return Err(format!("replayed {swaps} swaps, reported {}", m.n_swaps_inserted()));
    }
    for (v, &p) in m.final_placement().as_slice().iter().enumerate() {
        if at[p] != Some(v) {
            return Err(format!("final placement disagrees for v{v}"));
        }
    }
    Ok(())
}

const INF: u64 = u64::MAX / 4;

pub fn floyd_warshall(g: &InteractionGraph) -> Vec<Vec<u64>> {
    let n = g.n_nodes();
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v, w) in g.edges() {
        if w > 0 {
            d[u][v] = 1;
            d[v][u] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn oracle_avg_hop(g: &InteractionGraph) -> f64 {
    let d = floyd_warshall(g);
    let (mut sum, mut pairs) = (0u64, 0u64);
    for i in 0..g.n_nodes() {
        for j in i + 1..g.n_nodes() {
            if d[i][j] < INF {
                sum += d[i][j];
                pairs += 1;
            }
        }
    }
    if pairs == 0 {
        0.0
    } else {
        sum as f64 / pairs as f64
    }
}

pub fn oracle_closeness(g: &InteractionGraph) -> f64 {
    let n = g.n_nodes();
    if n == 0 {
        return 0.0;
    }
    let d = floyd_warshall(g);
    let mut total = 0.0;
    for i in 0..n {
        let reach: Vec<u64> = (0..n).filter(|&j| j != i && d[i][j] < INF).map(|j| d[i][j]).collect();
        if !reach.is_empty() {
            total += reach.len() as f64 / reach.iter().sum::<u64>() as f64;
        }
    }
    total / n as f64
}

pub fn oracle_clustering(g: &InteractionGraph) -> f64 {
    let n = g.n_nodes();
    let adj = |a: usize, b: usize| g.weight(a, b) > 0;
    let mut triangles = 0u64;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if adj(a, b) && adj(b, c) && adj(a, c) {
                    triangles += 1;
                }
            }
        }
    }
    let mut triples = 0u64;
    for centre in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if a != centre && b != centre && adj(centre, a) && adj(centre, b) {
                    triples += 1;
                }
            }
        }
    }
    if triples == 0 {
        0.0
    } else {
        (3 * triangles) as f64 / triples as f64
    }
}

pub fn oracle_adjacency_std(g: &InteractionGraph) -> f64 {
    let n = g.n_nodes();
    let entries: Vec<f64> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| g.weight(i, j) as f64)
        .collect();
    let m = entries.len() as f64;
    let mean = entries.iter().sum::<f64>() / m;
    (entries.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / m).sqrt()
}
