//! Shared helpers for the integration suites: seeded random connected
//! graphs and random unit arc states.

use markovpst::{ArcState64, Graph};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected graph with 2..=max_n vertices: a random spanning tree
/// plus a few extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(2..=max_n);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((v, rng.gen_range(0..v)));
    }
    for _ in 0..rng.gen_range(0..=n) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            edges.push((a, b));
        }
    }
    Graph::from_edge_list(n, &edges).expect("spanning tree keeps it connected")
}

/// Random unit-norm state supported on a random subset of the graph's arcs.
pub fn random_unit_state(rng: &mut impl Rng, g: &Graph) -> ArcState64 {
    loop {
        let mut arcs = Vec::new();
        for j in 0..g.n() {
            for &k in g.neighbors(j) {
                if rng.gen_bool(0.5) {
                    arcs.push((j, k, rng.gen_range(-1.0..1.0)));
                }
            }
        }
        let state = ArcState64::from_arcs(g.n(), arcs).expect("arcs in range");
        let norm = state.norm();
        if norm > 1e-3 {
            let scaled = state.arcs().map(|(j, k, a)| (j, k, a / norm));
            return ArcState64::from_arcs(g.n(), scaled).expect("arcs in range");
        }
    }
}
