//! Seeded random inputs for property suites. Every generator is a pure
//! function of its `u64` seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::Graph;
use crate::odometer::{RawWeightedEdge, RawWeightedGraph, WeightedGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn vertex_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Random acyclic graph on `n` vertices: each forward pair `i < j` gets an
/// edge `v_j → v_i` with probability `density`.
pub fn random_dag(seed: u64, n: usize, density: f64) -> Graph {
    let mut r = rng(seed);
    let vertices = vertex_names(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(density) {
                edges.push(crate::category::GraphEdge {
                    id: format!("e{}", edges.len()),
                    src: vertices[j].clone(),
                    dst: vertices[i].clone(),
                });
            }
        }
    }
    Graph { vertices, edges }
}

/// Random weighted graph with at most `max_vertices` vertices, at most
/// `max_edges` edges (loops and parallel edges allowed) and weights in
/// `1..=max_weight`.
pub fn random_weighted_graph(seed: u64, max_vertices: usize, max_edges: usize, max_weight: u64) -> WeightedGraph {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_vertices);
    let m = r.gen_range(1..=max_edges);
    let vertices = vertex_names(n);
    let edges = (0..m)
        .map(|i| RawWeightedEdge {
            id: format!("e{i}"),
            src: vertices[r.gen_range(0..n)].clone(),
            dst: vertices[r.gen_range(0..n)].clone(),
            p: r.gen_range(1..=max_weight),
        })
        .collect();
    WeightedGraph::from_raw(&RawWeightedGraph { vertices, edges }).expect("well-formed by construction")
}

/// Random strongly connected weighted graph: a Hamiltonian cycle through a
/// shuffled vertex order plus `extra` random edges. At least one weight
/// exceeds 1 when `max_weight > 1`.
pub fn strongly_connected_graph(seed: u64, max_vertices: usize, extra: usize, max_weight: u64) -> WeightedGraph {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_vertices);
    let vertices = vertex_names(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut r);
    let mut ends: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    for _ in 0..r.gen_range(0..=extra) {
        ends.push((r.gen_range(0..n), r.gen_range(0..n)));
    }
    let mut weights: Vec<u64> = ends.iter().map(|_| r.gen_range(1..=max_weight)).collect();
    if max_weight > 1 && weights.iter().all(|&w| w == 1) {
        let i = r.gen_range(0..weights.len());
        weights[i] = r.gen_range(2..=max_weight);
    }
    let edges = ends
        .iter()
        .zip(weights)
        .enumerate()
        .map(|(i, (&(s, d), p))| RawWeightedEdge {
            id: format!("e{i}"),
            src: vertices[s].clone(),
            dst: vertices[d].clone(),
            p,
        })
        .collect();
    WeightedGraph::from_raw(&RawWeightedGraph { vertices, edges }).expect("well-formed by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        assert_eq!(strongly_connected_graph(7, 4, 3, 3), strongly_connected_graph(7, 4, 3, 3));
        assert_eq!(random_dag(3, 5, 0.5), random_dag(3, 5, 0.5));
    }

    #[test]
    fn strongly_connected() {
        for seed in 0..50 {
            assert!(strongly_connected_graph(seed, 5, 4, 3).is_strongly_connected());
        }
    }
}
