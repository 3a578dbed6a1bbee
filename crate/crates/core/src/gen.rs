//! Small graph builders for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Orientation};
use crate::ring::EdgeWeight;

/// Digraph from explicit arcs, unit weights.
pub fn digraph<W: EdgeWeight>(n: usize, arcs: &[(usize, usize)]) -> Graph<W> {
    let arcs = arcs
        .iter()
        .map(|&(u, v)| (u, v, W::arc_weight(u, v, None).unwrap()))
        .collect();
    Graph::new(n, Orientation::Directed, arcs).expect("valid arcs")
}

/// Bidirected expansion of an undirected edge list, unit weights.
pub fn bidirected<W: EdgeWeight>(n: usize, edges: &[(usize, usize)]) -> Graph<W> {
    let mut arcs = Vec::with_capacity(edges.len() * 2);
    for &(u, v) in edges {
        arcs.push((u, v, W::arc_weight(u, v, None).unwrap()));
        if u != v {
            arcs.push((v, u, W::arc_weight(v, u, None).unwrap()));
        }
    }
    Graph::new(n, Orientation::UndirectedExpanded, arcs).expect("valid arcs")
}

/// Directed n-cycle 0 -> 1 -> ... -> 0.
pub fn cycle_digraph<W: EdgeWeight>(n: usize) -> Graph<W> {
    let arcs: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    digraph(n, &arcs)
}

/// Undirected path 0 - 1 - ... - (n-1), bidirected.
pub fn path_bidirected<W: EdgeWeight>(n: usize) -> Graph<W> {
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|v| (v, v + 1)).collect();
    bidirected(n, &edges)
}

/// Complete undirected graph K_n, bidirected.
pub fn complete_bidirected<W: EdgeWeight>(n: usize) -> Graph<W> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    bidirected(n, &edges)
}

/// The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes.
pub fn petersen<W: EdgeWeight>() -> Graph<W> {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    bidirected(10, &edges)
}

/// Erdős–Rényi digraph: each ordered pair `(u, v)`, `u != v`, becomes an arc
/// with probability `p`; each vertex gets a self-loop with probability
/// `self_loop_p`. Deterministic in the seed.
pub fn erdos_renyi<W: EdgeWeight>(n: usize, p: f64, self_loop_p: f64, seed: u64) -> Graph<W> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let keep = if u == v {
                self_loop_p > 0.0 && rng.gen_bool(self_loop_p)
            } else {
                rng.gen_bool(p)
            };
            if keep {
                arcs.push((u, v, W::arc_weight(u, v, None).unwrap()));
            }
        }
    }
    Graph::new(n, Orientation::Directed, arcs).expect("valid arcs")
}

/// Erdős–Rényi undirected graph, bidirected, no self-loops.
pub fn erdos_renyi_undirected<W: EdgeWeight>(n: usize, p: f64, seed: u64) -> Graph<W> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    bidirected(n, &edges)
}

/// Serializes a graph back to the edge-list text format (unit weights are
/// omitted). Handy for feeding generated graphs to the CLI.
pub fn to_edge_list<W: EdgeWeight>(g: &Graph<W>) -> String {
    let mut out = format!("n {}\n", g.n());
    match g.orientation() {
        Orientation::Directed => {
            for &(u, v) in g.arcs() {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
        Orientation::UndirectedExpanded => {
            for &(u, v) in g.arcs() {
                if u <= v {
                    out.push_str(&format!("{u} {v}\n"));
                }
            }
        }
    }
    out
}
