//! Brute-force ground truth, kept independent of the series engine:
//! depth-first enumeration of vertex-distinct walks, with no polynomial or
//! matrix algebra anywhere. Only the graph model and the coefficient rings
//! are shared, plus the result containers being filled in directly.

use std::collections::BTreeMap;

use crate::enumerate::EnumError;
use crate::graph::{weakly_connected_components, Graph, VertexSet};
use crate::poly::TruncPoly;
use crate::ring::{RingElement, Word};
use crate::series::{EngineError, HamiltonianResult, PathSeriesResult};

/// One simple path or cycle, as a vertex itinerary.
///
/// Open: `length() == vertices.len() - 1 >= 1`. Closed: the walk returns to
/// the first vertex by one extra arc, so `length() == vertices.len() >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SimplePath {
    vertices: Vec<usize>,
    closed: bool,
}

impl SimplePath {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Number of arcs.
    pub fn length(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        if self.closed {
            self.vertices[0]
        } else {
            *self.vertices.last().unwrap()
        }
    }

    /// The arc-label sequence of the walk.
    pub fn word(&self) -> Word {
        let mut word: Word = self
            .vertices
            .windows(2)
            .map(|w| (w[0] as u32, w[1] as u32))
            .collect();
        if self.closed {
            let first = self.vertices[0] as u32;
            let last = *self.vertices.last().unwrap() as u32;
            word.push((last, first));
        }
        word
    }

    /// Ordered product of the arc weights along the walk.
    pub fn weight<R: RingElement>(&self, g: &Graph<R>) -> R {
        let mut acc = R::one();
        for &(u, v) in &self.word() {
            let w = g
                .weight_between(u as usize, v as usize)
                .expect("path follows arcs of the graph");
            acc = acc.mul(w);
        }
        acc
    }
}

struct SeriesWalker<'g, R: RingElement> {
    g: &'g Graph<R>,
    cap: usize,
    start: usize,
    visited: Vec<bool>,
    open: BTreeMap<(usize, usize), Vec<R>>,
    closed: BTreeMap<usize, Vec<R>>,
}

impl<'g, R: RingElement> SeriesWalker<'g, R> {
    fn walk(&mut self, u: usize, len: usize, acc: &R) {
        for &(v, arc) in self.g.out_arcs(u) {
            let w = self.g.arc_weight(arc);
            if v == self.start {
                if len + 1 <= self.cap {
                    let slot = self
                        .closed
                        .entry(self.start)
                        .or_insert_with(|| vec![R::zero(); self.cap + 1]);
                    slot[len + 1].add_assign(&acc.mul(w));
                }
            } else if !self.visited[v] {
                let aw = acc.mul(w);
                let slot = self
                    .open
                    .entry((self.start, v))
                    .or_insert_with(|| vec![R::zero(); self.cap + 1]);
                slot[len + 1].add_assign(&aw);
                if len + 1 < self.cap {
                    self.visited[v] = true;
                    self.walk(v, len + 1, &aw);
                    self.visited[v] = false;
                }
            }
        }
    }
}

/// Depth-first reference for the generating series: extends vertex-distinct
/// walks from every start vertex, accumulating `z^len` terms directly.
/// Same result contract as the engines. Exponential; meant for small graphs.
pub fn dfs_path_series<R: RingElement>(
    g: &Graph<R>,
    cap: usize,
) -> Result<PathSeriesResult<R>, EngineError> {
    if cap == 0 || cap > g.n() {
        return Err(EngineError::CapOutOfRange { cap, n: g.n() });
    }
    let n = g.n();
    let mut walker = SeriesWalker {
        g,
        cap,
        start: 0,
        visited: vec![false; n],
        open: BTreeMap::new(),
        closed: BTreeMap::new(),
    };
    for start in 0..n {
        walker.start = start;
        walker.visited[start] = true;
        walker.walk(start, 0, &R::one());
        walker.visited[start] = false;
    }
    let to_poly = |coeffs: Vec<R>| {
        let mut p = TruncPoly::zero(cap);
        for (d, c) in coeffs.into_iter().enumerate() {
            p.set_coeff(d, c);
        }
        p
    };
    let open = walker
        .open
        .into_iter()
        .map(|(k, v)| (k, to_poly(v)))
        .collect();
    let closed = walker
        .closed
        .into_iter()
        .map(|(k, v)| (k, to_poly(v)))
        .collect();
    Ok(PathSeriesResult::from_parts(
        n,
        cap,
        g.orientation(),
        open,
        closed,
        0,
    ))
}

/// Explicit listing of every simple path and cycle of length at most `cap`.
/// Cycles are listed once per starting vertex, matching the per-start
/// semantics of the closed series diagonal.
pub fn simple_paths<R: RingElement>(g: &Graph<R>, cap: usize) -> Vec<SimplePath> {
    let n = g.n();
    let mut out = Vec::new();
    let mut visited = vec![false; n];
    let mut stack = Vec::new();
    for start in 0..n {
        visited[start] = true;
        stack.push(start);
        list_walk(g, cap, start, start, &mut visited, &mut stack, &mut out);
        stack.pop();
        visited[start] = false;
    }
    out
}

fn list_walk<R: RingElement>(
    g: &Graph<R>,
    cap: usize,
    start: usize,
    u: usize,
    visited: &mut Vec<bool>,
    stack: &mut Vec<usize>,
    out: &mut Vec<SimplePath>,
) {
    let len = stack.len() - 1;
    for &(v, _) in g.out_arcs(u) {
        if v == start {
            if len + 1 <= cap {
                out.push(SimplePath {
                    vertices: stack.clone(),
                    closed: true,
                });
            }
        } else if !visited[v] {
            stack.push(v);
            out.push(SimplePath {
                vertices: stack.clone(),
                closed: false,
            });
            if len + 1 < cap {
                visited[v] = true;
                list_walk(g, cap, start, v, visited, stack, out);
                visited[v] = false;
            }
            stack.pop();
        }
    }
}

/// Simple cycles counted once each, anchored at their minimum vertex,
/// by length `1..=cap`. Multiplying entry `k` by `k` reproduces the raw
/// closed trace on commutative rings.
pub fn cycle_census<R: RingElement>(g: &Graph<R>, cap: usize) -> Vec<R> {
    let n = g.n();
    let mut counts = vec![R::zero(); cap + 1];
    let mut visited = vec![false; n];
    for start in 0..n {
        visited[start] = true;
        census_walk(g, cap, start, start, 0, &R::one(), &mut visited, &mut counts);
        visited[start] = false;
    }
    counts
}

#[allow(clippy::too_many_arguments)]
fn census_walk<R: RingElement>(
    g: &Graph<R>,
    cap: usize,
    start: usize,
    u: usize,
    len: usize,
    acc: &R,
    visited: &mut Vec<bool>,
    counts: &mut Vec<R>,
) {
    for &(v, arc) in g.out_arcs(u) {
        let w = g.arc_weight(arc);
        if v == start {
            if len + 1 <= cap {
                counts[len + 1].add_assign(&acc.mul(w));
            }
        } else if v > start && !visited[v] && len + 1 < cap {
            let aw = acc.mul(w);
            visited[v] = true;
            census_walk(g, cap, start, v, len + 1, &aw, visited, counts);
            visited[v] = false;
        }
    }
}

/// Exhaustive Hamiltonian counts by full-depth DFS; same result contract as
/// the dominating-set engine. Cycles are anchored at vertex 0, which every
/// Hamiltonian cycle contains.
pub fn dfs_hamiltonian<R: RingElement>(g: &Graph<R>) -> Result<HamiltonianResult<R>, EngineError> {
    if !R::SUPPORTS_EXACT_DIV {
        return Err(EngineError::RingCapability {
            ring: R::RING_NAME,
            operation: "hamiltonian counting",
        });
    }
    let n = g.n();
    if n == 0 {
        return Err(EngineError::EmptyGraph);
    }
    if n == 1 {
        let cycles = g.weight_between(0, 0).cloned().unwrap_or_else(R::zero);
        return Ok(HamiltonianResult::from_parts(1, vec![R::zero()], cycles, 0));
    }
    let mut h_op = vec![R::zero(); n * n];
    let mut cycles = R::zero();
    let mut visited = vec![false; n];
    for start in 0..n {
        visited[start] = true;
        ham_walk(
            g, n, start, start, 0, &R::one(), &mut visited, &mut h_op, &mut cycles,
        );
        visited[start] = false;
    }
    Ok(HamiltonianResult::from_parts(n, h_op, cycles, 0))
}

#[allow(clippy::too_many_arguments)]
fn ham_walk<R: RingElement>(
    g: &Graph<R>,
    n: usize,
    start: usize,
    u: usize,
    len: usize,
    acc: &R,
    visited: &mut Vec<bool>,
    h_op: &mut Vec<R>,
    cycles: &mut R,
) {
    for &(v, arc) in g.out_arcs(u) {
        let w = g.arc_weight(arc);
        if v == start {
            // Hamiltonian cycles are anchored at 0 and counted once.
            if start == 0 && len + 1 == n {
                cycles.add_assign(&acc.mul(w));
            }
        } else if !visited[v] {
            let aw = acc.mul(w);
            if len + 1 == n - 1 {
                h_op[start * n + v].add_assign(&aw);
            } else {
                visited[v] = true;
                ham_walk(g, n, start, v, len + 1, &aw, visited, h_op, cycles);
                visited[v] = false;
            }
        }
    }
}

/// All non-empty subsets of size at most `max_size` whose induced subgraph
/// is weakly connected, by brute subset filtering, in ascending bitmask
/// order. The designated reference for the rooted enumerator.
pub fn filter_connected_sets<R: RingElement>(
    g: &Graph<R>,
    max_size: usize,
    limit: usize,
) -> Result<Vec<VertexSet>, EnumError> {
    let n = g.n();
    if n > limit {
        return Err(EnumError::ReferenceLimitExceeded { n, limit });
    }
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        if (mask.count_ones() as usize) > max_size {
            continue;
        }
        let set = VertexSet::from_sorted((0..n).filter(|&v| mask >> v & 1 == 1).collect());
        if weakly_connected_components(g, &set).unwrap().len() == 1 {
            out.push(set);
        }
    }
    Ok(out)
}
