//! Exactly-once enumeration of weakly connected induced vertex sets.
//!
//! Sets are grown from their minimum vertex (the root): extension candidates
//! are weak neighbors greater than the root, appended in a fixed order, and
//! each recursion level walks the candidate list from a start index so that a
//! candidate, once passed, can never rejoin deeper in that branch. Every
//! connected set therefore corresponds to a unique take-decision sequence and
//! is visited exactly once, with no visited-set storage: the working state is
//! O(n + m).

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::ring::RingElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("max_size {max_size} out of range 1..={n}")]
    MaxSizeOutOfRange { max_size: usize, n: usize },
    #[error("n={n} exceeds the all-subsets reference limit {limit}")]
    ReferenceLimitExceeded { n: usize, limit: usize },
}

/// Default cap on `n` for the all-subsets reference enumeration.
pub const DEFAULT_REFERENCE_LIMIT: usize = 20;

/// One weakly connected set as seen by an enumeration callback.
///
/// `verts` is ascending; `nbh_size` is the size of its weak neighborhood,
/// maintained incrementally by the enumerator.
#[derive(Debug, Clone, Copy)]
pub struct ConnectedSetVisit<'a> {
    pub verts: &'a [usize],
    pub nbh_size: usize,
    pub root: usize,
}

struct Walker<'g, W> {
    g: &'g Graph<W>,
    root: usize,
    max_size: usize,
    in_set: Vec<bool>,
    /// Current set in ascending order.
    sorted: Vec<usize>,
    /// Insertion-ordered members, for popping.
    stack: Vec<usize>,
    /// Per-vertex count of weak neighbors inside the set.
    coverage: Vec<u32>,
    nbh_size: usize,
    /// Candidate list; `seen` marks vertices ever placed on it (per root).
    cand: Vec<usize>,
    seen: Vec<bool>,
    /// Position of each seen candidate in `cand`.
    cand_pos: Vec<usize>,
    visits: u64,
}

impl<'g, W: RingElement> Walker<'g, W> {
    fn new(g: &'g Graph<W>, max_size: usize) -> Self {
        let n = g.n();
        Walker {
            g,
            root: 0,
            max_size,
            in_set: vec![false; n],
            sorted: Vec::new(),
            stack: Vec::new(),
            coverage: vec![0; n],
            nbh_size: 0,
            cand: Vec::new(),
            seen: vec![false; n],
            cand_pos: vec![0; n],
            visits: 0,
        }
    }

    fn push(&mut self, v: usize) {
        if self.coverage[v] > 0 {
            self.nbh_size -= 1;
        }
        self.in_set[v] = true;
        let pos = self.sorted.partition_point(|&u| u < v);
        self.sorted.insert(pos, v);
        self.stack.push(v);
        for &w in self.g.weak_neighbors(v) {
            self.coverage[w] += 1;
            if !self.in_set[w] && self.coverage[w] == 1 {
                self.nbh_size += 1;
            }
        }
    }

    fn pop(&mut self) {
        let v = self.stack.pop().expect("pop on empty set");
        for &w in self.g.weak_neighbors(v) {
            self.coverage[w] -= 1;
            if !self.in_set[w] && self.coverage[w] == 0 {
                self.nbh_size -= 1;
            }
        }
        self.in_set[v] = false;
        let pos = self.sorted.binary_search(&v).expect("member present");
        self.sorted.remove(pos);
        if self.coverage[v] > 0 {
            self.nbh_size += 1;
        }
    }

    /// Appends the not-yet-seen weak neighbors of `v` above the root.
    fn offer_neighbors(&mut self, v: usize) -> usize {
        let before = self.cand.len();
        for &w in self.g.weak_neighbors(v) {
            if w > self.root && !self.seen[w] && !self.in_set[w] {
                self.seen[w] = true;
                self.cand_pos[w] = self.cand.len();
                self.cand.push(w);
            }
        }
        before
    }

    fn retract_candidates(&mut self, to_len: usize) {
        while self.cand.len() > to_len {
            let w = self.cand.pop().unwrap();
            self.seen[w] = false;
        }
    }

    fn visit<F: FnMut(&ConnectedSetVisit<'_>)>(&mut self, f: &mut F) {
        self.visits += 1;
        f(&ConnectedSetVisit {
            verts: &self.sorted,
            nbh_size: self.nbh_size,
            root: self.root,
        });
    }

    fn expand<F: FnMut(&ConnectedSetVisit<'_>)>(&mut self, from: usize, f: &mut F) {
        if self.sorted.len() == self.max_size {
            return;
        }
        for j in from..self.cand.len() {
            let v = self.cand[j];
            self.push(v);
            self.visit(f);
            let mark = self.offer_neighbors(v);
            self.expand(j + 1, f);
            self.retract_candidates(mark);
            self.pop();
        }
    }

    fn run_root<F: FnMut(&ConnectedSetVisit<'_>)>(&mut self, root: usize, f: &mut F) {
        self.root = root;
        self.push(root);
        self.visit(f);
        let mark = self.offer_neighbors(root);
        debug_assert_eq!(mark, 0);
        self.expand(0, f);
        self.retract_candidates(0);
        self.pop();
    }

    // --- connected dominating sets ---

    /// True when every vertex can still be covered by some extension of the
    /// current set: covered now, or adjacent to a vertex that may still join.
    /// Candidates with position `< from` are excluded on this branch; unseen
    /// vertices above the root remain admissible. The test over-approximates
    /// what the branch can reach, so no dominating completion is pruned.
    fn coverage_possible(&self, from: usize) -> bool {
        let admissible = |v: usize| {
            v > self.root
                && !self.in_set[v]
                && (!self.seen[v] || self.cand_pos[v] >= from)
        };
        'vertex: for v in 0..self.g.n() {
            if self.in_set[v] || self.coverage[v] > 0 || admissible(v) {
                continue;
            }
            for &w in self.g.weak_neighbors(v) {
                if admissible(w) {
                    continue 'vertex;
                }
            }
            return false;
        }
        true
    }

    fn is_dominating_now(&self) -> bool {
        self.sorted.len() + self.nbh_size == self.g.n()
    }

    fn expand_dominating<F: FnMut(&ConnectedSetVisit<'_>)>(&mut self, from: usize, f: &mut F) {
        for j in from..self.cand.len() {
            let v = self.cand[j];
            self.push(v);
            if self.is_dominating_now() {
                self.visit(f);
            }
            if self.coverage_possible(j + 1) {
                let mark = self.offer_neighbors(v);
                self.expand_dominating(j + 1, f);
                self.retract_candidates(mark);
            }
            self.pop();
        }
    }

    fn run_root_dominating<F: FnMut(&ConnectedSetVisit<'_>)>(&mut self, root: usize, f: &mut F) {
        self.root = root;
        self.push(root);
        if self.is_dominating_now() {
            self.visit(f);
        }
        if self.coverage_possible(usize::MAX) {
            let mark = self.offer_neighbors(root);
            debug_assert_eq!(mark, 0);
            self.expand_dominating(0, f);
            self.retract_candidates(0);
        }
        self.pop();
    }
}

/// Visits every weakly connected induced set of size `1..=max_size` exactly
/// once, in deterministic order, and returns how many were visited.
pub fn enumerate_connected<W, F>(g: &Graph<W>, max_size: usize, mut visit: F) -> Result<u64, EnumError>
where
    W: RingElement,
    F: FnMut(&ConnectedSetVisit<'_>),
{
    if max_size == 0 || max_size > g.n() {
        return Err(EnumError::MaxSizeOutOfRange {
            max_size,
            n: g.n(),
        });
    }
    let mut total = 0;
    for root in 0..g.n() {
        total += enumerate_connected_root(g, root, max_size, &mut visit);
    }
    Ok(total)
}

/// The single-root slice of [`enumerate_connected`]: all weakly connected
/// sets whose minimum vertex is `root`. Distinct roots are independent, so
/// callers may run them concurrently.
pub fn enumerate_connected_root<W, F>(g: &Graph<W>, root: usize, max_size: usize, mut visit: F) -> u64
where
    W: RingElement,
    F: FnMut(&ConnectedSetVisit<'_>),
{
    let mut walker = Walker::new(g, max_size);
    walker.run_root(root, &mut visit);
    walker.visits
}

/// Visits every weakly connected dominating set exactly once.
///
/// For each visit `|N(D)| = n - |D|` holds by the dominating property.
/// Branches that can no longer cover every vertex are pruned.
pub fn enumerate_connected_dominating<W, F>(g: &Graph<W>, mut visit: F) -> u64
where
    W: RingElement,
    F: FnMut(&ConnectedSetVisit<'_>),
{
    let mut total = 0;
    for root in 0..g.n() {
        total += enumerate_connected_dominating_root(g, root, &mut visit);
    }
    total
}

/// Single-root slice of [`enumerate_connected_dominating`].
pub fn enumerate_connected_dominating_root<W, F>(g: &Graph<W>, root: usize, mut visit: F) -> u64
where
    W: RingElement,
    F: FnMut(&ConnectedSetVisit<'_>),
{
    let mut walker = Walker::new(g, g.n());
    walker.run_root_dominating(root, &mut visit);
    walker.visits
}

/// Visits all `2^n - 1` non-empty vertex subsets in ascending bitmask order.
/// Reference path only; guarded by `limit`.
pub fn enumerate_all_subsets<W, F>(g: &Graph<W>, limit: usize, mut visit: F) -> Result<u64, EnumError>
where
    W: RingElement,
    F: FnMut(&[usize]),
{
    let n = g.n();
    if n > limit {
        return Err(EnumError::ReferenceLimitExceeded { n, limit });
    }
    let mut scratch = Vec::with_capacity(n);
    let mut count = 0u64;
    for mask in 1u64..(1u64 << n) {
        scratch.clear();
        for v in 0..n {
            if mask >> v & 1 == 1 {
                scratch.push(v);
            }
        }
        visit(&scratch);
        count += 1;
    }
    Ok(count)
}

/// Number of weakly connected induced sets per size `1..=max_size`;
/// entry `s - 1` holds the count for size `s`.
pub fn count_connected_by_size<W: RingElement>(
    g: &Graph<W>,
    max_size: usize,
) -> Result<Vec<u64>, EnumError> {
    let mut counts = vec![0u64; max_size];
    enumerate_connected(g, max_size, |c| {
        counts[c.verts.len() - 1] += 1;
    })?;
    Ok(counts)
}

/// Convenience: collect the visited sets of [`enumerate_connected`].
pub fn collect_connected<W: RingElement>(
    g: &Graph<W>,
    max_size: usize,
) -> Result<Vec<VertexSet>, EnumError> {
    let mut out = Vec::new();
    enumerate_connected(g, max_size, |c| {
        out.push(VertexSet::from_sorted(c.verts.to_vec()));
    })?;
    Ok(out)
}
