//! Directed graph model with ring-valued arc weights.
//!
//! Vertices are dense 0-based integers. At most one arc per ordered pair;
//! self-loops are allowed. Undirected inputs are expanded into bidirected
//! digraphs at parse time and the graph remembers which orientation mode it
//! came from, since cycle-count normalization differs downstream.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::ring::{EdgeWeight, RingElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("arc endpoint {vertex} out of range for n={n}")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("duplicate arc ({src}, {dst})")]
    DuplicateArc { src: usize, dst: usize },
    #[error("operation requires a non-empty vertex set")]
    EmptySet,
    #[error("vertex set member {vertex} out of range for n={n}")]
    SetMemberOutOfRange { vertex: usize, n: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected 2 or 3 whitespace-separated tokens, found {found}")]
    MalformedLine { line: usize, found: usize },
    #[error("line {line}: `{token}` is not a valid vertex id (non-negative decimal integer)")]
    InvalidVertexId { line: usize, token: String },
    #[error("line {line}: duplicate arc ({src}, {dst})")]
    DuplicateArc { line: usize, src: usize, dst: usize },
    #[error("line {line}: bad weight: {reason}")]
    BadWeight { line: usize, reason: String },
    #[error("line {line}: malformed header, expected `n <count>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: duplicate `n` header")]
    DuplicateHeader { line: usize },
    #[error("header declares n={declared} but vertex id {vertex} appears")]
    HeaderTooSmall { declared: usize, vertex: usize },
    #[error("vertex ids have gaps: {missing} never appears (declare `n {n}` to allow isolated vertices)")]
    VertexIdGap { missing: usize, n: usize },
}

/// Whether the graph was given as a digraph or expanded from undirected input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Directed,
    UndirectedExpanded,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Directed => write!(f, "directed"),
            Orientation::UndirectedExpanded => write!(f, "undirected-expanded"),
        }
    }
}

/// Immutable weighted digraph.
///
/// Adjacency is kept three ways: out-neighbors, in-neighbors (each paired
/// with the arc index) and the symmetric weak adjacency (union of both,
/// excluding the vertex itself).
#[derive(Debug, Clone)]
pub struct Graph<W> {
    n: usize,
    orientation: Orientation,
    arcs: Vec<(usize, usize)>,
    weights: Vec<W>,
    out: Vec<Vec<(usize, usize)>>,
    inn: Vec<Vec<(usize, usize)>>,
    weak: Vec<Vec<usize>>,
}

impl<W: RingElement> Graph<W> {
    /// Builds a graph from explicit arcs. Endpoints must lie in `[0, n)` and
    /// no ordered pair may repeat.
    pub fn new(
        n: usize,
        orientation: Orientation,
        arc_list: Vec<(usize, usize, W)>,
    ) -> Result<Self, GraphError> {
        let mut arcs = Vec::with_capacity(arc_list.len());
        let mut weights = Vec::with_capacity(arc_list.len());
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (src, dst, w) in arc_list {
            for v in [src, dst] {
                if v >= n {
                    return Err(GraphError::EndpointOutOfRange { vertex: v, n });
                }
            }
            if !seen.insert((src, dst)) {
                return Err(GraphError::DuplicateArc { src, dst });
            }
            let idx = arcs.len();
            arcs.push((src, dst));
            weights.push(w);
            out[src].push((dst, idx));
            inn[dst].push((src, idx));
        }
        for v in 0..n {
            out[v].sort_unstable();
            inn[v].sort_unstable();
        }
        let weak = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = out[v]
                    .iter()
                    .map(|&(u, _)| u)
                    .chain(inn[v].iter().map(|&(u, _)| u))
                    .filter(|&u| u != v)
                    .collect();
                nb.sort_unstable();
                nb.dedup();
                nb
            })
            .collect();
        Ok(Graph {
            n,
            orientation,
            arcs,
            weights,
            out,
            inn,
            weak,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_weight(&self, arc: usize) -> &W {
        &self.weights[arc]
    }

    /// Out-neighbors of `v` paired with the arc index, sorted by neighbor.
    pub fn out_arcs(&self, v: usize) -> &[(usize, usize)] {
        &self.out[v]
    }

    /// In-neighbors of `v` paired with the arc index, sorted by neighbor.
    pub fn in_arcs(&self, v: usize) -> &[(usize, usize)] {
        &self.inn[v]
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].iter().map(|&(u, _)| u)
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.inn[v].iter().map(|&(u, _)| u)
    }

    /// Weak neighbors of `v`: vertices other than `v` joined to it by an arc
    /// in either direction. Sorted ascending.
    pub fn weak_neighbors(&self, v: usize) -> &[usize] {
        &self.weak[v]
    }

    /// Weight of the arc `src -> dst`, if present.
    pub fn weight_between(&self, src: usize, dst: usize) -> Option<&W> {
        self.out[src]
            .binary_search_by_key(&dst, |&(u, _)| u)
            .ok()
            .map(|pos| &self.weights[self.out[src][pos].1])
    }
}

/// Parses the edge-list text format.
///
/// One edge per line, `u v` or `u v w`; `#` starts a comment line and blank
/// lines are skipped. A header line `n <count>` fixes the vertex count
/// (allowing isolated vertices); without it, `n` is one plus the largest id
/// and every smaller id must appear. With `directed = false` each line
/// `u v`, `u != v`, produces both arcs with the same token, and a self-loop
/// line produces a single arc.
pub fn parse_edge_list<W: EdgeWeight>(text: &str, directed: bool) -> Result<Graph<W>, ParseError> {
    let mut header_n: Option<usize> = None;
    let mut arcs: Vec<(usize, usize, W)> = Vec::new();
    let mut seen = HashSet::new();
    let mut max_id: Option<usize> = None;
    let mut present: HashSet<usize> = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(ParseError::MalformedHeader { line });
            }
            if header_n.is_some() {
                return Err(ParseError::DuplicateHeader { line });
            }
            let count = tokens[1]
                .parse::<usize>()
                .map_err(|_| ParseError::MalformedHeader { line })?;
            header_n = Some(count);
            continue;
        }
        if tokens.len() < 2 || tokens.len() > 3 {
            return Err(ParseError::MalformedLine {
                line,
                found: tokens.len(),
            });
        }
        let parse_id = |token: &str| -> Result<usize, ParseError> {
            token.parse::<usize>().map_err(|_| ParseError::InvalidVertexId {
                line,
                token: token.to_string(),
            })
        };
        let u = parse_id(tokens[0])?;
        let v = parse_id(tokens[1])?;
        let token = tokens.get(2).copied();
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u.max(v))));
        present.insert(u);
        present.insert(v);

        let mut push = |src: usize, dst: usize| -> Result<(), ParseError> {
            if !seen.insert((src, dst)) {
                return Err(ParseError::DuplicateArc { line, src, dst });
            }
            let w = W::arc_weight(src, dst, token)
                .map_err(|reason| ParseError::BadWeight { line, reason })?;
            arcs.push((src, dst, w));
            Ok(())
        };
        push(u, v)?;
        if !directed && u != v {
            push(v, u)?;
        }
    }

    let implied_n = max_id.map_or(0, |m| m + 1);
    let n = match header_n {
        Some(declared) => {
            if declared < implied_n {
                return Err(ParseError::HeaderTooSmall {
                    declared,
                    vertex: max_id.unwrap(),
                });
            }
            declared
        }
        None => {
            for v in 0..implied_n {
                if !present.contains(&v) {
                    return Err(ParseError::VertexIdGap {
                        missing: v,
                        n: implied_n,
                    });
                }
            }
            implied_n
        }
    };

    let orientation = if directed {
        Orientation::Directed
    } else {
        Orientation::UndirectedExpanded
    };
    // Graph::new re-validates, but parse caught every error class already.
    Ok(Graph::new(n, orientation, arcs).expect("validated arcs"))
}

/// Ordered vertex subset with fast membership.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet {
    verts: Vec<usize>,
}

impl VertexSet {
    /// Builds a set from arbitrary members; duplicates collapse.
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let mut verts: Vec<usize> = members.into_iter().collect();
        verts.sort_unstable();
        verts.dedup();
        VertexSet { verts }
    }

    /// Wraps a strictly ascending slice without re-sorting.
    pub fn from_sorted(verts: Vec<usize>) -> Self {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        VertexSet { verts }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet { verts: vec![v] }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.verts.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.verts
    }

    pub fn min(&self) -> Option<usize> {
        self.verts.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut verts: Vec<usize> = self.verts.iter().chain(&other.verts).copied().collect();
        verts.sort_unstable();
        verts.dedup();
        VertexSet { verts }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            verts: self
                .verts
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        }
    }

    fn validate<W: RingElement>(&self, g: &Graph<W>) -> Result<(), GraphError> {
        if self.is_empty() {
            return Err(GraphError::EmptySet);
        }
        if let Some(&last) = self.verts.last() {
            if last >= g.n() {
                return Err(GraphError::SetMemberOutOfRange {
                    vertex: last,
                    n: g.n(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Dense principal submatrix of the weighted adjacency matrix.
///
/// Together with its ascending `index_map` this represents the zero-padded
/// restriction of the full matrix to a vertex subset: the pair carries the
/// same information at `|S|^2` instead of `n^2` storage.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalMatrix<R> {
    index_map: Vec<usize>,
    entries: Vec<R>,
}

impl<R: RingElement> LocalMatrix<R> {
    pub fn zero(index_map: Vec<usize>) -> Self {
        let k = index_map.len();
        LocalMatrix {
            index_map,
            entries: vec![R::zero(); k * k],
        }
    }

    /// Identity on the subset's coordinates: ones on the local diagonal.
    /// This is the zeroth power of any restricted matrix.
    pub fn identity(index_map: Vec<usize>) -> Self {
        let k = index_map.len();
        let mut m = LocalMatrix::zero(index_map);
        for i in 0..k {
            m.entries[i * k + i] = R::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.index_map.len()
    }

    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }

    pub fn entry(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.dim() + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: R) {
        let k = self.dim();
        self.entries[i * k + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(R::is_zero)
    }

    /// Matrix product; both operands must restrict the same subset.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.index_map, rhs.index_map, "mismatched restrictions");
        let k = self.dim();
        let mut out = Self::zero(self.index_map.clone());
        for i in 0..k {
            for t in 0..k {
                let a = self.entry(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let b = rhs.entry(t, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * k + j].add_assign(&a.mul(b));
                }
            }
        }
        out
    }

    /// `self^e` by binary exponentiation; `e = 0` yields the restricted identity.
    pub fn pow(&self, e: usize) -> Self {
        let mut result = LocalMatrix::identity(self.index_map.clone());
        if e == 0 {
            return result;
        }
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        result
    }

    pub fn trace(&self) -> R {
        let k = self.dim();
        let mut acc = R::zero();
        for i in 0..k {
            acc.add_assign(&self.entries[i * k + i]);
        }
        acc
    }

    /// Embeds the local entries into a dense global `n x n` matrix
    /// (row-major), zero elsewhere.
    pub fn embed_global(&self, n: usize) -> Vec<R> {
        let mut out = vec![R::zero(); n * n];
        let k = self.dim();
        for i in 0..k {
            for j in 0..k {
                out[self.index_map[i] * n + self.index_map[j]] = self.entry(i, j).clone();
            }
        }
        out
    }
}

/// Restriction of the weighted adjacency matrix to the vertices of `set`.
pub fn restrict<W: RingElement>(g: &Graph<W>, set: &VertexSet) -> Result<LocalMatrix<W>, GraphError> {
    set.validate(g)?;
    Ok(restrict_sorted(g, set.as_slice()))
}

/// Restriction over a strictly ascending, non-empty vertex slice.
pub(crate) fn restrict_sorted<W: RingElement>(g: &Graph<W>, verts: &[usize]) -> LocalMatrix<W> {
    let mut m = LocalMatrix::zero(verts.to_vec());
    for (li, &u) in verts.iter().enumerate() {
        for &(dst, arc) in g.out_arcs(u) {
            if let Ok(lj) = verts.binary_search(&dst) {
                m.set_entry(li, lj, g.arc_weight(arc).clone());
            }
        }
    }
    m
}

/// Weak neighborhood `N(C)`: vertices outside `C` reachable from or
/// reaching `C` in one step.
pub fn weak_neighborhood<W: RingElement>(
    g: &Graph<W>,
    set: &VertexSet,
) -> Result<VertexSet, GraphError> {
    set.validate(g)?;
    let mut nb: Vec<usize> = Vec::new();
    for c in set.iter() {
        for &v in g.weak_neighbors(c) {
            if !set.contains(v) {
                nb.push(v);
            }
        }
    }
    nb.sort_unstable();
    nb.dedup();
    Ok(VertexSet::from_sorted(nb))
}

/// True iff `C` together with its weak neighborhood covers every vertex.
pub fn is_dominating<W: RingElement>(g: &Graph<W>, set: &VertexSet) -> Result<bool, GraphError> {
    let nb = weak_neighborhood(g, set)?;
    Ok(set.len() + nb.len() == g.n())
}

/// Partition of `S` into weakly connected components of the induced
/// subgraph, returned in ascending order of minimum vertex.
pub fn weakly_connected_components<W: RingElement>(
    g: &Graph<W>,
    set: &VertexSet,
) -> Result<Vec<VertexSet>, GraphError> {
    set.validate(g)?;
    let members = set.as_slice();
    let mut assigned = vec![false; members.len()];
    let mut components = Vec::new();
    for start in 0..members.len() {
        if assigned[start] {
            continue;
        }
        let mut comp = vec![members[start]];
        assigned[start] = true;
        let mut stack = vec![members[start]];
        while let Some(u) = stack.pop() {
            for &v in g.weak_neighbors(u) {
                if let Ok(pos) = members.binary_search(&v) {
                    if !assigned[pos] {
                        assigned[pos] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
        }
        comp.sort_unstable();
        components.push(VertexSet::from_sorted(comp));
    }
    Ok(components)
}
