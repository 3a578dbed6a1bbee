//! Exact counting and enumeration of simple paths, simple cycles, and
//! Hamiltonian paths/cycles on weighted directed graphs.
//!
//! The coefficient of `z^l` in the matrix generating series assembled here
//! aggregates the simple paths of length `l` between each vertex pair — as
//! counts over big integers, weight sums over floats, or formal words over
//! the arc alphabet. Two independent inclusion–exclusion routes produce the
//! series (a sum over weakly connected induced subgraphs, and a reference
//! sum over all vertex subsets), with a brute-force DFS oracle as ground
//! truth; their exact agreement is enforced by the test suite.
//!
//! Modules:
//! - [`graph`]: the weighted digraph model, edge-list parsing, restrictions,
//!   weak neighborhoods and component decomposition;
//! - [`ring`]: the coefficient rings;
//! - [`poly`]: truncated polynomial and polynomial-matrix algebra;
//! - [`enumerate`]: exactly-once enumeration of weakly connected induced
//!   sets and of weakly connected dominating sets;
//! - [`series`]: the generating-series engines, cycle-count normalization,
//!   and Hamiltonian matrices;
//! - [`oracle`]: the brute-force ground truth;
//! - [`gen`]: small graph builders for tests and benchmarks.

pub mod enumerate;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod series;

pub use graph::{parse_edge_list, Graph, LocalMatrix, Orientation, VertexSet};
pub use ring::{EdgeWeight, RingElement, WordSum};
pub use series::{HamiltonianResult, PathSeriesResult};
