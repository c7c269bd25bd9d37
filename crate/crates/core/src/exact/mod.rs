//! Exact desk-scale oracles.
//!
//! The Hamiltonicity and path solvers are exponential subset dynamic programs
//! and refuse inputs above [`HAMILTON_VERTEX_LIMIT`] (or
//! [`LONGEST_PATH_VERTEX_LIMIT`] for the unrooted longest-path table). The
//! matching and connectivity solvers are polynomial.

mod connectivity;
mod hamilton;
mod independence;
mod matching;

pub use connectivity::{local_vertex_connectivity, vertex_connectivity};
pub use hamilton::{
    hamilton_path_between, hamilton_path_ends, is_hamilton_connected, is_hamiltonian, longest_path,
    longest_path_length, HamiltonPathTable,
};
pub use independence::{independence_number, maximum_independent_set};
pub use matching::{max_matching_size, maximum_matching};

use crate::graph::Graph;

/// Largest `n` accepted by the rooted Hamiltonicity DP (`2^(n-1)` words).
pub const HAMILTON_VERTEX_LIMIT: usize = 28;

/// Largest `n` accepted by the unrooted longest-path DP (`2^n` words).
pub const LONGEST_PATH_VERTEX_LIMIT: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    Cycle,
    Path,
}

/// A Hamilton cycle or path, as a vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonWitness {
    pub kind: WitnessKind,
    pub order: Vec<usize>,
}

impl HamiltonWitness {
    pub fn cycle(order: Vec<usize>) -> Self {
        HamiltonWitness {
            kind: WitnessKind::Cycle,
            order,
        }
    }

    pub fn path(order: Vec<usize>) -> Self {
        HamiltonWitness {
            kind: WitnessKind::Path,
            order,
        }
    }

    /// Checks the witness against `g`: every vertex exactly once, consecutive
    /// vertices adjacent, and for cycles the closing pair adjacent too.
    pub fn validate(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.order.len() != n || n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in &self.order {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        if !self.order.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return false;
        }
        match self.kind {
            WitnessKind::Path => true,
            WitnessKind::Cycle => n >= 3 && g.has_edge(self.order[n - 1], self.order[0]),
        }
    }

    /// Endpoints of a path witness.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        match (self.order.first(), self.order.last()) {
            (Some(&a), Some(&b)) => Some((a, b)),
            _ => None,
        }
    }

    /// Edges traversed, canonicalized, in traversal order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .order
            .windows(2)
            .map(|w| crate::graph::canonical(w[0], w[1]))
            .collect();
        if self.kind == WitnessKind::Cycle && self.order.len() >= 3 {
            out.push(crate::graph::canonical(self.order[self.order.len() - 1], self.order[0]));
        }
        out
    }
}

/// A set of pairwise disjoint edges that re-validates against `g`.
pub fn is_valid_matching(g: &Graph, matching: &[(usize, usize)]) -> bool {
    let mut used = vec![false; g.n()];
    for &(u, v) in matching {
        if !g.has_edge(u, v) || used[u] || used[v] {
            return false;
        }
        used[u] = true;
        used[v] = true;
    }
    true
}
