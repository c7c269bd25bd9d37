//! Labeled simple graphs with bitset adjacency, plus the set, degree and cut
//! primitives the rest of the crate is built on.

use std::fmt;
use std::io::{BufRead, Write};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] accepts.
pub const MAX_VERTICES: usize = 512;

/// An unordered vertex pair stored with `u < v`.
pub type Edge = (usize, usize);

#[inline]
pub fn canonical(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A canonically sorted, deduplicated list of unordered vertex pairs.
///
/// Doubles as the removed subgraph `H` in resilience computations.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    edges: Vec<Edge>,
}

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet { edges: Vec::new() }
    }

    /// Normalizes each pair to `u < v`, sorts and deduplicates. Rejects
    /// self-loops.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self> {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push(canonical(u, v));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(EdgeSet { edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&canonical(u, v)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.edges
    }

    pub fn insert(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "self-loop");
        let e = canonical(u, v);
        match self.edges.binary_search(&e) {
            Ok(_) => false,
            Err(pos) => {
                self.edges.insert(pos, e);
                true
            }
        }
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut edges: Vec<Edge> = self.edges.iter().chain(&other.edges).copied().collect();
        edges.sort_unstable();
        edges.dedup();
        EdgeSet { edges }
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.edges.iter()).finish()
    }
}

impl FromIterator<Edge> for EdgeSet {
    /// Panics on self-loops; use [`EdgeSet::from_pairs`] for untrusted input.
    fn from_iter<T: IntoIterator<Item = Edge>>(iter: T) -> Self {
        EdgeSet::from_pairs(iter).expect("self-loop in edge set")
    }
}

/// Undirected simple graph on the labels `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "n = {n} exceeds MAX_VERTICES");
        Graph {
            n,
            adj: vec![VertexSet::new(n); n],
            m: 0,
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "graph",
                n,
                limit: MAX_VERTICES,
            });
        }
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// The cycle `0-1-...-(n-1)-0`; for `n < 3` this degenerates to a path.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert_unchecked(0, n - 1);
        }
        g
    }

    /// The path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.insert_unchecked(v - 1, v);
        }
        g
    }

    /// The star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.insert_unchecked(0, v);
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Self {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.insert_unchecked(i, (i + 1) % 5);
            g.insert_unchecked(i, i + 5);
            g.insert_unchecked(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// Disjoint union, relabeling `other` to `n..n+other.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.insert_unchecked(u, v);
        }
        for (u, v) in other.edges() {
            g.insert_unchecked(u + self.n, v + self.n);
        }
        g
    }

    #[inline]
    fn insert_unchecked(&mut self, u: usize, v: usize) {
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.m += 1;
        }
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    /// Adds `uv`; rejects self-loops, out-of-range labels and duplicates.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            let (a, b) = canonical(u, v);
            return Err(Error::DuplicateEdge(a, b));
        }
        self.insert_unchecked(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            let (a, b) = canonical(u, v);
            return Err(Error::MissingEdge(a, b));
        }
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        self.m -= 1;
        Ok(())
    }

    /// `G + e` for a non-edge `e`.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            let (a, b) = canonical(u, v);
            return Err(Error::ExistingEdge(a, b));
        }
        let mut g = self.clone();
        g.insert_unchecked(u, v);
        Ok(g)
    }

    /// `G \ H`. Every pair of `H` must be an edge of `G`.
    pub fn remove_edges(&self, h: &EdgeSet) -> Result<Graph> {
        let mut g = self.clone();
        for (u, v) in h.iter() {
            g.remove_edge(u, v)?;
        }
        Ok(g)
    }

    /// `G ∪ H`. Pairs already present are rejected.
    pub fn add_edges(&self, h: &EdgeSet) -> Result<Graph> {
        let mut g = self.clone();
        for (u, v) in h.iter() {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// `δ(G)`; 0 for the empty vertex set.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// `Δ(G)`; 0 for the empty vertex set.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Lowest-labeled vertex of minimum degree.
    pub fn min_degree_vertex(&self) -> Option<usize> {
        (0..self.n).min_by_key(|&v| (self.degree(v), v))
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet {
            edges: self.edges().collect(),
        }
    }

    /// Non-edges `u < v` in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).filter(move |&v| !self.adj[u].contains(v)).map(move |v| (u, v)))
    }

    pub fn contains_edges(&self, h: &EdgeSet) -> bool {
        h.iter().all(|(u, v)| self.has_edge(u, v))
    }

    /// True if every edge of `self` is an edge of `other` (same vertex set).
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && (0..self.n).all(|v| self.adj[v].is_subset(&other.adj[v]))
    }

    /// External neighborhood `N(U)`: vertices outside `U` adjacent to `U`.
    pub fn neighborhood(&self, u_set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n);
        for u in u_set {
            out.union_with(&self.adj[u]);
        }
        out.difference_with(u_set);
        out
    }

    /// `e(U, W)` for disjoint `U`, `W`.
    pub fn edges_between(&self, u_set: &VertexSet, w_set: &VertexSet) -> Result<usize> {
        if !u_set.is_disjoint(w_set) {
            return Err(Error::OverlappingSets);
        }
        Ok(u_set.iter().map(|u| self.adj[u].intersection_len(w_set)).sum())
    }

    /// `e(U)`, the number of edges spanned by `U`.
    pub fn edges_within(&self, u_set: &VertexSet) -> usize {
        u_set.iter().map(|u| self.adj[u].intersection_len(u_set)).sum::<usize>() / 2
    }

    /// Induced subgraph on `keep`, relabeled in increasing order. Returns the
    /// graph and the old label of each new vertex.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let labels: Vec<usize> = keep.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in labels.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(labels.len());
        for (i, &v) in labels.iter().enumerate() {
            for w in self.adj[v].iter() {
                let j = index[w];
                if j != usize::MAX && j > i {
                    g.insert_unchecked(i, j);
                }
            }
        }
        (g, labels)
    }

    /// `G - v`, relabeled; returns the old label of each new vertex.
    pub fn without_vertex(&self, v: usize) -> (Graph, Vec<usize>) {
        let mut keep = VertexSet::full(self.n);
        keep.remove(v);
        self.induced(&keep)
    }

    /// Connected components, each as a vertex set, ordered by smallest label.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            comp.insert(s);
            let mut frontier = comp.clone();
            while !frontier.is_empty() {
                let reached = self.neighborhood(&frontier);
                let mut next = reached.difference(&comp);
                next.difference_with(&seen);
                comp.union_with(&next);
                frontier = next;
            }
            seen.union_with(&comp);
            comps.push(comp);
        }
        comps
    }

    /// Connectivity in the usual sense; graphs on 0 or 1 vertices count as
    /// connected.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Adjacency as one `u64` per vertex, available when `n <= 64`.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| self.adj.iter().map(VertexSet::to_mask).collect())
    }

    /// Reads the edge-list text format: a header line `n m` followed by `m`
    /// lines `u v` with `u < v < n`.
    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
        let mut lines = reader.lines().enumerate().filter_map(|(i, l)| match l {
            Ok(s) if s.trim().is_empty() => None,
            other => Some((i + 1, other)),
        });
        let parse_pair = |line: usize, s: &str| -> Result<(usize, usize)> {
            let mut it = s.split_whitespace();
            let bad = || Error::Parse {
                line,
                msg: format!("expected two non-negative integers, got {s:?}"),
            };
            let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if it.next().is_some() {
                return Err(bad());
            }
            Ok((a, b))
        };
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let (n, m) = parse_pair(hl, &header?)?;
        if n > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "graph",
                n,
                limit: MAX_VERTICES,
            });
        }
        let mut g = Graph::empty(n);
        let mut read = 0;
        for (line, text) in lines {
            let (u, v) = parse_pair(line, &text?)?;
            if u >= v {
                let msg = if u == v {
                    format!("self-loop at {u}")
                } else {
                    format!("pair ({u}, {v}) must satisfy u < v")
                };
                return Err(Error::Parse { line, msg });
            }
            if v >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex {v} out of range for n = {n}"),
                });
            }
            if g.has_edge(u, v) {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate edge ({u}, {v})"),
                });
            }
            g.insert_unchecked(u, v);
            read += 1;
        }
        if read != m {
            return Err(Error::Parse {
                line: hl,
                msg: format!("header declares {m} edges, found {read}"),
            });
        }
        Ok(g)
    }

    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.n, self.m)?;
        for (u, v) in self.edges() {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("write to Vec");
        String::from_utf8(buf).expect("ascii")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges().collect::<Vec<_>>())
    }
}
