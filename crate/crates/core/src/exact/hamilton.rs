//! Subset DP for Hamilton cycles, Hamilton paths and longest paths.
//!
//! Rooted table: fix a root `r` and index subsets of the remaining `n-1`
//! vertices. `dp[S]` is the set of `v ∈ S` such that some path starts at
//! `r`, visits exactly `{r} ∪ S` and ends at `v`. A vertex `v` belongs to
//! `dp[S]` iff `N(v) ∩ dp[S \ v] ≠ ∅` (or `S = {v}` and `rv` is an edge).

use super::{HamiltonWitness, HAMILTON_VERTEX_LIMIT, LONGEST_PATH_VERTEX_LIMIT};
use crate::bitset::bits;
use crate::error::{Error, Result};
use crate::graph::Graph;

fn check_limit(g: &Graph, what: &'static str, limit: usize) -> Result<()> {
    if g.n() > limit {
        return Err(Error::TooLarge { what, n: g.n(), limit });
    }
    Ok(())
}

/// DP table rooted at one vertex, with local bit `i` standing for vertex
/// `i` if `i < root` and `i + 1` otherwise.
struct RootedTable {
    root: usize,
    k: usize,
    local_adj: Vec<u32>,
    root_adj: u32,
    dp: Vec<u32>,
}

#[inline]
fn compress(x: u64, root: usize) -> u32 {
    let low = (1u64 << root) - 1;
    ((x & low) | ((x >> (root + 1)) << root)) as u32
}

impl RootedTable {
    fn build(adj: &[u64], root: usize) -> Self {
        let n = adj.len();
        let k = n - 1;
        let local_adj: Vec<u32> = (0..k)
            .map(|i| {
                let v = if i < root { i } else { i + 1 };
                compress(adj[v], root)
            })
            .collect();
        let root_adj = compress(adj[root], root);
        let size = 1usize << k;
        let mut dp = vec![0u32; size];
        for i in bits(root_adj as u64) {
            dp[1 << i] = 1 << i;
        }
        for mask in 1..size {
            if mask & (mask - 1) == 0 {
                continue;
            }
            let mut ends = 0u32;
            for i in bits(mask as u64) {
                if dp[mask ^ (1 << i)] & local_adj[i] != 0 {
                    ends |= 1 << i;
                }
            }
            dp[mask] = ends;
        }
        RootedTable {
            root,
            k,
            local_adj,
            root_adj,
            dp,
        }
    }

    #[inline]
    fn vertex(&self, i: usize) -> usize {
        if i < self.root {
            i
        } else {
            i + 1
        }
    }

    #[inline]
    fn local(&self, v: usize) -> usize {
        debug_assert_ne!(v, self.root);
        if v < self.root {
            v
        } else {
            v - 1
        }
    }

    fn full(&self) -> usize {
        (1usize << self.k) - 1
    }

    /// Path from the root through exactly `{root} ∪ mask`, ending at local `end`.
    fn path_to(&self, mut mask: usize, end: usize) -> Vec<usize> {
        debug_assert!(self.dp[mask] >> end & 1 == 1);
        let mut rev = Vec::with_capacity(self.k + 1);
        let mut cur = end;
        loop {
            rev.push(self.vertex(cur));
            let prev = mask ^ (1 << cur);
            if prev == 0 {
                debug_assert!(self.root_adj >> cur & 1 == 1);
                break;
            }
            let cand = self.dp[prev] & self.local_adj[cur];
            cur = cand.trailing_zeros() as usize;
            mask = prev;
        }
        rev.push(self.root);
        rev.reverse();
        rev
    }
}

/// Returns a Hamilton cycle of `g` if one exists.
///
/// Graphs on fewer than 3 vertices have no Hamilton cycle. Graphs with
/// `δ < 2` or more than one component are rejected before the DP runs.
pub fn is_hamiltonian(g: &Graph) -> Result<Option<HamiltonWitness>> {
    check_limit(g, "hamiltonicity", HAMILTON_VERTEX_LIMIT)?;
    let n = g.n();
    if n < 3 || g.min_degree() < 2 || !g.is_connected() {
        return Ok(None);
    }
    let adj = g.adjacency_masks().expect("n <= 64");
    let table = RootedTable::build(&adj, 0);
    let closing = table.dp[table.full()] & table.root_adj;
    if closing == 0 {
        return Ok(None);
    }
    let order = table.path_to(table.full(), closing.trailing_zeros() as usize);
    Ok(Some(HamiltonWitness::cycle(order)))
}

/// A Hamilton path with endpoints `u` and `v`, if one exists.
pub fn hamilton_path_between(g: &Graph, u: usize, v: usize) -> Result<Option<HamiltonWitness>> {
    check_limit(g, "hamilton path", HAMILTON_VERTEX_LIMIT)?;
    let n = g.n();
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(Error::InvalidArgument("hamilton path endpoints must differ".into()));
    }
    if !g.is_connected() {
        return Ok(None);
    }
    let adj = g.adjacency_masks().expect("n <= 64");
    let table = RootedTable::build(&adj, u);
    let end = table.local(v);
    if table.dp[table.full()] >> end & 1 == 0 {
        return Ok(None);
    }
    Ok(Some(HamiltonWitness::path(table.path_to(table.full(), end))))
}

/// Which vertex pairs are joined by a Hamilton path.
#[derive(Debug, Clone)]
pub struct HamiltonPathTable {
    rows: Vec<u64>,
}

impl HamiltonPathTable {
    #[inline]
    pub fn has_path(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Lexicographically first pair `u < v` with no Hamilton path between them.
    pub fn first_missing_pair(&self) -> Option<(usize, usize)> {
        let n = self.rows.len();
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).find(|&(u, v)| !self.has_path(u, v))
    }
}

/// Endpoint-pair table of all Hamilton paths, from one rooted DP per vertex.
pub fn hamilton_path_ends(g: &Graph) -> Result<HamiltonPathTable> {
    check_limit(g, "hamilton path table", HAMILTON_VERTEX_LIMIT)?;
    let n = g.n();
    let mut rows = vec![0u64; n];
    if n < 2 || !g.is_connected() {
        return Ok(HamiltonPathTable { rows });
    }
    let adj = g.adjacency_masks().expect("n <= 64");
    // only roots up to n-2 are needed: row u for v > u, then mirrored
    for u in 0..n - 1 {
        let table = RootedTable::build(&adj, u);
        let ends = table.dp[table.full()];
        for i in bits(ends as u64) {
            let v = table.vertex(i);
            if v > u {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
        }
    }
    Ok(HamiltonPathTable { rows })
}

/// Whether every pair of distinct vertices is joined by a Hamilton path,
/// with the lexicographically first failing pair otherwise.
pub fn is_hamilton_connected(g: &Graph) -> Result<(bool, Option<(usize, usize)>)> {
    let table = hamilton_path_ends(g)?;
    match table.first_missing_pair() {
        None => Ok((true, None)),
        Some(pair) => Ok((false, Some(pair))),
    }
}

/// Unrooted table: `dp[S]` = endpoints of paths covering exactly `S`.
fn unrooted_table(adj: &[u64]) -> Vec<u32> {
    let n = adj.len();
    let size = 1usize << n;
    let adj32: Vec<u32> = adj.iter().map(|&a| a as u32).collect();
    let mut dp = vec![0u32; size];
    for v in 0..n {
        dp[1 << v] = 1 << v;
    }
    for mask in 1..size {
        if mask & (mask - 1) == 0 {
            continue;
        }
        let mut ends = 0u32;
        for v in bits(mask as u64) {
            if dp[mask ^ (1 << v)] & adj32[v] != 0 {
                ends |= 1 << v;
            }
        }
        dp[mask] = ends;
    }
    dp
}

/// A longest path of `g` as a vertex sequence (empty for `n = 0`).
pub fn longest_path(g: &Graph) -> Result<Vec<usize>> {
    check_limit(g, "longest path", LONGEST_PATH_VERTEX_LIMIT)?;
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj = g.adjacency_masks().expect("n <= 64");
    let dp = unrooted_table(&adj);
    let mut best = 1usize;
    for (mask, &ends) in dp.iter().enumerate() {
        if ends != 0 && mask.count_ones() > best.count_ones() {
            best = mask;
        }
    }
    let mut mask = best;
    let mut cur = dp[mask].trailing_zeros() as usize;
    let mut path = Vec::with_capacity(mask.count_ones() as usize);
    loop {
        path.push(cur);
        let prev = mask ^ (1 << cur);
        if prev == 0 {
            break;
        }
        cur = (dp[prev] & adj[cur] as u32).trailing_zeros() as usize;
        mask = prev;
    }
    path.reverse();
    Ok(path)
}

/// Number of edges on a longest path (0 for graphs with at most one vertex
/// or no edges).
pub fn longest_path_length(g: &Graph) -> Result<usize> {
    check_limit(g, "longest path", LONGEST_PATH_VERTEX_LIMIT)?;
    if g.n() == 0 || g.m() == 0 {
        return Ok(0);
    }
    if g.n() <= HAMILTON_VERTEX_LIMIT && g.is_connected() && hamilton_path_ends_exist(g) {
        return Ok(g.n() - 1);
    }
    let adj = g.adjacency_masks().expect("n <= 64");
    let dp = unrooted_table(&adj);
    let best = dp
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(mask, _)| mask.count_ones() as usize)
        .max()
        .unwrap_or(1);
    Ok(best - 1)
}

/// Positive filter: a Hamilton path with vertex 0 as an endpoint.
fn hamilton_path_ends_exist(g: &Graph) -> bool {
    let adj = g.adjacency_masks().expect("n <= 64");
    let table = RootedTable::build(&adj, 0);
    table.dp[table.full()] != 0
}
