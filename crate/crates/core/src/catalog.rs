//! Exhaustive catalog of small graphs up to isomorphism.
//!
//! Graphs on `n` vertices are grown from the catalog on `n - 1` vertices by
//! attaching a new vertex to every subset of the old ones, then deduplicated
//! by a canonical code. The canonical code minimizes the upper-triangle
//! adjacency bits over all vertex orders compatible with an
//! isomorphism-invariant colour refinement.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count the catalog will generate.
pub const CATALOG_MAX_VERTICES: usize = 7;

/// Largest vertex count [`canonical_code`] accepts (the code needs
/// `n(n-1)/2 <= 64` bits).
pub const CANONICAL_MAX_VERTICES: usize = 11;

/// Stable colour refinement starting from degrees.
fn refine(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    let mut colour: Vec<usize> = adj.iter().map(|a| a.count_ones() as usize).collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = crate::bitset::bits(adj[v]).map(|w| colour[w]).collect();
                around.sort_unstable();
                (colour[v], around)
            })
            .collect();
        let mut sorted = signatures.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| sorted.binary_search(s).expect("present"))
            .collect();
        let classes = |c: &[usize]| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

fn code_for(adj: &[u64], order: &[usize]) -> u64 {
    let mut code = 0u64;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            code = code << 1 | (adj[order[i]] >> order[j] & 1);
        }
    }
    code
}

/// Canonical code of `g`: equal for two graphs iff they are isomorphic
/// (given equal vertex counts).
pub fn canonical_code(g: &Graph) -> Result<u64> {
    if g.n() > CANONICAL_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "canonical code",
            n: g.n(),
            limit: CANONICAL_MAX_VERTICES,
        });
    }
    let adj = g.adjacency_masks().expect("n <= 64");
    let colour = refine(&adj);
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colour.iter().enumerate() {
        classes.entry(c).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let mut order = Vec::with_capacity(g.n());
    let mut best = u64::MAX;
    permute_classes(&adj, &classes, 0, &mut order, &mut best);
    Ok(if g.n() < 2 { 0 } else { best })
}

fn permute_classes(adj: &[u64], classes: &[Vec<usize>], ci: usize, order: &mut Vec<usize>, best: &mut u64) {
    if ci == classes.len() {
        *best = (*best).min(code_for(adj, order));
        return;
    }
    let mut class = classes[ci].clone();
    permute_within(adj, classes, ci, &mut class, 0, order, best);
}

fn permute_within(
    adj: &[u64],
    classes: &[Vec<usize>],
    ci: usize,
    class: &mut Vec<usize>,
    at: usize,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if at == class.len() {
        let base = order.len();
        order.extend_from_slice(class);
        permute_classes(adj, classes, ci + 1, order, best);
        order.truncate(base);
        return;
    }
    for i in at..class.len() {
        class.swap(at, i);
        permute_within(adj, classes, ci, class, at + 1, order, best);
        class.swap(at, i);
    }
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// ordered by canonical code.
pub fn graphs_on(n: usize) -> Result<Vec<Graph>> {
    if n > CATALOG_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "graph catalog",
            n,
            limit: CATALOG_MAX_VERTICES,
        });
    }
    let mut level = vec![Graph::empty(0)];
    for size in 1..=n {
        let mut next: BTreeMap<u64, Graph> = BTreeMap::new();
        for g in &level {
            for mask in 0u64..1 << (size - 1) {
                let mut h = g.disjoint_union(&Graph::empty(1));
                for w in crate::bitset::bits(mask) {
                    h.add_edge(w, size - 1)?;
                }
                next.entry(canonical_code(&h)?).or_insert(h);
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

/// The catalogs for `0..=n_max` vertices, concatenated in order.
pub fn graphs_up_to(n_max: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        out.extend(graphs_on(n)?);
    }
    Ok(out)
}
