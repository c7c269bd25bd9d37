//! Independence number by bitset branch and bound (`n <= 64`).

use crate::bitset::{bits, VertexSet};
use crate::error::{Error, Result};
use crate::graph::Graph;

struct Search<'a> {
    adj: &'a [u64],
    best: u64,
    best_len: u32,
}

impl Search<'_> {
    fn go(&mut self, cand: u64, chosen: u64) {
        let chosen_len = chosen.count_ones();
        if cand == 0 {
            if chosen_len > self.best_len {
                self.best_len = chosen_len;
                self.best = chosen;
            }
            return;
        }
        if chosen_len + cand.count_ones() <= self.best_len {
            return;
        }
        // a vertex of degree <= 1 in the candidate graph is in some maximum
        // independent set
        let mut min_v = 0;
        let mut min_d = u32::MAX;
        let mut max_v = 0;
        let mut max_d = 0;
        for v in bits(cand) {
            let d = (self.adj[v] & cand).count_ones();
            if d < min_d {
                min_d = d;
                min_v = v;
            }
            if d > max_d {
                max_d = d;
                max_v = v;
            }
        }
        if min_d <= 1 {
            self.go(cand & !(self.adj[min_v] | 1 << min_v), chosen | 1 << min_v);
            return;
        }
        self.go(cand & !(self.adj[max_v] | 1 << max_v), chosen | 1 << max_v);
        self.go(cand & !(1 << max_v), chosen);
    }
}

/// A maximum independent set of `g`.
pub fn maximum_independent_set(g: &Graph) -> Result<VertexSet> {
    let adj = g.adjacency_masks().ok_or(Error::TooLarge {
        what: "independence number",
        n: g.n(),
        limit: 64,
    })?;
    let n = g.n();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = Search {
        adj: &adj,
        best: 0,
        best_len: 0,
    };
    s.go(all, 0);
    Ok(VertexSet::from_mask(n, s.best))
}

/// `α(G)`.
pub fn independence_number(g: &Graph) -> Result<usize> {
    Ok(maximum_independent_set(g)?.len())
}
