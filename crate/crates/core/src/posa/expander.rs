//! Exact `(k, α)`-expansion checks by subset enumeration.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on the number of subsets an exact expansion check may visit.
pub const DEFAULT_SUBSET_BUDGET: u64 = 20_000_000;

/// Expansion factor as a positive rational `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u32,
    pub den: u32,
}

impl Ratio {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidArgument(format!("expansion factor {num}/{den} must be positive")));
        }
        Ok(Ratio { num, den })
    }

    pub fn integer(a: u32) -> Result<Self> {
        Ratio::new(a, 1)
    }

    /// `count >= self * size`, exactly.
    #[inline]
    pub fn satisfied_by(&self, count: usize, size: usize) -> bool {
        count as u128 * self.den as u128 >= size as u128 * self.num as u128
    }
}

/// `k` (largest subset size checked) and `α` (required expansion).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpanderParams {
    pub k: usize,
    pub alpha: Ratio,
}

impl ExpanderParams {
    pub fn new(k: usize, alpha: Ratio) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("expander k must be at least 1".into()));
        }
        Ok(ExpanderParams { k, alpha })
    }
}

/// `C(n, s)`, saturating.
pub fn binomial_saturating(n: usize, s: usize) -> u64 {
    if s > n {
        return 0;
    }
    let s = s.min(n - s);
    let mut acc: u128 = 1;
    for i in 0..s {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Number of nonempty subsets of size at most `k`, saturating.
pub fn subsets_up_to(n: usize, k: usize) -> u64 {
    (1..=k.min(n)).fold(0u64, |acc, s| acc.saturating_add(binomial_saturating(n, s)))
}

struct SizeSearch<'a> {
    g: &'a Graph,
    alpha: Ratio,
    size: usize,
    chosen: Vec<usize>,
    /// `unions[d]` = union of the neighbor sets of the first `d` chosen vertices
    unions: Vec<VertexSet>,
    members: VertexSet,
}

impl SizeSearch<'_> {
    fn run(&mut self, from: usize) -> bool {
        let depth = self.chosen.len();
        if depth == self.size {
            let reach = &self.unions[depth];
            let outside = reach.len() - reach.intersection_len(&self.members);
            return !self.alpha.satisfied_by(outside, self.size);
        }
        let n = self.g.n();
        let remaining = self.size - depth;
        for v in from..=n - remaining {
            self.chosen.push(v);
            self.members.insert(v);
            let (head, tail) = self.unions.split_at_mut(depth + 1);
            tail[0].clone_from(&head[depth]);
            tail[0].union_with(self.g.neighbors(v));
            if self.run(v + 1) {
                return true;
            }
            self.members.remove(v);
            self.chosen.pop();
        }
        false
    }
}

/// First subset of exactly `size` vertices (in lexicographic order) whose
/// external neighbourhood is smaller than `α·size`.
pub fn violation_of_size(g: &Graph, size: usize, alpha: Ratio) -> Option<VertexSet> {
    let n = g.n();
    if size == 0 || size > n {
        return None;
    }
    let mut search = SizeSearch {
        g,
        alpha,
        size,
        chosen: Vec::with_capacity(size),
        unions: vec![VertexSet::new(n); size + 1],
        members: VertexSet::new(n),
    };
    if search.run(0) {
        Some(VertexSet::from_vertices(n, search.chosen))
    } else {
        None
    }
}

/// Checks `|N(U)| >= α|U|` for every nonempty `U` with `|U| <= k`, smallest
/// sizes first. Returns a violating set if there is one.
pub fn expansion_violation(g: &Graph, params: &ExpanderParams, budget: u64) -> Result<Option<VertexSet>> {
    let count = subsets_up_to(g.n(), params.k);
    if count > budget {
        return Err(Error::BudgetExceeded {
            what: "expander check subset enumeration",
            budget,
        });
    }
    for size in 1..=params.k.min(g.n()) {
        if let Some(u) = violation_of_size(g, size, params.alpha) {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// `(true, None)` if `g` is a `(k, α)`-expander, else `(false, Some(U))`
/// for a violating `U`.
pub fn is_expander(g: &Graph, params: &ExpanderParams, budget: u64) -> Result<(bool, Option<VertexSet>)> {
    let v = expansion_violation(g, params, budget)?;
    Ok((v.is_none(), v))
}

/// Largest `k` such that `g` is a `(k, α)`-expander, 0 if some single vertex
/// already fails. Stops early, returning the largest `k` verified so far,
/// when the next subset size would exceed `budget`.
pub fn max_expander_k(g: &Graph, alpha: Ratio, budget: u64) -> usize {
    let n = g.n();
    let mut spent = 0u64;
    let mut k = 0;
    for size in 1..=n {
        spent = spent.saturating_add(binomial_saturating(n, size));
        if spent > budget {
            break;
        }
        if violation_of_size(g, size, alpha).is_some() {
            break;
        }
        k = size;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Ratio {
        Ratio::integer(2).unwrap()
    }

    #[test]
    fn examples() {
        let k4 = Graph::complete(4);
        let p = ExpanderParams::new(1, two()).unwrap();
        assert_eq!(is_expander(&k4, &p, DEFAULT_SUBSET_BUDGET).unwrap(), (true, None));

        let c6 = Graph::cycle(6);
        let p = ExpanderParams::new(2, two()).unwrap();
        let (ok, w) = is_expander(&c6, &p, DEFAULT_SUBSET_BUDGET).unwrap();
        assert!(!ok);
        assert_eq!(w.unwrap().to_vec(), vec![0, 1]);

        let p = ExpanderParams::new(1, Ratio::integer(3).unwrap()).unwrap();
        assert!(is_expander(&Graph::petersen(), &p, DEFAULT_SUBSET_BUDGET).unwrap().0);
    }

    #[test]
    fn max_k_examples() {
        assert_eq!(max_expander_k(&Graph::complete(4), two(), DEFAULT_SUBSET_BUDGET), 1);
        assert_eq!(max_expander_k(&Graph::cycle(6), two(), DEFAULT_SUBSET_BUDGET), 1);
        assert_eq!(max_expander_k(&Graph::empty(5), two(), DEFAULT_SUBSET_BUDGET), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::complete(40);
        let p = ExpanderParams::new(10, two()).unwrap();
        assert!(matches!(expansion_violation(&g, &p, 1000), Err(Error::BudgetExceeded { .. })));
        // K_40 singletons are checked before the pair count blows the budget
        assert_eq!(max_expander_k(&g, two(), 100), 1);
    }

    #[test]
    fn rejects_degenerate_params() {
        assert!(Ratio::new(0, 1).is_err());
        assert!(ExpanderParams::new(0, two()).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_saturating(10, 3), 120);
        assert_eq!(binomial_saturating(3, 5), 0);
        assert_eq!(subsets_up_to(16, 4), 16 + 120 + 560 + 1820);
        assert_eq!(binomial_saturating(200, 100), u64::MAX);
    }
}
