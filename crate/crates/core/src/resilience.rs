//! Exact global resilience: the fewest edge deletions that destroy
//! Hamiltonicity or the existence of a perfect matching.
//!
//! The search is a branch and bound over certificates. If `G \ R` has the
//! property, some certificate `C` (a Hamilton cycle or a perfect matching)
//! avoids `R`, and every destroying set containing `R` must also contain an
//! edge of `C`. Branching on the edges of `C` in order, with the edges
//! before the chosen one marked as kept, partitions the remaining search
//! space without overlap. Certificates are pooled and reused: any pooled
//! certificate that avoids `R` serves without an oracle call, and pooled
//! certificates with pairwise disjoint removable parts give a lower bound
//! on how many more deletions are needed.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{is_hamiltonian, maximum_matching, HAMILTON_VERTEX_LIMIT};
use crate::graph::{Edge, EdgeSet, Graph};

/// Default cap on exact-oracle calls in one resilience computation.
pub const DEFAULT_ORACLE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Hamiltonicity,
    PerfectMatching,
}

impl Property {
    /// Whether `g` has the property, using the exact oracles.
    pub fn holds(&self, g: &Graph) -> Result<bool> {
        match self {
            Property::Hamiltonicity => Ok(is_hamiltonian(g)?.is_some()),
            Property::PerfectMatching => Ok(g.n() % 2 == 0 && maximum_matching(g).len() * 2 == g.n()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// The search found a destroying set smaller than the trivial one, or
    /// the graph lacks the property outright.
    Exhaustive,
    /// The search proved no set smaller than the min-degree certificate
    /// destroys the property.
    CertificateConfirmed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResilienceResult {
    pub value: usize,
    /// A destroying set of exactly `value` edges.
    pub witness: EdgeSet,
    pub property: Property,
    pub method: Method,
    pub oracle_calls: u64,
}

/// All edges at the lowest-labeled minimum-degree vertex except the one to
/// its lowest-labeled neighbour: `δ(G) - 1` edges whose removal leaves a
/// vertex of degree 1.
pub fn min_degree_certificate(g: &Graph) -> Result<EdgeSet> {
    let v = g
        .min_degree_vertex()
        .ok_or_else(|| Error::InvalidArgument("graph has no vertices".into()))?;
    if g.degree(v) == 0 {
        return Err(Error::InvalidArgument("min-degree certificate needs δ(G) >= 1".into()));
    }
    EdgeSet::from_pairs(g.neighbors(v).iter().skip(1).map(|w| (v, w)))
}

/// All `δ(G)` edges at the lowest-labeled minimum-degree vertex.
fn isolation_certificate(g: &Graph) -> EdgeSet {
    match g.min_degree_vertex() {
        Some(v) => g.neighbors(v).iter().map(|w| crate::graph::canonical(v, w)).collect(),
        None => EdgeSet::new(),
    }
}

type Bits = Vec<u64>;

#[inline]
fn test_bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}
#[inline]
fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}
#[inline]
fn clear_bit(b: &mut Bits, i: usize) {
    b[i / 64] &= !(1 << (i % 64));
}

fn bit_indices(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter()
        .enumerate()
        .flat_map(|(w, &word)| crate::bitset::bits(word).map(move |i| w * 64 + i))
}

struct Search<'a> {
    g: &'a Graph,
    property: Property,
    edges: Vec<Edge>,
    /// `edge_at[v]` = indices of the edges incident to `v`
    edge_at: Vec<Vec<usize>>,
    index: HashMap<Edge, usize>,
    words: usize,
    pool: Vec<Bits>,
    verdicts: HashMap<Bits, bool>,
    calls: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, property: Property, budget: u64) -> Self {
        let edges: Vec<Edge> = g.edges().collect();
        let mut edge_at = vec![Vec::new(); g.n()];
        let mut index = HashMap::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            edge_at[u].push(i);
            edge_at[v].push(i);
            index.insert((u, v), i);
        }
        let words = edges.len().div_ceil(64).max(1);
        Search {
            g,
            property,
            edges,
            edge_at,
            index,
            words,
            pool: Vec::new(),
            verdicts: HashMap::new(),
            calls: 0,
            budget,
        }
    }

    fn empty_bits(&self) -> Bits {
        vec![0; self.words]
    }

    fn to_edge_set(&self, b: &Bits) -> EdgeSet {
        bit_indices(b).map(|i| self.edges[i]).collect()
    }

    fn remaining_graph(&self, removed: &Bits) -> Graph {
        let mut h = self.g.clone();
        for i in bit_indices(removed) {
            let (u, v) = self.edges[i];
            h.remove_edge(u, v).expect("edge of g");
        }
        h
    }

    /// Exact oracle on `G \ removed`: a certificate, or `None` if the
    /// property is gone.
    fn oracle(&mut self, removed: &Bits) -> Result<Option<Bits>> {
        if self.verdicts.get(removed) == Some(&false) {
            return Ok(None);
        }
        if self.calls >= self.budget {
            return Err(Error::BudgetExceeded {
                what: "resilience oracle calls",
                budget: self.budget,
            });
        }
        self.calls += 1;
        let h = self.remaining_graph(removed);
        let cert: Option<Vec<Edge>> = match self.property {
            Property::Hamiltonicity => is_hamiltonian(&h)?.map(|w| w.edges()),
            Property::PerfectMatching => {
                let m = maximum_matching(&h);
                (h.n() % 2 == 0 && m.len() * 2 == h.n()).then_some(m)
            }
        };
        self.verdicts.insert(removed.clone(), cert.is_some());
        Ok(cert.map(|edges| {
            let mut b = self.empty_bits();
            for e in edges {
                set_bit(&mut b, self.index[&e]);
            }
            b
        }))
    }

    /// Cheapest way to kill the property by stripping one vertex, if it
    /// fits in `k` more deletions.
    fn degree_kill(&self, removed: &Bits, kept: &Bits, k: usize) -> Option<Bits> {
        // a Hamilton cycle needs degree >= 2 everywhere, a perfect matching >= 1
        let floor = match self.property {
            Property::Hamiltonicity => 1,
            Property::PerfectMatching => 0,
        };
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.g.n() {
            let (mut live, mut kept_here) = (0, 0);
            for &i in &self.edge_at[v] {
                if !test_bit(removed, i) {
                    live += 1;
                    kept_here += test_bit(kept, i) as usize;
                }
            }
            if live <= floor {
                return Some(self.empty_bits());
            }
            if kept_here > floor {
                continue;
            }
            let cost = live - floor;
            if cost <= k && best.is_none_or(|(c, _)| cost < c) {
                best = Some((cost, v));
            }
        }
        let (cost, v) = best?;
        let mut extra = self.empty_bits();
        // keep the kept edges (at most `floor` of them), strip the rest
        let mut keep_budget = floor;
        let mut live: Vec<usize> = self.edge_at[v].iter().copied().filter(|&i| !test_bit(removed, i)).collect();
        live.sort_by_key(|&i| !test_bit(kept, i));
        for i in live {
            if keep_budget > 0 {
                keep_budget -= 1;
                continue;
            }
            set_bit(&mut extra, i);
        }
        debug_assert_eq!(bit_indices(&extra).count(), cost);
        Some(extra)
    }

    fn pooled_certificate(&self, removed: &Bits, kept: &Bits) -> Option<usize> {
        self.pool
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().zip(removed).all(|(a, b)| a & b == 0))
            .min_by_key(|(_, c)| c.iter().zip(kept).map(|(a, b)| (a & !b).count_ones()).sum::<u32>())
            .map(|(i, _)| i)
    }

    /// Greedy packing of pooled certificates avoiding `removed` whose
    /// removable parts are pairwise disjoint.
    fn packing_bound(&self, removed: &Bits, kept: &Bits) -> usize {
        let mut used = self.empty_bits();
        let mut count = 0;
        for c in &self.pool {
            let fits = c
                .iter()
                .zip(removed)
                .zip(kept.iter().zip(&used))
                .all(|((a, r), (k, u))| a & r == 0 && a & !k & u == 0);
            if fits {
                for ((u, a), k) in used.iter_mut().zip(c).zip(kept) {
                    *u |= a & !k;
                }
                count += 1;
            }
        }
        count
    }

    /// Edges to add to `removed` (at most `k`) that destroy the property,
    /// never touching `kept`.
    fn destroy(&mut self, removed: &mut Bits, kept: &mut Bits, k: usize) -> Result<Option<Bits>> {
        if let Some(extra) = self.degree_kill(removed, kept, k) {
            return Ok(Some(extra));
        }
        let cert = match self.pooled_certificate(removed, kept) {
            Some(i) => self.pool[i].clone(),
            None => match self.oracle(removed)? {
                None => return Ok(Some(self.empty_bits())),
                Some(c) => {
                    self.pool.push(c.clone());
                    c
                }
            },
        };
        if k == 0 {
            return Ok(None);
        }
        if k == 1 {
            return self.destroy_with_one(removed, kept);
        }
        let branch: Vec<usize> = bit_indices(&cert).filter(|&i| !test_bit(kept, i)).collect();
        if branch.is_empty() || self.packing_bound(removed, kept) > k {
            return Ok(None);
        }
        let mut newly_kept = Vec::with_capacity(branch.len());
        let mut found = None;
        for &e in &branch {
            set_bit(removed, e);
            let sub = self.destroy(removed, kept, k - 1)?;
            clear_bit(removed, e);
            if let Some(mut extra) = sub {
                set_bit(&mut extra, e);
                found = Some(extra);
                break;
            }
            set_bit(kept, e);
            newly_kept.push(e);
        }
        for e in newly_kept {
            clear_bit(kept, e);
        }
        Ok(found)
    }

    /// Last level of the search: a single edge must lie in the free part of
    /// every certificate that avoids `removed`.
    fn destroy_with_one(&mut self, removed: &mut Bits, kept: &Bits) -> Result<Option<Bits>> {
        let mut candidates: Bits = kept.iter().map(|k| !k).collect();
        for c in &self.pool {
            if c.iter().zip(removed.iter()).all(|(a, b)| a & b == 0) {
                for (x, a) in candidates.iter_mut().zip(c) {
                    *x &= a;
                }
            }
        }
        loop {
            let Some(e) = bit_indices(&candidates).next() else {
                return Ok(None);
            };
            clear_bit(&mut candidates, e);
            set_bit(removed, e);
            let verdict = self.oracle(removed);
            clear_bit(removed, e);
            match verdict? {
                None => {
                    let mut extra = self.empty_bits();
                    set_bit(&mut extra, e);
                    return Ok(Some(extra));
                }
                Some(c) => {
                    for (x, a) in candidates.iter_mut().zip(&c) {
                        *x &= a;
                    }
                    self.pool.push(c);
                }
            }
        }
    }

    /// A destroying set of at most `k` edges, if one exists.
    fn find_within(&mut self, k: usize) -> Result<Option<EdgeSet>> {
        let mut removed = self.empty_bits();
        let mut kept = self.empty_bits();
        Ok(self
            .destroy(&mut removed, &mut kept, k)?
            .map(|b| self.to_edge_set(&b)))
    }
}

fn check_size(g: &Graph, property: Property) -> Result<()> {
    if property == Property::Hamiltonicity && g.n() > HAMILTON_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "hamiltonicity resilience",
            n: g.n(),
            limit: HAMILTON_VERTEX_LIMIT,
        });
    }
    if property == Property::PerfectMatching && g.n() == 0 {
        return Err(Error::Domain("the empty graph has a perfect matching no deletion can destroy".into()));
    }
    Ok(())
}

/// `r_g(G, P)` with a destroying witness of that size.
pub fn global_resilience(g: &Graph, property: Property, oracle_budget: u64) -> Result<ResilienceResult> {
    check_size(g, property)?;
    let mut search = Search::new(g, property, oracle_budget);
    let holds = search.oracle(&search.empty_bits())?;
    let Some(cert) = holds else {
        return Ok(ResilienceResult {
            value: 0,
            witness: EdgeSet::new(),
            property,
            method: Method::Exhaustive,
            oracle_calls: search.calls,
        });
    };
    search.pool.push(cert);
    let trivial = match property {
        Property::Hamiltonicity => min_degree_certificate(g)?,
        Property::PerfectMatching => isolation_certificate(g),
    };
    debug_assert!(!property.holds(&g.remove_edges(&trivial)?)?);
    let Some(mut best) = search.find_within(trivial.len() - 1)? else {
        return Ok(ResilienceResult {
            value: trivial.len(),
            witness: trivial,
            property,
            method: Method::CertificateConfirmed,
            oracle_calls: search.calls,
        });
    };
    while !best.is_empty() {
        match search.find_within(best.len() - 1)? {
            Some(smaller) => best = smaller,
            None => break,
        }
    }
    Ok(ResilienceResult {
        value: best.len(),
        witness: best,
        property,
        method: Method::Exhaustive,
        oracle_calls: search.calls,
    })
}

/// Checks `r_g(G, P) >= target` together with `G ∈ P`: true iff `G` has the
/// property and no set of `target - 1` edges destroys it. On failure
/// returns a destroying set of at most `target - 1` edges.
pub fn verify_resilience_equals(
    g: &Graph,
    property: Property,
    target: usize,
    oracle_budget: u64,
) -> Result<(bool, Option<EdgeSet>)> {
    if target == 0 {
        return Err(Error::InvalidArgument("target must be at least 1".into()));
    }
    check_size(g, property)?;
    let mut search = Search::new(g, property, oracle_budget);
    match search.find_within(target - 1)? {
        None => Ok((true, None)),
        Some(h) => Ok((false, Some(h))),
    }
}
