//! Boosters: non-edges whose addition makes a graph Hamiltonian or
//! lengthens its longest path.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{hamilton_path_ends, is_hamiltonian, longest_path_length, HamiltonPathTable};
use crate::graph::{canonical, Edge, EdgeSet, Graph};

/// Non-edges of a reference graph that are boosters for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoosterSet {
    pub pairs: EdgeSet,
}

impl BoosterSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Per-graph data that makes repeated booster queries cheap.
///
/// `G + uv` is Hamiltonian iff `G` is, or `G` has a Hamilton path from `u`
/// to `v`. A longer path than `L = lp(G)` can only exist when `L < n - 1`.
pub struct BoosterOracle<'a> {
    g: &'a Graph,
    hamiltonian: bool,
    longest: usize,
    paths: Option<HamiltonPathTable>,
}

impl<'a> BoosterOracle<'a> {
    pub fn new(g: &'a Graph) -> Result<Self> {
        let longest = longest_path_length(g)?;
        let hamiltonian = is_hamiltonian(g)?.is_some();
        let paths = if !hamiltonian && g.n() >= 3 && longest + 1 == g.n() {
            Some(hamilton_path_ends(g)?)
        } else {
            None
        };
        Ok(BoosterOracle {
            g,
            hamiltonian,
            longest,
            paths,
        })
    }

    pub fn longest_path_length(&self) -> usize {
        self.longest
    }

    pub fn is_hamiltonian(&self) -> bool {
        self.hamiltonian
    }

    pub fn is_booster(&self, u: usize, v: usize) -> Result<bool> {
        let n = self.g.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.g.has_edge(u, v) {
            let (a, b) = canonical(u, v);
            return Err(Error::ExistingEdge(a, b));
        }
        if self.hamiltonian {
            return Ok(true);
        }
        if let Some(table) = &self.paths {
            // a Hamilton path exists, so no path can get longer
            return Ok(table.has_path(u, v));
        }
        let plus = self.g.with_edge(u, v)?;
        Ok(longest_path_length(&plus)? > self.longest)
    }
}

/// Whether the non-edge `uv` is a booster of `g`.
pub fn is_booster(g: &Graph, u: usize, v: usize) -> Result<bool> {
    if u < g.n() && v < g.n() && u != v && g.has_edge(u, v) {
        let (a, b) = canonical(u, v);
        return Err(Error::ExistingEdge(a, b));
    }
    BoosterOracle::new(g)?.is_booster(u, v)
}

/// All boosters of `g`. If `g` is Hamiltonian every non-edge qualifies.
pub fn enumerate_boosters(g: &Graph) -> Result<BoosterSet> {
    let oracle = BoosterOracle::new(g)?;
    let candidates: Vec<Edge> = g.non_edges().collect();
    let verdicts = candidates
        .par_iter()
        .map(|&(u, v)| oracle.is_booster(u, v))
        .collect::<Result<Vec<bool>>>()?;
    let pairs = candidates
        .into_iter()
        .zip(verdicts)
        .filter_map(|(e, b)| b.then_some(e))
        .collect();
    Ok(BoosterSet { pairs })
}
