//! Sparse-regime construction: extract a sparse expander from `G \ H`, then
//! add boosters from `G \ H` until it becomes Hamiltonian.

use rayon::prelude::*;
use serde::Serialize;

use super::booster::BoosterOracle;
use super::expander::{expansion_violation, subsets_up_to, ExpanderParams};
use crate::error::{Error, Result};
use crate::exact::{is_hamiltonian, HamiltonWitness};
use crate::graph::{Edge, EdgeSet, Graph};
use crate::random::{derive_seed, sample_capped_subgraph, SparsificationParams};

/// Draws capped random subgraphs of `G \ H` until one passes the exact
/// expansion check for `target`. Draw `r` uses seed
/// `derive_seed(params.seed, r)`; draws run in parallel and the
/// lowest-indexed success wins, so the result is deterministic.
///
/// Returns `None` after `retries` failed draws.
pub fn extract_sparse_expander(
    g: &Graph,
    h: &EdgeSet,
    params: &SparsificationParams,
    target: &ExpanderParams,
    retries: usize,
    subset_budget: u64,
) -> Result<Option<Graph>> {
    let base = g.remove_edges(h)?;
    let n = base.n();
    if subsets_up_to(n, target.k) > subset_budget {
        return Err(Error::BudgetExceeded {
            what: "expander check subset enumeration",
            budget: subset_budget,
        });
    }
    // a singleton with fewer than α neighbours fails in every draw
    if n > 0 && !target.alpha.satisfied_by(base.min_degree(), 1) {
        return Ok(None);
    }
    let found = (0..retries).into_par_iter().find_map_first(|r| {
        let draw = params.with_seed(derive_seed(params.seed, r as u64));
        let gamma = sample_capped_subgraph(&base, &draw).ok()?;
        debug_assert!(gamma.m() <= params.d0 * n);
        match expansion_violation(&gamma, target, subset_budget) {
            Ok(None) => Some(gamma),
            _ => None,
        }
    });
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentStep {
    pub added: Edge,
    pub longest_path_before: usize,
    pub longest_path_after: usize,
    pub hamiltonian_after: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AugmentStop {
    Hamiltonian,
    NoBooster,
    StepLimit,
}

#[derive(Debug, Clone)]
pub struct AugmentOutcome {
    pub cycle: Option<HamiltonWitness>,
    pub stop: AugmentStop,
    pub initial_longest_path: usize,
    pub steps: Vec<AugmentStep>,
    /// The final augmented graph.
    pub graph: Graph,
}

/// Repeatedly adds to `gamma0` the lexicographically first edge of
/// `G \ H` that is a booster of the current graph, until it is Hamiltonian,
/// no such edge exists, or `max_steps` edges have been added.
pub fn booster_augment(g: &Graph, h: &EdgeSet, gamma0: &Graph, max_steps: usize) -> Result<AugmentOutcome> {
    let base = g.remove_edges(h)?;
    if !gamma0.is_spanning_subgraph_of(&base) {
        return Err(Error::InvalidArgument("gamma0 must be a spanning subgraph of G \\ H".into()));
    }
    let mut gamma = gamma0.clone();
    let mut steps = Vec::new();
    let mut initial = None;
    loop {
        if let Some(cycle) = is_hamiltonian(&gamma)? {
            debug_assert!(cycle.validate(&base));
            let initial_longest_path = initial.unwrap_or(gamma.n().saturating_sub(1));
            return Ok(AugmentOutcome {
                cycle: Some(cycle),
                stop: AugmentStop::Hamiltonian,
                initial_longest_path,
                steps,
                graph: gamma,
            });
        }
        let oracle = BoosterOracle::new(&gamma)?;
        let before = oracle.longest_path_length();
        initial.get_or_insert(before);
        let stop = if steps.len() >= max_steps {
            Some(AugmentStop::StepLimit)
        } else {
            None
        };
        let mut chosen = None;
        if stop.is_none() {
            for (u, v) in base.edges() {
                if !gamma.has_edge(u, v) && oracle.is_booster(u, v)? {
                    chosen = Some((u, v));
                    break;
                }
            }
        }
        let Some((u, v)) = chosen else {
            return Ok(AugmentOutcome {
                cycle: None,
                stop: stop.unwrap_or(AugmentStop::NoBooster),
                initial_longest_path: before,
                steps,
                graph: gamma,
            });
        };
        gamma.add_edge(u, v)?;
        let after = crate::exact::longest_path_length(&gamma)?;
        let hamiltonian_after = is_hamiltonian(&gamma)?.is_some();
        assert!(
            hamiltonian_after || after > before,
            "booster ({u}, {v}) neither closed a cycle nor lengthened the longest path"
        );
        steps.push(AugmentStep {
            added: (u, v),
            longest_path_before: before,
            longest_path_after: after,
            hamiltonian_after,
        });
    }
}
