//! Rotation-extension search for Hamilton cycles.
//!
//! Incomplete: a `None` result says nothing about Hamiltonicity.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::exact::HamiltonWitness;
use crate::graph::Graph;
use crate::random::{rng_from_seed, SeededRng};

/// Restarts attempted before giving up.
pub const MAX_RESTARTS: usize = 50;

const OFF: usize = usize::MAX;

struct PathState {
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl PathState {
    fn new(n: usize, start: usize) -> Self {
        let mut pos = vec![OFF; n];
        pos[start] = 0;
        PathState { order: vec![start], pos }
    }

    fn push(&mut self, v: usize) {
        self.pos[v] = self.order.len();
        self.order.push(v);
    }

    fn reindex_from(&mut self, i: usize) {
        for (j, &v) in self.order.iter().enumerate().skip(i) {
            self.pos[v] = j;
        }
    }

    fn reverse(&mut self) {
        self.order.reverse();
        self.reindex_from(0);
    }

    /// Rotation with pivot at position `i`: the new endpoint is `order[i+1]`.
    fn rotate(&mut self, i: usize) {
        self.order[i + 1..].reverse();
        self.reindex_from(i + 1);
    }

    fn end(&self) -> usize {
        *self.order.last().expect("nonempty path")
    }

    fn off_path_neighbor(&self, g: &Graph, v: usize, rng: &mut SeededRng) -> Option<usize> {
        let cands: Vec<usize> = g.neighbors(v).iter().filter(|&w| self.pos[w] == OFF).collect();
        cands.choose(rng).copied()
    }

    fn closes(&self, g: &Graph) -> bool {
        self.order.len() == g.n() && g.has_edge(self.end(), self.order[0])
    }
}

fn extend_greedily(g: &Graph, path: &mut PathState, rng: &mut SeededRng) {
    while let Some(w) = path.off_path_neighbor(g, path.end(), rng) {
        path.push(w);
    }
}

enum Rotated {
    Extended,
    Closed,
    Stuck,
}

/// Breadth-first over rotations with the start vertex fixed. Each endpoint
/// is expanded at most once. Stops at the first rotated path whose endpoint
/// can be extended (or closes a Hamilton cycle), or once `budget` rotations
/// have been spent.
fn rotation_search(g: &Graph, path: &mut PathState, rng: &mut SeededRng, budget: &mut usize) -> Rotated {
    let n = g.n();
    let mut seen = vec![false; n];
    seen[path.end()] = true;
    let mut queue: VecDeque<Vec<usize>> = VecDeque::from([path.order.clone()]);
    let mut scratch = PathState {
        order: Vec::with_capacity(n),
        pos: vec![OFF; n],
    };
    while let Some(order) = queue.pop_front() {
        scratch.pos.iter_mut().for_each(|p| *p = OFF);
        scratch.order.clear();
        for &v in &order {
            scratch.push(v);
        }
        let end = scratch.end();
        let prev = order[order.len() - 2];
        let mut pivots: Vec<usize> = g
            .neighbors(end)
            .iter()
            .filter(|&x| x != prev && scratch.pos[x] != OFF)
            .collect();
        pivots.shuffle(rng);
        for x in pivots {
            if *budget == 0 {
                return Rotated::Stuck;
            }
            *budget -= 1;
            let i = scratch.pos[x];
            let new_end = scratch.order[i + 1];
            if seen[new_end] {
                continue;
            }
            seen[new_end] = true;
            let mut rotated = PathState {
                order: scratch.order.clone(),
                pos: scratch.pos.clone(),
            };
            rotated.rotate(i);
            if rotated.closes(g) {
                *path = rotated;
                return Rotated::Closed;
            }
            if rotated.off_path_neighbor(g, new_end, rng).is_some() {
                *path = rotated;
                return Rotated::Extended;
            }
            queue.push_back(rotated.order);
        }
    }
    Rotated::Stuck
}

/// Searches for a Hamilton cycle by rotation-extension.
///
/// Each attempt starts from a greedy path at a random vertex. When the
/// endpoint cannot be extended, rotations are explored breadth-first from
/// the fixed start; if that fails the path is reversed and the other end is
/// tried. An attempt is abandoned after `n²` rotations without an
/// extension, and at most [`MAX_RESTARTS`] attempts are made.
pub fn posa_find_hamilton(g: &Graph, seed: u64) -> Option<HamiltonWitness> {
    let n = g.n();
    if n < 3 || g.min_degree() < 2 || !g.is_connected() {
        return None;
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..MAX_RESTARTS {
        let start = rng.gen_range(0..n);
        let mut path = PathState::new(n, start);
        extend_greedily(g, &mut path, &mut rng);
        path.reverse();
        extend_greedily(g, &mut path, &mut rng);
        let mut budget = n * n;
        loop {
            if path.closes(g) {
                let w = HamiltonWitness::cycle(path.order);
                debug_assert!(w.validate(g));
                return Some(w);
            }
            if path.order.len() < 2 {
                break;
            }
            let outcome = match rotation_search(g, &mut path, &mut rng, &mut budget) {
                Rotated::Stuck if budget > 0 => {
                    path.reverse();
                    rotation_search(g, &mut path, &mut rng, &mut budget)
                }
                other => other,
            };
            match outcome {
                Rotated::Closed => continue,
                Rotated::Extended => {
                    extend_greedily(g, &mut path, &mut rng);
                    budget = n * n;
                }
                Rotated::Stuck => break,
            }
        }
    }
    None
}
