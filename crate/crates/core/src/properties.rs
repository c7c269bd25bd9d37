//! Checkers for the typical properties of `G(n, p)` used in the sparse
//! (P1–P5) and dense (Q1–Q3) regimes, the dense-regime Hamilton cycle
//! construction, and Monte Carlo estimates of how often each property holds.
//!
//! Asymptotic thresholds are turned into integers in the direction that
//! makes each property harder to satisfy: upper bounds on sizes or counts
//! round down, lower bounds round up, and the fixed set sizes of P5/Q2/Q3
//! round down (smaller sets have fewer edges).

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::exact::{hamilton_path_between, independence_number, vertex_connectivity, HamiltonWitness};
use crate::graph::{EdgeSet, Graph};
use crate::posa::binomial_saturating;
use crate::random::{derive_seed, desk_scale_d0, rng_from_seed, sample_gnp, GnpParams, SeededRng};
use crate::stats::Proportion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PropertyId {
    P1,
    P2,
    P3,
    P4,
    P5,
    Q1,
    Q2,
    Q3,
}

impl PropertyId {
    pub const ALL: [PropertyId; 8] = [
        PropertyId::P1,
        PropertyId::P2,
        PropertyId::P3,
        PropertyId::P4,
        PropertyId::P5,
        PropertyId::Q1,
        PropertyId::Q2,
        PropertyId::Q3,
    ];
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown property id {s:?} (expected P1..P5 or Q1..Q3)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Sampled,
}

/// How the subset-quantified properties (P4, P5, Q2, Q3) are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Exact when the subset count fits the budget, sampled otherwise.
    Auto,
    /// Exact or a budget error.
    Exact,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Degree { vertex: usize, degree: usize },
    Vertices(Vec<usize>),
    Pair(Vec<usize>, Vec<usize>),
    Path(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property_id: PropertyId,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub mode: Mode,
    /// Subsets examined (exact) or random starts tried (sampled).
    pub samples_checked: u64,
    /// The quantified size window was empty.
    pub vacuous: bool,
}

impl PropertyReport {
    fn exact(property_id: PropertyId, witness: Option<Witness>, checked: u64) -> Self {
        PropertyReport {
            property_id,
            holds: witness.is_none(),
            witness,
            mode: Mode::Exact,
            samples_checked: checked,
            vacuous: false,
        }
    }
}

/// Options for subset-quantified checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub mode: CheckMode,
    pub subset_budget: u64,
    /// Random starts in sampled mode.
    pub samples: u64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: CheckMode::Auto,
            subset_budget: crate::posa::DEFAULT_SUBSET_BUDGET,
            samples: 2000,
            seed: 0,
        }
    }
}

/// Integer thresholds for the sparse-regime properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SparseScaleParams {
    pub d0: usize,
    /// Vertices with degree below this are SMALL (equal to `d0`).
    pub small_threshold: usize,
    /// P4 window `[ceil(d0/2), min(n, floor(5n/sqrt(np)))]`.
    pub p4_min: usize,
    pub p4_max: usize,
    /// P5 set size `floor(n/sqrt(np))`.
    pub p5_size: usize,
}

impl SparseScaleParams {
    pub fn new(n: usize, np: f64, d0: usize) -> Result<Self> {
        if !(np > 0.0) {
            return Err(Error::Domain(format!("np = {np} must be positive")));
        }
        let root = np.sqrt();
        let p4_max = ((5.0 * n as f64 / root).floor() as usize).min(n);
        Ok(SparseScaleParams {
            d0,
            small_threshold: d0,
            p4_min: d0.div_ceil(2).max(1),
            p4_max,
            p5_size: (n as f64 / root).floor() as usize,
        })
    }
}

/// SMALL(G): vertices of degree below `d0`.
pub fn small_set(g: &Graph, d0: usize) -> VertexSet {
    VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| g.degree(v) < d0))
}

fn degree_witness(g: &Graph, v: usize) -> Witness {
    Witness::Degree {
        vertex: v,
        degree: g.degree(v),
    }
}

/// P1: `δ >= 2` and `Δ <= floor(5np)`.
pub fn check_p1(g: &Graph, np: f64) -> PropertyReport {
    let cap = (5.0 * np).floor();
    let bad = (0..g.n()).find(|&v| g.degree(v) < 2 || g.degree(v) as f64 > cap);
    PropertyReport::exact(PropertyId::P1, bad.map(|v| degree_witness(g, v)), g.n() as u64)
}

/// Q1: `δ >= ceil(np/2)`.
pub fn check_q1(g: &Graph, np: f64) -> PropertyReport {
    let need = (np / 2.0).ceil();
    let bad = (0..g.n()).find(|&v| (g.degree(v) as f64) < need);
    PropertyReport::exact(PropertyId::Q1, bad.map(|v| degree_witness(g, v)), g.n() as u64)
}

/// P2: `|SMALL| <= floor(n^0.1)`.
pub fn check_p2(g: &Graph, d0: usize) -> PropertyReport {
    let small = small_set(g, d0);
    let cap = (g.n() as f64).powf(0.1).floor() as usize;
    let witness = (small.len() > cap).then(|| Witness::Vertices(small.to_vec()));
    PropertyReport::exact(PropertyId::P2, witness, 1)
}

/// P3: no path of length 1..=4 joins two distinct SMALL vertices.
///
/// A shortest path is a path, so it is enough to check BFS distances.
pub fn check_p3(g: &Graph, d0: usize) -> PropertyReport {
    let small = small_set(g, d0);
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    for s in small.iter() {
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        parent[s] = s;
        let mut frontier = vec![s];
        for _ in 0..4 {
            let mut next = Vec::new();
            for &x in &frontier {
                for y in g.neighbors(x).iter() {
                    if parent[y] != usize::MAX {
                        continue;
                    }
                    parent[y] = x;
                    if small.contains(y) {
                        let mut path = vec![y];
                        let mut cur = y;
                        while cur != s {
                            cur = parent[cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return PropertyReport::exact(PropertyId::P3, Some(Witness::Path(path)), small.len() as u64);
                    }
                    next.push(y);
                }
            }
            frontier = next;
        }
    }
    PropertyReport::exact(PropertyId::P3, None, small.len() as u64)
}

/// Visits every `size`-subset of `0..n` in lexicographic order with the
/// number of edges it spans; stops when `visit` returns true.
fn for_each_subset<F>(g: &Graph, size: usize, mut visit: F) -> Option<Vec<usize>>
where
    F: FnMut(&[usize], &VertexSet, usize) -> bool,
{
    fn rec<F: FnMut(&[usize], &VertexSet, usize) -> bool>(
        g: &Graph,
        size: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        members: &mut VertexSet,
        spanned: usize,
        visit: &mut F,
    ) -> bool {
        if chosen.len() == size {
            return visit(chosen, members, spanned);
        }
        let n = g.n();
        for v in from..=n - (size - chosen.len()) {
            let add = g.neighbors(v).intersection_len(members);
            chosen.push(v);
            members.insert(v);
            if rec(g, size, v + 1, chosen, members, spanned + add, visit) {
                return true;
            }
            members.remove(v);
            chosen.pop();
        }
        false
    }
    if size > g.n() {
        return None;
    }
    let mut chosen = Vec::with_capacity(size);
    let mut members = VertexSet::new(g.n());
    if rec(g, size, 0, &mut chosen, &mut members, 0, &mut visit) {
        Some(chosen)
    } else {
        None
    }
}

fn random_subset(rng: &mut SeededRng, n: usize, size: usize) -> VertexSet {
    VertexSet::from_vertices(n, sample(rng, n, size).into_iter())
}

/// Local search over fixed-size sets: swap one member for one non-member
/// while `score` strictly improves (lower is better).
fn improve<F: Fn(&VertexSet) -> i64>(set: &mut VertexSet, score: F) {
    let n = set.universe();
    let mut current = score(set);
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for out in set.to_vec() {
            for inn in 0..n {
                if set.contains(inn) {
                    continue;
                }
                set.remove(out);
                set.insert(inn);
                let s = score(set);
                set.remove(inn);
                set.insert(out);
                if s < current && best.is_none_or(|(b, _, _)| s < b) {
                    best = Some((s, out, inn));
                }
            }
        }
        match best {
            Some((s, out, inn)) => {
                set.remove(out);
                set.insert(inn);
                current = s;
            }
            None => return,
        }
    }
}

fn use_exact(opts: &SearchOptions, count: u64) -> Result<bool> {
    match opts.mode {
        CheckMode::Sampled => Ok(false),
        CheckMode::Auto => Ok(count <= opts.subset_budget),
        CheckMode::Exact if count <= opts.subset_budget => Ok(true),
        CheckMode::Exact => Err(Error::BudgetExceeded {
            what: "property subset enumeration",
            budget: opts.subset_budget,
        }),
    }
}

/// P4: every `U` with `|U|` in the window spans at most `d0|U|/15` edges.
pub fn check_p4(g: &Graph, scale: &SparseScaleParams, opts: &SearchOptions) -> Result<PropertyReport> {
    let (lo, hi) = (scale.p4_min, scale.p4_max.min(g.n()));
    let d0 = scale.d0;
    let allowed = |size: usize| d0 * size / 15;
    if lo > hi {
        return Ok(PropertyReport {
            vacuous: true,
            ..PropertyReport::exact(PropertyId::P4, None, 0)
        });
    }
    let count = (lo..=hi).fold(0u64, |acc, s| acc.saturating_add(binomial_saturating(g.n(), s)));
    if use_exact(opts, count)? {
        let mut checked = 0u64;
        for size in lo..=hi {
            let cap = allowed(size);
            let bad = for_each_subset(g, size, |_, _, spanned| {
                checked += 1;
                spanned > cap
            });
            if let Some(u) = bad {
                return Ok(PropertyReport::exact(PropertyId::P4, Some(Witness::Vertices(u)), checked));
            }
        }
        return Ok(PropertyReport::exact(PropertyId::P4, None, checked));
    }
    let mut rng = rng_from_seed(opts.seed);
    for i in 0..opts.samples {
        let size = rng.gen_range(lo..=hi);
        let mut u = random_subset(&mut rng, g.n(), size);
        improve(&mut u, |s| -(g.edges_within(s) as i64));
        if g.edges_within(&u) > allowed(size) {
            return Ok(sampled_failure(PropertyId::P4, Witness::Vertices(u.to_vec()), i + 1));
        }
    }
    Ok(sampled_pass(PropertyId::P4, opts.samples))
}

fn sampled_failure(id: PropertyId, w: Witness, checked: u64) -> PropertyReport {
    PropertyReport {
        property_id: id,
        holds: false,
        witness: Some(w),
        mode: Mode::Sampled,
        samples_checked: checked,
        vacuous: false,
    }
}

fn sampled_pass(id: PropertyId, checked: u64) -> PropertyReport {
    PropertyReport {
        property_id: id,
        holds: true,
        witness: None,
        mode: Mode::Sampled,
        samples_checked: checked,
        vacuous: false,
    }
}

/// For fixed `U`, the disjoint `W` of the given size minimizing `e(U, W)`:
/// the outside vertices with the fewest neighbours in `U`.
fn best_partner(g: &Graph, u: &VertexSet, size: usize) -> (VertexSet, usize) {
    let mut outside: Vec<(usize, usize)> = (0..g.n())
        .filter(|&w| !u.contains(w))
        .map(|w| (g.neighbors(w).intersection_len(u), w))
        .collect();
    outside.sort_unstable();
    let chosen = &outside[..size];
    let total = chosen.iter().map(|&(d, _)| d).sum();
    (VertexSet::from_vertices(g.n(), chosen.iter().map(|&(_, w)| w)), total)
}

/// Shared core of P5 and Q3: every disjoint `U`, `W` with `|U| = |W| = size`
/// has `e(U, W) >= need`.
fn check_cross(g: &Graph, id: PropertyId, size: usize, need: usize, opts: &SearchOptions) -> Result<PropertyReport> {
    if size == 0 || 2 * size > g.n() {
        return Err(Error::Domain(format!(
            "{id}: set size {size} must satisfy 1 <= 2*size <= n = {}",
            g.n()
        )));
    }
    let count = binomial_saturating(g.n(), size);
    if use_exact(opts, count)? {
        let mut checked = 0u64;
        let mut witness = None;
        for_each_subset(g, size, |_, members, _| {
            checked += 1;
            let (w, cross) = best_partner(g, members, size);
            if cross < need {
                witness = Some(Witness::Pair(members.to_vec(), w.to_vec()));
                true
            } else {
                false
            }
        });
        return Ok(PropertyReport::exact(id, witness, checked));
    }
    let mut rng = rng_from_seed(opts.seed);
    for i in 0..opts.samples {
        let mut u = random_subset(&mut rng, g.n(), size);
        improve(&mut u, |s| best_partner(g, s, size).1 as i64);
        let (w, cross) = best_partner(g, &u, size);
        if cross < need {
            return Ok(sampled_failure(id, Witness::Pair(u.to_vec(), w.to_vec()), i + 1));
        }
    }
    Ok(sampled_pass(id, opts.samples))
}

/// P5: disjoint `U`, `W` of size `floor(n/sqrt(np))` have
/// `e(U, W) >= ceil(n/2)`.
pub fn check_p5(g: &Graph, np: f64, opts: &SearchOptions) -> Result<PropertyReport> {
    if !(np > 0.0) {
        return Err(Error::Domain(format!("np = {np} must be positive")));
    }
    let size = (g.n() as f64 / np.sqrt()).floor() as usize;
    check_cross(g, PropertyId::P5, size, g.n().div_ceil(2), opts)
}

fn eighth(np: f64) -> usize {
    (np / 8.0).floor().max(0.0) as usize
}

/// Q2: every `U` of size `floor(np/8)` spans at least `n` edges.
pub fn check_q2(g: &Graph, np: f64, opts: &SearchOptions) -> Result<PropertyReport> {
    let size = eighth(np);
    let n = g.n();
    if size == 0 || size > n {
        return Err(Error::Domain(format!("Q2: set size {size} must satisfy 1 <= size <= n = {n}")));
    }
    let count = binomial_saturating(n, size);
    if use_exact(opts, count)? {
        let mut checked = 0u64;
        let bad = for_each_subset(g, size, |_, _, spanned| {
            checked += 1;
            spanned < n
        });
        return Ok(PropertyReport::exact(PropertyId::Q2, bad.map(Witness::Vertices), checked));
    }
    let mut rng = rng_from_seed(opts.seed);
    for i in 0..opts.samples {
        let mut u = random_subset(&mut rng, n, size);
        improve(&mut u, |s| g.edges_within(s) as i64);
        if g.edges_within(&u) < n {
            return Ok(sampled_failure(PropertyId::Q2, Witness::Vertices(u.to_vec()), i + 1));
        }
    }
    Ok(sampled_pass(PropertyId::Q2, opts.samples))
}

/// Q3: disjoint `U`, `W` of size `floor(np/8)` have `e(U, W) >= n`.
pub fn check_q3(g: &Graph, np: f64, opts: &SearchOptions) -> Result<PropertyReport> {
    check_cross(g, PropertyId::Q3, eighth(np), g.n(), opts)
}

/// Re-checks a failure witness directly against the property's definition.
pub fn witness_violates(g: &Graph, report: &PropertyReport, np: f64, d0: usize) -> bool {
    let Some(w) = &report.witness else {
        return false;
    };
    let set = |vs: &[usize]| VertexSet::from_vertices(g.n(), vs.iter().copied());
    match (report.property_id, w) {
        (PropertyId::P1, Witness::Degree { vertex, degree }) => {
            g.degree(*vertex) == *degree && (*degree < 2 || *degree as f64 > (5.0 * np).floor())
        }
        (PropertyId::Q1, Witness::Degree { vertex, degree }) => {
            g.degree(*vertex) == *degree && (*degree as f64) < (np / 2.0).ceil()
        }
        (PropertyId::P2, Witness::Vertices(vs)) => {
            vs.iter().all(|&v| g.degree(v) < d0) && vs.len() > (g.n() as f64).powf(0.1).floor() as usize
        }
        (PropertyId::P3, Witness::Path(p)) => {
            let (a, b) = (p[0], p[p.len() - 1]);
            let distinct = set(p).len() == p.len();
            (2..=5).contains(&p.len())
                && distinct
                && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
                && g.degree(a) < d0
                && g.degree(b) < d0
        }
        (PropertyId::P4, Witness::Vertices(vs)) => g.edges_within(&set(vs)) > d0 * vs.len() / 15,
        (PropertyId::Q2, Witness::Vertices(vs)) => vs.len() == eighth(np) && g.edges_within(&set(vs)) < g.n(),
        (PropertyId::P5, Witness::Pair(u, w)) | (PropertyId::Q3, Witness::Pair(u, w)) => {
            let (us, ws) = (set(u), set(w));
            let (size, need) = if report.property_id == PropertyId::P5 {
                ((g.n() as f64 / np.sqrt()).floor() as usize, g.n().div_ceil(2))
            } else {
                (eighth(np), g.n())
            };
            u.len() == size
                && w.len() == size
                && us.is_disjoint(&ws)
                && g.edges_between(&us, &ws).map(|e| e < need).unwrap_or(false)
        }
        _ => false,
    }
}

/// Parameters shared by every checker in a census.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckContext {
    pub np: f64,
    pub d0: usize,
    pub search: SearchOptions,
}

impl CheckContext {
    /// `np` from the graph model and `d0 = max(3, ceil(c·np))`.
    pub fn for_gnp(params: &GnpParams, d0_coefficient: f64, search: SearchOptions) -> Self {
        let np = params.n as f64 * params.p;
        CheckContext {
            np,
            d0: desk_scale_d0(np, d0_coefficient),
            search,
        }
    }
}

/// Runs one checker.
pub fn check_property(id: PropertyId, g: &Graph, ctx: &CheckContext) -> Result<PropertyReport> {
    match id {
        PropertyId::P1 => Ok(check_p1(g, ctx.np)),
        PropertyId::P2 => Ok(check_p2(g, ctx.d0)),
        PropertyId::P3 => Ok(check_p3(g, ctx.d0)),
        PropertyId::P4 => check_p4(g, &SparseScaleParams::new(g.n(), ctx.np, ctx.d0)?, &ctx.search),
        PropertyId::P5 => check_p5(g, ctx.np, &ctx.search),
        PropertyId::Q1 => Ok(check_q1(g, ctx.np)),
        PropertyId::Q2 => check_q2(g, ctx.np, &ctx.search),
        PropertyId::Q3 => check_q3(g, ctx.np, &ctx.search),
    }
}

/// Fraction of `trials` samples of `G(n, p)` satisfying the property, with
/// a 95% Wilson interval. Trial `i` uses graph seed
/// `derive_seed(params.seed, i)`.
pub fn estimate_probability(
    id: PropertyId,
    params: &GnpParams,
    trials: u64,
    ctx: &CheckContext,
) -> Result<Proportion> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    params.validate()?;
    let verdicts = (0..trials)
        .into_par_iter()
        .map(|i| {
            let g = sample_gnp(&params.with_seed(derive_seed(params.seed, i)))?;
            let mut local = *ctx;
            local.search.seed = derive_seed(ctx.search.seed, i);
            Ok(check_property(id, &g, &local)?.holds)
        })
        .collect::<Result<Vec<bool>>>()?;
    let successes = verdicts.iter().filter(|&&h| h).count() as u64;
    Ok(Proportion::new(successes, trials))
}

/// What the dense-regime construction found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseOutcome {
    /// Minimum-degree vertex of `G \ H`.
    pub v0: usize,
    pub v0_degree: usize,
    /// `α(G')` and `κ(G')` for `G' = (G \ H) - v0`, when computed.
    pub alpha: Option<usize>,
    pub kappa: Option<usize>,
    /// `κ(G') > α(G')`.
    pub precondition: bool,
    pub cycle: Option<HamiltonWitness>,
}

/// Builds a Hamilton cycle of `G \ H` through a minimum-degree vertex `v0`:
/// when `G' = (G \ H) - v0` has `κ(G') > α(G')` it is Hamilton-connected, so
/// a Hamilton path of `G'` between two neighbours of `v0` closes through
/// `v0`.
///
/// Requires `e(H) <= δ(G) - 2`.
pub fn dense_case_hamilton_cycle(g: &Graph, h: &EdgeSet) -> Result<DenseOutcome> {
    if h.len() + 2 > g.min_degree() {
        return Err(Error::InvalidArgument(format!(
            "e(H) = {} exceeds δ(G) - 2 = {}",
            h.len(),
            g.min_degree() as i64 - 2
        )));
    }
    let base = g.remove_edges(h)?;
    let v0 = base
        .min_degree_vertex()
        .ok_or_else(|| Error::InvalidArgument("graph has no vertices".into()))?;
    let v0_degree = base.degree(v0);
    let mut out = DenseOutcome {
        v0,
        v0_degree,
        alpha: None,
        kappa: None,
        precondition: false,
        cycle: None,
    };
    if v0_degree < 2 {
        return Ok(out);
    }
    let (rest, labels) = base.without_vertex(v0);
    let alpha = independence_number(&rest)?;
    let kappa = vertex_connectivity(&rest);
    out.alpha = Some(alpha);
    out.kappa = Some(kappa);
    out.precondition = kappa > alpha;
    if !out.precondition {
        return Ok(out);
    }
    let mut nbrs = base.neighbors(v0).iter();
    let (x, y) = (nbrs.next().expect("degree >= 2"), nbrs.next().expect("degree >= 2"));
    let local = |v: usize| labels.binary_search(&v).expect("vertex of G'");
    if let Some(path) = hamilton_path_between(&rest, local(x), local(y))? {
        let mut order = vec![v0];
        order.extend(path.order.iter().map(|&i| labels[i]));
        let cycle = HamiltonWitness::cycle(order);
        debug_assert!(cycle.validate(&base));
        out.cycle = Some(cycle);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact() -> SearchOptions {
        SearchOptions {
            mode: CheckMode::Exact,
            ..SearchOptions::default()
        }
    }

    #[test]
    fn small_set_examples() {
        assert!(small_set(&Graph::complete(5), 3).is_empty());
        assert_eq!(small_set(&Graph::star(5), 2).to_vec(), vec![1, 2, 3, 4, 5]);
        assert!(small_set(&Graph::petersen(), 0).is_empty());
    }

    #[test]
    fn p1_q1_examples() {
        assert!(check_p1(&Graph::complete(10), 9.0).holds);
        assert!(check_p1(&Graph::cycle(4), 1.0).holds);
        let r = check_p1(&Graph::empty(4), 1.0);
        assert!(!r.holds);
        assert!(witness_violates(&Graph::empty(4), &r, 1.0, 3));
        // Δ cap: K_12 with np = 2 has Δ = 11 > 10
        assert!(!check_p1(&Graph::complete(12), 2.0).holds);
        assert!(check_q1(&Graph::complete(10), 18.0).holds);
        assert!(!check_q1(&Graph::complete(10), 18.5).holds);
    }

    #[test]
    fn p2_examples() {
        assert!(check_p2(&Graph::petersen(), 3).holds);
        let star = Graph::star(9);
        let r = check_p2(&star, 2);
        assert!(!r.holds);
        assert_eq!(r.witness, Some(Witness::Vertices((1..10).collect())));
        for d0 in 0..=4 {
            assert!(check_p2(&Graph::complete(5), d0).holds);
        }
    }

    #[test]
    fn p3_examples() {
        let two_leaves = Graph::path(2);
        let r = check_p3(&two_leaves, 2);
        assert!(!r.holds);
        assert_eq!(r.witness, Some(Witness::Path(vec![0, 1])));
        assert!(check_p3(&Graph::complete(6), 3).holds);
        // leaves at distance 6 (path of 7 vertices, both ends degree 1)
        let far = Graph::path(7);
        assert!(check_p3(&far, 2).holds);
        let near = Graph::path(5);
        let r = check_p3(&near, 2);
        assert!(!r.holds);
        assert!(witness_violates(&near, &r, 1.0, 2));
        // d0 <= 1: SMALL holds only isolated vertices
        let g = Graph::empty(3).disjoint_union(&Graph::path(2));
        assert!(check_p3(&g, 1).holds);
    }

    #[test]
    fn p4_examples() {
        let k10 = Graph::complete(10);
        let scale = SparseScaleParams::new(10, 9.0, 6).unwrap();
        assert_eq!((scale.p4_min, scale.p4_max), (3, 10));
        let r = check_p4(&k10, &scale, &exact()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(Witness::Vertices(vec![0, 1, 2])));
        assert!(witness_violates(&k10, &r, 9.0, 6));

        let empty = Graph::empty(10);
        assert!(check_p4(&empty, &scale, &exact()).unwrap().holds);

        let g = sample_gnp(&GnpParams::new(30, 0.3, 1).unwrap()).unwrap();
        let scale = SparseScaleParams::new(30, 9.0, 6).unwrap();
        let opts = SearchOptions {
            mode: CheckMode::Sampled,
            samples: 5,
            ..SearchOptions::default()
        };
        let r = check_p4(&g, &scale, &opts).unwrap();
        assert_eq!(r.mode, Mode::Sampled);
        assert!(r.samples_checked >= 1);
    }

    #[test]
    fn p4_vacuous_window() {
        // d0/2 = 50 > 5n/sqrt(np)
        let scale = SparseScaleParams::new(20, 19.0, 100).unwrap();
        let r = check_p4(&Graph::complete(20), &scale, &exact()).unwrap();
        assert!(r.holds && r.vacuous);
    }

    #[test]
    fn q3_on_complete_graphs() {
        // s = floor(np/8); every disjoint pair has exactly s^2 crossing edges
        for (n, np) in [(20, 19.0), (40, 39.0), (24, 23.0), (16, 15.0)] {
            let g = Graph::complete(n);
            let s = (np / 8.0_f64).floor() as usize;
            let r = check_q3(&g, np, &exact()).unwrap();
            assert_eq!(r.holds, s * s >= n, "n={n}");
        }
    }

    #[test]
    fn edgeless_fails_p5_q2_q3() {
        let g = Graph::empty(16);
        assert!(!check_p5(&g, 4.0, &exact()).unwrap().holds);
        assert!(!check_q2(&g, 16.0, &exact()).unwrap().holds);
        let r = check_q3(&g, 16.0, &exact()).unwrap();
        assert!(!r.holds);
        assert!(witness_violates(&g, &r, 16.0, 3));
    }

    #[test]
    fn p5_domain_error() {
        // n/sqrt(np) = 10/1 > n/2
        assert!(matches!(check_p5(&Graph::complete(10), 1.0, &exact()), Err(Error::Domain(_))));
    }

    #[test]
    fn exact_and_sampled_agree_on_definite_failure() {
        let g = Graph::complete(8).disjoint_union(&Graph::empty(8));
        let opts = SearchOptions {
            mode: CheckMode::Sampled,
            samples: 50,
            ..SearchOptions::default()
        };
        let r = check_q3(&g, 16.0, &opts).unwrap();
        assert!(!r.holds);
        assert!(witness_violates(&g, &r, 16.0, 3));
        assert!(!check_q3(&g, 16.0, &exact()).unwrap().holds);
    }

    #[test]
    fn exact_mode_respects_budget() {
        let g = Graph::complete(40);
        let opts = SearchOptions {
            mode: CheckMode::Exact,
            subset_budget: 10,
            ..SearchOptions::default()
        };
        assert!(matches!(check_q2(&g, 39.0, &opts), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn property_ids_parse() {
        for id in PropertyId::ALL {
            assert_eq!(id.to_string().parse::<PropertyId>().unwrap(), id);
        }
        assert_eq!("q2".parse::<PropertyId>().unwrap(), PropertyId::Q2);
        assert!("P9".parse::<PropertyId>().is_err());
    }

    #[test]
    fn dense_examples() {
        let k6 = Graph::complete(6);
        let h = EdgeSet::from_pairs([(0, 1), (0, 2)]).unwrap();
        let out = dense_case_hamilton_cycle(&k6, &h).unwrap();
        assert!(out.precondition);
        assert!(out.cycle.unwrap().validate(&k6.remove_edges(&h).unwrap()));

        let c6 = Graph::cycle(6);
        let out = dense_case_hamilton_cycle(&c6, &EdgeSet::new()).unwrap();
        assert_eq!((out.kappa, out.alpha), (Some(1), Some(3)));
        assert!(!out.precondition && out.cycle.is_none());

        let k7 = Graph::complete(7);
        let out = dense_case_hamilton_cycle(&k7, &EdgeSet::new()).unwrap();
        assert!(out.cycle.unwrap().validate(&k7));

        let too_many = EdgeSet::from_pairs([(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(dense_case_hamilton_cycle(&k6, &too_many).is_err());
    }

    #[test]
    fn estimate_examples() {
        let ctx = CheckContext::for_gnp(&GnpParams::new(30, 1.0, 0).unwrap(), 0.1, SearchOptions::default());
        let est = estimate_probability(PropertyId::P1, &GnpParams::new(30, 1.0, 0).unwrap(), 5, &ctx).unwrap();
        let direct = check_p1(&Graph::complete(30), 30.0).holds;
        assert_eq!(est.fraction, if direct { 1.0 } else { 0.0 });
        assert!(estimate_probability(PropertyId::P1, &GnpParams::new(30, 1.0, 0).unwrap(), 0, &ctx).is_err());
    }
}
