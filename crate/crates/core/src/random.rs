//! Seeded random graph models: `G(n, p)` and the per-vertex capped random
//! subgraph used to extract sparse expanders.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// The generator used everywhere a seed is accepted.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for stream `index` under `master`: `splitmix64(master ^ splitmix64(index))`.
///
/// Streams depend only on `(master, index)`, so adding trials never changes
/// the earlier ones.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GnpParams {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GnpParams {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        let params = GnpParams { n, p, seed };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidArgument(format!("p = {} is outside [0, 1]", self.p)));
        }
        if self.n > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "G(n,p)",
                n: self.n,
                limit: MAX_VERTICES,
            });
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GnpParams { seed, ..self }
    }
}

/// Samples `G(n, p)`.
///
/// One uniform variate is drawn per pair, in lexicographic pair order, and
/// the pair is kept iff the variate is below `p`. Two calls with the same
/// seed and `p1 <= p2` therefore produce nested graphs.
pub fn sample_gnp(params: &GnpParams) -> Result<Graph> {
    params.validate()?;
    let n = params.n;
    let mut rng = rng_from_seed(params.seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let x: f64 = rng.gen();
            if x < params.p {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SparsificationParams {
    /// Per-vertex cap on sampled incident edges.
    pub d0: usize,
    pub seed: u64,
}

impl SparsificationParams {
    pub fn new(d0: usize, seed: u64) -> Result<Self> {
        if d0 == 0 {
            return Err(Error::InvalidArgument("d0 must be at least 1".into()));
        }
        Ok(SparsificationParams { d0, seed })
    }

    pub fn with_seed(self, seed: u64) -> Self {
        SparsificationParams { seed, ..self }
    }
}

/// Desk-scale surrogate for the asymptotic cap: `max(3, ceil(c * np))`.
pub fn desk_scale_d0(np: f64, c: f64) -> usize {
    let scaled = (c * np).ceil();
    if scaled.is_finite() && scaled > 3.0 {
        scaled as usize
    } else {
        3
    }
}

/// Each vertex keeps all its edges if its degree is at most `d0`, and
/// otherwise a uniformly random `d0`-subset of them; the result is the union
/// of the kept edges.
pub fn sample_capped_subgraph(g: &Graph, params: &SparsificationParams) -> Result<Graph> {
    if params.d0 == 0 {
        return Err(Error::InvalidArgument("d0 must be at least 1".into()));
    }
    let mut rng = rng_from_seed(params.seed);
    let mut out = Graph::empty(g.n());
    let mut nbrs = Vec::new();
    for v in 0..g.n() {
        nbrs.clear();
        nbrs.extend(g.neighbors(v).iter());
        let take = if nbrs.len() <= params.d0 {
            nbrs.len()
        } else {
            // partial Fisher-Yates: the first d0 slots become a uniform subset
            for i in 0..params.d0 {
                let j = rng.gen_range(i..nbrs.len());
                nbrs.swap(i, j);
            }
            params.d0
        };
        for &w in &nbrs[..take] {
            if !out.has_edge(v, w) {
                out.add_edge(v, w)?;
            }
        }
    }
    Ok(out)
}
