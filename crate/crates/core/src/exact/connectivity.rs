//! Vertex connectivity via unit-capacity max-flow on the vertex-split network.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn arc(&mut self, a: usize, b: usize, c: u32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// Edmonds-Karp, stopping once the flow reaches `bound`.
    fn max_flow(&mut self, s: usize, t: usize, bound: usize) -> usize {
        let mut flow = 0;
        let nodes = self.head.len();
        let mut pred = vec![usize::MAX; nodes];
        while flow < bound {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            while let Some(x) = queue.pop_front() {
                for &e in &self.head[x] {
                    let y = self.to[e];
                    if self.cap[e] > 0 && pred[y] == usize::MAX && y != s {
                        pred[y] = e;
                        if y == t {
                            reached = true;
                            break;
                        }
                        queue.push_back(y);
                    }
                }
                if reached {
                    break;
                }
            }
            if !reached {
                break;
            }
            let mut y = t;
            while y != s {
                let e = pred[y];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                y = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

fn split_network(g: &Graph, s: usize, t: usize) -> FlowNet {
    let n = g.n();
    let big = n as u32 + 1;
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        net.arc(2 * v, 2 * v + 1, c);
    }
    for (u, v) in g.edges() {
        net.arc(2 * u + 1, 2 * v, 1);
        net.arc(2 * v + 1, 2 * u, 1);
    }
    net
}

/// Maximum number of internally vertex-disjoint `s`–`t` paths for a
/// non-adjacent pair, capped at `bound`.
pub fn local_vertex_connectivity(g: &Graph, s: usize, t: usize, bound: usize) -> Result<usize> {
    let n = g.n();
    for x in [s, t] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if s == t || g.has_edge(s, t) {
        return Err(Error::InvalidArgument(format!(
            "local connectivity needs distinct non-adjacent vertices, got ({s}, {t})"
        )));
    }
    let mut net = split_network(g, s, t);
    Ok(net.max_flow(2 * s + 1, 2 * t, bound))
}

/// `κ(G)`: the fewest vertices whose removal disconnects `G` or leaves a
/// single vertex. `κ(K_n) = n - 1`, and graphs on at most one vertex have
/// `κ = 0`.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = n - 1;
    // some vertex among the first best+1 lies outside a minimum separator,
    // and is non-adjacent to a vertex on the far side of it
    let mut i = 0;
    while i <= best && i < n {
        for j in 0..n {
            if j == i || g.has_edge(i, j) {
                continue;
            }
            let k = local_vertex_connectivity(g, i, j, best).expect("valid pair");
            best = best.min(k);
        }
        i += 1;
    }
    best
}
