//! Brute-force oracles, written independently of the library's solvers.
#![allow(dead_code)]

use hamres::Graph;

fn adj(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Calls `f` on every permutation of `items` (Heap's algorithm); stops
/// early when `f` returns true.
fn any_permutation(items: &mut [usize], f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn heap(k: usize, items: &mut [usize], f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k <= 1 {
            return f(items);
        }
        for i in 0..k - 1 {
            if heap(k - 1, items, f) {
                return true;
            }
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        heap(k - 1, items, f)
    }
    let k = items.len();
    heap(k, items, f)
}

/// Hamilton cycle by trying every ordering of vertices `1..n` after `0`.
pub fn perm_hamiltonian(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let a = adj(g);
    let mut rest: Vec<usize> = (1..n).collect();
    any_permutation(&mut rest, &mut |p| {
        a[0][p[0]] && a[p[n - 2]][0] && p.windows(2).all(|w| a[w[0]][w[1]])
    })
}

/// Hamilton path from `u` to `v` by trying every ordering.
pub fn perm_hamilton_path(g: &Graph, u: usize, v: usize) -> bool {
    let n = g.n();
    let a = adj(g);
    if n == 2 {
        return a[u][v];
    }
    let mut inner: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
    any_permutation(&mut inner, &mut |p| {
        a[u][p[0]] && a[p[p.len() - 1]][v] && p.windows(2).all(|w| a[w[0]][w[1]])
    })
}

pub fn perm_hamilton_connected(g: &Graph) -> bool {
    let n = g.n();
    (0..n).all(|u| (u + 1..n).all(|v| perm_hamilton_path(g, u, v)))
}

/// Longest simple path (in edges) by depth-first search from every vertex.
pub fn dfs_longest_path(g: &Graph) -> usize {
    let a = adj(g);
    let n = g.n();
    fn go(a: &[Vec<bool>], at: usize, seen: &mut Vec<bool>, len: usize, best: &mut usize) {
        *best = (*best).max(len);
        for w in 0..a.len() {
            if a[at][w] && !seen[w] {
                seen[w] = true;
                go(a, w, seen, len + 1, best);
                seen[w] = false;
            }
        }
    }
    let mut best = 0;
    for s in 0..n {
        let mut seen = vec![false; n];
        seen[s] = true;
        go(&a, s, &mut seen, 0, &mut best);
    }
    best
}

/// Maximum matching size by recursion on the lowest unmatched vertex.
pub fn naive_matching(g: &Graph) -> usize {
    let a = adj(g);
    fn go(a: &[Vec<bool>], used: u64, from: usize) -> usize {
        let n = a.len();
        let Some(v) = (from..n).find(|&v| used >> v & 1 == 0) else {
            return 0;
        };
        // leave v unmatched
        let mut best = go(a, used | 1 << v, v + 1);
        for w in v + 1..n {
            if a[v][w] && used >> w & 1 == 0 {
                best = best.max(1 + go(a, used | 1 << v | 1 << w, v + 1));
            }
        }
        best
    }
    go(&a, 0, 0)
}

pub fn naive_perfect_matching(g: &Graph) -> bool {
    g.n() % 2 == 0 && 2 * naive_matching(g) == g.n()
}

/// Independence number by checking every vertex subset.
pub fn naive_alpha(g: &Graph) -> usize {
    let n = g.n();
    let a = adj(g);
    (0u64..1 << n)
        .filter(|&s| (0..n).all(|u| s >> u & 1 == 0 || (u + 1..n).all(|v| s >> v & 1 == 0 || !a[u][v])))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn connected_without(a: &[Vec<bool>], removed: u64) -> bool {
    let n = a.len();
    let alive: Vec<usize> = (0..n).filter(|&v| removed >> v & 1 == 0).collect();
    let Some(&start) = alive.first() else {
        return true;
    };
    let mut seen = removed | 1 << start;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for y in 0..n {
            if a[x][y] && seen >> y & 1 == 0 {
                seen |= 1 << y;
                stack.push(y);
            }
        }
    }
    seen.count_ones() as usize == n
}

/// Smallest vertex set whose removal disconnects the graph or leaves one
/// vertex; `n - 1` for complete graphs.
pub fn naive_kappa(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    let a = adj(g);
    let mut best = n - 1;
    for s in 0u64..1 << n {
        let size = s.count_ones() as usize;
        if size < best && size <= n - 2 && !connected_without(&a, s) {
            best = size;
        }
    }
    best
}

/// Every nonempty `U` with `|U| <= k` has `|N(U) \ U| >= alpha |U|`.
pub fn naive_expander(g: &Graph, k: usize, alpha_num: usize, alpha_den: usize) -> bool {
    let n = g.n();
    let a = adj(g);
    (1u64..1 << n).all(|s| {
        let size = s.count_ones() as usize;
        if size > k {
            return true;
        }
        let outside = (0..n)
            .filter(|&w| s >> w & 1 == 0 && (0..n).any(|u| s >> u & 1 == 1 && a[u][w]))
            .count();
        outside * alpha_den >= alpha_num * size
    })
}

/// Booster test straight from the definition, with permutation and DFS
/// oracles.
pub fn naive_is_booster(g: &Graph, u: usize, v: usize) -> bool {
    let h = g.with_edge(u, v).unwrap();
    perm_hamiltonian(&h) || dfs_longest_path(&h) > dfs_longest_path(g)
}

/// Smallest number of edge deletions destroying `holds`, by trying all
/// edge subsets in order of size.
pub fn naive_resilience(g: &Graph, holds: impl Fn(&Graph) -> bool) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    assert!(m <= 20, "too many edges for subset enumeration");
    let mut masks: Vec<u32> = (0u32..1 << m).collect();
    masks.sort_by_key(|s| (s.count_ones(), *s));
    for s in masks {
        let mut h = g.clone();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if s >> i & 1 == 1 {
                h.remove_edge(u, v).unwrap();
            }
        }
        if !holds(&h) {
            return s.count_ones() as usize;
        }
    }
    unreachable!("removing every edge destroys any property needing an edge")
}
