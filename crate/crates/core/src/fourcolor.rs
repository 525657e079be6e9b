//! Proper four-colorings of simple planar graphs.
//!
//! Vertices are peeled in smallest-last order (a planar graph always has a
//! vertex of degree at most five) and reinserted greedily; a vertex whose
//! neighbors already use all four colors is freed by a Kempe-chain swap.
//! If no single swap frees a color, the whole graph is colored by DSATUR
//! backtracking instead.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::plane::{PlaneMultigraph, Vertex};

/// An undirected simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<Vertex>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list; duplicates collapse, loops are
    /// dropped.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        SimpleGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        (0..self.adj.len())
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |&&v| u < v)
                    .map(move |&v| (u, v))
            })
            .collect()
    }
}

/// Collapses parallel edges. Self-loops are rejected.
pub fn to_simple(g: &PlaneMultigraph) -> Result<SimpleGraph> {
    if let Some(e) = g.self_loops().next() {
        return Err(Error::SelfLoopPresent(g.edge_label(e)));
    }
    Ok(SimpleGraph {
        adj: g.vertices().map(|v| g.adj(v).to_vec()).collect(),
    })
}

/// Colors in `1..=4`, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourColoring {
    colors: Vec<u8>,
}

impl FourColoring {
    pub fn new(colors: Vec<u8>) -> Self {
        FourColoring { colors }
    }

    pub fn color(&self, v: Vertex) -> u8 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors in use.
    pub fn used(&self) -> usize {
        let mut seen = [false; 256];
        for &c in &self.colors {
            seen[c as usize] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }

    /// Renames colors by `perm[c - 1]`.
    pub fn permute(&mut self, perm: [u8; 4]) {
        for c in &mut self.colors {
            *c = perm[*c as usize - 1];
        }
    }
}

pub fn verify_proper(g: &SimpleGraph, c: &FourColoring) -> bool {
    c.len() == g.vertex_count()
        && c.colors.iter().all(|&x| (1..=4).contains(&x))
        && g.edges().iter().all(|&(u, v)| c.colors[u] != c.colors[v])
}

/// Smallest-last order: vertices removed one at a time by minimum remaining
/// degree (ties by smallest id). Returns the removal order.
fn smallest_last(g: &SimpleGraph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.adj[v].len()).collect();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<std::collections::BTreeSet<Vertex>> = vec![Default::default(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let d = (0..buckets.len())
            .find(|&d| !buckets[d].is_empty())
            .expect("vertex left");
        let v = *buckets[d].iter().next().unwrap();
        buckets[d].remove(&v);
        removed[v] = true;
        order.push(v);
        for &u in &g.adj[v] {
            if !removed[u] {
                buckets[deg[u]].remove(&u);
                deg[u] -= 1;
                buckets[deg[u]].insert(u);
            }
        }
    }
    order
}

/// The (a, b) Kempe chain containing `start` among colored vertices.
fn kempe_chain(g: &SimpleGraph, colors: &[u8], start: Vertex, a: u8, b: u8) -> Vec<Vertex> {
    let mut seen = vec![false; g.vertex_count()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut chain = Vec::new();
    while let Some(x) = queue.pop_front() {
        chain.push(x);
        for &y in &g.adj[x] {
            if !seen[y] && (colors[y] == a || colors[y] == b) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    chain
}

fn free_color(g: &SimpleGraph, colors: &[u8], v: Vertex) -> Option<u8> {
    let mut used = [false; 5];
    for &u in &g.adj[v] {
        used[colors[u] as usize] = true;
    }
    (1..=4).find(|&c| !used[c as usize])
}

/// Frees a color at `v` with one Kempe swap, if possible.
fn kempe_free(g: &SimpleGraph, colors: &mut [u8], v: Vertex) -> Option<u8> {
    for a in 1..=4u8 {
        for b in 1..=4u8 {
            if a == b {
                continue;
            }
            // Swap every (a, b) chain through an a-colored neighbor; it
            // works when none of those chains reaches a b-colored neighbor.
            let mut chains = Vec::new();
            let mut blocked = false;
            let mut covered = vec![false; g.vertex_count()];
            for &u in &g.adj[v] {
                if colors[u] != a || covered[u] {
                    continue;
                }
                let chain = kempe_chain(g, colors, u, a, b);
                if chain.iter().any(|&x| colors[x] == b && g.has_edge(x, v)) {
                    blocked = true;
                    break;
                }
                for &x in &chain {
                    covered[x] = true;
                }
                chains.push(chain);
            }
            if blocked || chains.is_empty() {
                continue;
            }
            for chain in chains {
                for x in chain {
                    colors[x] = if colors[x] == a { b } else { a };
                }
            }
            return Some(a);
        }
    }
    None
}

fn dsatur(g: &SimpleGraph, k: u8, max_nodes: u64) -> Option<Vec<u8>> {
    let n = g.vertex_count();
    let mut colors = vec![0u8; n];
    let mut nodes = 0u64;
    fn go(
        g: &SimpleGraph,
        colors: &mut [u8],
        k: u8,
        left: usize,
        nodes: &mut u64,
        max: u64,
    ) -> Option<bool> {
        if left == 0 {
            return Some(true);
        }
        *nodes += 1;
        if *nodes > max {
            return None;
        }
        let mut best: Option<(usize, usize, Vertex)> = None;
        for v in 0..colors.len() {
            if colors[v] != 0 {
                continue;
            }
            let mut seen = [false; 256];
            for &u in &g.adj[v] {
                seen[colors[u] as usize] = true;
            }
            let sat = (1..=k as usize).filter(|&c| seen[c]).count();
            let key = (sat, g.adj[v].len(), v);
            if best.is_none_or(|b| (key.0, key.1) > (b.0, b.1)) {
                best = Some(key);
            }
        }
        let (_, _, v) = best.unwrap();
        for c in 1..=k {
            if g.adj[v].iter().all(|&u| colors[u] != c) {
                colors[v] = c;
                match go(g, colors, k, left - 1, nodes, max) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                colors[v] = 0;
            }
        }
        Some(false)
    }
    match go(g, &mut colors, k, n, &mut nodes, max_nodes) {
        Some(true) => Some(colors),
        _ => None,
    }
}

/// Exhaustive search for a proper coloring with at most `k` colors.
/// `Ok(None)` means none exists; exceeding `max_nodes` is an error.
pub fn color_exhaustive(g: &SimpleGraph, k: u8, max_nodes: u64) -> Result<Option<Vec<u8>>> {
    let n = g.vertex_count();
    let mut colors = vec![0u8; n];
    let mut nodes = 0u64;
    fn go(
        g: &SimpleGraph,
        colors: &mut [u8],
        k: u8,
        left: usize,
        nodes: &mut u64,
        max: u64,
    ) -> Option<bool> {
        if left == 0 {
            return Some(true);
        }
        *nodes += 1;
        if *nodes > max {
            return None;
        }
        let v = (0..colors.len())
            .filter(|&v| colors[v] == 0)
            .max_by_key(|&v| {
                let mut seen = [false; 256];
                for &u in &g.adj[v] {
                    seen[colors[u] as usize] = true;
                }
                (
                    (1..=k as usize).filter(|&c| seen[c]).count(),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        // Symmetry: a fresh vertex may only open one new color.
        let top = colors.iter().copied().max().unwrap_or(0);
        for c in 1..=k.min(top + 1) {
            if g.adj[v].iter().all(|&u| colors[u] != c) {
                colors[v] = c;
                match go(g, colors, k, left - 1, nodes, max) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                colors[v] = 0;
            }
        }
        Some(false)
    }
    match go(g, &mut colors, k, n, &mut nodes, max_nodes) {
        Some(true) => Ok(Some(colors)),
        Some(false) => Ok(None),
        None => Err(Error::BudgetExceeded(format!(
            "{k}-coloring search exceeded {max_nodes} nodes"
        ))),
    }
}

/// A proper coloring with colors in `1..=4`; deterministic for a given
/// graph.
pub fn four_color(g: &SimpleGraph) -> Result<FourColoring> {
    let order = smallest_last(g);
    let mut colors = vec![0u8; g.vertex_count()];
    let mut stuck = false;
    for &v in order.iter().rev() {
        let c = match free_color(g, &colors, v) {
            Some(c) => Some(c),
            None => kempe_free(g, &mut colors, v),
        };
        match c {
            Some(c) => colors[v] = c,
            None => {
                stuck = true;
                break;
            }
        }
    }
    if stuck {
        colors = dsatur(g, 4, u64::MAX).ok_or(Error::NotFourColorable)?;
    }
    let c = FourColoring::new(colors);
    if !verify_proper(g, &c) {
        return Err(Error::Internal("four-coloring is not proper".into()));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{doubled_k4_family, icosahedron, polygon, stacked_triangulation};

    fn k4() -> SimpleGraph {
        SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn simple_views() {
        let d = doubled_k4_family(1).unwrap();
        assert_eq!(to_simple(&d).unwrap(), k4());
        let c = polygon(5);
        assert_eq!(to_simple(&c).unwrap().edge_count(), 5);
        let two =
            crate::plg::parse_plg("plg 1\nv 0\nv 1\ne 0 0 1\ne 1 0 1\nrot 0 0+ 1+\nrot 1 1- 0-\n")
                .unwrap();
        assert_eq!(to_simple(&two).unwrap().edge_count(), 1);
    }

    #[test]
    fn k4_uses_all_colors() {
        let c = four_color(&k4()).unwrap();
        let mut cs = c.colors().to_vec();
        cs.sort_unstable();
        assert_eq!(cs, vec![1, 2, 3, 4]);
        assert!(verify_proper(&k4(), &c));
    }

    #[test]
    fn even_cycle_two_colors() {
        let g = to_simple(&polygon(8)).unwrap();
        let c = four_color(&g).unwrap();
        assert!(verify_proper(&g, &c));
        assert_eq!(c.used(), 2);
    }

    #[test]
    fn icosahedron_needs_four() {
        let g = to_simple(&icosahedron()).unwrap();
        let c = four_color(&g).unwrap();
        assert!(verify_proper(&g, &c));
        assert_eq!(color_exhaustive(&g, 3, 10_000_000).unwrap(), None);
        assert!(color_exhaustive(&g, 4, 10_000_000).unwrap().is_some());
    }

    #[test]
    fn improper_detected() {
        let g = SimpleGraph::from_edges(2, &[(0, 1)]);
        assert!(!verify_proper(&g, &FourColoring::new(vec![2, 2])));
        assert!(verify_proper(&g, &FourColoring::new(vec![2, 3])));
    }

    #[test]
    fn triangulations_color() {
        for seed in 0..20 {
            let t = stacked_triangulation(120, seed).unwrap();
            let g = to_simple(&t).unwrap();
            assert!(verify_proper(&g, &four_color(&g).unwrap()));
        }
    }

    #[test]
    fn dsatur_agrees_on_small_graphs() {
        let g = to_simple(&icosahedron()).unwrap();
        let c = dsatur(&g, 4, u64::MAX).unwrap();
        assert!(verify_proper(&g, &FourColoring::new(c)));
    }
}
