//! Plain breadth-first-search ground truth on maps and trees, independent of
//! the geodesic state machine.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::bijection::RotationMap;
use crate::error::{Error, Result};
use crate::tree::{ColouredPlaneTree, NodeId};

pub const UNREACHABLE: u32 = u32::MAX;

/// Undirected graph in compressed adjacency form.
#[derive(Debug, Clone)]
pub struct Graph {
    off: Vec<usize>,
    adj: Vec<u32>,
}

impl Graph {
    pub fn from_map(map: &RotationMap) -> Self {
        Self::from_lists(map.rotations().iter().map(|r| r.as_slice()))
    }

    /// The tree itself as a graph (parent-child edges only).
    pub fn from_tree(tree: &ColouredPlaneTree) -> Self {
        let n = tree.len();
        let mut off = Vec::with_capacity(n + 1);
        let mut adj = Vec::with_capacity(2 * n);
        off.push(0);
        for v in tree.nodes() {
            if let Some(p) = tree.parent(v) {
                adj.push(p.0 as u32);
            }
            adj.extend(tree.children(v).iter().map(|c| c.0 as u32));
            off.push(adj.len());
        }
        Graph { off, adj }
    }

    fn from_lists<'a>(lists: impl Iterator<Item = &'a [usize]>) -> Self {
        let mut off = vec![0];
        let mut adj = Vec::new();
        for l in lists {
            adj.extend(l.iter().map(|&w| w as u32));
            off.push(adj.len());
        }
        Graph { off, adj }
    }

    pub fn len(&self) -> usize {
        self.off.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.adj[self.off[v]..self.off[v + 1]]
    }

    pub fn without_vertices(&self, removed: &[usize]) -> Graph {
        let mut gone = vec![false; self.len()];
        for &r in removed {
            gone[r] = true;
        }
        let mut off = vec![0];
        let mut adj = Vec::with_capacity(self.adj.len());
        for v in 0..self.len() {
            if !gone[v] {
                adj.extend(self.neighbours(v).iter().filter(|&&w| !gone[w as usize]));
            }
            off.push(adj.len());
        }
        Graph { off, adj }
    }

    pub fn bfs(&self, source: usize) -> DistanceTable {
        let mut dist = vec![UNREACHABLE; self.len()];
        let mut queue = VecDeque::with_capacity(self.len());
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let next = dist[v] + 1;
            for &w in self.neighbours(v) {
                let w = w as usize;
                if dist[w] == UNREACHABLE {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        DistanceTable { source, dist }
    }

    /// Exact diameter by breadth-first search from every vertex.
    pub fn diameter_exact(&self) -> Result<usize> {
        if self.is_empty() {
            return Ok(0);
        }
        if !self.bfs(0).all_reachable() {
            return Err(Error::Disconnected);
        }
        Ok((0..self.len())
            .into_par_iter()
            .map(|s| self.bfs(s).eccentricity())
            .max()
            .unwrap_or(0))
    }

    /// Double-sweep lower bound: BFS from `start`, then from the farthest
    /// vertex found. Exact on trees.
    pub fn diameter_double_sweep(&self, start: usize) -> Result<usize> {
        let first = self.bfs(start);
        if !first.all_reachable() {
            return Err(Error::Disconnected);
        }
        let far = first.farthest();
        Ok(self.bfs(far).eccentricity())
    }
}

/// Single-source graph distances in edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    pub source: usize,
    pub dist: Vec<u32>,
}

impl DistanceTable {
    pub fn get(&self, v: usize) -> Option<u32> {
        match self.dist[v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn all_reachable(&self) -> bool {
        self.dist.iter().all(|&d| d != UNREACHABLE)
    }

    pub fn eccentricity(&self) -> usize {
        self.dist.iter().filter(|&&d| d != UNREACHABLE).max().copied().unwrap_or(0) as usize
    }

    fn farthest(&self) -> usize {
        let mut best = self.source;
        for (v, &d) in self.dist.iter().enumerate() {
            if d != UNREACHABLE && d > self.dist[best] {
                best = v;
            }
        }
        best
    }
}

pub fn bfs_distances(map: &RotationMap, source: usize) -> DistanceTable {
    Graph::from_map(map).bfs(source)
}

/// Exact diameter of a connected map.
pub fn diameter(map: &RotationMap) -> Result<usize> {
    Graph::from_map(map).diameter_exact()
}

/// A black strict ancestor `w` of `v` for which
/// `|d_M(v,w) - d_M(v) + d_M(w)| > 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AncestorViolation {
    pub v: NodeId,
    pub w: NodeId,
    pub gap: i64,
}

/// Checks `|d_M(v,w) - d_M(v) + d_M(w)| <= 2` for every vertex `v` and every
/// black strict ancestor `w` of `v`. `map` must be `Ψ(tree)`.
pub fn black_ancestor_bound_check(
    tree: &ColouredPlaneTree,
    map: &RotationMap,
) -> Vec<AncestorViolation> {
    let graph = Graph::from_map(map);
    let from_root = graph.bfs(0);
    let mut out = Vec::new();
    for w in tree.nodes().filter(|&w| tree.colour(w).is_black()) {
        let from_w = graph.bfs(w.0);
        for v in tree.subtree(w).skip(1) {
            let gap = from_w.dist[v.0] as i64 - from_root.dist[v.0] as i64
                + from_root.dist[w.0] as i64;
            if gap.abs() > 2 {
                out.push(AncestorViolation { v, w, gap });
            }
        }
    }
    out
}

/// A separating pair `(v, w)` for `u` whose consequences fail in `Ψ(τ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingViolation {
    pub u: NodeId,
    pub v: NodeId,
    pub w: NodeId,
    pub reason: &'static str,
}

/// For every separating pair `(v, w)` for `u`: `d_M(u) >= max(d_M(v), d_M(w))`,
/// and deleting `v` and `w` from the map either disconnects `u` from the root
/// or strictly lengthens its distance.
pub fn separating_pair_check(tree: &ColouredPlaneTree, map: &RotationMap) -> Vec<SeparatingViolation> {
    let graph = Graph::from_map(map);
    let d = graph.bfs(0).dist;
    let mut out = Vec::new();
    for v in tree.nodes() {
        let kids = tree.children(v);
        for (i, &c) in kids.iter().enumerate() {
            for &w in &kids[i + 1..] {
                // every u below c has (v, w) as a separating pair
                let cut = (v != tree.root()).then(|| graph.without_vertices(&[v.0, w.0]).bfs(0));
                for u in tree.subtree(c) {
                    debug_assert!(tree.separating_pair_for(u, v, w));
                    if d[u.0] < d[v.0].max(d[w.0]) {
                        out.push(SeparatingViolation { u, v, w, reason: "distance below pair" });
                    }
                    if let Some(cut) = &cut {
                        let after = cut.dist[u.0];
                        if after != UNREACHABLE && after <= d[u.0] {
                            out.push(SeparatingViolation { u, v, w, reason: "geodesic avoids pair" });
                        }
                    }
                }
            }
        }
    }
    out
}
