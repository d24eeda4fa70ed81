//! Finite simple graphs with dense vertex ids.
//!
//! A [`Graph`] is immutable once built. Edges are kept as a sorted,
//! deduplicated list; for undirected kinds every pair is stored as
//! `(min, max)`. The position of an edge in [`Graph::edges`] is its edge id,
//! which is what edge-mode occurrence families and edge orbits refer to.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One of the four supported graph kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphKind {
    pub directed: bool,
    pub loops_allowed: bool,
}

impl GraphKind {
    pub const UNDIRECTED: GraphKind = GraphKind { directed: false, loops_allowed: false };
    pub const UNDIRECTED_LOOPS: GraphKind = GraphKind { directed: false, loops_allowed: true };
    pub const DIRECTED: GraphKind = GraphKind { directed: true, loops_allowed: false };
    pub const DIRECTED_LOOPS: GraphKind = GraphKind { directed: true, loops_allowed: true };
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    kind: GraphKind,
    n: usize,
    edges: Vec<(usize, usize)>,
    // Row-major adjacency bitset, `words` u64s per vertex; arcs only, loops included.
    words: usize,
    adj: Vec<u64>,
    // Neighbour lists exclude loops. For undirected kinds `out_nbrs == in_nbrs`.
    out_nbrs: Vec<Vec<usize>>,
    in_nbrs: Vec<Vec<usize>>,
    loops: Vec<bool>,
}

impl Graph {
    /// Builds a graph. Duplicate edges merge silently; for undirected kinds
    /// `(u, v)` and `(v, u)` are the same edge.
    pub fn new(kind: GraphKind, n: usize, edge_list: &[(usize, usize)]) -> Result<Graph> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::OutOfRange { id, n });
                }
            }
            if u == v && !kind.loops_allowed {
                return Err(Error::LoopForbidden(u));
            }
            edges.push(if kind.directed { (u, v) } else { (u.min(v), u.max(v)) });
        }
        edges.sort_unstable();
        edges.dedup();

        let words = n.div_ceil(64).max(1);
        let mut adj = vec![0u64; n * words];
        let mut out_nbrs = vec![Vec::new(); n];
        let mut in_nbrs = vec![Vec::new(); n];
        let mut loops = vec![false; n];
        let set = |adj: &mut Vec<u64>, a: usize, b: usize| adj[a * words + b / 64] |= 1 << (b % 64);
        for &(u, v) in &edges {
            if u == v {
                loops[u] = true;
                set(&mut adj, u, u);
                continue;
            }
            set(&mut adj, u, v);
            out_nbrs[u].push(v);
            in_nbrs[v].push(u);
            if !kind.directed {
                set(&mut adj, v, u);
                out_nbrs[v].push(u);
                in_nbrs[u].push(v);
            }
        }
        for list in out_nbrs.iter_mut().chain(in_nbrs.iter_mut()) {
            list.sort_unstable();
        }
        Ok(Graph { kind, n, edges, words, adj, out_nbrs, in_nbrs, loops })
    }

    /// Graph with `n` vertices and no edges.
    pub fn edgeless(kind: GraphKind, n: usize) -> Graph {
        Graph::new(kind, n, &[]).expect("edgeless graph is always valid")
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn is_directed(&self) -> bool {
        self.kind.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical sorted order; the index is the edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Whether the arc `u -> v` exists (either orientation for undirected kinds).
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops[v]
    }

    pub fn loop_count(&self) -> usize {
        self.loops.iter().filter(|&&l| l).count()
    }

    /// Id of the edge `(u, v)`, canonicalised for undirected kinds.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let key = if self.kind.directed { (u, v) } else { (u.min(v), u.max(v)) };
        self.edges.binary_search(&key).ok()
    }

    /// Out-neighbours (all neighbours when undirected), loops excluded.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_nbrs[v]
    }

    /// In-neighbours (all neighbours when undirected), loops excluded.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_nbrs[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_nbrs[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_nbrs[v].len()
    }

    /// Number of distinct neighbours ignoring direction and loops.
    pub fn degree(&self, v: usize) -> usize {
        if self.kind.directed {
            self.undirected_neighbors(v).len()
        } else {
            self.out_nbrs[v].len()
        }
    }

    /// Neighbours ignoring direction, sorted, loops excluded.
    pub fn undirected_neighbors(&self, v: usize) -> Vec<usize> {
        if !self.kind.directed {
            return self.out_nbrs[v].clone();
        }
        let mut all: Vec<usize> = self.out_nbrs[v].iter().chain(&self.in_nbrs[v]).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// The subgraph induced on `s`, relabelled by the order-preserving map
    /// from the sorted vertex set onto `0..|s|`.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Graph> {
        let mut verts = s.to_vec();
        verts.sort_unstable();
        verts.dedup();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            if v >= self.n {
                return Err(Error::OutOfRange { id: v, n: self.n });
            }
            index[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Graph::new(self.kind, verts.len(), &edges)
    }

    /// Weakly connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in self.out_nbrs[v].iter().chain(&self.in_nbrs[v]) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected in the weak sense. The empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        if self.kind.directed != other.kind.directed {
            return Err(Error::KindMismatch { host: self.kind.directed, pattern: other.kind.directed });
        }
        let kind = GraphKind {
            directed: self.kind.directed,
            loops_allowed: self.kind.loops_allowed || other.kind.loops_allowed,
        };
        let shift = self.n;
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Graph::new(kind, self.n + other.n, &edges)
    }

    /// Whether `images` (a bijection on the vertices) preserves adjacency in
    /// both directions, including loops.
    pub fn is_automorphism(&self, images: &[usize]) -> bool {
        if images.len() != self.n {
            return false;
        }
        // A bijection mapping every edge to an edge maps E onto E (finite sets).
        self.edges.iter().all(|&(u, v)| self.has_edge(images[u], images[v]))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("kind", &self.kind)
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}
