//! Graph generators for the worked examples and extremal families.
//!
//! Vertex numbering is fixed per generator and documented on each function.

use std::collections::BTreeMap;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphKind};
use crate::{Error, Result};

/// Cycle on `0..l`, edges `{i, i+1 mod l}`.
pub fn cycle(l: usize) -> Result<Graph> {
    if l < 3 {
        return Err(Error::BadParam(format!("cycle length {l} < 3")));
    }
    let edges: Vec<_> = (0..l).map(|i| (i, (i + 1) % l)).collect();
    Graph::new(GraphKind::UNDIRECTED, l, &edges)
}

/// Path with `l` edges on `0..=l`.
pub fn path(l: usize) -> Graph {
    let edges: Vec<_> = (0..l).map(|i| (i, i + 1)).collect();
    Graph::new(GraphKind::UNDIRECTED, l + 1, &edges).expect("path edges are in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    None,
    Out,
    In,
}

/// Star `K_{1,l}`: centre 0, leaves `1..=l`. `Out` directs arcs away from the
/// centre, `In` towards it.
pub fn star(l: usize, orientation: Orientation) -> Result<Graph> {
    if l == 0 {
        return Err(Error::BadParam("star needs at least one leaf".into()));
    }
    let (kind, edges): (_, Vec<_>) = match orientation {
        Orientation::None => (GraphKind::UNDIRECTED, (1..=l).map(|i| (0, i)).collect()),
        Orientation::Out => (GraphKind::DIRECTED, (1..=l).map(|i| (0, i)).collect()),
        Orientation::In => (GraphKind::DIRECTED, (1..=l).map(|i| (i, 0)).collect()),
    };
    Graph::new(kind, l + 1, &edges)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(GraphKind::UNDIRECTED, n, &edges).expect("complete graph edges are in range")
}

/// Both arcs between every pair of distinct vertices.
pub fn complete_digraph(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    Graph::new(GraphKind::DIRECTED, n, &edges).expect("complete digraph arcs are in range")
}

/// `K_{m,l}` with parts `0..m` and `m..m+l`. With `directed_across` every
/// arc goes from the first part to the second.
pub fn complete_bipartite(m: usize, l: usize, directed_across: bool) -> Graph {
    let kind = if directed_across { GraphKind::DIRECTED } else { GraphKind::UNDIRECTED };
    let edges: Vec<_> = (0..m).flat_map(|u| (m..m + l).map(move |v| (u, v))).collect();
    Graph::new(kind, m + l, &edges).expect("bipartite edges are in range")
}

/// The 3-cube: vertices are 3-bit words, adjacent when they differ in one bit.
pub fn cube_q3() -> Graph {
    let edges: Vec<_> = (0..8usize)
        .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    Graph::new(GraphKind::UNDIRECTED, 8, &edges).expect("cube edges are in range")
}

/// Petersen graph: outer 5-cycle `0..5`, spokes `{i, i+5}`, inner pentagram
/// `{i+5, (i+2 mod 5)+5}`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(GraphKind::UNDIRECTED, 10, &edges).expect("petersen edges are in range")
}

/// The chair: `K_{1,3}` with a pendant edge at one leaf. Vertices
/// `v=0, a=1, b=2, c=3, d=4`; edges `va, vb, vc, ad`.
pub fn chair() -> Graph {
    Graph::new(GraphKind::UNDIRECTED, 5, &[(0, 1), (0, 2), (0, 3), (1, 4)]).expect("chair edges are in range")
}

/// Circulant graph on `Z_n` joining `i` and `i ± s` for every jump `s`.
pub fn circulant(n: usize, jumps: &[usize]) -> Result<Graph> {
    if n < 3 {
        return Err(Error::BadParam(format!("circulant order {n} < 3")));
    }
    let mut edges = Vec::new();
    for &s in jumps {
        if s == 0 || s % n == 0 {
            return Err(Error::BadParam(format!("jump {s} would create loops")));
        }
        edges.extend((0..n).map(|i| (i, (i + s) % n)));
    }
    Graph::new(GraphKind::UNDIRECTED, n, &edges)
}

/// A vertex-transitive graph on the vertices of `k` that contains `k`: the
/// complete graph (or complete digraph), with a loop at every vertex when
/// `k` has a loop.
pub fn vt_completion(k: &Graph) -> Graph {
    let n = k.vertex_count();
    let base = if k.is_directed() { complete_digraph(n) } else { complete(n) };
    if k.loop_count() == 0 {
        return base;
    }
    let mut edges = base.edges().to_vec();
    edges.extend((0..n).map(|v| (v, v)));
    let kind = GraphKind { directed: k.is_directed(), loops_allowed: true };
    Graph::new(kind, n, &edges).expect("loops allowed")
}

/// `m` vertex-disjoint copies of `k`; copy `i` occupies `i·|V(k)| .. (i+1)·|V(k)|`.
pub fn disjoint_copies(k: &Graph, m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::BadParam("need at least one copy".into()));
    }
    let n = k.vertex_count();
    let edges: Vec<_> = (0..m)
        .flat_map(|i| k.edges().iter().map(move |&(u, v)| (u + i * n, v + i * n)))
        .collect();
    Graph::new(k.kind(), m * n, &edges)
}

/// `disjoint_copies(k, m)` plus, for every vertex `j` and consecutive copies
/// `i, i+1`, a fresh path of `chain_len` edges from vertex `j` of copy `i` to
/// vertex `j` of copy `i+1` (arcs point towards copy `i+1` when directed).
/// Chain interiors are numbered after the copies, by `i`, then `j`, then
/// position along the chain.
///
/// The chain length is only checked to be positive; lengths not exceeding
/// `|V(k)|` are allowed but logged, since the extremal argument needs longer chains.
pub fn chained_copies(k: &Graph, m: usize, chain_len: usize) -> Result<Graph> {
    if chain_len == 0 {
        return Err(Error::BadParam("chain length must be positive".into()));
    }
    let n = k.vertex_count();
    if chain_len <= n && m > 1 {
        warn!("chain length {chain_len} does not exceed the pattern's {n} vertices");
    }
    let copies = disjoint_copies(k, m)?;
    let mut edges = copies.edges().to_vec();
    let mut next = m * n;
    for i in 0..m.saturating_sub(1) {
        for j in 0..n {
            let mut prev = i * n + j;
            for _ in 1..chain_len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, (i + 1) * n + j));
        }
    }
    Graph::new(k.kind(), next, &edges)
}

/// `m` copies of the star `K_{1,l}` where leaf `j` of copy `i` is joined to
/// leaf `j` of copy `i+1`. Copy `i` has centre `i·(l+1)` and leaves
/// `i·(l+1)+1 ..= i·(l+1)+l`. Leaves end up with degree at most 3, so for
/// `l > 3` the only `K_{1,l}` copies are the stars themselves.
pub fn star_ladder(l: usize, m: usize) -> Result<Graph> {
    if l == 0 || m == 0 {
        return Err(Error::BadParam("star ladder needs l ≥ 1 and m ≥ 1".into()));
    }
    let s = star(l, Orientation::None)?;
    let mut edges = disjoint_copies(&s, m)?.edges().to_vec();
    for i in 0..m - 1 {
        for j in 1..=l {
            edges.push((i * (l + 1) + j, (i + 1) * (l + 1) + j));
        }
    }
    Graph::new(GraphKind::UNDIRECTED, m * (l + 1), &edges)
}

/// `m` stars `K_{1,l}` whose centres are joined in a path. Kept to document
/// that joining centres does not give the extremal values (centres gain
/// degree, creating extra stars); see [`star_ladder`].
pub fn star_path(l: usize, m: usize) -> Result<Graph> {
    if l == 0 || m == 0 {
        return Err(Error::BadParam("star path needs l ≥ 1 and m ≥ 1".into()));
    }
    let s = star(l, Orientation::None)?;
    let mut edges = disjoint_copies(&s, m)?.edges().to_vec();
    edges.extend((0..m - 1).map(|i| (i * (l + 1), (i + 1) * (l + 1))));
    Graph::new(GraphKind::UNDIRECTED, m * (l + 1), &edges)
}

#[derive(Clone, Debug)]
pub struct Honeycomb {
    pub graph: Graph,
    /// Edge ids of the class `{(i,j,0), (i,j,1)}`: one third of the edges.
    pub marked: Vec<usize>,
}

/// Hexagonal lattice on the torus `Z_n × Z_n`.
///
/// Vertex `(i, j, s)` has id `s·n² + i·n + j`. Each `(i,j,0)` is adjacent to
/// `(i,j,1)`, `(i−1,j,1)` and `(i,j−1,1)`, indices mod `n`.
pub fn honeycomb_torus(n: usize) -> Result<Honeycomb> {
    if n < 2 {
        return Err(Error::BadParam(format!("honeycomb size {n} < 2 would create parallel edges")));
    }
    let id = |i: usize, j: usize, s: usize| s * n * n + (i % n) * n + (j % n);
    let mut edges = Vec::with_capacity(3 * n * n);
    let mut marked_pairs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            edges.push((id(i, j, 0), id(i, j, 1)));
            marked_pairs.push((id(i, j, 0), id(i, j, 1)));
            edges.push((id(i, j, 0), id(i + n - 1, j, 1)));
            edges.push((id(i, j, 0), id(i, j + n - 1, 1)));
        }
    }
    let graph = Graph::new(GraphKind::UNDIRECTED, 2 * n * n, &edges)?;
    let mut marked: Vec<usize> = marked_pairs
        .into_iter()
        .map(|(u, v)| graph.edge_id(u, v).expect("marked edge present"))
        .collect();
    marked.sort_unstable();
    Ok(Honeycomb { graph, marked })
}

/// A named construction with integer parameters, as used by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: String,
    pub params: BTreeMap<String, usize>,
}

impl FamilySpec {
    pub const NAMES: &'static [&'static str] = &[
        "cycle",
        "path",
        "star",
        "out-star",
        "in-star",
        "complete",
        "complete-digraph",
        "complete-bipartite",
        "directed-bipartite",
        "cube",
        "petersen",
        "chair",
        "circulant",
        "honeycomb",
        "star-ladder",
        "star-path",
        "edgeless",
        "edgeless-digraph",
    ];

    fn get(&self, key: &str) -> Result<usize> {
        self.params
            .get(key)
            .copied()
            .ok_or_else(|| Error::BadParam(format!("`{}` needs parameter `{key}`", self.name)))
    }

    /// Builds the named graph. Circulant jumps are the parameters `s1`, `s2`, ….
    pub fn build(&self) -> Result<Graph> {
        Ok(match self.name.as_str() {
            "cycle" => cycle(self.get("l")?)?,
            "path" => path(self.get("l")?),
            "star" => star(self.get("l")?, Orientation::None)?,
            "out-star" => star(self.get("l")?, Orientation::Out)?,
            "in-star" => star(self.get("l")?, Orientation::In)?,
            "complete" => complete(self.get("n")?),
            "complete-digraph" => complete_digraph(self.get("n")?),
            "complete-bipartite" => complete_bipartite(self.get("m")?, self.get("l")?, false),
            "directed-bipartite" => complete_bipartite(self.get("m")?, self.get("l")?, true),
            "cube" => cube_q3(),
            "petersen" => petersen(),
            "chair" => chair(),
            "circulant" => {
                let jumps: Vec<usize> = self
                    .params
                    .iter()
                    .filter(|(k, _)| k.starts_with('s') && k[1..].parse::<usize>().is_ok())
                    .map(|(_, &v)| v)
                    .collect();
                if jumps.is_empty() {
                    return Err(Error::BadParam("circulant needs jumps s1=…".into()));
                }
                circulant(self.get("n")?, &jumps)?
            }
            "honeycomb" => honeycomb_torus(self.get("n")?)?.graph,
            "star-ladder" => star_ladder(self.get("l")?, self.get("m")?)?,
            "star-path" => star_path(self.get("l")?, self.get("m")?)?,
            "edgeless" => Graph::edgeless(GraphKind::UNDIRECTED, self.get("n")?),
            "edgeless-digraph" => Graph::edgeless(GraphKind::DIRECTED, self.get("n")?),
            other => return Err(Error::BadParam(format!("unknown construction `{other}`"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::automorphisms;
    use crate::occurrences::{contains_subgraph, enumerate_occurrences, Mode};

    #[test]
    fn basic_shapes() {
        let c6 = cycle(6).unwrap();
        assert_eq!((c6.vertex_count(), c6.edge_count()), (6, 6));
        assert!((0..6).all(|v| c6.degree(v) == 2));
        assert!(cycle(2).is_err());

        let s = star(3, Orientation::Out).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (4, 3));
        assert_eq!(s.out_degree(0), 3);

        let k23 = complete_bipartite(2, 3, false);
        assert_eq!(k23.edge_count(), 6);
        assert_eq!(cube_q3().edge_count(), 12);
        assert_eq!(petersen().edge_count(), 15);
        assert!((0..10).all(|v| petersen().degree(v) == 3));
        assert_eq!(chair().edges(), &[(0, 1), (0, 2), (0, 3), (1, 4)]);
    }

    #[test]
    fn completion_examples() {
        assert_eq!(vt_completion(&path(2)), complete(3));
        let arc = Graph::new(GraphKind::DIRECTED, 2, &[(0, 1)]).unwrap();
        assert_eq!(vt_completion(&arc), complete_digraph(2));
        assert_eq!(vt_completion(&complete(4)), complete(4));
        let looped = Graph::new(GraphKind::UNDIRECTED_LOOPS, 3, &[(0, 0), (0, 1)]).unwrap();
        let done = vt_completion(&looped);
        assert_eq!(done.loop_count(), 3);
        assert!(automorphisms(&done).unwrap().is_vertex_transitive());
    }

    #[test]
    fn completion_is_transitive_supergraph() {
        for k in [path(3), chair(), cycle(5).unwrap(), star(3, Orientation::In).unwrap()] {
            let kt = vt_completion(&k);
            assert_eq!(kt.vertex_count(), k.vertex_count());
            assert!(automorphisms(&kt).unwrap().is_vertex_transitive());
            assert!(contains_subgraph(&kt, &k));
        }
    }

    #[test]
    fn copies() {
        let g = disjoint_copies(&complete(3), 3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.components().len()), (9, 9, 3));
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]);
        assert!(automorphisms(&g).unwrap().is_vertex_transitive());

        let ch = chained_copies(&complete(3), 2, 4).unwrap();
        assert_eq!((ch.vertex_count(), ch.edge_count()), (15, 18));
        assert!(ch.is_connected());

        let single = chained_copies(&complete(3), 1, 7).unwrap();
        assert_eq!(single, complete(3));
        assert!(chained_copies(&complete(3), 2, 0).is_err());
        assert!(disjoint_copies(&complete(3), 0).is_err());
    }

    #[test]
    fn chained_copies_connected() {
        for m in 1..=4 {
            for n in 1..=3 {
                assert!(chained_copies(&cycle(4).unwrap(), m, n).unwrap().is_connected());
            }
        }
    }

    #[test]
    fn honeycomb() {
        let h = honeycomb_torus(3).unwrap();
        assert_eq!((h.graph.vertex_count(), h.graph.edge_count()), (18, 27));
        assert!((0..18).all(|v| h.graph.degree(v) == 3));
        assert_eq!(h.marked.len(), 9);
        let claws = enumerate_occurrences(&h.graph, &[star(3, Orientation::None).unwrap()], Mode::Edge).unwrap();
        assert_eq!(claws.sets.len(), 18);
        assert!(claws.sets.sets().iter().all(|c| c.iter().any(|e| h.marked.binary_search(e).is_ok())));
        assert!(honeycomb_torus(1).is_err());
    }

    #[test]
    fn honeycomb_transitive() {
        for n in 3..=4 {
            let a = automorphisms(&honeycomb_torus(n).unwrap().graph).unwrap();
            assert!(a.is_vertex_transitive() && a.is_edge_transitive(), "n = {n}");
        }
    }

    #[test]
    fn ladders() {
        let g = star_ladder(4, 3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (15, 12 + 8));
        assert!(g.is_connected());
        assert!((0..15).filter(|v| v % 5 != 0).all(|v| g.degree(v) <= 3));
        let p = star_path(4, 3).unwrap();
        assert_eq!(p.degree(5), 6);
    }

    #[test]
    fn spec_build() {
        let mut params = BTreeMap::new();
        params.insert("n".to_string(), 8);
        params.insert("s1".to_string(), 1);
        params.insert("s2".to_string(), 2);
        let g = FamilySpec { name: "circulant".into(), params }.build().unwrap();
        assert_eq!(g.edge_count(), 16);
        let bad = FamilySpec { name: "cycle".into(), params: BTreeMap::new() };
        assert!(matches!(bad.build(), Err(Error::BadParam(_))));
        for name in FamilySpec::NAMES {
            let params = ["l", "m", "n"].iter().map(|k| (k.to_string(), 4)).chain([("s1".to_string(), 1)]).collect();
            FamilySpec { name: name.to_string(), params }.build().unwrap();
        }
    }
}
