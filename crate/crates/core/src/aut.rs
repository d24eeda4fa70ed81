//! Automorphism groups of small graphs.
//!
//! Colour refinement (1-dimensional Weisfeiler–Leman) seeded with loop flag,
//! out-degree and in-degree gives the initial cells. A base `b_1, b_2, …` is
//! chosen by repeatedly individualising the first smallest non-singleton
//! cell. Working from the deepest level up, every candidate image `c` of
//! `b_i` that is not yet in the orbit of the known generators is tested by a
//! backtracking search for an automorphism fixing `b_1..b_{i-1}` and sending
//! `b_i` to `c`. The generators found this way generate the whole group, and
//! the product of the level orbit lengths is its exact order.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigUint;
use serde::Serialize;

use crate::graph::Graph;
use crate::perm::{OrbitPartition, PermAction, Permutation};
use crate::{Error, Result};

pub const DEFAULT_VERTEX_CAP: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct AutResult {
    /// Generators on vertices, sorted by image array.
    pub generators: Vec<Permutation>,
    #[serde(serialize_with = "ser_big")]
    pub order: BigUint,
    pub vertex_orbits: OrbitPartition,
    pub edge_orbits: OrbitPartition,
    #[serde(skip)]
    edge_generators: Vec<Permutation>,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl AutResult {
    pub fn vertex_action(&self) -> PermAction {
        PermAction::new(self.vertex_orbits.point_count(), self.generators.clone())
            .expect("generators act on the vertex set")
    }

    /// The induced action on edge ids.
    pub fn edge_action(&self) -> PermAction {
        PermAction::new(self.edge_orbits.point_count(), self.edge_generators.clone())
            .expect("induced generators act on the edge set")
    }

    pub fn is_vertex_transitive(&self) -> bool {
        self.vertex_orbits.len() <= 1
    }

    pub fn is_edge_transitive(&self) -> bool {
        self.edge_orbits.len() <= 1
    }
}

/// Automorphism group of `g` with the default vertex cap.
pub fn automorphisms(g: &Graph) -> Result<AutResult> {
    automorphisms_with_cap(g, DEFAULT_VERTEX_CAP)
}

pub fn automorphisms_with_cap(g: &Graph, cap: usize) -> Result<AutResult> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }

    // Base and the cell of each base point at its level.
    let mut levels: Vec<(Vec<usize>, usize, Vec<usize>)> = Vec::new();
    let mut prefix = Vec::new();
    loop {
        let colors = refine(g, &[&prefix]).pop().expect("one copy");
        let Some(cell) = target_cell(&colors) else { break };
        let b = cell[0];
        levels.push((prefix.clone(), b, cell));
        prefix.push(b);
    }

    let mut generators: Vec<Permutation> = Vec::new();
    let mut order = BigUint::from(1u32);
    for (prefix, b, cell) in levels.iter().rev() {
        let mut orbit = orbit_of(*b, &generators, n);
        for &c in cell {
            if orbit[c] {
                continue;
            }
            let mut src = prefix.clone();
            src.push(*b);
            let mut tgt = prefix.clone();
            tgt.push(c);
            if let Some(p) = extend(g, src, tgt) {
                generators.push(p);
                orbit = orbit_of(*b, &generators, n);
            }
        }
        order *= orbit.iter().filter(|&&x| x).count();
    }
    generators.sort();
    generators.dedup();

    let vertex_orbits = PermAction::new(n, generators.clone())?.orbits();
    let edge_generators: Vec<Permutation> = generators
        .iter()
        .map(|p| {
            let images = g
                .edges()
                .iter()
                .map(|&(u, v)| g.edge_id(p.apply(u), p.apply(v)).expect("automorphism maps edges to edges"))
                .collect();
            Permutation::new(images).expect("automorphism permutes edges")
        })
        .collect();
    let edge_orbits = PermAction::new(g.edge_count(), edge_generators.clone())?.orbits();

    Ok(AutResult { generators, order, vertex_orbits, edge_orbits, edge_generators })
}

/// Vertex-transitivity; graphs with at most one vertex count as transitive.
pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    Ok(automorphisms(g)?.is_vertex_transitive())
}

/// Edge-transitivity; edgeless graphs count as transitive.
pub fn is_edge_transitive(g: &Graph) -> Result<bool> {
    Ok(automorphisms(g)?.is_edge_transitive())
}

fn orbit_of(b: usize, gens: &[Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[b] = true;
    let mut queue = VecDeque::from([b]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    seen
}

/// First smallest non-singleton cell (ties broken by colour id), as a sorted
/// vertex list. `None` when the colouring is discrete.
fn target_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    cells.into_values().filter(|c| c.len() > 1).min_by_key(|c| c.len())
}

/// Joint colour refinement of several copies of `g`, copy `i` with the
/// vertices of `seqs[i]` individualised in order. Colour ids are shared
/// across copies, so equal colours are comparable between copies.
fn refine(g: &Graph, seqs: &[&[usize]]) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let copies = seqs.len();
    let mut initial: Vec<(usize, bool, usize, usize)> = Vec::with_capacity(n * copies);
    for seq in seqs {
        let mut indiv = vec![0usize; n];
        for (i, &v) in seq.iter().enumerate() {
            indiv[v] = i + 1;
        }
        initial.extend((0..n).map(|v| (indiv[v], g.has_loop(v), g.out_degree(v), g.in_degree(v))));
    }
    let mut colors = relabel(&initial);
    let mut classes = distinct(&colors);
    loop {
        let signatures: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n * copies)
            .map(|x| {
                let (copy, v) = (x / n, x % n);
                let base = copy * n;
                let mut outs: Vec<u32> = g.out_neighbors(v).iter().map(|&w| colors[base + w]).collect();
                outs.sort_unstable();
                let ins = if g.is_directed() {
                    let mut ins: Vec<u32> = g.in_neighbors(v).iter().map(|&w| colors[base + w]).collect();
                    ins.sort_unstable();
                    ins
                } else {
                    Vec::new()
                };
                (colors[x], outs, ins)
            })
            .collect();
        let next = relabel(&signatures);
        let next_classes = distinct(&next);
        colors = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    colors.chunks(n.max(1)).take(copies).map(<[u32]>::to_vec).collect()
}

fn relabel<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<&T> = keys.iter().collect();
    sorted.sort_unstable();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(&k).expect("key present") as u32).collect()
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Searches for an automorphism mapping `src[i] -> tgt[i]` for all `i`.
fn extend(g: &Graph, src: Vec<usize>, tgt: Vec<usize>) -> Option<Permutation> {
    let n = g.vertex_count();
    let mut colors = refine(g, &[&src, &tgt]);
    let (cs, ct) = (colors.remove(0), colors.remove(0));
    let histogram = |c: &[u32]| {
        let mut h = c.to_vec();
        h.sort_unstable();
        h
    };
    if histogram(&cs) != histogram(&ct) {
        return None;
    }
    match target_cell(&cs) {
        None => {
            let mut by_color = vec![0usize; 2 * n];
            for (u, &c) in ct.iter().enumerate() {
                by_color[c as usize] = u;
            }
            let images: Vec<usize> = cs.iter().map(|&c| by_color[c as usize]).collect();
            g.is_automorphism(&images).then(|| Permutation::new(images).expect("discrete colouring is a bijection"))
        }
        Some(cell) => {
            let v = cell[0];
            let color = cs[v];
            for u in (0..n).filter(|&u| ct[u] == color) {
                let mut s = src.clone();
                s.push(v);
                let mut t = tgt.clone();
                t.push(u);
                if let Some(p) = extend(g, s, t) {
                    return Some(p);
                }
            }
            None
        }
    }
}
