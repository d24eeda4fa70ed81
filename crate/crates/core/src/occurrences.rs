//! Occurrence families: the vertex or edge images of every subgraph copy of
//! a set of patterns inside a host graph.
//!
//! Copies are found as subgraph monomorphisms (injective vertex maps that
//! carry every pattern edge onto a host edge). Subgraphs need not be
//! induced.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::symmetrize::SetFamily;
use crate::{Error, Result};

/// Whether representatives are vertices or edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Vertex,
    Edge,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "vertex" | "v" => Ok(Mode::Vertex),
            "edge" | "e" => Ok(Mode::Edge),
            other => Err(Error::BadParam(format!("unknown mode `{other}` (expected vertex|edge)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OccurrenceFamily {
    pub mode: Mode,
    pub sets: SetFamily,
    /// `(vertex count, edge count)` of each pattern, in input order.
    pub pattern_sizes: Vec<(usize, usize)>,
}

impl OccurrenceFamily {
    /// Largest pattern size in the family's mode.
    pub fn bound_factor(&self) -> usize {
        let pick = |&(v, e): &(usize, usize)| if self.mode == Mode::Vertex { v } else { e };
        self.pattern_sizes.iter().map(pick).max().unwrap_or(0)
    }
}

/// Matching order for the pattern: each next vertex is the one with the most
/// already-ordered neighbours, ties broken by higher degree, then lower id.
fn match_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.vertex_count();
    let mut placed = vec![false; k];
    let mut links = vec![0usize; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], pattern.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for w in pattern.undirected_neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

struct Matcher<'g> {
    pattern: &'g Graph,
    host: &'g Graph,
    order: Vec<usize>,
    // For each position in `order`, an earlier-placed neighbour used to seed candidates.
    anchor: Vec<Option<(usize, bool)>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<'g> Matcher<'g> {
    fn new(pattern: &'g Graph, host: &'g Graph) -> Matcher<'g> {
        let order = match_order(pattern);
        let mut pos = vec![usize::MAX; pattern.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let anchor = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                // (earlier vertex, whether candidates are its out-neighbours)
                let from_in = pattern.in_neighbors(v).iter().find(|&&u| pos[u] < i).map(|&u| (u, true));
                let from_out = pattern.out_neighbors(v).iter().find(|&&u| pos[u] < i).map(|&u| (u, false));
                from_in.or(from_out)
            })
            .collect();
        Matcher {
            pattern,
            host,
            order,
            anchor,
            map: vec![usize::MAX; pattern.vertex_count()],
            used: vec![false; host.vertex_count()],
        }
    }

    fn feasible(&self, p: usize, h: usize) -> bool {
        let (pat, host) = (self.pattern, self.host);
        if self.used[h]
            || host.out_degree(h) < pat.out_degree(p)
            || host.in_degree(h) < pat.in_degree(p)
            || (pat.has_loop(p) && !host.has_loop(h))
        {
            return false;
        }
        pat.out_neighbors(p)
            .iter()
            .all(|&q| self.map[q] == usize::MAX || host.has_edge(h, self.map[q]))
            && pat
                .in_neighbors(p)
                .iter()
                .all(|&q| self.map[q] == usize::MAX || host.has_edge(self.map[q], h))
    }

    fn run<F>(&mut self, depth: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return visit(&self.map);
        }
        let p = self.order[depth];
        let host = self.host;
        let candidates: Box<dyn Iterator<Item = usize>> = match self.anchor[depth] {
            // anchor u is an in-neighbour of p: candidates are out-neighbours of map[u]
            Some((u, true)) => Box::new(host.out_neighbors(self.map[u]).iter().copied()),
            Some((u, false)) => Box::new(host.in_neighbors(self.map[u]).iter().copied()),
            None => Box::new(0..host.vertex_count()),
        };
        for h in candidates {
            if !self.feasible(p, h) {
                continue;
            }
            self.map[p] = h;
            self.used[h] = true;
            let flow = self.run(depth + 1, visit);
            self.used[h] = false;
            self.map[p] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` with every subgraph monomorphism `pattern -> host` (as an
/// image array indexed by pattern vertex) until it breaks.
pub fn for_each_monomorphism<F>(pattern: &Graph, host: &Graph, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if pattern.is_directed() != host.is_directed() || pattern.vertex_count() > host.vertex_count() {
        return;
    }
    let _ = Matcher::new(pattern, host).run(0, &mut visit);
}

/// Whether `host` has a (not necessarily induced) subgraph isomorphic to `pattern`.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    let mut found = false;
    for_each_monomorphism(pattern, host, |_| {
        found = true;
        ControlFlow::Break(())
    });
    found
}

/// Number of subgraph monomorphisms `pattern -> host`.
pub fn count_monomorphisms(pattern: &Graph, host: &Graph) -> usize {
    let mut count = 0;
    for_each_monomorphism(pattern, host, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// The occurrence family of `patterns` in `host`.
pub fn enumerate_occurrences(host: &Graph, patterns: &[Graph], mode: Mode) -> Result<OccurrenceFamily> {
    for (i, p) in patterns.iter().enumerate() {
        if p.is_directed() != host.is_directed() {
            return Err(Error::KindMismatch { host: host.is_directed(), pattern: p.is_directed() });
        }
        let empty = match mode {
            Mode::Vertex => p.vertex_count() == 0,
            Mode::Edge => p.edge_count() == 0,
        };
        if empty {
            return Err(Error::EmptyPattern(i));
        }
    }

    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for pattern in patterns {
        for_each_monomorphism(pattern, host, |map| {
            let mut image: Vec<usize> = match mode {
                Mode::Vertex => map.to_vec(),
                Mode::Edge => pattern
                    .edges()
                    .iter()
                    .map(|&(u, v)| host.edge_id(map[u], map[v]).expect("monomorphism preserves edges"))
                    .collect(),
            };
            image.sort_unstable();
            found.insert(image);
            ControlFlow::Continue(())
        });
    }
    Ok(OccurrenceFamily {
        mode,
        sets: SetFamily::new(found)?,
        pattern_sizes: patterns.iter().map(|p| (p.vertex_count(), p.edge_count())).collect(),
    })
}

/// Built-in predicates for [`predicate_family`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    /// Fewer than two members have out-degree at least 3 inside the subset.
    /// Loops are ignored.
    Mars,
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Predicate> {
        match s {
            "mars" => Ok(Predicate::Mars),
            other => Err(Error::UnknownPredicate(other.to_string())),
        }
    }
}

impl Predicate {
    pub fn holds(self, induced: &Graph) -> bool {
        match self {
            Predicate::Mars => {
                (0..induced.vertex_count()).filter(|&v| induced.out_degree(v) >= 3).count() < 2
            }
        }
    }
}

/// All `r`-subsets of the host's vertices whose induced subgraph satisfies
/// the named predicate.
pub fn predicate_family(host: &Graph, r: usize, predicate: &str) -> Result<SetFamily> {
    let predicate: Predicate = predicate.parse()?;
    if r > host.vertex_count() {
        return Err(Error::OutOfRange { id: r, n: host.vertex_count() });
    }
    if r == 0 {
        return Err(Error::BadParam("subset size must be positive".into()));
    }
    if predicate == Predicate::Mars && !host.is_directed() {
        return Err(Error::KindMismatch { host: false, pattern: true });
    }
    let mut sets = Vec::new();
    for subset in (0..host.vertex_count()).combinations(r) {
        if predicate.holds(&host.induced_subgraph(&subset)?) {
            sets.push(subset);
        }
    }
    SetFamily::new(sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions as c;
    use crate::graph::GraphKind;

    /// Independent oracle: every injective map, checked edge by edge.
    fn brute_images(host: &Graph, pattern: &Graph, mode: Mode) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for map in (0..host.vertex_count()).permutations(pattern.vertex_count()) {
            if !pattern.edges().iter().all(|&(u, v)| host.has_edge(map[u], map[v])) {
                continue;
            }
            let mut img: Vec<usize> = match mode {
                Mode::Vertex => map.clone(),
                Mode::Edge => pattern.edges().iter().map(|&(u, v)| host.edge_id(map[u], map[v]).unwrap()).collect(),
            };
            img.sort_unstable();
            out.insert(img);
        }
        out
    }

    #[test]
    fn triangles_in_k4() {
        let fam = enumerate_occurrences(&c::complete(4), &[c::cycle(3).unwrap()], Mode::Vertex).unwrap();
        assert_eq!(fam.sets.len(), 4);
        assert!(fam.sets.sets().iter().all(|s| s.len() == 3));
    }

    #[test]
    fn cube_faces() {
        let fam = enumerate_occurrences(&c::cube_q3(), &[c::cycle(4).unwrap()], Mode::Vertex).unwrap();
        assert_eq!(fam.sets.len(), 6);
        let oracle = brute_images(&c::cube_q3(), &c::cycle(4).unwrap(), Mode::Vertex);
        assert_eq!(fam.sets.sets(), oracle.into_iter().collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn edges_of_a_path() {
        let fam = enumerate_occurrences(&c::path(2), &[c::path(1)], Mode::Edge).unwrap();
        assert_eq!(fam.sets.sets(), &[vec![0], vec![1]]);
    }

    #[test]
    fn isolated_vertices_still_need_room() {
        // an edge plus an isolated vertex does not fit in a single edge
        let pattern = Graph::new(GraphKind::UNDIRECTED, 3, &[(0, 1)]).unwrap();
        let fam = enumerate_occurrences(&c::path(1), std::slice::from_ref(&pattern), Mode::Edge).unwrap();
        assert!(fam.sets.is_empty());
        let fam = enumerate_occurrences(&c::path(2), &[pattern], Mode::Edge).unwrap();
        assert_eq!(fam.sets.len(), 2);
    }

    #[test]
    fn directed_respects_orientation() {
        let host = Graph::new(GraphKind::DIRECTED, 3, &[(0, 1), (1, 2)]).unwrap();
        let two_path = Graph::new(GraphKind::DIRECTED, 3, &[(0, 1), (1, 2)]).unwrap();
        let out_star = c::star(2, c::Orientation::Out).unwrap();
        assert_eq!(count_monomorphisms(&two_path, &host), 1);
        assert_eq!(count_monomorphisms(&out_star, &host), 0);
    }

    #[test]
    fn errors() {
        let d = c::star(2, c::Orientation::Out).unwrap();
        assert!(matches!(enumerate_occurrences(&c::complete(3), &[d], Mode::Vertex), Err(Error::KindMismatch { .. })));
        let lone = Graph::edgeless(GraphKind::UNDIRECTED, 1);
        assert_eq!(
            enumerate_occurrences(&c::complete(3), &[lone], Mode::Edge).unwrap_err(),
            Error::EmptyPattern(0)
        );
        let nothing = Graph::edgeless(GraphKind::UNDIRECTED, 0);
        assert_eq!(
            enumerate_occurrences(&c::complete(3), &[nothing], Mode::Vertex).unwrap_err(),
            Error::EmptyPattern(0)
        );
    }

    #[test]
    fn multiple_patterns_merge() {
        let host = c::complete(4);
        let pats = [c::cycle(3).unwrap(), c::path(2)];
        let fam = enumerate_occurrences(&host, &pats, Mode::Vertex).unwrap();
        // both patterns have vertex images = all 3-subsets
        assert_eq!(fam.sets.len(), 4);
        assert_eq!(fam.bound_factor(), 3);
    }

    #[test]
    fn mars_examples() {
        let complete = c::complete_digraph(5);
        assert!(predicate_family(&complete, 5, "mars").unwrap().is_empty());
        let empty5 = Graph::edgeless(GraphKind::DIRECTED, 5);
        assert_eq!(predicate_family(&empty5, 5, "mars").unwrap().sets(), &[vec![0, 1, 2, 3, 4]]);
        let empty6 = Graph::edgeless(GraphKind::DIRECTED, 6);
        assert_eq!(predicate_family(&empty6, 5, "mars").unwrap().len(), 6);
        assert_eq!(predicate_family(&empty6, 7, "mars").unwrap_err(), Error::OutOfRange { id: 7, n: 6 });
        assert_eq!(
            predicate_family(&empty6, 5, "venus").unwrap_err(),
            Error::UnknownPredicate("venus".into())
        );
    }

    #[test]
    fn mars_ignores_loops() {
        // vertex 0 respects 1,2 and itself: out-degree 2 within the five
        let host = Graph::new(
            GraphKind::DIRECTED_LOOPS,
            5,
            &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 2), (1, 3), (1, 1)],
        )
        .unwrap();
        assert_eq!(predicate_family(&host, 5, "mars").unwrap().len(), 1);
    }

    mod props {
        use super::*;
        use crate::aut::automorphisms;
        use proptest::prelude::*;

        fn arb_graph(max_n: usize, directed: bool) -> impl Strategy<Value = Graph> {
            (1..=max_n).prop_flat_map(move |n| {
                proptest::collection::vec((0..n, 0..n), 0..(n * n).min(14)).prop_map(move |pairs| {
                    let kind = if directed { GraphKind::DIRECTED } else { GraphKind::UNDIRECTED };
                    let pairs: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
                    Graph::new(kind, n, &pairs).unwrap()
                })
            })
        }

        fn arb_pair() -> impl Strategy<Value = (Graph, Graph, Mode)> {
            any::<bool>().prop_flat_map(|d| {
                (arb_graph(7, d), arb_graph(4, d), prop_oneof![Just(Mode::Vertex), Just(Mode::Edge)])
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(96))]

            #[test]
            fn matches_brute_force((host, pattern, mode) in arb_pair()) {
                prop_assume!(mode == Mode::Vertex || pattern.edge_count() > 0);
                let fam = enumerate_occurrences(&host, std::slice::from_ref(&pattern), mode).unwrap();
                let oracle: Vec<Vec<usize>> = brute_images(&host, &pattern, mode).into_iter().collect();
                prop_assert_eq!(fam.sets.sets(), oracle.as_slice());
                let maps = (0..host.vertex_count()).permutations(pattern.vertex_count())
                    .filter(|m| pattern.edges().iter().all(|&(u, v)| host.has_edge(m[u], m[v])))
                    .count();
                prop_assert_eq!(count_monomorphisms(&pattern, &host), maps);
            }

            #[test]
            fn invariant_under_automorphisms((host, pattern, mode) in arb_pair()) {
                prop_assume!(mode == Mode::Vertex || pattern.edge_count() > 0);
                let fam = enumerate_occurrences(&host, std::slice::from_ref(&pattern), mode).unwrap();
                let aut = automorphisms(&host).unwrap();
                let action = match mode {
                    Mode::Vertex => aut.vertex_action(),
                    Mode::Edge => aut.edge_action(),
                };
                prop_assert!(action.is_invariant_family(&fam.sets));
            }

            #[test]
            fn adding_edges_keeps_occurrences(
                (host, pattern, mode) in arb_pair(),
                extra in proptest::collection::vec((0usize..7, 0usize..7), 1..4),
            ) {
                prop_assume!(mode == Mode::Vertex);
                let n = host.vertex_count();
                let mut edges = host.edges().to_vec();
                edges.extend(extra.into_iter().map(|(u, v)| (u % n, v % n)).filter(|(u, v)| u != v));
                let bigger = Graph::new(host.kind(), n, &edges).unwrap();
                let small = enumerate_occurrences(&host, std::slice::from_ref(&pattern), mode).unwrap();
                let large = enumerate_occurrences(&bigger, std::slice::from_ref(&pattern), mode).unwrap();
                for s in small.sets.sets() {
                    prop_assert!(large.sets.contains(s));
                }
            }
        }
    }
}
