//! Exact minimum hitting sets by branch and bound.
//!
//! The search branches on the elements of a smallest uncovered member
//! (fewest still-available elements, ties to the lowest element id): the
//! i-th branch takes the i-th element and excludes the earlier ones, so no
//! subset is visited twice. A member with a single available element is
//! therefore forced. Nodes are pruned when the current cost plus a packing
//! bound (a greedy collection of pairwise-disjoint uncovered members, each
//! contributing its cheapest available element) reaches the incumbent.
//! Members that are supersets of other members are dropped up front.
//!
//! The orbit-constrained variant solves the weighted quotient instance:
//! elements are orbit classes weighted by their size, and each member is
//! replaced by the set of classes it meets.

use serde::Serialize;

use crate::perm::OrbitPartition;
use crate::symmetrize::SetFamily;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HittingResult {
    /// Total weight of the optimum (its cardinality for unit weights).
    pub size: u64,
    /// Sorted points of an optimal hitting set.
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
    /// Always true: the solver only runs to proven optimality.
    pub optimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantHittingResult {
    #[serde(flatten)]
    pub result: HittingResult,
    /// Indices into the orbit partition's classes.
    pub chosen_orbits: Vec<usize>,
}

/// Minimum-cardinality hitting set of `fam`.
///
/// Members of a [`SetFamily`] are nonempty by construction, so the
/// empty-member failure surfaces when the family is built.
pub fn min_hitting_set(fam: &SetFamily) -> HittingResult {
    let points = fam.points();
    let sets = compress(fam.sets(), &points);
    let weights = vec![1; points.len()];
    let (size, chosen, nodes) = Solver::solve(&sets, &weights, false);
    let mut witness: Vec<usize> = chosen.into_iter().map(|e| points[e]).collect();
    witness.sort_unstable();
    HittingResult { size, witness, nodes_explored: nodes, optimal: true }
}

/// Minimum total size of a union of orbit classes that hits every member.
pub fn min_invariant_hitting(fam: &SetFamily, orbits: &OrbitPartition) -> Result<InvariantHittingResult> {
    if let Some(p) = fam.max_point() {
        if p >= orbits.point_count() {
            return Err(Error::PartitionMismatch { partition: orbits.point_count(), point: p });
        }
    }
    let quotient: Vec<Vec<usize>> = fam
        .sets()
        .iter()
        .map(|s| {
            let mut classes: Vec<usize> = s.iter().map(|&p| orbits.class_of(p)).collect();
            classes.sort_unstable();
            classes.dedup();
            classes
        })
        .collect();
    let quotient = SetFamily::new(quotient)?;
    let used = quotient.points();
    let sets = compress(quotient.sets(), &used);
    let weights: Vec<u64> = used.iter().map(|&c| orbits.classes()[c].len() as u64).collect();
    let (size, chosen, nodes) = Solver::solve(&sets, &weights, true);
    let mut chosen_orbits: Vec<usize> = chosen.into_iter().map(|e| used[e]).collect();
    chosen_orbits.sort_unstable();
    let mut witness: Vec<usize> = chosen_orbits.iter().flat_map(|&c| orbits.classes()[c].iter().copied()).collect();
    witness.sort_unstable();
    Ok(InvariantHittingResult {
        result: HittingResult { size, witness, nodes_explored: nodes, optimal: true },
        chosen_orbits,
    })
}

/// Re-indexes members over `0..points.len()` (points sorted).
fn compress(sets: &[Vec<usize>], points: &[usize]) -> Vec<Vec<usize>> {
    sets.iter()
        .map(|s| s.iter().map(|p| points.binary_search(p).expect("point listed")).collect())
        .collect()
}

/// Drops members that strictly contain another member. Input members are
/// sorted and distinct.
fn drop_supersets(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut by_len: Vec<&Vec<usize>> = sets.iter().collect();
    by_len.sort_by_key(|s| s.len());
    let mut kept: Vec<&Vec<usize>> = Vec::new();
    for s in by_len {
        let dominated = kept.iter().any(|k| k.len() < s.len() && is_subset(k, s));
        if !dominated {
            kept.push(s);
        }
    }
    kept.into_iter().cloned().collect()
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

struct Solver<'a> {
    sets: Vec<Vec<usize>>,
    member_of: Vec<Vec<usize>>,
    weights: &'a [u64],
    weighted: bool,
    hits: Vec<u32>,
    excluded: Vec<bool>,
    chosen: Vec<usize>,
    best: u64,
    best_set: Option<Vec<usize>>,
    nodes: u64,
}

impl<'a> Solver<'a> {
    /// Returns (optimal weight, chosen elements, nodes explored).
    fn solve(sets: &[Vec<usize>], weights: &'a [u64], weighted: bool) -> (u64, Vec<usize>, u64) {
        let sets = drop_supersets(sets);
        let mut member_of = vec![Vec::new(); weights.len()];
        for (i, s) in sets.iter().enumerate() {
            for &e in s {
                member_of[e].push(i);
            }
        }
        let mut solver = Solver {
            hits: vec![0; sets.len()],
            sets,
            member_of,
            weights,
            weighted,
            excluded: vec![false; weights.len()],
            chosen: Vec::new(),
            best: 0,
            best_set: None,
            nodes: 0,
        };
        // Greedy incumbent; the search may still return its own first optimum.
        solver.best = solver.greedy_cost() + 1;
        solver.search(0);
        let chosen = solver.best_set.take().expect("the greedy bound is attainable");
        (solver.best, chosen, solver.nodes)
    }

    fn greedy_cost(&self) -> u64 {
        let mut covered = vec![false; self.sets.len()];
        let mut remaining = self.sets.len();
        let mut cost = 0;
        while remaining > 0 {
            // maximise newly covered / weight, compared by cross-multiplying
            let (e, gain) = (0..self.weights.len())
                .map(|e| (e, self.member_of[e].iter().filter(|&&s| !covered[s]).count() as u64))
                .filter(|&(_, gain)| gain > 0)
                .max_by(|&(a, ga), &(b, gb)| (ga * self.weights[b]).cmp(&(gb * self.weights[a])).then(b.cmp(&a)))
                .expect("an uncovered member has elements");
            for &s in &self.member_of[e] {
                if !covered[s] {
                    covered[s] = true;
                }
            }
            remaining -= gain as usize;
            cost += self.weights[e];
        }
        cost
    }

    fn available<'s>(&'s self, s: &'s [usize]) -> impl Iterator<Item = usize> + 's {
        s.iter().copied().filter(|&e| !self.excluded[e])
    }

    fn search(&mut self, cost: u64) {
        self.nodes += 1;

        // Pick the branching member; detect infeasibility.
        let mut pick: Option<(usize, usize, usize)> = None; // (available count, min element, index)
        for (i, s) in self.sets.iter().enumerate() {
            if self.hits[i] > 0 {
                continue;
            }
            let mut count = 0;
            let mut first = usize::MAX;
            for e in self.available(s) {
                count += 1;
                first = first.min(e);
            }
            if count == 0 {
                return;
            }
            if pick.is_none_or(|p| (count, first) < (p.0, p.1)) {
                pick = Some((count, first, i));
            }
        }
        let Some((_, _, branch_on)) = pick else {
            if cost < self.best {
                self.best = cost;
                self.best_set = Some(self.chosen.clone());
            }
            return;
        };

        if cost + self.packing_bound() >= self.best {
            return;
        }

        let mut candidates: Vec<usize> = self.available(&self.sets[branch_on]).collect();
        if self.weighted {
            candidates.sort_by_key(|&e| (self.weights[e], e));
        }
        let mut newly_excluded = Vec::new();
        for e in candidates {
            self.take(e);
            self.search(cost + self.weights[e]);
            self.untake(e);
            self.excluded[e] = true;
            newly_excluded.push(e);
        }
        for e in newly_excluded {
            self.excluded[e] = false;
        }
    }

    fn take(&mut self, e: usize) {
        self.chosen.push(e);
        for &s in &self.member_of[e] {
            self.hits[s] += 1;
        }
    }

    fn untake(&mut self, e: usize) {
        self.chosen.pop();
        for &s in &self.member_of[e] {
            self.hits[s] -= 1;
        }
    }

    /// Sum of cheapest available elements over a greedy packing of
    /// pairwise-disjoint uncovered members, smallest members first.
    fn packing_bound(&self) -> u64 {
        let mut order: Vec<(usize, usize)> = self
            .sets
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.hits[i] == 0)
            .map(|(i, s)| (self.available(s).count(), i))
            .collect();
        order.sort_unstable();
        let mut blocked = vec![false; self.weights.len()];
        let mut bound = 0;
        for (_, i) in order {
            let s = &self.sets[i];
            if self.available(s).any(|e| blocked[e]) {
                continue;
            }
            let mut cheapest = u64::MAX;
            for e in self.available(s) {
                blocked[e] = true;
                cheapest = cheapest.min(self.weights[e]);
            }
            bound += cheapest;
        }
        bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{PermAction, Permutation};
    use crate::symmetrize::verify_transversal;

    /// Oracle: every subset of the family's points, by bitmask.
    fn brute_min(fam: &SetFamily) -> u64 {
        let pts = fam.points();
        let masks: Vec<u32> = fam
            .sets()
            .iter()
            .map(|s| s.iter().map(|p| 1u32 << pts.binary_search(p).unwrap()).sum())
            .collect();
        (0u32..1 << pts.len())
            .filter(|&sel| masks.iter().all(|&m| m & sel != 0))
            .map(|sel| sel.count_ones() as u64)
            .min()
            .unwrap_or(0)
    }

    fn fam(sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(sets.iter().map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn triangle_of_pairs() {
        let r = min_hitting_set(&fam(&[&[1, 2], &[2, 3], &[1, 3]]));
        assert_eq!(r.size, 2);
        assert_eq!(r.witness.len(), 2);
        assert!(r.optimal);
    }

    #[test]
    fn empty_family() {
        let r = min_hitting_set(&SetFamily::empty());
        assert_eq!(r.size, 0);
        assert!(r.witness.is_empty());
    }

    #[test]
    fn triangles_of_k4() {
        let f = fam(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert_eq!(brute_min(&f), 2);
        assert_eq!(min_hitting_set(&f).size, 2);
    }

    #[test]
    fn superset_removal() {
        assert_eq!(drop_supersets(&[vec![0, 1, 2], vec![1], vec![1, 3], vec![2, 3]]), vec![vec![1], vec![2, 3]]);
    }

    #[test]
    fn singleton_orbits_match_plain() {
        let f = fam(&[&[0, 1], &[1, 2], &[3]]);
        let orbits = PermAction::trivial(4).orbits();
        let inv = min_invariant_hitting(&f, &orbits).unwrap();
        assert_eq!(inv.result.size, min_hitting_set(&f).size);
    }

    #[test]
    fn single_orbit_forces_everything() {
        let rot = Permutation::new(vec![1, 2, 3, 4, 0]).unwrap();
        let orbits = PermAction::new(5, vec![rot]).unwrap().orbits();
        let inv = min_invariant_hitting(&fam(&[&[0]]), &orbits).unwrap();
        assert_eq!(inv.result.size, 5);
        assert_eq!(inv.result.witness, vec![0, 1, 2, 3, 4]);
        assert_eq!(inv.chosen_orbits, vec![0]);
    }

    #[test]
    fn partition_mismatch() {
        let orbits = PermAction::trivial(2).orbits();
        assert_eq!(
            min_invariant_hitting(&fam(&[&[0, 5]]), &orbits).unwrap_err(),
            Error::PartitionMismatch { partition: 2, point: 5 }
        );
    }

    #[test]
    fn weighted_prefers_light_orbits() {
        // orbits {0,1,2} and {3}; members {0,3},{1,3},{2,3}
        let orbits = OrbitPartition::from_classes(4, vec![vec![0, 1, 2], vec![3]]).unwrap();
        let inv = min_invariant_hitting(&fam(&[&[0, 3], &[1, 3], &[2, 3]]), &orbits).unwrap();
        assert_eq!(inv.result.size, 1);
        assert_eq!(inv.result.witness, vec![3]);
    }

    mod props {
        use super::*;
        use crate::perm::invariant_closure;
        use proptest::prelude::*;

        fn arb_family() -> impl Strategy<Value = SetFamily> {
            proptest::collection::vec(proptest::collection::btree_set(0usize..14, 1..5), 0..14)
                .prop_map(|sets| SetFamily::new(sets.into_iter().map(|s| s.into_iter().collect::<Vec<_>>())).unwrap())
        }

        fn arb_instance() -> impl Strategy<Value = (PermAction, SetFamily)> {
            (2usize..=10).prop_flat_map(|n| {
                let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
                (
                    proptest::collection::vec(perm, 0..3),
                    proptest::collection::vec(proptest::collection::btree_set(0..n, 1..4), 1..4),
                )
                    .prop_map(move |(gens, seeds)| {
                        let gens = gens.into_iter().map(|g| Permutation::new(g).unwrap()).collect();
                        let a = PermAction::new(n, gens).unwrap();
                        let seeds: Vec<Vec<usize>> = seeds.into_iter().map(|s| s.into_iter().collect()).collect();
                        let f = invariant_closure(&a, &seeds).unwrap();
                        (a, f)
                    })
            })
        }

        /// Oracle for the invariant optimum: subsets of the family's points that
        /// hit everything and are fixed by every generator.
        fn brute_invariant(a: &PermAction, f: &SetFamily) -> u64 {
            let pts = f.points();
            (0u32..1 << pts.len())
                .filter_map(|sel| {
                    let set: Vec<usize> = (0..pts.len()).filter(|i| sel >> i & 1 == 1).map(|i| pts[i]).collect();
                    let fixed = a.generators().iter().all(|g| a.act_on_set(g, &set).unwrap() == set);
                    (fixed && verify_transversal(f, &set)).then_some(set.len() as u64)
                })
                .min()
                .unwrap_or(0)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn plain_is_optimal(f in arb_family()) {
                let r = min_hitting_set(&f);
                prop_assert!(verify_transversal(&f, &r.witness));
                prop_assert_eq!(r.witness.len() as u64, r.size);
                prop_assert_eq!(r.size, brute_min(&f));
            }

            #[test]
            fn invariant_is_optimal((a, f) in arb_instance()) {
                prop_assume!(f.points().len() <= 16);
                let orbits = a.orbits();
                let inv = min_invariant_hitting(&f, &orbits).unwrap();
                prop_assert!(verify_transversal(&f, &inv.result.witness));
                prop_assert!(orbits.is_union_of_classes(&inv.result.witness));
                prop_assert_eq!(inv.result.witness.len() as u64, inv.result.size);
                prop_assert_eq!(inv.result.size, brute_invariant(&a, &f));
                prop_assert!(inv.result.size >= min_hitting_set(&f).size);
            }

            #[test]
            fn deterministic(f in arb_family()) {
                prop_assert_eq!(min_hitting_set(&f), min_hitting_set(&f));
            }
        }
    }
}
