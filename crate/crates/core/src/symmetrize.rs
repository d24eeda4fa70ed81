//! From a transversal of an invariant family to an invariant transversal.
//!
//! Given a finite action, a family `𝓕` closed under it and a transversal
//! `X`, the set
//!
//! ```text
//! Y = { y : m · |orbit(y) ∩ X| ≥ |orbit(y)| },   m = max |F|
//! ```
//!
//! is invariant, meets every member of `𝓕`, and has at most `m·|X|`
//! points. The certificate for transversality is the covering sum
//! `Σ_{f∈F} |orbit(f) ∩ X| / |orbit(f)| ≥ 1`, reported for every member.
//! All comparisons are exact.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::perm::{OrbitPartition, PermAction};
use crate::{Error, Result};

/// A finite family of distinct nonempty point sets.
///
/// Members are stored sorted, and the family is kept in lexicographic order,
/// so two families with the same members compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SetFamily {
    sets: Vec<Vec<usize>>,
    max_size: usize,
}

impl SetFamily {
    pub fn new<I, S>(sets: I) -> Result<SetFamily>
    where
        I: IntoIterator<Item = S>,
        S: Into<Vec<usize>>,
    {
        let mut unique = BTreeSet::new();
        for s in sets {
            let mut s: Vec<usize> = s.into();
            if s.is_empty() {
                return Err(Error::EmptyMember);
            }
            s.sort_unstable();
            s.dedup();
            unique.insert(s);
        }
        let sets: Vec<Vec<usize>> = unique.into_iter().collect();
        let max_size = sets.iter().map(Vec::len).max().unwrap_or(0);
        Ok(SetFamily { sets, max_size })
    }

    pub fn empty() -> SetFamily {
        SetFamily::default()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `m`: the largest member cardinality (0 for the empty family).
    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Membership test; `set` must be sorted.
    pub fn contains(&self, set: &[usize]) -> bool {
        self.sets.binary_search_by(|s| s.as_slice().cmp(set)).is_ok()
    }

    /// Sorted union of all members.
    pub fn points(&self) -> Vec<usize> {
        let all: BTreeSet<usize> = self.sets.iter().flatten().copied().collect();
        all.into_iter().collect()
    }

    /// Largest point id used, if any.
    pub fn max_point(&self) -> Option<usize> {
        self.sets.iter().filter_map(|s| s.last()).copied().max()
    }
}

/// Covering sum attached to one family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeumannTerm {
    pub set: Vec<usize>,
    #[serde(serialize_with = "ser_ratio")]
    pub sum: Ratio<u64>,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetrizeResult {
    pub y: Vec<usize>,
    pub x_size: usize,
    pub m: usize,
    /// `m · |X|`.
    pub bound: usize,
    pub neumann_sums: Vec<NeumannTerm>,
}

/// Whether `s` meets every member of `fam`. Vacuously true for the empty family.
pub fn verify_transversal(fam: &SetFamily, s: &[usize]) -> bool {
    first_missed(fam, s).is_none()
}

fn first_missed<'a>(fam: &'a SetFamily, s: &[usize]) -> Option<&'a Vec<usize>> {
    let chosen: BTreeSet<usize> = s.iter().copied().collect();
    fam.sets().iter().find(|f| !f.iter().any(|p| chosen.contains(p)))
}

/// `Σ_{f∈F} |orbit(f) ∩ X| / |orbit(f)|`, exactly.
pub fn neumann_sum(a: &PermAction, f: &[usize], x: &[usize]) -> Result<Ratio<u64>> {
    if f.is_empty() {
        return Err(Error::EmptySet);
    }
    a.check_points(f)?;
    a.check_points(x)?;
    let orbits = a.orbits();
    Ok(neumann_sum_with(&orbits, f, &in_set(a.point_count(), x)))
}

fn in_set(n: usize, x: &[usize]) -> Vec<bool> {
    let mut mark = vec![false; n];
    for &p in x {
        mark[p] = true;
    }
    mark
}

fn neumann_sum_with(orbits: &OrbitPartition, f: &[usize], in_x: &[bool]) -> Ratio<u64> {
    let mut f = f.to_vec();
    f.sort_unstable();
    f.dedup();
    f.iter()
        .map(|&p| {
            let orbit = orbits.orbit(p);
            let hits = orbit.iter().filter(|&&q| in_x[q]).count();
            Ratio::new(hits as u64, orbit.len() as u64)
        })
        .sum()
}

/// The invariant transversal built from `x`, with certificates.
///
/// Fails if `fam` is not closed under the generators or `x` misses a member.
pub fn symmetrize(a: &PermAction, fam: &SetFamily, x: &[usize]) -> Result<SymmetrizeResult> {
    a.check_points(x)?;
    if let Some(p) = fam.max_point() {
        a.check_points(&[p])?;
    }
    if let Some((member, image)) = a.first_invariance_violation(fam) {
        return Err(Error::NotInvariant { member, image });
    }
    if let Some(missed) = first_missed(fam, x) {
        return Err(Error::NotTransversal(missed.clone()));
    }

    let mut x_sorted = x.to_vec();
    x_sorted.sort_unstable();
    x_sorted.dedup();
    let in_x = in_set(a.point_count(), &x_sorted);
    let orbits = a.orbits();
    let m = fam.max_size();

    let mut y = Vec::new();
    for class in orbits.classes() {
        let hits = class.iter().filter(|&&q| in_x[q]).count();
        // |orbit ∩ X| ≥ |orbit| / m, cross-multiplied. With m = 0 (empty
        // family) this keeps exactly the empty orbits, i.e. nothing.
        if hits * m >= class.len() {
            y.extend_from_slice(class);
        }
    }
    y.sort_unstable();

    let neumann_sums = fam
        .sets()
        .iter()
        .map(|f| NeumannTerm { set: f.clone(), sum: neumann_sum_with(&orbits, f, &in_x) })
        .collect();

    Ok(SymmetrizeResult { y, x_size: x_sorted.len(), m, bound: m * x_sorted.len(), neumann_sums })
}
