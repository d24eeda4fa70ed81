//! Permutations and finite permutation actions on the points `0..n`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::symmetrize::SetFamily;
use crate::{Error, Result};

/// A bijection of `0..n`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.0
    }
}

/// Partition of the points into orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    classes: Vec<Vec<usize>>,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl OrbitPartition {
    /// Builds the partition from arbitrary disjoint classes covering `0..n`.
    /// Classes are normalised: sorted internally and ordered by smallest member.
    pub fn from_classes(n: usize, classes: Vec<Vec<usize>>) -> Result<OrbitPartition> {
        let mut classes: Vec<Vec<usize>> = classes.into_iter().filter(|c| !c.is_empty()).collect();
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.sort_unstable_by_key(|c| c[0]);
        let mut class_of = vec![usize::MAX; n];
        for (i, c) in classes.iter().enumerate() {
            for &p in c {
                if p >= n {
                    return Err(Error::OutOfRange { id: p, n });
                }
                if class_of[p] != usize::MAX {
                    return Err(Error::Format(format!("point {p} lies in two classes")));
                }
                class_of[p] = i;
            }
        }
        if let Some(p) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Format(format!("point {p} is in no class")));
        }
        Ok(OrbitPartition { classes, class_of })
    }

    pub fn point_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, p: usize) -> usize {
        self.class_of[p]
    }

    /// The class containing `p`.
    pub fn orbit(&self, p: usize) -> &[usize] {
        &self.classes[self.class_of[p]]
    }

    /// Whether `set` is a union of whole classes.
    pub fn is_union_of_classes(&self, set: &[usize]) -> bool {
        let members: HashSet<usize> = set.iter().copied().collect();
        members
            .iter()
            .all(|&p| p < self.point_count() && self.orbit(p).iter().all(|q| members.contains(q)))
    }
}

/// The action of the group generated by `generators` on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermAction {
    n: usize,
    generators: Vec<Permutation>,
}

impl PermAction {
    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<PermAction> {
        if let Some(g) = generators.iter().find(|g| g.len() != n) {
            return Err(Error::NotAPermutation(format!(
                "generator of degree {} in an action on {n} points",
                g.len()
            )));
        }
        Ok(PermAction { n, generators })
    }

    /// The trivial action.
    pub fn trivial(n: usize) -> PermAction {
        PermAction { n, generators: Vec::new() }
    }

    pub fn point_count(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Orbits of the generated group. For a finite set, closing under the
    /// generators alone already closes under their inverses.
    pub fn orbits(&self) -> OrbitPartition {
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes = Vec::new();
        for start in 0..self.n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut class = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(p) = queue.pop_front() {
                for g in &self.generators {
                    let q = g.apply(p);
                    if class_of[q] == usize::MAX {
                        class_of[q] = id;
                        class.push(q);
                        queue.push_back(q);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        OrbitPartition { classes, class_of }
    }

    /// `{ g(x) | x ∈ s }`, sorted.
    pub fn act_on_set(&self, g: &Permutation, s: &[usize]) -> Result<Vec<usize>> {
        if g.len() != self.n {
            return Err(Error::NotAPermutation(format!(
                "permutation of degree {} in an action on {} points",
                g.len(),
                self.n
            )));
        }
        self.check_points(s)?;
        let mut image: Vec<usize> = s.iter().map(|&x| g.apply(x)).collect();
        image.sort_unstable();
        image.dedup();
        Ok(image)
    }

    /// Whether every generator maps every member onto a member. This is
    /// equivalent to invariance under the whole (finite) group.
    pub fn is_invariant_family(&self, fam: &SetFamily) -> bool {
        self.first_invariance_violation(fam).is_none()
    }

    /// A `(member, image)` pair witnessing non-invariance, if any.
    pub fn first_invariance_violation(&self, fam: &SetFamily) -> Option<(Vec<usize>, Vec<usize>)> {
        for set in fam.sets() {
            if set.iter().any(|&p| p >= self.n) {
                return Some((set.clone(), Vec::new()));
            }
            for g in &self.generators {
                let mut image: Vec<usize> = set.iter().map(|&x| g.apply(x)).collect();
                image.sort_unstable();
                if !fam.contains(&image) {
                    return Some((set.clone(), image));
                }
            }
        }
        None
    }

    /// Every element of the generated group, by breadth-first closure.
    /// Returns `None` once more than `cap` elements have been produced.
    pub fn enumerate_group(&self, cap: usize) -> Option<Vec<Permutation>> {
        let id = Permutation::identity(self.n);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            for g in &self.generators {
                let gh = g.compose(&h);
                if seen.insert(gh.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    elements.push(gh.clone());
                    queue.push_back(gh);
                }
            }
        }
        Some(elements)
    }

    /// Group order by closure, or `None` above `cap`.
    pub fn group_order(&self, cap: usize) -> Option<usize> {
        self.enumerate_group(cap).map(|e| e.len())
    }

    pub(crate) fn check_points(&self, s: &[usize]) -> Result<()> {
        match s.iter().find(|&&x| x >= self.n) {
            Some(&id) => Err(Error::OutOfRange { id, n: self.n }),
            None => Ok(()),
        }
    }
}

/// Closes `seeds` under the generators of `action`, producing an invariant family.
pub fn invariant_closure(action: &PermAction, seeds: &[Vec<usize>]) -> Result<SetFamily> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        action.check_points(s)?;
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for g in action.generators() {
            let image = action.act_on_set(g, &s)?;
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    SetFamily::new(seen)
}
