//! Vertex and edge representativeness of patterns in a host, plain and
//! restricted to automorphism-invariant markings.

use serde::Serialize;

use crate::aut::automorphisms;
use crate::graph::Graph;
use crate::hitting::{min_hitting_set, min_invariant_hitting, HittingResult};
use crate::occurrences::{enumerate_occurrences, Mode};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepResult {
    pub mode: Mode,
    /// Minimum number of points meeting every occurrence.
    pub value: u64,
    /// Same, over unions of automorphism orbits.
    pub symmetric_value: u64,
    pub witness: Vec<usize>,
    pub symmetric_witness: Vec<usize>,
    /// Largest pattern size in the chosen mode.
    pub bound_factor: usize,
    pub occurrences: usize,
}

impl RepResult {
    /// `value ≤ symmetric_value ≤ bound_factor · value`.
    pub fn sandwich_holds(&self) -> bool {
        self.value <= self.symmetric_value && self.symmetric_value <= self.bound_factor as u64 * self.value
    }
}

/// Both values. Vertex orbits are used in vertex mode, edge orbits in edge
/// mode. Without occurrences the result is all zeros with empty witnesses.
pub fn representativeness(host: &Graph, patterns: &[Graph], mode: Mode) -> Result<RepResult> {
    let occ = enumerate_occurrences(host, patterns, mode)?;
    let bound_factor = occ.bound_factor();
    if occ.sets.is_empty() {
        return Ok(RepResult {
            mode,
            value: 0,
            symmetric_value: 0,
            witness: Vec::new(),
            symmetric_witness: Vec::new(),
            bound_factor,
            occurrences: 0,
        });
    }
    let plain = min_hitting_set(&occ.sets);
    let aut = automorphisms(host)?;
    let orbits = match mode {
        Mode::Vertex => &aut.vertex_orbits,
        Mode::Edge => &aut.edge_orbits,
    };
    let sym = min_invariant_hitting(&occ.sets, orbits)?;
    Ok(RepResult {
        mode,
        value: plain.size,
        symmetric_value: sym.result.size,
        witness: plain.witness,
        symmetric_witness: sym.result.witness,
        bound_factor,
        occurrences: occ.sets.len(),
    })
}

/// The plain value only; skips the automorphism search.
pub fn plain_representativeness(host: &Graph, patterns: &[Graph], mode: Mode) -> Result<HittingResult> {
    let occ = enumerate_occurrences(host, patterns, mode)?;
    Ok(min_hitting_set(&occ.sets))
}
