//! Trivial triples and the heptagon→hexagon reduction.
//!
//! A vertex triple is *trivial* when its triangle is pierced by no edge
//! spanned by the remaining vertices of the configuration (all ε values
//! vanish). A cycle that passes through a trivial triple consecutively can
//! be isotoped across that empty triangle, dropping the middle vertex; the
//! shorter cycle has the same knot type, which is why such heptagons are
//! never figure-8 knots (the figure-8 needs all 7 sticks).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::diagram::{Cycle, DiagramError};
use crate::geometry::{Configuration, GeometryError};
use crate::tables::EpsilonGrid;

/// An unordered set of three distinct vertex indices, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple([usize; 3]);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("a triple needs three distinct vertices")]
    RepeatedVertex,
    #[error("triple {0} does not occur consecutively in the cycle")]
    NotConsecutive(Triple),
    #[error("triple {0} is not trivial in this configuration")]
    NotTrivial(Triple),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl Triple {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Triple, ReductionError> {
        if a == b || a == c || b == c {
            return Err(ReductionError::RepeatedVertex);
        }
        let mut v = [a, b, c];
        v.sort_unstable();
        Ok(Triple(v))
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} {}", self.0[0] + 1, self.0[1] + 1, self.0[2] + 1)
    }
}

/// Is every ε between the triple and an edge of the remaining vertices zero?
/// Six edges to test for a 7-point configuration, three for 6 points. The
/// ordering of the triple is irrelevant: reordering only flips signs, and
/// only vanishing matters.
pub fn is_trivial_triple(c: &Configuration, t: &Triple) -> Result<bool, GeometryError> {
    let [a, b, d] = t.vertices();
    for j in 0..c.len() {
        if t.contains(j) {
            continue;
        }
        for k in (j + 1)..c.len() {
            if t.contains(k) {
                continue;
            }
            if !c.epsilon((a, b, d), (j, k))?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exhaustive scan of all C(n, 3) vertex triples.
pub fn trivial_triples(c: &Configuration) -> Result<BTreeSet<Triple>, GeometryError> {
    let grid = EpsilonGrid::new(c)?;
    Ok(trivial_triples_on_grid(&grid, c.len()))
}

pub(crate) fn trivial_triples_on_grid(grid: &EpsilonGrid, n: usize) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for d in (b + 1)..n {
                if grid.is_trivial_triple([a, b, d], n) {
                    out.insert(Triple([a, b, d]));
                }
            }
        }
    }
    out
}

/// The first triple of the set occurring as three consecutive vertices of
/// the cycle, scanning windows by starting position in canonical cycle
/// order (wrapping around the end).
pub fn consecutive_trivial_triple(cycle: &Cycle, triples: &BTreeSet<Triple>) -> Option<Triple> {
    for [a, b, c] in cycle.consecutive_triples() {
        let t = Triple::new(a, b, c).expect("cycle vertices are distinct");
        if triples.contains(&t) {
            return Some(t);
        }
    }
    None
}

/// Drops the middle vertex of a trivial triple occurring consecutively in
/// the cycle. The returned cycle is one vertex shorter and, because the
/// triangle is pierced by nothing, has the same knot type (in particular the
/// same knot determinant).
pub fn reduce_along(
    c: &Configuration,
    cycle: &Cycle,
    t: &Triple,
) -> Result<Cycle, ReductionError> {
    if !is_trivial_triple(c, t)? {
        return Err(ReductionError::NotTrivial(*t));
    }
    let n = cycle.len();
    let v = cycle.vertices();
    for i in 0..n {
        let window = [v[i], v[(i + 1) % n], v[(i + 2) % n]];
        let mut sorted = window;
        sorted.sort_unstable();
        if sorted == t.vertices() {
            let middle = (i + 1) % n;
            let remaining: Vec<usize> = (0..n)
                .filter(|&p| p != middle)
                .map(|p| v[p])
                .collect();
            return Ok(Cycle::new(remaining)?);
        }
    }
    Err(ReductionError::NotConsecutive(*t))
}
