//! Regular projections of polygonal cycles and knot classification.
//!
//! A cycle through a general-position configuration is a polygonal knot. We
//! project it along a deterministically chosen integer direction that is
//! *regular* for the polygon (distinct vertex images, no vertex on an edge
//! image, all edge crossings transverse and at distinct points), extract the
//! crossing data exactly, and compute the knot determinant |Δ(−1)|. For
//! polygons with at most 7 edges the determinant separates the only three
//! possible knot types: 1 (unknot), 3 (trefoil), 5 (figure-8); every other
//! knot type needs at least 8 sticks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::geometry::{Configuration, Scalar, Sign};
use crate::linalg;

/// A cycle through configuration vertices, stored in canonical form:
/// smallest vertex first, and of the two traversal directions the one whose
/// second vertex is smaller than its last. Rotations and reflections of the
/// same cyclic sequence therefore compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    vertices: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("a cycle needs at least 3 vertices")]
    CycleTooShort,
    #[error("cycle repeats vertex {}", .0 + 1)]
    RepeatedVertex(usize),
    #[error("cycle vertex {vertex} out of range for a configuration of {points} points", vertex = .0 + 1, points = .1)]
    VertexOutOfRange(usize, usize),
    #[error("cycle string must be nonempty digits 1-9, one per vertex")]
    MalformedCycleString,
    #[error("no regular projection direction among the {0} candidates")]
    DirectionsExhausted(usize),
    #[error("direction ({0}, {1}, {2}) is not regular: {3}")]
    IrregularDirection(i64, i64, i64, RegularityViolation),
    #[error("cycle has {0} edges; classification covers at most 7")]
    CycleTooLong(usize),
    #[error("determinant {0} is impossible for a polygon with at most 7 edges")]
    ImpossibleDeterminant(u64),
}

impl Cycle {
    pub fn new(seq: impl Into<Vec<usize>>) -> Result<Cycle, DiagramError> {
        let seq: Vec<usize> = seq.into();
        if seq.len() < 3 {
            return Err(DiagramError::CycleTooShort);
        }
        let mut sorted = seq.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(DiagramError::RepeatedVertex(w[0]));
        }
        Ok(Cycle {
            vertices: canonicalize(seq),
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Edges as vertex pairs in traversal order, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Consecutive vertex triples (cyclically), keyed by middle position.
    pub fn consecutive_triples(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let n = self.len();
        (0..n).map(move |i| {
            [
                self.vertices[i],
                self.vertices[(i + 1) % n],
                self.vertices[(i + 2) % n],
            ]
        })
    }

    /// One-based digit string, e.g. "1234567".
    pub fn compact(&self) -> String {
        self.vertices.iter().map(|v| (v + 1).to_string()).collect()
    }

    fn check_against(&self, c: &Configuration) -> Result<(), DiagramError> {
        for &v in &self.vertices {
            if v >= c.len() {
                return Err(DiagramError::VertexOutOfRange(v, c.len()));
            }
        }
        Ok(())
    }
}

fn canonicalize(seq: Vec<usize>) -> Vec<usize> {
    let n = seq.len();
    let min_pos = (0..n).min_by_key(|&i| seq[i]).expect("nonempty");
    let rotated: Vec<usize> = (0..n).map(|i| seq[(min_pos + i) % n]).collect();
    if rotated[1] < rotated[n - 1] {
        rotated
    } else {
        let mut rev = rotated;
        rev[1..].reverse();
        rev
    }
}

impl std::fmt::Display for Cycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "\u{27e8}{}\u{27e9}", self.compact())
    }
}

impl std::str::FromStr for Cycle {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Cycle, DiagramError> {
        if s.is_empty() {
            return Err(DiagramError::MalformedCycleString);
        }
        let mut seq = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch.to_digit(10) {
                Some(d) if d >= 1 => seq.push((d - 1) as usize),
                _ => return Err(DiagramError::MalformedCycleString),
            }
        }
        Cycle::new(seq)
    }
}

impl Serialize for Cycle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.compact())
    }
}

/// Knot type of a polygon with at most 7 edges. The world is closed: any
/// other knot type needs at least 8 sticks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KnotClass {
    Unknot,
    Trefoil,
    FigureEight,
}

impl std::fmt::Display for KnotClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KnotClass::Unknot => write!(f, "unknot"),
            KnotClass::Trefoil => write!(f, "trefoil"),
            KnotClass::FigureEight => write!(f, "figure-8"),
        }
    }
}

/// One transverse double point of a projected polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// Edge (index along the cycle) passing over, and where along it.
    pub over_edge: usize,
    pub over_param: Scalar,
    /// Edge passing under, and where along it.
    pub under_edge: usize,
    pub under_param: Scalar,
    /// Sign of the 2D cross product of (over direction, under direction).
    pub handedness: Sign,
}

/// Crossing data of a regular projection of one polygonal cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    n_edges: usize,
    crossings: Vec<Crossing>,
    /// For each edge, the crossings on it sorted by parameter.
    per_edge: Vec<Vec<usize>>,
}

impl Diagram {
    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings_on_edge(&self, edge: usize) -> &[usize] {
        &self.per_edge[edge]
    }

    /// The sequence of crossing passages met when walking the whole polygon:
    /// `(crossing index, true if passing over)`. Every crossing appears
    /// exactly twice, once over and once under.
    pub fn passages(&self) -> Vec<(usize, bool)> {
        let mut out = Vec::with_capacity(2 * self.crossings.len());
        for e in 0..self.n_edges {
            for &cid in &self.per_edge[e] {
                out.push((cid, self.crossings[cid].over_edge == e));
            }
        }
        out
    }
}

/// Why a candidate projection direction was rejected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegularityViolation {
    #[error("cycle positions {0} and {1} project to the same point")]
    CoincidentVertices(usize, usize),
    #[error("cycle position {0} projects onto the image of edge {1}")]
    VertexOnEdge(usize, usize),
    #[error("two crossings share a projected point (edges {0}/{1} and {2}/{3})")]
    CoincidentCrossings(usize, usize, usize, usize),
}

const MAX_DIRECTION_NORM: i64 = 16;

/// Deterministic enumeration of primitive integer directions, ordered by
/// max-norm and then by (x, y, z); one representative per antipodal pair
/// (first nonzero component positive).
pub fn direction_candidates() -> impl Iterator<Item = [i64; 3]> {
    (1..=MAX_DIRECTION_NORM).flat_map(|r| {
        (-r..=r).flat_map(move |x| {
            (-r..=r).flat_map(move |y| {
                (-r..=r).filter_map(move |z| {
                    let m = x.abs().max(y.abs()).max(z.abs());
                    if m != r {
                        return None;
                    }
                    let first = [x, y, z].into_iter().find(|&c| c != 0)?;
                    if first < 0 {
                        return None;
                    }
                    if x.abs().gcd(&y.abs()).gcd(&z.abs()) != 1 {
                        return None;
                    }
                    Some([x, y, z])
                })
            })
        })
    })
}

/// First candidate direction whose projection is regular for the cycle.
/// Deterministic: depends only on the configuration and cycle.
pub fn generic_direction(c: &Configuration, cycle: &Cycle) -> Result<[i64; 3], DiagramError> {
    cycle.check_against(c)?;
    let mut tried = 0usize;
    for dir in direction_candidates() {
        tried += 1;
        if build_diagram(c, cycle, dir).is_ok() {
            return Ok(dir);
        }
    }
    Err(DiagramError::DirectionsExhausted(tried))
}

/// First `count` regular directions from the candidate enumeration.
pub fn generic_directions(
    c: &Configuration,
    cycle: &Cycle,
    count: usize,
) -> Result<Vec<[i64; 3]>, DiagramError> {
    cycle.check_against(c)?;
    let mut out = Vec::with_capacity(count);
    let mut tried = 0usize;
    for dir in direction_candidates() {
        tried += 1;
        if build_diagram(c, cycle, dir).is_ok() {
            out.push(dir);
            if out.len() == count {
                return Ok(out);
            }
        }
    }
    Err(DiagramError::DirectionsExhausted(tried))
}

/// Projects the cycle along `dir` and extracts exact crossing data.
/// Fails if the direction is not regular for this cycle.
pub fn project(c: &Configuration, cycle: &Cycle, dir: [i64; 3]) -> Result<Diagram, DiagramError> {
    cycle.check_against(c)?;
    build_diagram(c, cycle, dir)
        .map_err(|v| DiagramError::IrregularDirection(dir[0], dir[1], dir[2], v))
}

/// The first regular direction together with its diagram; what the
/// classification pipeline uses.
pub fn diagram_for(
    c: &Configuration,
    cycle: &Cycle,
) -> Result<([i64; 3], Diagram), DiagramError> {
    cycle.check_against(c)?;
    let mut tried = 0usize;
    for dir in direction_candidates() {
        tried += 1;
        if let Ok(d) = build_diagram(c, cycle, dir) {
            return Ok((dir, d));
        }
    }
    Err(DiagramError::DirectionsExhausted(tried))
}

// ---------------------------------------------------------------------------
// Exact projection internals. All 2D work happens on the denominator-cleared
// integer copies of the points: image coordinates are (u·p, v·p) for an
// integer basis (u, v) of the plane orthogonal to dir, and the depth used for
// over/under comparisons is dir·p.

struct Projected {
    pts: Vec<[BigInt; 2]>,
    depth: Vec<BigInt>,
}

fn ivec_from_dir(dir: [i64; 3]) -> [BigInt; 3] {
    [dir[0].into(), dir[1].into(), dir[2].into()]
}

fn cross3(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot3(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn project_points(c: &Configuration, cycle: &Cycle, dir: [i64; 3]) -> Projected {
    let d = ivec_from_dir(dir);
    // Any axis not parallel to dir works; (u, v) spans the image plane.
    let axis: [BigInt; 3] = if dir[1] == 0 && dir[2] == 0 {
        [0.into(), 1.into(), 0.into()]
    } else {
        [1.into(), 0.into(), 0.into()]
    };
    let u = cross3(&d, &axis);
    let v = cross3(&d, &u);
    let mut pts = Vec::with_capacity(cycle.len());
    let mut depth = Vec::with_capacity(cycle.len());
    for &vertex in cycle.vertices() {
        let p = c.scaled(vertex);
        pts.push([dot3(&u, p), dot3(&v, p)]);
        depth.push(dot3(&d, p));
    }
    Projected { pts, depth }
}

fn orient2d(a: &[BigInt; 2], b: &[BigInt; 2], c: &[BigInt; 2]) -> Sign {
    let det = (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0]);
    Sign::of_bigint(&det)
}

fn within_bbox(a: &[BigInt; 2], b: &[BigInt; 2], w: &[BigInt; 2]) -> bool {
    let inside = |lo: &BigInt, hi: &BigInt, x: &BigInt| {
        if lo <= hi {
            lo <= x && x <= hi
        } else {
            hi <= x && x <= lo
        }
    };
    inside(&a[0], &b[0], &w[0]) && inside(&a[1], &b[1], &w[1])
}

fn build_diagram(
    c: &Configuration,
    cycle: &Cycle,
    dir: [i64; 3],
) -> Result<Diagram, RegularityViolation> {
    let n = cycle.len();
    let proj = project_points(c, cycle, dir);

    for i in 0..n {
        for j in (i + 1)..n {
            if proj.pts[i] == proj.pts[j] {
                return Err(RegularityViolation::CoincidentVertices(i, j));
            }
        }
    }

    // No vertex image may lie on the closed image of an edge it does not
    // bound. This also rules out folded-back collinear corners.
    for e in 0..n {
        let (a, b) = (e, (e + 1) % n);
        for w in 0..n {
            if w == a || w == b {
                continue;
            }
            if orient2d(&proj.pts[a], &proj.pts[b], &proj.pts[w]).is_zero()
                && within_bbox(&proj.pts[a], &proj.pts[b], &proj.pts[w])
            {
                return Err(RegularityViolation::VertexOnEdge(w, e));
            }
        }
    }

    // With the vertex checks done, every remaining edge-pair intersection is
    // a transverse interior double point, detected by strict orientation
    // sign tests.
    let mut raw: Vec<(usize, usize, Scalar, Scalar)> = Vec::new();
    let mut points: Vec<((Scalar, Scalar), usize, usize)> = Vec::new();
    for e in 0..n {
        for f in (e + 1)..n {
            if shares_vertex(n, e, f) {
                continue;
            }
            let a = &proj.pts[e];
            let b = &proj.pts[(e + 1) % n];
            let p = &proj.pts[f];
            let q = &proj.pts[(f + 1) % n];
            let o1 = orient2d(a, b, p);
            let o2 = orient2d(a, b, q);
            let o3 = orient2d(p, q, a);
            let o4 = orient2d(p, q, b);
            if o1.is_zero() || o2.is_zero() || o3.is_zero() || o4.is_zero() {
                // A zero here means collinearity with an endpoint off the
                // other closed segment (everything else was rejected above),
                // so the open segments do not meet.
                continue;
            }
            if o1 == o2 || o3 == o4 {
                continue;
            }
            // Proper crossing; solve for the parameters exactly.
            let r = [&b[0] - &a[0], &b[1] - &a[1]];
            let s = [&q[0] - &p[0], &q[1] - &p[1]];
            let ap = [&p[0] - &a[0], &p[1] - &a[1]];
            let denom = &r[0] * &s[1] - &r[1] * &s[0];
            let t_num = &ap[0] * &s[1] - &ap[1] * &s[0];
            let u_num = &ap[0] * &r[1] - &ap[1] * &r[0];
            let t = BigRational::new(t_num, denom.clone());
            let u = BigRational::new(u_num, denom);
            debug_assert!(t.is_positive() && t < BigRational::from_integer(1.into()));
            debug_assert!(u.is_positive() && u < BigRational::from_integer(1.into()));
            let px = BigRational::from_integer(a[0].clone())
                + &t * BigRational::from_integer(r[0].clone());
            let py = BigRational::from_integer(a[1].clone())
                + &t * BigRational::from_integer(r[1].clone());
            points.push(((px, py), e, f));
            raw.push((e, f, t, u));
        }
    }

    // Regularity forbids two crossings at the same projected point.
    points.sort_by(|a, b| a.0.cmp(&b.0));
    for w in points.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(RegularityViolation::CoincidentCrossings(
                w[0].1, w[0].2, w[1].1, w[1].2,
            ));
        }
    }

    let depth_at = |edge: usize, t: &Scalar| -> Scalar {
        let h0 = BigRational::from_integer(proj.depth[edge].clone());
        let h1 = BigRational::from_integer(proj.depth[(edge + 1) % n].clone());
        &h0 + t * (h1 - &h0)
    };

    let mut crossings = Vec::with_capacity(raw.len());
    for (e, f, t, u) in raw {
        let he = depth_at(e, &t);
        let hf = depth_at(f, &u);
        // Equal depths would mean the 3D segments intersect, which general
        // position rules out for edges with four distinct endpoints.
        assert_ne!(he, hf, "disjoint edges of a general-position polygon cannot meet in space");
        let dir_e = edge_dir(&proj, n, e);
        let dir_f = edge_dir(&proj, n, f);
        let cross = &dir_e[0] * &dir_f[1] - &dir_e[1] * &dir_f[0];
        let (over_edge, over_param, under_edge, under_param, handedness) = if he > hf {
            (e, t, f, u, Sign::of_bigint(&cross))
        } else {
            (f, u, e, t, Sign::of_bigint(&cross).negate())
        };
        crossings.push(Crossing {
            over_edge,
            over_param,
            under_edge,
            under_param,
            handedness,
        });
    }

    let mut per_edge: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (cid, cr) in crossings.iter().enumerate() {
        per_edge[cr.over_edge].push(cid);
        per_edge[cr.under_edge].push(cid);
    }
    for (e, list) in per_edge.iter_mut().enumerate() {
        list.sort_by(|&x, &y| param_on(&crossings[x], e).cmp(param_on(&crossings[y], e)));
        debug_assert!(list
            .windows(2)
            .all(|w| param_on(&crossings[w[0]], e) != param_on(&crossings[w[1]], e)));
    }

    Ok(Diagram {
        n_edges: n,
        crossings,
        per_edge,
    })
}

fn shares_vertex(n: usize, e: usize, f: usize) -> bool {
    let (e1, f1) = ((e + 1) % n, (f + 1) % n);
    e == f || e == f1 || e1 == f || e1 == f1
}

fn edge_dir(proj: &Projected, n: usize, e: usize) -> [BigInt; 2] {
    let a = &proj.pts[e];
    let b = &proj.pts[(e + 1) % n];
    [&b[0] - &a[0], &b[1] - &a[1]]
}

fn param_on(cr: &Crossing, edge: usize) -> &Scalar {
    if cr.over_edge == edge {
        &cr.over_param
    } else {
        debug_assert_eq!(cr.under_edge, edge);
        &cr.under_param
    }
}

// ---------------------------------------------------------------------------
// Knot determinant.

/// |Δ(−1)| of the knot presented by a diagram, from the walk of crossing
/// passages alone.
///
/// The underpasses split the curve into arcs (one per crossing); each
/// crossing contributes the row 2·over − in − out of its arcs, which is what
/// the Alexander matrix of the diagram's Wirtinger presentation becomes at
/// t = −1 regardless of crossing sign. Striking one row and one column of
/// that matrix and taking |det| gives the knot determinant. A crossing-free
/// diagram has determinant 1.
pub fn determinant_from_passages(crossing_count: usize, passages: &[(usize, bool)]) -> u64 {
    if crossing_count == 0 {
        assert!(passages.is_empty());
        return 1;
    }
    assert_eq!(passages.len(), 2 * crossing_count);
    let mut seen = vec![(false, false); crossing_count];
    for &(cid, over) in passages {
        let slot = &mut seen[cid];
        let flag = if over { &mut slot.0 } else { &mut slot.1 };
        assert!(!*flag, "crossing {cid} passed twice on the same strand");
        *flag = true;
    }
    assert!(seen.iter().all(|&(o, u)| o && u));

    let k = crossing_count;
    let under_positions: Vec<usize> = passages
        .iter()
        .enumerate()
        .filter(|(_, &(_, over))| !over)
        .map(|(pos, _)| pos)
        .collect();
    // Arc i ends at the i-th underpass; positions after the last underpass
    // wrap around into arc 0.
    let arc_of = |pos: usize| -> usize {
        under_positions.partition_point(|&u| u < pos) % k
    };
    let mut under_index = vec![usize::MAX; k];
    for (i, &pos) in under_positions.iter().enumerate() {
        under_index[passages[pos].0] = i;
    }

    let mut matrix = vec![vec![0i128; k]; k];
    for (pos, &(cid, over)) in passages.iter().enumerate() {
        if !over {
            continue;
        }
        let over_arc = arc_of(pos);
        let in_arc = under_index[cid];
        let out_arc = (in_arc + 1) % k;
        matrix[cid][over_arc] += 2;
        matrix[cid][in_arc] -= 1;
        matrix[cid][out_arc] -= 1;
    }
    debug_assert!(matrix.iter().all(|row| row.iter().sum::<i128>() == 0));

    // Strike the last row and column.
    let struck: Vec<Vec<i128>> = matrix[..k - 1]
        .iter()
        .map(|row| row[..k - 1].to_vec())
        .collect();
    let det = linalg::determinant(struck).unsigned_abs();
    u64::try_from(det).expect("knot determinants of small diagrams fit in u64")
}

/// Knot determinant of a projected diagram.
pub fn knot_determinant(d: &Diagram) -> u64 {
    determinant_from_passages(d.crossing_count(), &d.passages())
}

/// Arf invariant from the determinant: 0 iff |Δ(−1)| ≡ ±1 (mod 8).
/// Valid because knot determinants are odd.
pub fn arf_from_determinant(det: u64) -> u8 {
    debug_assert_eq!(det % 2, 1, "knot determinants are odd");
    match det % 8 {
        1 | 7 => 0,
        _ => 1,
    }
}

/// Arf invariant of a projected diagram.
pub fn arf(d: &Diagram) -> u8 {
    arf_from_determinant(knot_determinant(d))
}

/// Maps a determinant to the knot type it pins down for ≤7-stick polygons.
/// Any other value would contradict the closed world and surfaces as an
/// error rather than a guess.
pub fn class_from_determinant(det: u64) -> Result<KnotClass, DiagramError> {
    match det {
        1 => Ok(KnotClass::Unknot),
        3 => Ok(KnotClass::Trefoil),
        5 => Ok(KnotClass::FigureEight),
        other => Err(DiagramError::ImpossibleDeterminant(other)),
    }
}

/// Knot type of a cycle with at most 7 edges, decided by the determinant.
pub fn classify(c: &Configuration, cycle: &Cycle) -> Result<KnotClass, DiagramError> {
    if cycle.len() > 7 {
        return Err(DiagramError::CycleTooLong(cycle.len()));
    }
    let (_, diagram) = diagram_for(c, cycle)?;
    class_from_determinant(knot_determinant(&diagram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn cycle_canonical_form() {
        let c = Cycle::new(vec![0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(c.vertices(), &[0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(c.compact(), "1234567");
        assert_eq!(c.to_string(), "\u{27e8}1234567\u{27e9}");

        // Rotations and reflections agree.
        let rotated = Cycle::new(vec![3, 4, 5, 6, 0, 1, 2]).unwrap();
        let reflected = Cycle::new(vec![0, 6, 5, 4, 3, 2, 1]).unwrap();
        assert_eq!(c, rotated);
        assert_eq!(c, reflected);

        // Orientation choice: second vertex smaller than last.
        let c2 = Cycle::new(vec![2, 0, 4, 1, 3]).unwrap();
        assert_eq!(c2.vertices()[0], 0);
        assert!(c2.vertices()[1] < c2.vertices()[4]);
    }

    #[test]
    fn cycle_parsing() {
        let c: Cycle = "1236754".parse().unwrap();
        assert_eq!(c.vertices(), &[0, 1, 2, 5, 6, 4, 3]);
        assert!("".parse::<Cycle>().is_err());
        assert!("12x".parse::<Cycle>().is_err());
        assert!("1231".parse::<Cycle>().is_err());
        assert!("10".parse::<Cycle>().is_err());
    }

    #[test]
    fn cycle_rejects_bad_sequences() {
        assert_eq!(Cycle::new(vec![0, 1]), Err(DiagramError::CycleTooShort));
        assert_eq!(
            Cycle::new(vec![0, 1, 1, 2]),
            Err(DiagramError::RepeatedVertex(1))
        );
    }

    #[test]
    fn direction_enumeration_is_primitive_and_deterministic() {
        let first: Vec<[i64; 3]> = direction_candidates().take(4).collect();
        assert_eq!(first, vec![[0, 0, 1], [0, 1, -1], [0, 1, 0], [0, 1, 1]]);
        let many: Vec<[i64; 3]> = direction_candidates().take(500).collect();
        for d in &many {
            assert_eq!(d[0].abs().gcd(&d[1].abs()).gcd(&d[2].abs()), 1);
        }
        let again: Vec<[i64; 3]> = direction_candidates().take(500).collect();
        assert_eq!(many, again);
    }

    /// A nearly planar convex heptagon: projecting along z gives a simple
    /// closed curve with no crossings.
    fn convex_heptagon() -> (Configuration, Cycle) {
        let c = Configuration::from_integer_points(&[
            [100, 0, 1],
            [62, 78, 2],
            [-22, 97, 4],
            [-90, 43, 8],
            [-90, -43, 16],
            [-22, -97, 32],
            [62, -78, 64],
        ])
        .unwrap();
        let cycle = Cycle::new(vec![0, 1, 2, 3, 4, 5, 6]).unwrap();
        (c, cycle)
    }

    #[test]
    fn convex_polygon_projects_without_crossings() {
        let (c, cycle) = convex_heptagon();
        let dir = generic_direction(&c, &cycle).unwrap();
        assert_eq!(dir, [0, 0, 1]);
        // Determinism of the choice.
        assert_eq!(generic_direction(&c, &cycle).unwrap(), dir);
        let diagram = project(&c, &cycle, dir).unwrap();
        assert_eq!(diagram.crossing_count(), 0);
        assert_eq!(knot_determinant(&diagram), 1);
        assert_eq!(arf(&diagram), 0);
        assert_eq!(classify(&c, &cycle), Ok(KnotClass::Unknot));
    }

    #[test]
    fn irregular_direction_is_rejected_with_reason() {
        // Vertices 0 and 1 share their (x, y) coordinates, so projecting
        // along z collapses them; the first regular candidate must differ.
        let c = Configuration::from_integer_points(&[
            [0, 0, 0],
            [0, 0, 7],
            [91, -49, -35],
            [-13, -78, -55],
            [88, 41, 22],
            [-67, 17, 83],
            [29, -94, -12],
        ])
        .unwrap();
        let cycle = Cycle::new(vec![0, 1, 2, 3, 4, 5, 6]).unwrap();
        match project(&c, &cycle, [0, 0, 1]) {
            Err(DiagramError::IrregularDirection(
                0,
                0,
                1,
                RegularityViolation::CoincidentVertices(0, 1),
            )) => {}
            other => panic!("expected coincident-vertex rejection, got {other:?}"),
        }
        let dir = generic_direction(&c, &cycle).unwrap();
        assert_ne!(dir, [0, 0, 1]);
        assert!(classify(&c, &cycle).is_ok());
    }

    #[test]
    fn passages_pair_over_and_under() {
        let (c, cycle) = twisted_heptagon();
        let (_, diagram) = diagram_for(&c, &cycle).unwrap();
        let passages = diagram.passages();
        assert_eq!(passages.len(), 2 * diagram.crossing_count());
        for cid in 0..diagram.crossing_count() {
            let overs = passages.iter().filter(|&&(c2, o)| c2 == cid && o).count();
            let unders = passages.iter().filter(|&&(c2, o)| c2 == cid && !o).count();
            assert_eq!((overs, unders), (1, 1));
        }
        // Each crossing sits on exactly two edges' sorted lists.
        for cid in 0..diagram.crossing_count() {
            let cr = &diagram.crossings()[cid];
            assert!(diagram.crossings_on_edge(cr.over_edge).contains(&cid));
            assert!(diagram.crossings_on_edge(cr.under_edge).contains(&cid));
        }
    }

    /// A heptagon that is far from planar; its projections have crossings.
    fn twisted_heptagon() -> (Configuration, Cycle) {
        let c = Configuration::from_integer_points(&[
            [10, 3, -31],
            [-46, 92, 14],
            [71, -25, 67],
            [-13, -78, -55],
            [88, 41, 22],
            [-67, 17, 83],
            [29, -94, -12],
        ])
        .unwrap();
        let cycle = Cycle::new(vec![0, 1, 2, 3, 4, 5, 6]).unwrap();
        (c, cycle)
    }

    #[test]
    fn crossing_count_matches_naive_scan() {
        let (c, cycle) = twisted_heptagon();
        let dir = generic_direction(&c, &cycle).unwrap();
        let diagram = project(&c, &cycle, dir).unwrap();
        assert_eq!(diagram.crossing_count(), naive_crossing_count(&c, &cycle, dir));
    }

    #[test]
    fn piercing_example_points_extend_to_a_projectable_heptagon() {
        // The triangle-and-vertical-edge example points, extended by two
        // generic vertices.
        use num_rational::BigRational;
        let half = |n: i64| BigRational::new(n.into(), 2.into());
        let c = Configuration::new(vec![
            crate::geometry::Point3::from_integers(0, 0, 0),
            crate::geometry::Point3::from_integers(2, 0, 0),
            crate::geometry::Point3::from_integers(0, 2, 0),
            crate::geometry::Point3::new(half(1), half(1), half(-2)),
            crate::geometry::Point3::new(half(1), half(1), half(2)),
            crate::geometry::Point3::from_integers(3, 9, 5),
            crate::geometry::Point3::from_integers(-7, 4, 13),
        ])
        .unwrap();
        let cycle = Cycle::new(vec![0, 1, 2, 3, 4, 5, 6]).unwrap();
        let dir = generic_direction(&c, &cycle).unwrap();
        let diagram = project(&c, &cycle, dir).unwrap();
        assert_eq!(diagram.crossing_count(), naive_crossing_count(&c, &cycle, dir));
        assert!(classify(&c, &cycle).is_ok());
    }

    /// Independent crossing counter: solves every non-adjacent edge pair as a
    /// 2x2 rational linear system and counts parameter pairs in (0,1)².
    pub(crate) fn naive_crossing_count(c: &Configuration, cycle: &Cycle, dir: [i64; 3]) -> usize {
        let proj = project_points(c, cycle, dir);
        let n = cycle.len();
        let one = BigRational::from_integer(1.into());
        let zero = BigRational::zero();
        let mut count = 0;
        for e in 0..n {
            for f in (e + 1)..n {
                if shares_vertex(n, e, f) {
                    continue;
                }
                let a = &proj.pts[e];
                let b = &proj.pts[(e + 1) % n];
                let p = &proj.pts[f];
                let q = &proj.pts[(f + 1) % n];
                // a + t(b-a) = p + u(q-p)
                let m00 = BigRational::from_integer(&b[0] - &a[0]);
                let m01 = BigRational::from_integer(&p[0] - &q[0]);
                let m10 = BigRational::from_integer(&b[1] - &a[1]);
                let m11 = BigRational::from_integer(&p[1] - &q[1]);
                let r0 = BigRational::from_integer(&p[0] - &a[0]);
                let r1 = BigRational::from_integer(&p[1] - &a[1]);
                let det = &m00 * &m11 - &m01 * &m10;
                if det.is_zero() {
                    continue;
                }
                let t = (&r0 * &m11 - &r1 * &m01) / &det;
                let u = (&m00 * &r1 - &m10 * &r0) / &det;
                if t > zero && t < one && u > zero && u < one {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn determinant_fixture_values() {
        // Standard minimal trefoil: passages derived from the alternating
        // Gauss sequence O1 U2 O3 U1 O2 U3.
        let trefoil = [
            (0, true),
            (1, false),
            (2, true),
            (0, false),
            (1, true),
            (2, false),
        ];
        assert_eq!(determinant_from_passages(3, &trefoil), 3);

        // Standard figure-8: O1 U2 O3 U4 O2 U1 O4 U3.
        let figure8 = [
            (0, true),
            (1, false),
            (2, true),
            (3, false),
            (1, true),
            (0, false),
            (3, true),
            (2, false),
        ];
        assert_eq!(determinant_from_passages(4, &figure8), 5);

        // A single kink is still the unknot.
        let kink = [(0, true), (0, false)];
        assert_eq!(determinant_from_passages(1, &kink), 1);

        assert_eq!(determinant_from_passages(0, &[]), 1);
    }

    #[test]
    fn arf_values() {
        assert_eq!(arf_from_determinant(1), 0);
        assert_eq!(arf_from_determinant(3), 1);
        assert_eq!(arf_from_determinant(5), 1);
        assert_eq!(arf_from_determinant(7), 0);
        assert_eq!(arf_from_determinant(9), 0);
    }

    #[test]
    fn projection_direction_is_revalidated() {
        let (c, cycle) = twisted_heptagon();
        let dirs = generic_directions(&c, &cycle, 5).unwrap();
        assert_eq!(dirs.len(), 5);
        for dir in dirs {
            // Re-validating regularity must succeed, and the crossing count
            // must agree with the independent scan.
            let diagram = project(&c, &cycle, dir).unwrap();
            assert_eq!(
                diagram.crossing_count(),
                naive_crossing_count(&c, &cycle, dir)
            );
        }
    }

    #[test]
    fn determinant_is_projection_independent() {
        let (c, cycle) = twisted_heptagon();
        let dirs = generic_directions(&c, &cycle, 5).unwrap();
        let dets: Vec<u64> = dirs
            .iter()
            .map(|&d| knot_determinant(&project(&c, &cycle, d).unwrap()))
            .collect();
        assert!(dets.windows(2).all(|w| w[0] == w[1]), "dets = {dets:?}");
    }

    #[test]
    fn determinant_is_mirror_invariant() {
        let (c, cycle) = twisted_heptagon();
        let m = c.mirrored_z();
        let (_, d1) = diagram_for(&c, &cycle).unwrap();
        let (_, d2) = diagram_for(&m, &cycle).unwrap();
        assert_eq!(knot_determinant(&d1), knot_determinant(&d2));
    }

    #[test]
    fn classify_is_relabeling_invariant() {
        let (c, cycle) = twisted_heptagon();
        let perm = [3, 0, 6, 2, 5, 1, 4];
        let relabeled = c.relabeled(&perm).unwrap();
        // Vertex perm[i] of c is vertex i of the relabeled configuration, so
        // the cycle maps through the inverse permutation.
        let mut inverse = [0usize; 7];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let mapped =
            Cycle::new(cycle.vertices().iter().map(|&v| inverse[v]).collect::<Vec<_>>()).unwrap();
        assert_eq!(classify(&c, &cycle).unwrap(), classify(&relabeled, &mapped).unwrap());
    }
}
