//! Exact geometric predicates over rational coordinates.
//!
//! Everything downstream (piercing tests, projections, knot classification)
//! reduces to sign evaluations of small determinants. All arithmetic here is
//! exact: rational coordinates in, `Sign` out, no floating point anywhere.
//! A [`Configuration`] is a labeled point set in general position (no four
//! points coplanar); the constructor rejects anything degenerate so that the
//! predicates never have to resolve ties.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar used for all coordinates.
pub type Scalar = BigRational;

/// Sign of an exact arithmetic expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_bigint(v: &BigInt) -> Sign {
        if v.is_positive() {
            Sign::Positive
        } else if v.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn of_scalar(v: &Scalar) -> Sign {
        if v.is_positive() {
            Sign::Positive
        } else if v.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn product(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Negative => write!(f, "-1"),
            Sign::Zero => write!(f, "0"),
            Sign::Positive => write!(f, "+1"),
        }
    }
}

/// A point of ℝ³ with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point3 {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl Point3 {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Point3 {
        Point3 { x, y, z }
    }

    /// Convenience constructor for integer lattice points.
    pub fn from_integers(x: i64, y: i64, z: i64) -> Point3 {
        Point3 {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
            z: BigRational::from_integer(z.into()),
        }
    }

    fn coords(&self) -> [&Scalar; 3] {
        [&self.x, &self.y, &self.z]
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("configuration must have 6 or 7 points, got {0}")]
    UnsupportedSize(usize),
    #[error("vertices {} and {} coincide", .0 + 1, .1 + 1)]
    DuplicatePoint(usize, usize),
    #[error("vertices {}, {}, {}, {} are coplanar", .0 + 1, .1 + 1, .2 + 1, .3 + 1)]
    CoplanarQuadruple(usize, usize, usize, usize),
    #[error("plane through collinear points is undefined")]
    DegenerateTriangle,
    #[error("triangle/segment instance is degenerate (a coplanar quadruple)")]
    DegenerateIntersection,
    #[error("triangle and edge share vertex {}", .0 + 1)]
    IndexOverlap(usize),
    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("vertex indices must be pairwise distinct")]
    RepeatedIndex,
}

// ---------------------------------------------------------------------------
// Integer vector helpers.
//
// A Configuration keeps a denominator-cleared copy of its points. Every
// predicate is invariant under scaling by a positive rational (it is a sign),
// so evaluating on the scaled copy gives the same answer while staying in
// plain BigInt arithmetic.

type IVec3 = [BigInt; 3];

fn ivec_sub(a: &IVec3, b: &IVec3) -> IVec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn ivec_cross(a: &IVec3, b: &IVec3) -> IVec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn ivec_dot(a: &IVec3, b: &IVec3) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn ivec_is_zero(a: &IVec3) -> bool {
    a[0].is_zero() && a[1].is_zero() && a[2].is_zero()
}

/// Sign of det[b−a, c−a, d−a] on integer points.
fn orient3d_ivec(a: &IVec3, b: &IVec3, c: &IVec3, d: &IVec3) -> Sign {
    let u = ivec_sub(b, a);
    let v = ivec_sub(c, a);
    let w = ivec_sub(d, a);
    Sign::of_bigint(&ivec_dot(&ivec_cross(&u, &v), &w))
}

// ---------------------------------------------------------------------------
// Rational-point predicates (the reference path).

fn rvec_sub(a: &Point3, b: &Point3) -> [Scalar; 3] {
    [&a.x - &b.x, &a.y - &b.y, &a.z - &b.z]
}

fn rvec_cross(a: &[Scalar; 3], b: &[Scalar; 3]) -> [Scalar; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn rvec_dot(a: &[Scalar; 3], b: &[Scalar; 3]) -> Scalar {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

/// Orientation of the tetrahedron (a, b, c, d): the sign of
/// det[b−a, c−a, d−a].
///
/// Zero exactly when the four points are coplanar; antisymmetric under
/// swapping any two arguments.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Sign {
    let u = rvec_sub(b, a);
    let v = rvec_sub(c, a);
    let w = rvec_sub(d, a);
    Sign::of_scalar(&rvec_dot(&rvec_cross(&u, &v), &w))
}

/// Which side of the oriented plane through (i, j, k) the point p lies on:
/// the sign of (→ij × →jk)·→jp.
///
/// Expanding the cross product shows this equals det[j−i, k−i, p−i], i.e.
/// `orient3d(i, j, k, p)` with the arguments in the given order.
pub fn side_of_plane(i: &Point3, j: &Point3, k: &Point3, p: &Point3) -> Result<Sign, GeometryError> {
    let ij = rvec_sub(j, i);
    let ik = rvec_sub(k, i);
    let n = rvec_cross(&ij, &ik);
    if n.iter().all(|c| c.is_zero()) {
        return Err(GeometryError::DegenerateTriangle);
    }
    Ok(orient3d(i, j, k, p))
}

/// Does the open segment (s1, s2) meet the closed triangle (t1, t2, t3)?
///
/// Under general position the intersection, when it exists, is a single
/// point interior to both the segment and the triangle, so the open/closed
/// distinction never matters. Implemented as five orientation tests: the two
/// plane-side tests of the segment endpoints and the three wedge tests of the
/// triangle edges against the segment. Those five tests cover every 4-subset
/// of the five points, so any coplanar quadruple is detected and rejected.
pub fn segment_pierces_triangle(
    t1: &Point3,
    t2: &Point3,
    t3: &Point3,
    s1: &Point3,
    s2: &Point3,
) -> Result<bool, GeometryError> {
    pierce_impl(orient3d, [t1, t2, t3, s1, s2])
}

fn pierce_impl<P, F>(orient: F, pts: [&P; 5]) -> Result<bool, GeometryError>
where
    F: Fn(&P, &P, &P, &P) -> Sign,
{
    let [t1, t2, t3, s1, s2] = pts;
    let side1 = orient(t1, t2, t3, s1);
    let side2 = orient(t1, t2, t3, s2);
    if side1.is_zero() || side2.is_zero() {
        return Err(GeometryError::DegenerateIntersection);
    }
    if side1 == side2 {
        return Ok(false);
    }
    let w1 = orient(s1, s2, t1, t2);
    let w2 = orient(s1, s2, t2, t3);
    let w3 = orient(s1, s2, t3, t1);
    if w1.is_zero() || w2.is_zero() || w3.is_zero() {
        return Err(GeometryError::DegenerateIntersection);
    }
    Ok(w1 == w2 && w2 == w3)
}

/// A labeled set of 6 or 7 points in general position.
///
/// General position means all points distinct and no four coplanar (which
/// rules out collinear triples as well). Construction validates every
/// quadruple eagerly; all other operations may then assume non-degeneracy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    points: Vec<Point3>,
    // Points with denominators cleared, for pure-integer predicate evaluation.
    scaled: Vec<IVec3>,
}

impl Configuration {
    pub fn new(points: Vec<Point3>) -> Result<Configuration, GeometryError> {
        let n = points.len();
        if n != 6 && n != 7 {
            return Err(GeometryError::UnsupportedSize(n));
        }
        let scaled = clear_denominators(&points);
        for i in 0..n {
            for j in (i + 1)..n {
                if scaled[i] == scaled[j] {
                    return Err(GeometryError::DuplicatePoint(i, j));
                }
            }
        }
        for quad in combinations4(n) {
            let [a, b, c, d] = quad;
            if orient3d_ivec(&scaled[a], &scaled[b], &scaled[c], &scaled[d]).is_zero() {
                return Err(GeometryError::CoplanarQuadruple(a, b, c, d));
            }
        }
        Ok(Configuration { points, scaled })
    }

    /// Builds a configuration from integer lattice points.
    pub fn from_integer_points(coords: &[[i64; 3]]) -> Result<Configuration, GeometryError> {
        Configuration::new(
            coords
                .iter()
                .map(|&[x, y, z]| Point3::from_integers(x, y, z))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point3 {
        &self.points[i]
    }

    pub(crate) fn scaled(&self, i: usize) -> &IVec3 {
        &self.scaled[i]
    }

    fn check_index(&self, i: usize) -> Result<(), GeometryError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(GeometryError::IndexOutOfRange(i))
        }
    }

    /// `side_of_plane` over vertex indices.
    pub fn side_of_plane_at(
        &self,
        triple: (usize, usize, usize),
        p: usize,
    ) -> Result<Sign, GeometryError> {
        for ix in [triple.0, triple.1, triple.2, p] {
            self.check_index(ix)?;
        }
        // Collinear triples cannot occur in a validated configuration with
        // distinct indices, but guard anyway for symmetry with the free fn.
        let ij = ivec_sub(self.scaled(triple.1), self.scaled(triple.0));
        let ik = ivec_sub(self.scaled(triple.2), self.scaled(triple.0));
        if ivec_is_zero(&ivec_cross(&ij, &ik)) {
            return Err(GeometryError::DegenerateTriangle);
        }
        Ok(orient3d_ivec(
            self.scaled(triple.0),
            self.scaled(triple.1),
            self.scaled(triple.2),
            self.scaled(p),
        ))
    }

    /// The signed piercing indicator ε(i₁i₂i₃, jk).
    ///
    /// Zero when the segment from vertex j to vertex k misses the triangle
    /// (i₁, i₂, i₃); otherwise the sign of (→i₁i₂ × →i₂i₃)·→jk. General
    /// position guarantees a piercing segment is never parallel to the
    /// triangle's plane, so a nonzero result is well defined.
    pub fn epsilon(
        &self,
        triple: (usize, usize, usize),
        edge: (usize, usize),
    ) -> Result<Sign, GeometryError> {
        let (i1, i2, i3) = triple;
        let (j, k) = edge;
        for ix in [i1, i2, i3, j, k] {
            self.check_index(ix)?;
        }
        if i1 == i2 || i1 == i3 || i2 == i3 || j == k {
            return Err(GeometryError::RepeatedIndex);
        }
        for t in [i1, i2, i3] {
            if t == j || t == k {
                return Err(GeometryError::IndexOverlap(t));
            }
        }
        let pierces = pierce_impl(
            orient3d_ivec,
            [
                self.scaled(i1),
                self.scaled(i2),
                self.scaled(i3),
                self.scaled(j),
                self.scaled(k),
            ],
        )?;
        if !pierces {
            return Ok(Sign::Zero);
        }
        let u = ivec_sub(self.scaled(i2), self.scaled(i1));
        let v = ivec_sub(self.scaled(i3), self.scaled(i2));
        let jk = ivec_sub(self.scaled(k), self.scaled(j));
        let sign = Sign::of_bigint(&ivec_dot(&ivec_cross(&u, &v), &jk));
        debug_assert!(!sign.is_zero());
        Ok(sign)
    }

    /// The configuration with every z-coordinate negated (a mirror image).
    pub fn mirrored_z(&self) -> Configuration {
        let points = self
            .points
            .iter()
            .map(|p| Point3::new(p.x.clone(), p.y.clone(), -p.z.clone()))
            .collect();
        Configuration::new(points).expect("mirror image preserves general position")
    }

    /// The configuration with points reordered by `perm` (vertex i of the
    /// result is vertex perm[i] of self).
    pub fn relabeled(&self, perm: &[usize]) -> Result<Configuration, GeometryError> {
        if perm.len() != self.len() {
            return Err(GeometryError::UnsupportedSize(perm.len()));
        }
        let mut seen = vec![false; self.len()];
        for &p in perm {
            self.check_index(p)?;
            if seen[p] {
                return Err(GeometryError::RepeatedIndex);
            }
            seen[p] = true;
        }
        let points = perm.iter().map(|&p| self.points[p].clone()).collect();
        Configuration::new(points)
    }
}

impl std::fmt::Display for Configuration {
    /// One `x y z` line per point, each coordinate an integer or `p/q`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for p in &self.points {
            writeln!(f, "{} {} {}", p.x, p.y, p.z)?;
        }
        Ok(())
    }
}

/// Denominator-cleared copies of the points: multiplies everything by the
/// lcm of all coordinate denominators (a positive integer), which changes no
/// predicate sign.
fn clear_denominators(points: &[Point3]) -> Vec<IVec3> {
    let mut lcm = BigInt::one();
    for p in points {
        for c in p.coords() {
            lcm = lcm.lcm(c.denom());
        }
    }
    points
        .iter()
        .map(|p| {
            let scale = |c: &Scalar| -> BigInt {
                let q = c * BigRational::from_integer(lcm.clone());
                debug_assert!(q.denom().is_one());
                q.to_integer()
            };
            [scale(&p.x), scale(&p.y), scale(&p.z)]
        })
        .collect()
}

fn combinations4(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..n).flat_map(move |a| {
        ((a + 1)..n).flat_map(move |b| {
            ((b + 1)..n)
                .flat_map(move |c| ((c + 1)..n).map(move |d| [a, b, c, d]))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> Point3 {
        Point3::from_integers(x, y, z)
    }

    fn half(n: i64, d: i64) -> Scalar {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn orient3d_unit_tetrahedron() {
        assert_eq!(
            orient3d(&p(0, 0, 0), &p(1, 0, 0), &p(0, 1, 0), &p(0, 0, 1)),
            Sign::Positive
        );
        assert_eq!(
            orient3d(&p(0, 0, 0), &p(1, 0, 0), &p(0, 1, 0), &p(5, 7, 0)),
            Sign::Zero
        );
        assert_eq!(
            orient3d(&p(0, 0, 0), &p(1, 0, 0), &p(0, 1, 0), &p(0, 0, -1)),
            Sign::Negative
        );
    }

    #[test]
    fn side_of_plane_examples() {
        let i = p(0, 0, 0);
        let j = p(1, 0, 0);
        let k = p(1, 1, 0);
        assert_eq!(side_of_plane(&i, &j, &k, &p(0, 0, 1)), Ok(Sign::Positive));
        assert_eq!(side_of_plane(&i, &j, &k, &p(0, 0, -1)), Ok(Sign::Negative));
        assert_eq!(side_of_plane(&i, &j, &k, &p(3, 5, 0)), Ok(Sign::Zero));
    }

    #[test]
    fn side_of_plane_rejects_collinear_base() {
        let err = side_of_plane(&p(0, 0, 0), &p(1, 0, 0), &p(2, 0, 0), &p(0, 0, 1));
        assert_eq!(err, Err(GeometryError::DegenerateTriangle));
    }

    fn spec_triangle() -> (Point3, Point3, Point3) {
        (p(0, 0, 0), p(2, 0, 0), p(0, 2, 0))
    }

    #[test]
    fn piercing_examples() {
        let (t1, t2, t3) = spec_triangle();
        let lo = Point3::new(half(1, 2), half(1, 2), half(-1, 1));
        let hi = Point3::new(half(1, 2), half(1, 2), half(1, 1));
        let higher = Point3::new(half(1, 2), half(1, 2), half(3, 1));
        assert_eq!(segment_pierces_triangle(&t1, &t2, &t3, &lo, &hi), Ok(true));
        assert_eq!(
            segment_pierces_triangle(&t1, &t2, &t3, &hi, &higher),
            Ok(false)
        );
        assert_eq!(
            segment_pierces_triangle(&t1, &t2, &t3, &p(5, 5, -1), &p(5, 5, 1)),
            Ok(false)
        );
    }

    #[test]
    fn piercing_rejects_coplanar_quadruple() {
        let (t1, t2, t3) = spec_triangle();
        // Segment endpoint lies in the triangle's plane.
        let err = segment_pierces_triangle(&t1, &t2, &t3, &p(1, 1, 0), &p(1, 1, 3));
        assert_eq!(err, Err(GeometryError::DegenerateIntersection));
    }

    /// Six-point configuration whose first five vertices are the piercing
    /// example: triangle in the z=0 plane, edge 4→5 crossing it vertically.
    pub(crate) fn epsilon_example_configuration() -> Configuration {
        Configuration::new(vec![
            p(0, 0, 0),
            p(2, 0, 0),
            p(0, 2, 0),
            Point3::new(half(1, 2), half(1, 2), half(-1, 1)),
            Point3::new(half(1, 2), half(1, 2), half(1, 1)),
            p(3, 9, 5),
        ])
        .expect("example configuration is in general position")
    }

    #[test]
    fn epsilon_examples() {
        let c = epsilon_example_configuration();
        assert_eq!(c.epsilon((0, 1, 2), (3, 4)), Ok(Sign::Positive));
        assert_eq!(c.epsilon((0, 1, 2), (4, 3)), Ok(Sign::Negative));

        // Same configuration but with the edge lifted strictly above the
        // triangle's plane: no piercing.
        let lifted = Configuration::new(vec![
            p(0, 0, 0),
            p(2, 0, 0),
            p(0, 2, 0),
            Point3::new(half(1, 2), half(1, 2), half(1, 1)),
            Point3::new(half(1, 2), half(1, 2), half(3, 1)),
            p(3, 9, 5),
        ])
        .unwrap();
        assert_eq!(lifted.epsilon((0, 1, 2), (3, 4)), Ok(Sign::Zero));
    }

    #[test]
    fn epsilon_rejects_overlapping_indices() {
        let c = epsilon_example_configuration();
        assert_eq!(
            c.epsilon((0, 1, 2), (2, 4)),
            Err(GeometryError::IndexOverlap(2))
        );
        assert_eq!(
            c.epsilon((0, 1, 1), (3, 4)),
            Err(GeometryError::RepeatedIndex)
        );
        assert!(matches!(
            c.epsilon((0, 1, 2), (3, 9)),
            Err(GeometryError::IndexOutOfRange(9))
        ));
    }

    #[test]
    fn configuration_rejects_degeneracies() {
        assert_eq!(
            Configuration::from_integer_points(&[[0, 0, 0]; 6]),
            Err(GeometryError::DuplicatePoint(0, 1))
        );
        let coplanar = Configuration::from_integer_points(&[
            [0, 0, 0],
            [1, 0, 0],
            [0, 1, 0],
            [1, 1, 0],
            [0, 0, 5],
            [3, 1, 7],
        ]);
        assert_eq!(coplanar, Err(GeometryError::CoplanarQuadruple(0, 1, 2, 3)));
        assert!(matches!(
            Configuration::from_integer_points(&[[0, 0, 0]; 5]),
            Err(GeometryError::UnsupportedSize(5))
        ));
    }

    #[test]
    fn epsilon_matches_rational_reference() {
        let c = epsilon_example_configuration();
        for t1 in 0..6 {
            for t2 in 0..6 {
                for t3 in 0..6 {
                    if t1 >= t2 || t2 >= t3 {
                        continue;
                    }
                    for j in 0..6 {
                        for k in 0..6 {
                            if j == k || [t1, t2, t3].contains(&j) || [t1, t2, t3].contains(&k) {
                                continue;
                            }
                            let fast = c.epsilon((t1, t2, t3), (j, k)).unwrap();
                            let slow = epsilon_reference(&c, (t1, t2, t3), (j, k));
                            assert_eq!(fast, slow);
                        }
                    }
                }
            }
        }
    }

    /// Reference ε built from the rational-point predicates only.
    fn epsilon_reference(
        c: &Configuration,
        (i1, i2, i3): (usize, usize, usize),
        (j, k): (usize, usize),
    ) -> Sign {
        let pierce = segment_pierces_triangle(
            c.point(i1),
            c.point(i2),
            c.point(i3),
            c.point(j),
            c.point(k),
        )
        .unwrap();
        if !pierce {
            return Sign::Zero;
        }
        let u = rvec_sub(c.point(i2), c.point(i1));
        let v = rvec_sub(c.point(i3), c.point(i2));
        let jk = rvec_sub(c.point(k), c.point(j));
        Sign::of_scalar(&rvec_dot(&rvec_cross(&u, &v), &jk))
    }
}
