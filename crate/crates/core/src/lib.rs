//! Knot analysis of linear embeddings of the complete graphs K₆ and K₇.
//!
//! A set of 6 or 7 points in general position in ℝ³ embeds the complete
//! graph with straight edges; every Hamiltonian cycle of that graph is a
//! polygonal knot. This crate classifies all of them exactly:
//!
//! - [`geometry`]: exact rational predicates (orientation, plane sides,
//!   triangle piercing, the signed piercing indicator ε);
//! - [`diagram`]: regular projections, crossing extraction, and knot
//!   classification by determinant (1 = unknot, 3 = trefoil, 5 = figure-8);
//! - [`tables`]: the 7×3 ε sign tables characterizing labeled heptagonal
//!   figure-8 knots (Type-I/II/III) and the table-based figure-8 decision;
//! - [`reduction`]: trivial triples and the heptagon-to-hexagon reduction;
//! - [`census`]: enumeration and classification of all Hamiltonian cycles
//!   with the bound checks that hold for every general-position input;
//! - [`search`]: seeded randomized search for configurations maximizing the
//!   number of figure-8 cycles (the bound of three is attainable).
//!
//! All arithmetic on coordinates is exact; no floating point is used
//! anywhere in a predicate.

pub mod census;
pub mod diagram;
pub mod geometry;
mod linalg;
pub mod reduction;
pub mod search;
pub mod tables;

pub use diagram::{classify, Cycle, Diagram, KnotClass};
pub use geometry::{Configuration, Point3, Scalar, Sign};
