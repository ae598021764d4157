//! Geometry of R-hulloids of simplex vertex sets.
//!
//! For a finite set E and radius R, the R-hulloid of E is the smallest closed
//! superset of E whose complement is a union of open balls of radius R.  For
//! the vertex set V of a nondegenerate simplex this crate computes:
//!
//! * the supporting family of balls describing the hulloid for radii above
//!   the circumradius ([`hulloid`]),
//! * the critical radius at which the hulloid collapses to the vertices plus
//!   one isolated point ([`critical`]),
//! * every radius at which four equal spheres through vertex triples of a
//!   tetrahedron cross at a single point ([`four_crossing`]),
//! * local cone models of hulloid complements near a common boundary point
//!   ([`rcone`]),
//! * an independent membership oracle that searches directly for an escaping
//!   ball ([`oracle`]).
//!
//! Ambient dimension is 2 or 3; planar configurations are embedded with a
//! zero third coordinate.

pub mod critical;
pub mod error;
pub mod four_crossing;
pub mod geom;
pub mod hulloid;
pub mod oracle;
pub mod rcone;
pub mod roots;
pub mod sample;
pub mod tol;

pub use error::{Error, Result};
pub use geom::{ContainMode, Dim, FacetData, Simplex, Sphere, Vec3};
