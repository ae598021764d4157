//! Numeric tolerances shared across the crate.
//!
//! Every comparison against an ideal geometric predicate goes through one of
//! these constants so the tradeoffs live in a single place.  Scale-dependent
//! tolerances state the quantity they multiply.

/// Relative tolerance for geometric predicates (membership bands, residuals,
/// barycentric sign tests).  Multiplies a length scale such as the simplex
/// diameter, or is used directly on dimensionless barycentric coordinates.
pub const EPS_GEOM: f64 = 1e-9;

/// Degeneracy threshold for the edge-matrix determinant of a simplex,
/// relative to (max edge length)^d.
pub const EPS_DEGEN: f64 = 1e-10;

/// Relative tolerance for bracketed root refinement.
pub const EPS_ROOT: f64 = 1e-12;

/// Relative margin (times the circumradius) below which a candidate crossing
/// point is considered to lie on the circumsphere and is rejected.
pub const EPS_CIRC: f64 = 1e-6;

/// Escape-ball acceptance threshold: a witness counts only if its clearance
/// exceeds `EPS_CLEAR * rho`.
pub const EPS_CLEAR: f64 = 1e-7;

/// Deduplication tolerance for crossing records, relative to the
/// circumradius of the input simplex.
pub const DEDUP_REL: f64 = 1e-7;

/// Tangential-root acceptance: a local minimum of the pattern gap counts as a
/// double root when its magnitude is below `TANGENT_GAP_REL * r(V)`.
pub const TANGENT_GAP_REL: f64 = 1e-9;

/// Angular intervals shorter than this (radians) are dropped when clipping
/// planar arcs.
pub const MIN_ARC_RAD: f64 = 1e-9;

/// Default angular margin (radians) from the tangent-cone boundary for
/// directional containment checks.
pub const THETA_MARGIN: f64 = 1e-3;

/// Default step, relative to the ball radius, for probing points near a cone
/// apex.
pub const T_SCALE: f64 = 1e-4;

/// Relative offset defining the left end of the critical-radius search grid.
pub const GRID_LEFT_REL: f64 = 1e-6;

/// Relative perturbation used when validating a critical radius by sampling.
pub const VALIDATE_DELTA_REL: f64 = 1e-3;

/// Number of low-discrepancy points used for sampled fullness checks.
pub const FULLNESS_SAMPLES: usize = 10_000;
