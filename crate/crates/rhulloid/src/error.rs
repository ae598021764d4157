//! Error taxonomy for the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input fails validation: wrong vertex count, non-finite coordinates, or
    /// an edge matrix too close to singular.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// An operation received points of the wrong ambient dimension.
    #[error("wrong dimension: expected {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },

    /// The requested radius does not exceed the lower bound required by the
    /// operation.
    #[error("radius {rho} too small: must exceed {min}")]
    RadiusTooSmall { rho: f64, min: f64 },

    /// Both candidate supporting centers pass (or fail) the vertex-exclusion
    /// predicate; the configuration is too close to the selection boundary.
    #[error("ambiguous supporting-center selection for facet {facet} at radius {rho}")]
    AmbiguousSelection { facet: usize, rho: f64 },

    /// A signed center was requested at a radius below the facet circumradius.
    #[error("radius {radius} below circumradius {facet_circumradius} of facet {facet}")]
    RadiusBelowFacet {
        facet: usize,
        radius: f64,
        facet_circumradius: f64,
    },

    /// Sphere centers too close to an affine subspace; no reliable
    /// circumsphere exists.
    #[error("near-degenerate centers: {0}")]
    DegenerateCenters(String),

    /// A root was expected in a bracket but none could be isolated.
    #[error("root bracketing failed: {0}")]
    RootBracketFailure(String),

    /// The fixed-point radius exists but its center falls outside the open
    /// simplex, so the collapse classification does not apply.
    #[error("fixed point at radius {rho} lies outside the open simplex at {point:?}")]
    NonInteriorFixedPoint { rho: f64, point: [f64; 3] },

    /// More than one interior crossing point, or an interior crossing point
    /// inconsistent with the critical radius.
    #[error("uniqueness violation: {0}")]
    UniquenessViolation(String),

    /// A checked invariant failed on concrete data.
    #[error("property violation: {0}")]
    PropertyViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
