//! Critical radius of the hulloid family.
//!
//! As rho grows past the circumradius, the supporting-ball centers span a
//! simplex W(rho).  Let r(rho) be its circumradius.  Where the gap
//! r(rho) - rho first vanishes, the circumcenter of W touches all supporting
//! spheres at once: the hulloid at that radius is the vertex set plus that
//! single point, provided the point lies inside the open simplex.  Below the
//! crossing the hulloid is the vertex set alone, above it the hulloid gains
//! interior.  When the gap is positive from the start the hulloid is full
//! for every radius above the circumradius and no collapse point exists.

use crate::error::{Error, Result};
use crate::geom::{circumsphere, ContainMode, Simplex, Vec3};
use crate::hulloid::{support_family, SupportFamily};
use crate::roots;
use crate::sample;
use crate::tol;

/// Simplex of supporting-ball centers at one radius.
#[derive(Clone, Debug)]
pub struct WSimplex {
    pub rho: f64,
    pub centers: Vec<Vec3>,
    pub circumcenter: Vec3,
    pub circumradius: f64,
}

impl WSimplex {
    /// Fixed-point defect r(rho) - rho.
    pub fn gap(&self) -> f64 {
        self.circumradius - self.rho
    }
}

pub fn w_simplex(s: &Simplex, rho: f64) -> Result<WSimplex> {
    let fam = support_family(s, rho)?;
    let centers = fam.centers();
    let sph = circumsphere(&centers).map_err(|e| {
        Error::DegenerateCenters(format!("supporting centers at rho {rho}: {e}"))
    })?;
    Ok(WSimplex {
        rho,
        centers,
        circumcenter: sph.center,
        circumradius: sph.radius,
    })
}

/// Outcome of the critical-radius analysis.
///
/// `collapsed` means a radius `r_star` above the circumradius exists where
/// the hulloid is exactly the vertices plus the single point `o_star`.
/// Otherwise `r_star` equals the circumradius and the hulloid is full for
/// every radius above it.
#[derive(Clone, Debug)]
pub struct CriticalResult {
    pub r_star: f64,
    pub o_star: Option<Vec3>,
    pub collapsed: bool,
    /// |r(r_star) - r_star| at the returned radius.
    pub gap_residual: f64,
}

/// Hulloid shape at a given radius.
#[derive(Clone, Debug, PartialEq)]
pub enum HulloidClass {
    VerticesOnly,
    VerticesPlusPoint { o_star: Vec3 },
    Full,
}

pub fn critical_radius(s: &Simplex) -> Result<CriticalResult> {
    let r_v = s.circumradius();
    let left = r_v * (1.0 + tol::GRID_LEFT_REL);
    // Geometric grid, 8 steps per doubling, up to 64 r(V).
    let grid: Vec<f64> = (0..=48).map(|k| left * 2f64.powf(k as f64 / 8.0)).collect();
    let mut gaps = Vec::with_capacity(grid.len());
    for &rho in &grid {
        gaps.push(w_simplex(s, rho)?.gap());
    }
    let crossing = gaps.windows(2).position(|w| w[0] <= 0.0 && w[1] > 0.0);
    let Some(k) = crossing else {
        if gaps.iter().all(|&g| g > 0.0) {
            // Full immediately above the circumradius; nothing collapses.
            return Ok(CriticalResult {
                r_star: r_v,
                o_star: None,
                collapsed: false,
                gap_residual: 0.0,
            });
        }
        return Err(Error::RootBracketFailure(format!(
            "gap never crosses zero upward on [{left}, {}]",
            grid.last().unwrap()
        )));
    };
    let mut inner_err = None;
    let root = roots::brent(
        |rho| match w_simplex(s, rho) {
            Ok(w) => w.gap(),
            Err(e) => {
                inner_err = Some(e);
                0.0
            }
        },
        grid[k],
        grid[k + 1],
        tol::EPS_ROOT,
        100,
    )?;
    if let Some(e) = inner_err {
        return Err(e);
    }
    let w = w_simplex(s, root)?;
    let o_star = w.circumcenter;
    if !s.contains(&o_star, ContainMode::Open) {
        return Err(Error::NonInteriorFixedPoint {
            rho: root,
            point: [o_star.x, o_star.y, o_star.z],
        });
    }
    validate_collapse(s, root, &o_star)?;
    Ok(CriticalResult {
        r_star: root,
        o_star: Some(o_star),
        collapsed: true,
        gap_residual: w.gap().abs(),
    })
}

/// Sampled sanity check around a candidate collapse radius: just below it no
/// interior point away from the collapse point is a member, and just above
/// it the collapse point itself is.
fn validate_collapse(s: &Simplex, r_star: f64, o_star: &Vec3) -> Result<()> {
    let delta = tol::VALIDATE_DELTA_REL * r_star;
    let fam_lo = support_family(s, r_star - delta)?;
    let vertex_margin = 1e-6 * s.diameter();
    let stray = sample::simplex_points(s, tol::FULLNESS_SAMPLES)
        .into_iter()
        .filter(|p| (p - o_star).norm() > delta)
        .filter(|p| s.vertices().iter().all(|v| (p - v).norm() > vertex_margin))
        .find(|p| fam_lo.member(s, p));
    if let Some(p) = stray {
        return Err(Error::RootBracketFailure(format!(
            "member {p:?} found below the candidate collapse radius {r_star}"
        )));
    }
    let fam_hi = support_family(s, r_star + delta)?;
    if !fam_hi.member(s, o_star) {
        return Err(Error::RootBracketFailure(format!(
            "collapse point not a member just above the candidate radius {r_star}"
        )));
    }
    Ok(())
}

/// True when some sampled point of the simplex, away from the vertices, is a
/// hulloid member at this radius.  One-sided at sampling resolution.
pub fn sampled_full(s: &Simplex, rho: f64) -> Result<bool> {
    let r_v = s.circumradius();
    if rho <= r_v * (1.0 + tol::EPS_DEGEN) {
        return Ok(false);
    }
    let fam = support_family(s, rho)?;
    let vertex_margin = 1e-6 * s.diameter();
    Ok(sample::simplex_points(s, tol::FULLNESS_SAMPLES)
        .iter()
        .filter(|p| s.vertices().iter().all(|v| (*p - v).norm() > vertex_margin))
        .any(|p| fam.member(s, p)))
}

/// Equality band for radius comparisons in [`classify`].
const CLASS_BAND_REL: f64 = 1e-10;

pub fn classify(s: &Simplex, rho: f64) -> Result<HulloidClass> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::DegenerateInput(format!("invalid radius {rho}")));
    }
    let r_v = s.circumradius();
    if rho <= r_v {
        return Ok(HulloidClass::VerticesOnly);
    }
    match critical_radius(s) {
        Ok(crit) => {
            if !crit.collapsed {
                // Full for every radius above the circumradius.
                return Ok(HulloidClass::Full);
            }
            let o_star = crit.o_star.expect("collapsed result carries its point");
            let band = CLASS_BAND_REL * crit.r_star;
            if (rho - crit.r_star).abs() <= band {
                Ok(HulloidClass::VerticesPlusPoint { o_star })
            } else if rho < crit.r_star {
                Ok(HulloidClass::VerticesOnly)
            } else {
                Ok(HulloidClass::Full)
            }
        }
        // No usable fixed point: fall back to the sampled definition.
        Err(Error::NonInteriorFixedPoint { .. }) | Err(Error::RootBracketFailure(_)) => {
            if sampled_full(s, rho)? {
                Ok(HulloidClass::Full)
            } else {
                Ok(HulloidClass::VerticesOnly)
            }
        }
        Err(e) => Err(e),
    }
}

/// Supporting family at the critical radius, for callers that need the
/// spheres realizing the collapse.
pub fn critical_family(s: &Simplex, crit: &CriticalResult) -> Result<SupportFamily> {
    support_family(s, crit.r_star)
}
