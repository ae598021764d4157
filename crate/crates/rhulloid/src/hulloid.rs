//! Supporting ball families and hulloid membership.
//!
//! For radii above the circumradius, the R-hulloid of the vertex set V of a
//! simplex T is the convex hull of V minus one open ball per facet.  The ball
//! for facet i has its center on the line through the facet circumcenter
//! orthogonal to the facet plane, passes through the facet vertices, and
//! excludes the opposite vertex.  Membership tests and the planar arc
//! description both derive from this family.

use crate::error::{Error, Result};
use crate::geom::{ContainMode, Dim, Simplex, Vec3};
use crate::tol;

/// One supporting ball: radius `rho`, center on the facet axis.
#[derive(Clone, Debug)]
pub struct SupportBall {
    pub facet: usize,
    pub center: Vec3,
    pub rho: f64,
    facet_center: Vec3,
    normal: Vec3,
    facet_radius: f64,
    /// Signed offset along the facet normal: center = c_i + offset * n_i.
    axial_offset: f64,
}

impl SupportBall {
    /// Distance from `x` to the ball surface, positive outside.
    ///
    /// Evaluated through the power of the point with respect to the sphere,
    /// which stays accurate when `rho` dwarfs the simplex: the naive
    /// `|x - center| - rho` loses all significance there.
    pub fn surface_deficit(&self, x: &Vec3) -> f64 {
        let w = x - self.facet_center;
        let power = w.norm_squared()
            - 2.0 * self.axial_offset * self.normal.dot(&w)
            - self.facet_radius * self.facet_radius;
        let dist = (power + self.rho * self.rho).max(0.0).sqrt();
        power / (dist + self.rho)
    }

    /// True when `x` lies outside the open ball (band of `eps` lengths).
    pub fn excludes(&self, x: &Vec3, eps: f64) -> bool {
        self.surface_deficit(x) >= -eps
    }
}

/// The full family of supporting balls of a simplex at radius `rho`.
#[derive(Clone, Debug)]
pub struct SupportFamily {
    rho: f64,
    balls: Vec<SupportBall>,
    band: f64,
}

impl SupportFamily {
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn balls(&self) -> &[SupportBall] {
        &self.balls
    }

    pub fn centers(&self) -> Vec<Vec3> {
        self.balls.iter().map(|b| b.center).collect()
    }

    /// Smallest surface deficit over the family; nonnegative when `x` is
    /// outside every open ball.
    pub fn min_surface_deficit(&self, x: &Vec3) -> f64 {
        self.balls
            .iter()
            .map(|b| b.surface_deficit(x))
            .fold(f64::INFINITY, f64::min)
    }

    /// True when `x` lies outside all supporting balls.
    pub fn excludes(&self, x: &Vec3) -> bool {
        self.min_surface_deficit(x) >= -self.band
    }

    /// Hulloid membership for `x` given the parent simplex.
    pub fn member(&self, s: &Simplex, x: &Vec3) -> bool {
        s.contains(x, ContainMode::Closed) && self.excludes(x)
    }
}

/// Supporting ball for one facet.  Both candidate centers on the facet axis
/// realize radius `rho` through the facet vertices; the returned one excludes
/// the opposite vertex.
pub fn support_center(s: &Simplex, facet: usize, rho: f64) -> Result<SupportBall> {
    let r_v = s.circumradius();
    // Gate at the degeneracy floor, not the geometric band: radii within
    // EPS_GEOM of r(V) still produce well-separated supporting centers.
    if rho <= r_v * (1.0 + tol::EPS_DEGEN) {
        return Err(Error::RadiusTooSmall { rho, min: r_v });
    }
    let f = s.facet_data(facet);
    let s_off = (rho * rho - f.radius * f.radius).sqrt();
    let make = |offset: f64| SupportBall {
        facet,
        center: f.center + offset * f.normal,
        rho,
        facet_center: f.center,
        normal: f.normal,
        facet_radius: f.radius,
        axial_offset: offset,
    };
    let plus = make(s_off);
    let minus = make(-s_off);
    let excl = tol::EPS_GEOM * rho;
    match (
        plus.excludes(&f.opposite, -excl),
        minus.excludes(&f.opposite, -excl),
    ) {
        (true, false) => Ok(plus),
        (false, true) => Ok(minus),
        _ => Err(Error::AmbiguousSelection { facet, rho }),
    }
}

pub fn support_family(s: &Simplex, rho: f64) -> Result<SupportFamily> {
    let balls = (0..s.vertices().len())
        .map(|i| support_center(s, i, rho))
        .collect::<Result<Vec<_>>>()?;
    Ok(SupportFamily {
        rho,
        balls,
        band: tol::EPS_GEOM * s.diameter(),
    })
}

/// Whether `x` belongs to the rho-hulloid of the vertex set of `s`.
///
/// At or below the circumradius the hulloid is the vertex set itself; above
/// it, membership means lying in the closed simplex outside every supporting
/// ball.
pub fn membership(s: &Simplex, rho: f64, x: &Vec3) -> Result<bool> {
    let r_v = s.circumradius();
    if rho <= r_v * (1.0 + tol::EPS_DEGEN) {
        let band = tol::EPS_GEOM * s.diameter();
        return Ok(s.vertices().iter().any(|v| (x - v).norm() <= band));
    }
    let fam = support_family(s, rho)?;
    Ok(fam.member(s, x))
}

/// Rough distance from `x` to the nearest membership-deciding surface: a
/// supporting sphere or the simplex boundary.  Used to filter test points
/// out of ambiguous bands; not an exact distance to the hulloid boundary.
pub fn boundary_proximity(s: &Simplex, fam: &SupportFamily, x: &Vec3) -> f64 {
    let sphere_part = fam
        .balls
        .iter()
        .map(|b| b.surface_deficit(x).abs())
        .fold(f64::INFINITY, f64::min);
    let simplex_part = if s.contains(x, ContainMode::Closed) {
        (0..s.vertices().len())
            .map(|i| s.facet_data(i).height(x).abs())
            .fold(f64::INFINITY, f64::min)
    } else {
        s.distance(x)
    };
    sphere_part.min(simplex_part)
}

/// One boundary arc of a planar hulloid: part of the circle of radius `rho`
/// through the two endpoints of a triangle edge.
#[derive(Clone, Debug)]
pub struct PlanarArc {
    pub facet: usize,
    pub center: Vec3,
    pub rho: f64,
    /// The two triangle vertices the generating circle passes through.
    pub chord: (Vec3, Vec3),
    /// Counterclockwise interval; `end` may exceed 2π when the arc wraps.
    pub start: f64,
    pub end: f64,
}

impl PlanarArc {
    pub fn sweep(&self) -> f64 {
        self.end - self.start
    }

    pub fn point_at(&self, theta: f64) -> Vec3 {
        self.center + self.rho * Vec3::new(theta.cos(), theta.sin(), 0.0)
    }

    pub fn endpoints(&self) -> (Vec3, Vec3) {
        (self.point_at(self.start), self.point_at(self.end))
    }
}

/// Curvilinear triangle bounding the planar hulloid for `rho` above the
/// circumradius: per edge, the piece of the supporting circle inside the
/// triangle and outside the other two disks.
#[derive(Clone, Debug)]
pub struct PlanarHulloid {
    pub rho: f64,
    pub arcs: Vec<PlanarArc>,
}

pub fn planar_hulloid(s: &Simplex, rho: f64) -> Result<PlanarHulloid> {
    if s.dim() != Dim::Two {
        return Err(Error::WrongDimension { expected: 2, got: 3 });
    }
    let fam = support_family(s, rho)?;
    let mut arcs = Vec::new();
    for ball in fam.balls() {
        let mut allowed = ArcSet::full();
        for other in fam.balls() {
            if other.facet == ball.facet {
                continue;
            }
            allowed = allowed.intersect(&outside_disk_interval(
                &ball.center,
                rho,
                &other.center,
                rho,
            ));
        }
        for k in 0..3 {
            let f = s.facet_data(k);
            allowed = allowed.intersect(&halfplane_interval(
                &ball.center,
                rho,
                &f.normal,
                f.offset,
            ));
        }
        let f = s.facet_data(ball.facet);
        for iv in allowed.rejoined() {
            if iv.1 - iv.0 < tol::MIN_ARC_RAD {
                continue;
            }
            arcs.push(PlanarArc {
                facet: ball.facet,
                center: ball.center,
                rho,
                chord: (f.verts[0], f.verts[1]),
                start: iv.0,
                end: iv.1,
            });
        }
    }
    Ok(PlanarHulloid { rho, arcs })
}

/// Angular subsets of a circle as disjoint sorted intervals in [0, 2π).
#[derive(Clone, Debug)]
struct ArcSet {
    intervals: Vec<(f64, f64)>,
}

/// Single allowed arc (possibly wrapping), or everything, or nothing.
enum Band {
    All,
    None,
    Arc(f64, f64),
}

impl ArcSet {
    fn full() -> Self {
        ArcSet {
            intervals: vec![(0.0, std::f64::consts::TAU)],
        }
    }

    fn from_band(band: Band) -> Self {
        let tau = std::f64::consts::TAU;
        match band {
            Band::All => Self::full(),
            Band::None => ArcSet { intervals: vec![] },
            Band::Arc(lo, hi) => {
                let lo = lo.rem_euclid(tau);
                let hi = hi.rem_euclid(tau);
                if lo <= hi {
                    ArcSet {
                        intervals: vec![(lo, hi)],
                    }
                } else {
                    ArcSet {
                        intervals: vec![(0.0, hi), (lo, tau)],
                    }
                }
            }
        }
    }

    fn intersect(&self, other: &ArcSet) -> ArcSet {
        let mut out = Vec::new();
        for &(a0, a1) in &self.intervals {
            for &(b0, b1) in &other.intervals {
                let lo = a0.max(b0);
                let hi = a1.min(b1);
                if hi > lo {
                    out.push((lo, hi));
                }
            }
        }
        out.sort_by(|x, y| x.0.total_cmp(&y.0));
        ArcSet { intervals: out }
    }

    /// Merges a piece ending at 2π with one starting at 0 into a single
    /// wrapping interval whose end exceeds 2π.
    fn rejoined(&self) -> Vec<(f64, f64)> {
        let tau = std::f64::consts::TAU;
        let mut iv = self.intervals.clone();
        if iv.len() >= 2 {
            let first = iv[0];
            let last = *iv.last().unwrap();
            if first.0 <= 1e-12 && (last.1 - tau).abs() <= 1e-12 {
                iv.pop();
                iv[0] = (last.0, first.1 + tau);
            }
        }
        iv
    }
}

/// Angles on circle (center, r) lying outside the open disk (other, r_other).
fn outside_disk_interval(center: &Vec3, r: f64, other: &Vec3, r_other: f64) -> ArcSet {
    let w = other - center;
    let d = w.norm();
    // Allowed iff cos(theta - phi) <= m, phi the direction of the other
    // center: being far from it in angle keeps the point outside.
    let m = (d * d + r * r - r_other * r_other) / (2.0 * r * d.max(1e-300));
    if d < 1e-300 {
        return ArcSet::from_band(if r >= r_other { Band::All } else { Band::None });
    }
    if m >= 1.0 {
        return ArcSet::from_band(Band::All);
    }
    if m <= -1.0 {
        return ArcSet::from_band(Band::None);
    }
    let phi = w.y.atan2(w.x);
    let half = m.acos();
    // cos(theta - phi) <= m on [phi + half, phi + 2π - half].
    ArcSet::from_band(Band::Arc(phi + half, phi + std::f64::consts::TAU - half))
}

/// Angles on circle (center, r) on the inner side of a triangle edge line
/// with outward normal `n` and offset `b`.
fn halfplane_interval(center: &Vec3, r: f64, n: &Vec3, b: f64) -> ArcSet {
    let q = (b - n.dot(center)) / r;
    if q >= 1.0 {
        return ArcSet::from_band(Band::All);
    }
    if q <= -1.0 {
        return ArcSet::from_band(Band::None);
    }
    let psi = n.y.atan2(n.x);
    let half = q.acos();
    ArcSet::from_band(Band::Arc(psi + half, psi + std::f64::consts::TAU - half))
}
