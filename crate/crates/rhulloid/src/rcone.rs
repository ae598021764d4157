//! Cones carved out by equal balls tangent at a common vertex.
//!
//! Given a finite set of unit directions at a vertex p and a radius R, each
//! direction v excludes the open ball of radius R centered at p + R·v; the
//! remaining set is the cone body C.  All excluded spheres pass through p,
//! so p itself always stays in C, and to first order around p the body looks
//! like the negative dual cone of the directions: u points into C exactly
//! when ⟨u, v⟩ ≤ 0 for every direction v.  `tangent_check` verifies that
//! first-order picture by sampling, and `common_point_nonempty_check`
//! verifies that equal balls through a common point always leave nearby
//! points uncovered.

use crate::error::{Error, Result};
use crate::geom::{Dim, Sphere, Vec3};
use crate::sample;
use crate::tol;

#[derive(Clone, Debug)]
pub struct RCone {
    vertex: Vec3,
    directions: Vec<Vec3>,
    radius: f64,
    dim: Dim,
}

impl RCone {
    /// Directions must be unit vectors, pairwise separated by more than
    /// 1e-9 rad; planar cones live in the z = 0 plane.
    pub fn new(vertex: Vec3, directions: Vec<Vec3>, radius: f64, dim: Dim) -> Result<Self> {
        if directions.is_empty() {
            return Err(Error::DegenerateInput("no cone directions".into()));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::DegenerateInput(format!("bad cone radius {radius}")));
        }
        for v in &directions {
            if (v.norm() - 1.0).abs() > tol::EPS_GEOM {
                return Err(Error::DegenerateInput(format!(
                    "direction {v:?} is not unit"
                )));
            }
            if dim == Dim::Two && v.z != 0.0 {
                return Err(Error::DegenerateInput(
                    "planar cone direction leaves the z = 0 plane".into(),
                ));
            }
        }
        for i in 0..directions.len() {
            for j in (i + 1)..directions.len() {
                let cos = directions[i].dot(&directions[j]).clamp(-1.0, 1.0);
                if cos.acos() <= 1e-9 {
                    return Err(Error::DegenerateInput(format!(
                        "directions {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(RCone {
            vertex,
            directions,
            radius,
            dim,
        })
    }

    pub fn vertex(&self) -> Vec3 {
        self.vertex
    }

    pub fn directions(&self) -> &[Vec3] {
        &self.directions
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Signed distance from x to the nearest excluded ball; negative inside
    /// one.  Power-of-point form keeps it accurate near p, where x is almost
    /// tangent to every sphere.
    pub fn clearance(&self, x: &Vec3) -> f64 {
        let w = x - self.vertex;
        let r = self.radius;
        self.directions
            .iter()
            .map(|v| {
                let power = w.norm_squared() - 2.0 * r * w.dot(v);
                let dist = (power + r * r).max(0.0).sqrt();
                power / (dist + r)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// x lies in the cone body when no excluded ball reaches more than the
/// tolerance band past it.
pub fn rcone_contains(c: &RCone, x: &Vec3) -> bool {
    c.clearance(x) >= -tol::EPS_GEOM * c.radius()
}

/// Dual-cone membership for a finitely generated cone: ⟨y, v⟩ ≥ 0 against
/// every generator, with a small tolerance band.
pub fn dual_contains(directions: &[Vec3], y: &Vec3) -> bool {
    directions.iter().all(|v| y.dot(v) >= -tol::EPS_GEOM)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TangentReport {
    /// Directions where containment and the dual prediction were compared.
    pub checked: usize,
    /// Directions skipped for sitting too close to the dual boundary.
    pub skipped: usize,
    /// Checked directions strictly inside the dual that also had to clear
    /// every ball by a positive distance.
    pub interior_checked: usize,
}

/// Samples unit directions u and confirms that p + t·u lies in the cone body
/// exactly when u points into the negative dual cone, for small t.
///
/// Directions within `theta_margin` of the dual boundary are skipped: there
/// the spheres' curvature decides membership at second order and the
/// first-order prediction is not meaningful.  For directions strictly inside
/// the negative dual the probe point must additionally keep a positive
/// distance to every excluded ball.
pub fn tangent_check(
    c: &RCone,
    n_dirs: usize,
    t_scale: f64,
    seed: u64,
) -> Result<TangentReport> {
    let t = t_scale * c.radius();
    let sin_margin = tol::THETA_MARGIN.sin();
    let mut report = TangentReport::default();
    for u in sample::unit_directions(n_dirs, seed, c.dim()) {
        let margin = c
            .directions()
            .iter()
            .map(|v| u.dot(v).abs())
            .fold(f64::INFINITY, f64::min);
        if margin < sin_margin {
            report.skipped += 1;
            continue;
        }
        let probe = c.vertex() + t * u;
        let contained = rcone_contains(c, &probe);
        let predicted = dual_contains(c.directions(), &(-u));
        if contained != predicted {
            return Err(Error::PropertyViolation(format!(
                "direction {u:?}: contains(p + t u) = {contained} but dual prediction = \
                 {predicted} (t = {t}, margin = {margin})"
            )));
        }
        report.checked += 1;
        if predicted {
            let clear = c.clearance(&probe);
            if clear <= 0.0 {
                return Err(Error::PropertyViolation(format!(
                    "interior direction {u:?}: probe touches an excluded ball \
                     (clearance {clear})"
                )));
            }
            report.interior_checked += 1;
        }
    }
    Ok(report)
}

/// Confirms that equal-radius balls through a common point p* never cover a
/// whole neighborhood of p*: some point within `neighborhood_eps` of p*
/// keeps a positive distance to every ball.  Returns that witness point.
///
/// The searched directions follow the negative dual of the inward normals,
/// the cone along which the balls open away from p*.
pub fn common_point_nonempty_check(
    spheres: &[Sphere],
    p_star: &Vec3,
    neighborhood_eps: f64,
    dim: Dim,
    seed: u64,
) -> Result<Vec3> {
    if spheres.is_empty() {
        return Err(Error::DegenerateInput("no spheres".into()));
    }
    let rho = spheres[0].radius;
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::DegenerateInput(format!("bad sphere radius {rho}")));
    }
    for s in spheres {
        if (s.radius - rho).abs() > tol::EPS_GEOM * rho {
            return Err(Error::DegenerateInput(format!(
                "unequal radii {} and {rho}",
                s.radius
            )));
        }
        let on = ((s.center - p_star).norm() - rho).abs();
        if on > tol::EPS_GEOM * rho * 10.0 {
            return Err(Error::DegenerateInput(format!(
                "common point misses a sphere by {on}"
            )));
        }
    }
    let normals: Vec<Vec3> = spheres.iter().map(|s| (s.center - p_star) / rho).collect();

    // The average inward normal negated is the deepest escape direction in
    // symmetric configurations.  When the normals span only a line or plane
    // the escape is second order along their orthogonal complement, so those
    // exact directions go in as candidates too; seeded directions cover the
    // rest.
    let mut candidates = Vec::new();
    let mean: Vec3 = normals.iter().sum();
    if mean.norm() > 1e-12 {
        candidates.push(-mean.normalize());
    }
    for n in &normals {
        candidates.push(-n);
        if dim == Dim::Two {
            let perp = Vec3::new(-n.y, n.x, 0.0);
            candidates.push(perp);
            candidates.push(-perp);
        }
    }
    if dim == Dim::Three {
        for i in 0..normals.len() {
            for j in (i + 1)..normals.len() {
                let cross = normals[i].cross(&normals[j]);
                if cross.norm() > 1e-12 {
                    let cross = cross.normalize();
                    candidates.push(cross);
                    candidates.push(-cross);
                }
            }
        }
    }
    candidates.extend(sample::unit_directions(512, seed, dim));

    let clearance = |y: &Vec3| -> f64 {
        spheres
            .iter()
            .map(|s| {
                let w = y - s.center;
                let power = w.norm_squared() - rho * rho;
                power / (w.norm() + rho)
            })
            .fold(f64::INFINITY, f64::min)
    };
    let mut best = (f64::NEG_INFINITY, *p_star);
    for u in &candidates {
        for k in 1..=4u32 {
            let t = neighborhood_eps * 0.5_f64.powi(k as i32);
            let y = p_star + t * u;
            let clear = clearance(&y);
            if clear > best.0 {
                best = (clear, y);
            }
        }
    }
    if best.0 > 0.0 {
        Ok(best.1)
    } else {
        Err(Error::PropertyViolation(format!(
            "no point within {neighborhood_eps} of {p_star:?} clears the balls \
             (best clearance {})",
            best.0
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Simplex;
    use rand::Rng;

    fn orthogonal_cone() -> RCone {
        RCone::new(
            Vec3::new(0.3, -0.2, 0.9),
            vec![Vec3::x(), Vec3::y(), Vec3::z()],
            2.0,
            Dim::Three,
        )
        .unwrap()
    }

    fn random_cone(seed: u64, dim: Dim) -> RCone {
        let mut r = sample::rng(seed);
        let n_dirs = match dim {
            Dim::Two => 2,
            Dim::Three => 2 + (r.gen::<u64>() % 2) as usize,
        };
        loop {
            let dirs = sample::unit_directions(n_dirs, r.gen(), dim);
            let vertex = Vec3::new(r.gen::<f64>(), r.gen::<f64>(), r.gen::<f64>());
            let vertex = match dim {
                Dim::Two => Vec3::new(vertex.x, vertex.y, 0.0),
                Dim::Three => vertex,
            };
            let radius = 0.5 + 2.0 * r.gen::<f64>();
            if let Ok(c) = RCone::new(vertex, dirs, radius, dim) {
                return c;
            }
        }
    }

    #[test]
    fn vertex_contained_centers_excluded() {
        let c = orthogonal_cone();
        assert!(rcone_contains(&c, &c.vertex()));
        for v in c.directions() {
            let center = c.vertex() + c.radius() * v;
            assert!(!rcone_contains(&c, &center));
        }
    }

    #[test]
    fn single_direction_ray_behavior() {
        let v = Vec3::new(1.0, 2.0, 2.0) / 3.0;
        let c = RCone::new(Vec3::zeros(), vec![v], 1.5, Dim::Three).unwrap();
        for t in [1e-6, 0.1, 10.0] {
            assert!(rcone_contains(&c, &(-t * v)));
        }
        let t = tol::T_SCALE * c.radius();
        assert!(!rcone_contains(&c, &(t * v)));
    }

    #[test]
    fn dual_contains_basics() {
        let e1 = vec![Vec3::x()];
        assert!(dual_contains(&e1, &Vec3::x()));
        assert!(!dual_contains(&e1, &-Vec3::x()));
        let triple = vec![Vec3::x(), Vec3::y(), Vec3::z()];
        assert!(dual_contains(&triple, &(Vec3::new(1.0, 1.0, 1.0) / 3.0_f64.sqrt())));
        assert!(!dual_contains(&triple, &Vec3::new(-0.1, 1.0, 0.0).normalize()));
    }

    #[test]
    fn dual_of_half_space_is_a_ray() {
        let half = vec![Vec3::x(), -Vec3::x(), Vec3::y(), -Vec3::y(), Vec3::z()];
        assert!(dual_contains(&half, &Vec3::z()));
        assert!(!dual_contains(&half, &-Vec3::z()));
        for y in sample::unit_directions(500, 11, Dim::Three) {
            if dual_contains(&half, &y) {
                assert!((y - Vec3::z()).norm() < 1e-4, "stray dual member {y:?}");
            }
        }
    }

    #[test]
    fn negative_octant_has_positive_clearance() {
        let c = orthogonal_cone();
        let u = -Vec3::new(1.0, 1.0, 1.0).normalize();
        let probe = c.vertex() + tol::T_SCALE * c.radius() * u;
        assert!(c.clearance(&probe) > 0.0);
        assert!(rcone_contains(&c, &probe));
    }

    #[test]
    fn tangent_check_passes_on_known_cones() {
        let single = RCone::new(Vec3::zeros(), vec![Vec3::z()], 1.0, Dim::Three).unwrap();
        let rep = tangent_check(&single, 400, tol::T_SCALE, 3).unwrap();
        assert!(rep.checked > 300);
        assert!(rep.interior_checked > 0);
        let rep = tangent_check(&orthogonal_cone(), 400, tol::T_SCALE, 4).unwrap();
        assert!(rep.checked > 200);
    }

    #[test]
    fn tangent_check_passes_on_seeded_cones() {
        for seed in 0..10 {
            for dim in [Dim::Two, Dim::Three] {
                let c = random_cone(seed, dim);
                let rep = tangent_check(&c, 200, tol::T_SCALE, seed ^ 0xabcd).unwrap();
                assert!(rep.checked > 0, "all directions skipped for seed {seed}");
            }
        }
    }

    #[test]
    fn containment_is_scale_invariant() {
        let c = random_cone(7, Dim::Three);
        let probes: Vec<Vec3> = sample::unit_directions(64, 9, Dim::Three)
            .into_iter()
            .map(|u| c.vertex() + 0.7 * c.radius() * u)
            .collect();
        for scale in [1e-6, 1e6] {
            let scaled = RCone::new(
                c.vertex(),
                c.directions().to_vec(),
                scale * c.radius(),
                Dim::Three,
            )
            .unwrap();
            for x in &probes {
                let xs = c.vertex() + scale * (x - c.vertex());
                assert_eq!(rcone_contains(&c, x), rcone_contains(&scaled, &xs));
            }
        }
    }

    #[test]
    fn common_point_check_orthogonal_and_coincident() {
        let p = Vec3::new(0.1, 0.2, 0.3);
        let rho = 1.3;
        let orth: Vec<Sphere> = [Vec3::x(), Vec3::y(), Vec3::z()]
            .iter()
            .map(|u| Sphere {
                center: p + rho * u,
                radius: rho,
            })
            .collect();
        let y = common_point_nonempty_check(&orth, &p, 1e-3 * rho, Dim::Three, 1).unwrap();
        assert!((y - p).norm() < 1e-3 * rho);

        let mut coincident = orth.clone();
        coincident[1] = coincident[0].clone();
        common_point_nonempty_check(&coincident, &p, 1e-3 * rho, Dim::Three, 2).unwrap();
    }

    #[test]
    fn common_point_check_tangent_pair_needs_second_order() {
        // Opposite tangent disks: the negative dual of the normals is a line,
        // so only directions along it escape, and only at second order.
        let p = Vec3::zeros();
        let rho = 2.0;
        let pair = vec![
            Sphere {
                center: Vec3::new(rho, 0.0, 0.0),
                radius: rho,
            },
            Sphere {
                center: Vec3::new(-rho, 0.0, 0.0),
                radius: rho,
            },
        ];
        let y = common_point_nonempty_check(&pair, &p, 1e-3 * rho, Dim::Two, 5).unwrap();
        assert!(y.x.abs() < y.y.abs(), "witness should leave along the tangent line");
    }

    #[test]
    fn common_point_check_reflected_circumcenters_at_apex() {
        // Squat pyramid: the circumsphere reflections across the three side
        // facets all pass through the apex and pile up around it; a free
        // point still survives next to the apex.
        let rb = 2.0 / 5.0_f64.sqrt();
        let h = 1.0 / 5.0_f64.sqrt();
        let mut verts = vec![Vec3::new(0.0, 0.0, h)];
        for k in 0..3 {
            let th = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            verts.push(Vec3::new(rb * th.cos(), rb * th.sin(), 0.0));
        }
        let s = Simplex::new(verts).unwrap();
        let apex = *s.vertex(0);
        let spheres: Vec<Sphere> = (1..4)
            .map(|j| Sphere {
                center: s.facet_data(j).reflected,
                radius: s.circumradius(),
            })
            .collect();
        common_point_nonempty_check(&spheres, &apex, 1e-4, Dim::Three, 9).unwrap();
    }

    #[test]
    fn common_point_check_seeded_configurations() {
        for seed in 0..20 {
            let mut r = sample::rng(seed + 100);
            let p = Vec3::new(r.gen::<f64>(), r.gen::<f64>(), r.gen::<f64>());
            let rho = 0.5 + r.gen::<f64>();
            let spheres: Vec<Sphere> = sample::unit_directions(3, r.gen(), Dim::Three)
                .into_iter()
                .map(|u| Sphere {
                    center: p + rho * u,
                    radius: rho,
                })
                .collect();
            common_point_nonempty_check(&spheres, &p, 1e-3 * rho, Dim::Three, seed).unwrap();
        }
    }

    #[test]
    fn constructor_rejects_bad_directions() {
        let p = Vec3::zeros();
        assert!(RCone::new(p, vec![], 1.0, Dim::Three).is_err());
        assert!(RCone::new(p, vec![Vec3::new(0.0, 0.0, 0.5)], 1.0, Dim::Three).is_err());
        assert!(RCone::new(p, vec![Vec3::z(), Vec3::z()], 1.0, Dim::Three).is_err());
        assert!(RCone::new(p, vec![Vec3::z()], -1.0, Dim::Three).is_err());
        assert!(RCone::new(p, vec![Vec3::z()], 1.0, Dim::Two).is_err());
    }
}
