//! Radii at which four equal spheres through vertex triples of a tetrahedron
//! cross at a single point.
//!
//! For each facet j there are two spheres of radius R through the three
//! vertices off facet j, one on each side of the facet plane.  A sign
//! pattern fixes one choice per facet; the four centers then depend smoothly
//! on R.  The pattern has a crossing at R when the circumradius of the four
//! centers equals R: the circumcenter of the centers is then a common point
//! of all four spheres.  A crossing is accepted when the four spheres are
//! pairwise distinct and the common point stays clear of the circumsphere of
//! the tetrahedron; the interior ones are the collapse configurations.

use rand::Rng;
use rayon::prelude::*;

use crate::critical;
use crate::error::{Error, Result};
use crate::geom::{circumsphere, ContainMode, Dim, FacetData, Simplex, Vec3};
use crate::roots;
use crate::sample;
use crate::tol;

/// One sphere-side choice per facet: +1 along the outward facet normal.
pub type SignPattern = [i8; 4];

pub fn all_patterns() -> Vec<SignPattern> {
    (0..16u8)
        .map(|bits| {
            let mut p = [0i8; 4];
            for (j, slot) in p.iter_mut().enumerate() {
                *slot = if bits & (1 << j) != 0 { 1 } else { -1 };
            }
            p
        })
        .collect()
}

pub fn pattern_label(p: &SignPattern) -> String {
    p.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

/// Center of the radius-`radius` sphere through the vertices off facet
/// `facet`, on the side selected by `sign`.
pub fn signed_center(s: &Simplex, facet: usize, radius: f64, sign: i8) -> Result<Vec3> {
    signed_center_from(&s.facet_data(facet), radius, sign)
}

fn signed_center_from(f: &FacetData, radius: f64, sign: i8) -> Result<Vec3> {
    let slack = radius * radius - f.radius * f.radius;
    if slack < -tol::EPS_GEOM * radius * radius {
        return Err(Error::RadiusBelowFacet {
            facet: f.index,
            radius,
            facet_circumradius: f.radius,
        });
    }
    let off = slack.max(0.0).sqrt();
    Ok(f.center + sign as f64 * off * f.normal)
}

/// Circumradius of the four pattern centers minus R; zero at a crossing.
pub fn pattern_gap(s: &Simplex, pattern: &SignPattern, radius: f64) -> Result<f64> {
    let facets = s.facets();
    pattern_gap_from(&facets, pattern, radius).map(|(gap, _, _)| gap)
}

fn pattern_gap_from(
    facets: &[FacetData],
    pattern: &SignPattern,
    radius: f64,
) -> Result<(f64, Vec3, Vec<Vec3>)> {
    let mut centers = Vec::with_capacity(4);
    for (f, &sign) in facets.iter().zip(pattern.iter()) {
        centers.push(signed_center_from(f, radius, sign)?);
    }
    let sph = circumsphere(&centers)
        .map_err(|e| Error::DegenerateCenters(format!("pattern centers at R {radius}: {e}")))?;
    Ok((sph.radius - radius, sph.center, centers))
}

/// Verified crossing: four distinct spheres of radius `radius`, each through
/// a vertex triple, meeting at `point` off the circumsphere.
#[derive(Clone, Debug)]
pub struct FourCrossing {
    pub radius: f64,
    pub point: Vec3,
    pub pattern: SignPattern,
    pub interior: bool,
    /// Worst |dist(point, z_j) - radius| over the four centers.
    pub residual: f64,
    /// ||point - c(V)| - r(V)|, the clearance off the circumsphere.
    pub circumsphere_margin: f64,
    /// Smallest pairwise distance between the four centers.
    pub min_center_separation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RejectReason {
    /// Common point within the circumsphere band; such configurations do not
    /// count as crossings.
    OnCircumsphere { margin: f64 },
    /// Two sphere choices coincide, so fewer than four distinct spheres.
    CoincidentSpheres { min_separation: f64 },
    /// Root refinement left the common point off some sphere.
    ResidualTooLarge { residual: f64 },
}

#[derive(Clone, Debug)]
pub struct Rejection {
    pub radius: f64,
    pub point: Vec3,
    pub pattern: SignPattern,
    pub reason: RejectReason,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub records: Vec<FourCrossing>,
    pub rejected: Vec<Rejection>,
    /// Grid intervals skipped because the centers degenerated there.
    pub degenerate_skips: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Upper end of the scan, relative to the circumradius.
    pub r_max_rel: f64,
    /// Grid points per sign pattern.
    pub grid_n: usize,
    /// Seed for the extra aliasing-guard probe radii.
    pub seed: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            r_max_rel: 8.0,
            grid_n: 2048,
            seed: 0,
        }
    }
}

pub fn enumerate(s: &Simplex, opts: EnumerateOptions) -> Result<Enumeration> {
    if s.dim() != Dim::Three {
        return Err(Error::WrongDimension { expected: 3, got: 2 });
    }
    let facets = s.facets();
    let r_v = s.circumradius();
    let r_lo = facets
        .iter()
        .map(|f| f.radius)
        .fold(0.0_f64, f64::max)
        * (1.0 + 1e-9);
    let r_hi = opts.r_max_rel * r_v;
    if r_hi <= r_lo {
        return Err(Error::RadiusTooSmall {
            rho: r_hi,
            min: r_lo,
        });
    }
    // Shared radius list: geometric grid plus seeded probes against aliasing.
    let mut radii: Vec<f64> = (0..opts.grid_n)
        .map(|k| r_lo * (r_hi / r_lo).powf(k as f64 / (opts.grid_n - 1) as f64))
        .collect();
    let mut rng = sample::rng(opts.seed);
    for _ in 0..64 {
        let u: f64 = rng.gen();
        radii.push(r_lo * (r_hi / r_lo).powf(u));
    }
    radii.sort_by(f64::total_cmp);

    let per_pattern: Vec<(Vec<FourCrossing>, Vec<Rejection>, usize)> = all_patterns()
        .par_iter()
        .map(|pattern| scan_pattern(s, &facets, pattern, &radii, r_v))
        .collect();

    let mut records = Vec::new();
    let mut rejected = Vec::new();
    let mut degenerate_skips = 0;
    for (rec, rej, skips) in per_pattern {
        records.extend(rec);
        rejected.extend(rej);
        degenerate_skips += skips;
    }
    let records = dedup_records(records, tol::DEDUP_REL * r_v);
    rejected.sort_by(|a, b| {
        a.radius
            .total_cmp(&b.radius)
            .then(pattern_label(&a.pattern).cmp(&pattern_label(&b.pattern)))
    });
    Ok(Enumeration {
        records,
        rejected,
        degenerate_skips,
    })
}

fn scan_pattern(
    s: &Simplex,
    facets: &[FacetData],
    pattern: &SignPattern,
    radii: &[f64],
    r_v: f64,
) -> (Vec<FourCrossing>, Vec<Rejection>, usize) {
    let mut skips = 0usize;
    let gaps: Vec<f64> = radii
        .iter()
        .map(|&r| match pattern_gap_from(facets, pattern, r) {
            Ok((g, _, _)) => g,
            Err(_) => {
                skips += 1;
                f64::NAN
            }
        })
        .collect();
    let mut roots_found: Vec<f64> = Vec::new();
    for k in 0..radii.len() - 1 {
        let (g0, g1) = (gaps[k], gaps[k + 1]);
        if !(g0.is_finite() && g1.is_finite()) {
            continue;
        }
        if g0 == 0.0 {
            roots_found.push(radii[k]);
            continue;
        }
        if g0.signum() != g1.signum() && g1 != 0.0 {
            let mut err = false;
            let root = roots::brent(
                |r| match pattern_gap_from(facets, pattern, r) {
                    Ok((g, _, _)) => g,
                    Err(_) => {
                        err = true;
                        0.0
                    }
                },
                radii[k],
                radii[k + 1],
                tol::EPS_ROOT,
                100,
            );
            if let (Ok(r), false) = (root, err) {
                roots_found.push(r);
            }
        }
    }
    // Tangential crossings: local minima of |gap| that dip to zero without a
    // sign change.
    for k in 1..radii.len() - 1 {
        let (gm, g0, gp) = (gaps[k - 1], gaps[k], gaps[k + 1]);
        if !(gm.is_finite() && g0.is_finite() && gp.is_finite()) {
            continue;
        }
        if g0.abs() < gm.abs() && g0.abs() < gp.abs() && g0.abs() < 1e-5 * r_v && g0 != 0.0 {
            if gm.signum() != g0.signum() || g0.signum() != gp.signum() {
                continue; // already handled as a sign change
            }
            let (r_min, g_min) = roots::golden_min(
                |r| match pattern_gap_from(facets, pattern, r) {
                    Ok((g, _, _)) => g.abs(),
                    Err(_) => f64::INFINITY,
                },
                radii[k - 1],
                radii[k + 1],
                tol::EPS_ROOT,
                200,
            );
            if g_min < tol::TANGENT_GAP_REL * r_v {
                roots_found.push(r_min);
            }
        }
    }

    let mut records = Vec::new();
    let mut rejections = Vec::new();
    for r in roots_found {
        let Ok((_, point, centers)) = pattern_gap_from(facets, pattern, r) else {
            skips += 1;
            continue;
        };
        let residual = centers
            .iter()
            .map(|z| ((point - z).norm() - r).abs())
            .fold(0.0_f64, f64::max);
        let mut min_sep = f64::INFINITY;
        for i in 0..4 {
            for j in (i + 1)..4 {
                min_sep = min_sep.min((centers[i] - centers[j]).norm());
            }
        }
        let margin = ((point - s.circumcenter()).norm() - r_v).abs();
        let reject = |reason| Rejection {
            radius: r,
            point,
            pattern: *pattern,
            reason,
        };
        if min_sep <= tol::EPS_GEOM * r_v {
            rejections.push(reject(RejectReason::CoincidentSpheres {
                min_separation: min_sep,
            }));
            continue;
        }
        if residual > tol::EPS_GEOM * r {
            rejections.push(reject(RejectReason::ResidualTooLarge { residual }));
            continue;
        }
        if margin <= tol::EPS_CIRC * r_v {
            rejections.push(reject(RejectReason::OnCircumsphere { margin }));
            continue;
        }
        records.push(FourCrossing {
            radius: r,
            point,
            pattern: *pattern,
            interior: s.contains(&point, ContainMode::Open),
            residual,
            circumsphere_margin: margin,
            min_center_separation: min_sep,
        });
    }
    (records, rejections, skips)
}

/// Merges records agreeing in radius and point within `eps`; the survivor is
/// the one with the smallest residual (ties by pattern label).
fn dedup_records(mut records: Vec<FourCrossing>, eps: f64) -> Vec<FourCrossing> {
    records.sort_by(|a, b| {
        a.radius
            .total_cmp(&b.radius)
            .then(a.point.x.total_cmp(&b.point.x))
            .then(a.point.y.total_cmp(&b.point.y))
            .then(a.point.z.total_cmp(&b.point.z))
            .then(a.residual.total_cmp(&b.residual))
            .then(pattern_label(&a.pattern).cmp(&pattern_label(&b.pattern)))
    });
    let mut kept: Vec<FourCrossing> = Vec::new();
    for rec in records {
        let dup = kept.iter_mut().find(|k| {
            (k.radius - rec.radius).abs() <= eps && (k.point - rec.point).norm() <= eps
        });
        match dup {
            Some(k) => {
                if rec.residual < k.residual {
                    *k = rec;
                }
            }
            None => kept.push(rec),
        }
    }
    kept
}

/// Confirms that at most one crossing lies inside the open simplex and that,
/// when one does, it is the collapse configuration of the critical radius.
pub fn verify_interior_uniqueness(s: &Simplex, records: &[FourCrossing]) -> Result<bool> {
    let interior: Vec<&FourCrossing> = records.iter().filter(|r| r.interior).collect();
    if interior.len() > 1 {
        return Err(Error::UniquenessViolation(format!(
            "{} interior crossings, e.g. R {} at {:?} and R {} at {:?}",
            interior.len(),
            interior[0].radius,
            interior[0].point,
            interior[1].radius,
            interior[1].point
        )));
    }
    let Some(rec) = interior.first() else {
        return Ok(true);
    };
    let crit = critical::critical_radius(s).map_err(|e| {
        Error::UniquenessViolation(format!(
            "interior crossing at R {} but no collapse radius: {e}",
            rec.radius
        ))
    })?;
    if !crit.collapsed {
        return Err(Error::UniquenessViolation(format!(
            "interior crossing at R {} but hulloid never collapses",
            rec.radius
        )));
    }
    let o_star = crit.o_star.expect("collapsed result carries its point");
    let tol_match = 1e-9 * crit.r_star;
    if (rec.radius - crit.r_star).abs() > tol_match || (rec.point - o_star).norm() > tol_match {
        return Err(Error::UniquenessViolation(format!(
            "interior crossing (R {}, {:?}) differs from collapse (R {}, {:?})",
            rec.radius, rec.point, crit.r_star, o_star
        )));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular_tetrahedron() -> Simplex {
        let t = 1.0 / 3.0_f64.sqrt();
        Simplex::new(vec![
            Vec3::new(t, t, t),
            Vec3::new(t, -t, -t),
            Vec3::new(-t, t, -t),
            Vec3::new(-t, -t, t),
        ])
        .unwrap()
    }

    fn squat_pyramid() -> Simplex {
        let rb = 2.0 / 5.0_f64.sqrt();
        let h = 1.0 / 5.0_f64.sqrt();
        let mut verts = vec![Vec3::new(0.0, 0.0, h)];
        for k in 0..3 {
            let th = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            verts.push(Vec3::new(rb * th.cos(), rb * th.sin(), 0.0));
        }
        Simplex::new(verts).unwrap()
    }

    #[test]
    fn inward_center_at_circumradius_is_circumcenter() {
        let s = regular_tetrahedron();
        for j in 0..4 {
            let z = signed_center(&s, j, s.circumradius(), -1).unwrap();
            assert!((z - s.circumcenter()).norm() < 1e-9);
        }
    }

    #[test]
    fn center_at_facet_radius_is_facet_center() {
        let s = regular_tetrahedron();
        let f = s.facet_data(1);
        for sign in [-1, 1] {
            let z = signed_center(&s, 1, f.radius, sign).unwrap();
            assert!((z - f.center).norm() < 1e-9);
        }
        assert!(matches!(
            signed_center(&s, 1, 0.5 * f.radius, 1),
            Err(Error::RadiusBelowFacet { .. })
        ));
    }

    #[test]
    fn outward_pattern_gap_vanishes_at_collapse() {
        let s = regular_tetrahedron();
        let outward = [1, 1, 1, 1];
        assert!(pattern_gap(&s, &outward, 1.5).unwrap().abs() < 1e-12);
        assert!(pattern_gap(&s, &outward, 1.2).unwrap() < 0.0);
        assert!(pattern_gap(&s, &outward, 2.5).unwrap() > 0.0);
    }

    #[test]
    fn regular_tetrahedron_has_seven_crossings() {
        let s = regular_tetrahedron();
        let en = enumerate(&s, EnumerateOptions::default()).unwrap();
        assert_eq!(
            en.records.len(),
            7,
            "radii: {:?}",
            en.records.iter().map(|r| r.radius).collect::<Vec<_>>()
        );
        for rec in &en.records {
            assert!(rec.residual <= 1e-9 * rec.radius);
            assert!(rec.min_center_separation > 0.0);
        }
        let interior: Vec<_> = en.records.iter().filter(|r| r.interior).collect();
        assert_eq!(interior.len(), 1);
        assert!((interior[0].radius - 1.5).abs() < 1e-9);
        assert!((interior[0].point - s.circumcenter()).norm() < 1e-9);
    }

    #[test]
    fn no_accepted_crossing_sits_at_the_circumradius() {
        // A crossing at R = r(V) with four spheres distinct from the
        // circumsphere would build a five-sphere configuration that cannot
        // exist; make sure none is ever reported.
        for s in [regular_tetrahedron(), squat_pyramid()] {
            let r_v = s.circumradius();
            let en = enumerate(&s, EnumerateOptions::default()).unwrap();
            for rec in &en.records {
                assert!(
                    (rec.radius - r_v).abs() > tol::EPS_CIRC * r_v,
                    "accepted crossing at the circumradius: {rec:?}"
                );
            }
        }
    }

    #[test]
    fn squat_pyramid_apex_configuration_rejected() {
        let s = squat_pyramid();
        let r_v = s.circumradius();
        let apex = *s.vertex(0);
        let en = enumerate(&s, EnumerateOptions::default()).unwrap();
        let hit = en.rejected.iter().find(|rej| {
            (rej.radius - r_v).abs() <= 1e-6 * r_v
                && (rej.point - apex).norm() <= 1e-6
                && matches!(rej.reason, RejectReason::OnCircumsphere { .. })
        });
        assert!(
            hit.is_some(),
            "no circumsphere rejection at the apex; rejected = {:?}",
            en.rejected
        );
    }

    #[test]
    fn interior_uniqueness_for_known_shapes() {
        for s in [regular_tetrahedron(), squat_pyramid()] {
            let en = enumerate(&s, EnumerateOptions::default()).unwrap();
            assert!(verify_interior_uniqueness(&s, &en.records).unwrap());
        }
    }

    #[test]
    fn enumeration_invariant_under_vertex_relabeling() {
        let s = regular_tetrahedron();
        let mut shuffled = s.vertices().to_vec();
        shuffled.swap(0, 2);
        shuffled.swap(1, 3);
        let s2 = Simplex::new(shuffled).unwrap();
        let a = enumerate(&s, EnumerateOptions::default()).unwrap();
        let b = enumerate(&s2, EnumerateOptions::default()).unwrap();
        assert_eq!(a.records.len(), b.records.len());
        for x in &a.records {
            assert!(
                b.records.iter().any(|y| (x.radius - y.radius).abs() < 1e-9
                    && (x.point - y.point).norm() < 1e-8),
                "no relabeled match for R {} at {:?}",
                x.radius,
                x.point
            );
        }
    }

    #[test]
    fn planar_input_rejected() {
        let tri = Simplex::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            enumerate(&tri, EnumerateOptions::default()),
            Err(Error::WrongDimension { .. })
        ));
    }
}
