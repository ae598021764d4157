//! Escape-ball membership oracle.
//!
//! A point x lies outside the rho-hulloid of V exactly when some open ball
//! of radius rho contains x and misses V.  The oracle searches for such a
//! ball directly, with no reference to the supporting-family representation:
//! it maximizes the clearance
//!
//! ```text
//! clearance(z) = min(rho - |z - x|,  min_i |z - v_i| - rho)
//! ```
//!
//! over ball centers z by deterministic multistart compass search.  Positive
//! clearance certifies non-membership; failure to find one is evidence of
//! membership at the given budget (one-sided, like any search).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{self, Dim, Simplex, Vec3};
use crate::sample;
use crate::tol;

/// Witness that `witness_for` escapes the hulloid: an open ball of radius
/// `rho` around `center` containing the point and missing every vertex with
/// margin `clearance`.
#[derive(Clone, Debug)]
pub struct EscapeBall {
    pub center: Vec3,
    pub rho: f64,
    pub clearance: f64,
    pub witness_for: Vec3,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Number of low-discrepancy start centers.
    pub starts: usize,
    /// Compass-search iterations per start.
    pub iters: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            starts: 64,
            iters: 200,
        }
    }
}

pub fn clearance(verts: &[Vec3], rho: f64, x: &Vec3, z: &Vec3) -> f64 {
    let vertex_part = verts
        .iter()
        .map(|v| (z - v).norm() - rho)
        .fold(f64::INFINITY, f64::min);
    (rho - (z - x).norm()).min(vertex_part)
}

/// Deterministic start centers for the clearance search.
///
/// A maximal escape ball generically touches `dim` vertices, so the first
/// candidates are the centers equidistant from every vertex subset of that
/// size, on both sides of the subset's affine span, with a small radial
/// slack so the touched vertices start strictly outside.  Each gets a
/// companion projected just inside the sphere of radius rho around x, for
/// escapes pinched against x itself.  The rest push radially away from the
/// vertex centroid, past each vertex, and along the coordinate axes; at
/// large rho the escape region is a thin far shell that uniform box
/// sampling misses at modest budgets.
fn directed_starts(verts: &[Vec3], rho: f64, x: &Vec3, dim: Dim) -> Vec<Vec3> {
    let mut out = Vec::with_capacity(36);
    let floor = tol::EPS_DEGEN * rho;
    let n = verts.len();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    match dim {
        Dim::Two => {
            for i in 0..n {
                for j in i + 1..n {
                    subsets.push(vec![i, j]);
                }
            }
        }
        Dim::Three => {
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        subsets.push(vec![i, j, k]);
                    }
                }
            }
        }
    }
    let slacked = rho * 1.001;
    for subset in &subsets {
        let pts: Vec<Vec3> = subset.iter().map(|&i| verts[i]).collect();
        let Ok(circ) = geom::circumsphere(&pts) else {
            continue;
        };
        let axis = match dim {
            Dim::Two => {
                let u = pts[1] - pts[0];
                Vec3::new(-u.y, u.x, 0.0)
            }
            Dim::Three => (pts[1] - pts[0]).cross(&(pts[2] - pts[0])),
        };
        if axis.norm() <= floor {
            continue;
        }
        let axis = axis.normalize();
        let s = (slacked * slacked - circ.radius * circ.radius).max(0.0).sqrt();
        for sgn in [1.0, -1.0] {
            let z = circ.center + sgn * s * axis;
            out.push(z);
            let d = z - x;
            if d.norm() > floor {
                out.push(x + 0.97 * rho * d.normalize());
            }
            if s == 0.0 {
                break;
            }
        }
    }
    let centroid = verts.iter().sum::<Vec3>() / n as f64;
    let radial = x - centroid;
    if radial.norm() > floor {
        let u = radial.normalize();
        for f in [0.35, 0.7, 0.95] {
            out.push(x + f * rho * u);
        }
    }
    for v in verts {
        let d = x - v;
        if d.norm() > floor {
            let u = d.normalize();
            out.push(v + 1.05 * rho * u);
            out.push(v + 1.3 * rho * u);
        }
    }
    let axes: &[Vec3] = match dim {
        Dim::Two => &[Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0)],
        Dim::Three => &[
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        ],
    };
    for e in axes {
        out.push(x + 0.8 * rho * e);
        out.push(x - 0.8 * rho * e);
    }
    out
}

/// Best clearance found over the budget, with the center realizing it.
/// The value may be negative; callers decide what counts as a witness.
pub fn clearance_search(
    verts: &[Vec3],
    rho: f64,
    x: &Vec3,
    dim: Dim,
    budget: SearchBudget,
    seed: u64,
) -> (Vec3, f64) {
    let mut starts = directed_starts(verts, rho, x, dim);
    starts.truncate(budget.starts);
    let fill = budget.starts - starts.len();
    starts.extend(sample::box_points(*x, 3.0 * rho, fill, seed, dim));
    let best = starts
        .par_iter()
        .enumerate()
        .map(|(idx, start)| {
            let (z, val) = compass_max(
                |z| clearance(verts, rho, x, z),
                *start,
                0.9 * rho,
                budget.iters,
                dim,
            );
            (idx, z, val)
        })
        .reduce(
            || (usize::MAX, *x, f64::NEG_INFINITY),
            |a, b| {
                // Ties resolve to the lower start index for determinism.
                if b.2 > a.2 || (b.2 == a.2 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        );
    (best.1, best.2)
}

pub fn find_escape_ball(
    verts: &[Vec3],
    rho: f64,
    x: &Vec3,
    dim: Dim,
    budget: SearchBudget,
    seed: u64,
) -> Option<EscapeBall> {
    let (z, val) = clearance_search(verts, rho, x, dim, budget, seed);
    if val > tol::EPS_CLEAR * rho {
        Some(EscapeBall {
            center: z,
            rho,
            clearance: val,
            witness_for: *x,
        })
    } else {
        None
    }
}

/// Membership verdict: true when no escaping ball was found.
pub fn oracle_membership(
    verts: &[Vec3],
    rho: f64,
    x: &Vec3,
    dim: Dim,
    budget: SearchBudget,
    seed: u64,
) -> bool {
    find_escape_ball(verts, rho, x, dim, budget, seed).is_none()
}

/// Position bounds every escape ball meeting the simplex must satisfy.
#[derive(Clone, Debug)]
pub struct BallBounds {
    /// `|z - c| - (rho - r(V))`; positive is required.
    pub center_excess: f64,
    /// `dist(z, T) - (rho - r(V)) / 2`; positive is required.
    pub simplex_excess: f64,
    /// Power of the worst vertex with respect to the radical plane of the
    /// ball and the circumsphere; negative is required.
    pub worst_vertex_power: f64,
}

/// Checks the location bounds for an escape ball whose closure meets the
/// simplex: the center is farther than rho - r(V) from the circumcenter, the
/// radical plane of ball and circumsphere strictly separates the center from
/// all vertices, and the center is farther than (rho - r(V)) / 2 from the
/// simplex itself.
pub fn ball_bounds_check(s: &Simplex, ball: &EscapeBall) -> Result<BallBounds> {
    let rho = ball.rho;
    let r_v = s.circumradius();
    let c = s.circumcenter();
    let z = ball.center;
    let band = tol::EPS_GEOM * s.diameter();
    if rho <= r_v * (1.0 + tol::EPS_GEOM) {
        return Err(Error::RadiusTooSmall { rho, min: r_v });
    }
    for v in s.vertices() {
        if (z - v).norm() < rho * (1.0 - tol::EPS_GEOM) {
            return Err(Error::PropertyViolation(format!(
                "escape ball contains vertex {v:?}"
            )));
        }
    }
    let dist_t = s.distance(&z);
    if dist_t >= rho {
        return Err(Error::PropertyViolation(
            "ball closure does not meet the simplex".into(),
        ));
    }
    let margin = rho - r_v;
    let center_excess = (z - c).norm() - margin;
    let simplex_excess = dist_t - margin / 2.0;
    // Radical-plane side function: g(x) = (|x-c|^2 - r_v^2) - (|x-z|^2 - rho^2).
    // Positive side holds the ball center, negative side every vertex.
    let g = |x: &Vec3| {
        ((x - c).norm_squared() - r_v * r_v) - ((x - z).norm_squared() - rho * rho)
    };
    let g_z = g(&z);
    let worst_vertex_power = s
        .vertices()
        .iter()
        .map(|v| g(v))
        .fold(f64::NEG_INFINITY, f64::max);
    let report = BallBounds {
        center_excess,
        simplex_excess,
        worst_vertex_power,
    };
    if center_excess <= -band {
        return Err(Error::PropertyViolation(format!(
            "center too close to circumcenter: excess {center_excess:.3e}"
        )));
    }
    if simplex_excess <= -band {
        return Err(Error::PropertyViolation(format!(
            "center too close to the simplex: excess {simplex_excess:.3e}"
        )));
    }
    if g_z <= 0.0 || worst_vertex_power >= band * s.diameter() {
        return Err(Error::PropertyViolation(format!(
            "radical plane fails to separate center from vertices \
             (g(z) = {g_z:.3e}, worst vertex {worst_vertex_power:.3e})"
        )));
    }
    Ok(report)
}

/// Poll directions for the compass search: every nonzero sign vector of the
/// ambient coordinates, normalized.  The objective is a minimum of smooth
/// distance terms, and its ridges stall an axis-only poll where several
/// terms are active at once; the diagonals supply the coordinated moves.
fn poll_directions(dim: Dim) -> Vec<Vec3> {
    let mut dirs = Vec::with_capacity(26);
    let range = [-1.0, 0.0, 1.0];
    for &dx in &range {
        for &dy in &range {
            for &dz in &range {
                if dz != 0.0 && matches!(dim, Dim::Two) {
                    continue;
                }
                let d = Vec3::new(dx, dy, dz);
                if d.norm_squared() > 0.0 {
                    dirs.push(d.normalize());
                }
            }
        }
    }
    dirs
}

/// Greedy compass search maximizing `f`: poll all sign-vector moves, take
/// the best improving one, expand the step on success and halve it on
/// failure.
fn compass_max<F: Fn(&Vec3) -> f64>(
    f: F,
    start: Vec3,
    init_step: f64,
    iters: usize,
    dim: Dim,
) -> (Vec3, f64) {
    let dirs = poll_directions(dim);
    let mut best = start;
    let mut fb = f(&best);
    let mut step = init_step;
    for _ in 0..iters {
        let mut cand = best;
        let mut fc = fb;
        for d in &dirs {
            let p = best + step * d;
            let v = f(&p);
            if v > fc {
                fc = v;
                cand = p;
            }
        }
        if fc > fb {
            best = cand;
            fb = fc;
            step = (step * 2.0).min(init_step);
        } else {
            step *= 0.5;
            if step < 1e-14 * init_step {
                break;
            }
        }
    }
    (best, fb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hulloid;

    fn regular_tetrahedron() -> Simplex {
        let s = 1.0 / 3.0_f64.sqrt();
        Simplex::new(vec![
            Vec3::new(s, s, s),
            Vec3::new(s, -s, -s),
            Vec3::new(-s, s, -s),
            Vec3::new(-s, -s, s),
        ])
        .unwrap()
    }

    #[test]
    fn centroid_below_collapse_escapes() {
        let s = regular_tetrahedron();
        let ball = find_escape_ball(
            s.vertices(),
            1.4,
            &s.centroid(),
            Dim::Three,
            SearchBudget::default(),
            1,
        );
        let ball = ball.expect("centroid must escape below the collapse radius");
        assert!(ball.clearance > 0.0);
        assert!((ball.center - s.centroid()).norm() < 1.4);
        for v in s.vertices() {
            assert!((ball.center - v).norm() > 1.4);
        }
    }

    #[test]
    fn centroid_above_collapse_is_member() {
        let s = regular_tetrahedron();
        assert!(oracle_membership(
            s.vertices(),
            1.6,
            &s.centroid(),
            Dim::Three,
            SearchBudget::default(),
            1,
        ));
    }

    #[test]
    fn vertices_are_always_members() {
        let s = regular_tetrahedron();
        for rho in [1.2, 1.5, 4.0] {
            for v in s.vertices() {
                assert!(oracle_membership(
                    s.vertices(),
                    rho,
                    v,
                    Dim::Three,
                    SearchBudget::default(),
                    2,
                ));
            }
        }
    }

    #[test]
    fn exterior_points_escape_fast() {
        let s = regular_tetrahedron();
        let x = Vec3::new(2.0, 2.0, 2.0);
        for rho in [1.1, 3.0, 10.0] {
            assert!(!oracle_membership(
                s.vertices(),
                rho,
                &x,
                Dim::Three,
                SearchBudget::default(),
                3,
            ));
        }
    }

    #[test]
    fn witness_is_deterministic() {
        let s = regular_tetrahedron();
        let x = Vec3::new(0.2, 0.1, -0.05);
        let a = clearance_search(s.vertices(), 1.3, &x, Dim::Three, SearchBudget::default(), 9);
        let b = clearance_search(s.vertices(), 1.3, &x, Dim::Three, SearchBudget::default(), 9);
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn oracle_agrees_with_formula_on_samples() {
        let s = regular_tetrahedron();
        let rho = 1.45;
        let fam = hulloid::support_family(&s, rho).unwrap();
        let mut checked = 0;
        for p in sample::simplex_points(&s, 60) {
            if hulloid::boundary_proximity(&s, &fam, &p) < 1e-3 * s.diameter() {
                continue;
            }
            let formula = fam.member(&s, &p);
            let oracle = oracle_membership(
                s.vertices(),
                rho,
                &p,
                Dim::Three,
                SearchBudget::default(),
                17,
            );
            assert_eq!(formula, oracle, "disagreement at {p:?}");
            checked += 1;
        }
        assert!(checked > 30);
    }

    #[test]
    fn planar_oracle_matches_formula() {
        let tri = Simplex::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let rho = 0.9;
        let fam = hulloid::support_family(&tri, rho).unwrap();
        for p in sample::simplex_points(&tri, 40) {
            if hulloid::boundary_proximity(&tri, &fam, &p) < 1e-3 * tri.diameter() {
                continue;
            }
            let formula = fam.member(&tri, &p);
            let oracle =
                oracle_membership(tri.vertices(), rho, &p, Dim::Two, SearchBudget::default(), 23);
            assert_eq!(formula, oracle, "disagreement at {p:?}");
        }
    }

    #[test]
    fn bounds_hold_for_found_balls() {
        let s = regular_tetrahedron();
        let rho = 1.35;
        let mut tested = 0;
        for p in sample::simplex_points(&s, 40) {
            if let Some(ball) = find_escape_ball(
                s.vertices(),
                rho,
                &p,
                Dim::Three,
                SearchBudget::default(),
                31,
            ) {
                if s.distance(&ball.center) < rho {
                    let rep = ball_bounds_check(&s, &ball).unwrap();
                    assert!(rep.center_excess > 0.0);
                    assert!(rep.worst_vertex_power < 0.0);
                    tested += 1;
                }
            }
        }
        assert!(tested > 10, "only {tested} balls exercised the bounds");
    }

    #[test]
    fn bounds_reject_vertex_eating_ball() {
        let s = regular_tetrahedron();
        let bad = EscapeBall {
            center: *s.vertex(0),
            rho: 1.2,
            clearance: 0.1,
            witness_for: s.centroid(),
        };
        assert!(matches!(
            ball_bounds_check(&s, &bad),
            Err(Error::PropertyViolation(_))
        ));
    }
}
