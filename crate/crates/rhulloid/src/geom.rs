//! Simplex geometry: circumspheres, barycentric coordinates, facet frames.
//!
//! The ambient dimension is 2 or 3.  Planar inputs are embedded in 3-space
//! with a zero third coordinate, so every length and dot product is computed
//! on [`Vec3`] regardless of dimension.

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector2, Vector3, Vector4};

use crate::error::{Error, Result};
use crate::tol;

pub type Vec3 = Vector3<f64>;

/// Ambient dimension of a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn ambient(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    /// Number of vertices of a full simplex in this dimension.
    pub fn vertex_count(self) -> usize {
        self.ambient() + 1
    }

    pub fn from_ambient(n: usize) -> Result<Dim> {
        match n {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            _ => Err(Error::WrongDimension { expected: 3, got: n }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sphere {
    pub center: Vec3,
    pub radius: f64,
}

impl Sphere {
    pub fn new(center: Vec3, radius: f64) -> Self {
        Sphere { center, radius }
    }

    /// Signed distance from `x` to the sphere surface (negative inside).
    pub fn signed_distance(&self, x: &Vec3) -> f64 {
        (x - self.center).norm() - self.radius
    }
}

/// How boundary points are treated by containment queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContainMode {
    Open,
    Closed,
}

/// Nondegenerate simplex with d+1 vertices in ambient dimension d.
///
/// Construction validates finiteness and affine independence and caches the
/// circumsphere, so downstream code can rely on both.
#[derive(Clone, Debug)]
pub struct Simplex {
    verts: Vec<Vec3>,
    dim: Dim,
    diameter: f64,
    circum: Sphere,
}

impl Simplex {
    pub fn new(verts: Vec<Vec3>) -> Result<Self> {
        let dim = match verts.len() {
            3 => Dim::Two,
            4 => Dim::Three,
            n => {
                return Err(Error::DegenerateInput(format!(
                    "expected 3 or 4 vertices, got {n}"
                )))
            }
        };
        for v in &verts {
            if !(v.x.is_finite() && v.y.is_finite() && v.z.is_finite()) {
                return Err(Error::DegenerateInput("non-finite coordinate".into()));
            }
            if dim == Dim::Two && v.z != 0.0 {
                return Err(Error::DegenerateInput(
                    "planar vertices must have zero third coordinate".into(),
                ));
            }
        }
        let mut diameter = 0.0_f64;
        let mut max_edge = 0.0_f64;
        for i in 0..verts.len() {
            for j in (i + 1)..verts.len() {
                let e = (verts[i] - verts[j]).norm();
                diameter = diameter.max(e);
                max_edge = max_edge.max(e);
            }
        }
        if max_edge == 0.0 {
            return Err(Error::DegenerateInput("coincident vertices".into()));
        }
        let det = match dim {
            Dim::Two => {
                let e1 = verts[1] - verts[0];
                let e2 = verts[2] - verts[0];
                (e1.x * e2.y - e1.y * e2.x).abs()
            }
            Dim::Three => {
                let e1 = verts[1] - verts[0];
                let e2 = verts[2] - verts[0];
                let e3 = verts[3] - verts[0];
                e1.cross(&e2).dot(&e3).abs()
            }
        };
        if det <= tol::EPS_DEGEN * max_edge.powi(dim.ambient() as i32) {
            return Err(Error::DegenerateInput(format!(
                "edge matrix determinant {det:.3e} below degeneracy threshold"
            )));
        }
        let circum = circumsphere(&verts)?;
        Ok(Simplex {
            verts,
            dim,
            diameter,
            circum,
        })
    }

    /// Builds a simplex from coordinate rows of uniform length 2 or 3.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::DegenerateInput("no vertices".into()));
        }
        let width = rows[0].len();
        if width != 2 && width != 3 {
            return Err(Error::WrongDimension {
                expected: 3,
                got: width,
            });
        }
        let mut verts = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != width {
                return Err(Error::DegenerateInput(
                    "inconsistent coordinate lengths".into(),
                ));
            }
            let z = if width == 3 { row[2] } else { 0.0 };
            verts.push(Vec3::new(row[0], row[1], z));
        }
        Self::new(verts)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.verts
    }

    pub fn vertex(&self, i: usize) -> &Vec3 {
        &self.verts[i]
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn circumsphere(&self) -> &Sphere {
        &self.circum
    }

    pub fn circumcenter(&self) -> Vec3 {
        self.circum.center
    }

    pub fn circumradius(&self) -> f64 {
        self.circum.radius
    }

    pub fn centroid(&self) -> Vec3 {
        self.verts.iter().sum::<Vec3>() / self.verts.len() as f64
    }

    /// Barycentric coordinates of `x`; entries beyond d+1 are zero.
    pub fn barycentric(&self, x: &Vec3) -> [f64; 4] {
        let v = &self.verts;
        match self.dim {
            Dim::Two => {
                let m = Matrix3::new(
                    1.0, 1.0, 1.0, //
                    v[0].x, v[1].x, v[2].x, //
                    v[0].y, v[1].y, v[2].y,
                );
                let rhs = Vector3::new(1.0, x.x, x.y);
                let sol = m
                    .lu()
                    .solve(&rhs)
                    .expect("simplex validated nondegenerate");
                [sol[0], sol[1], sol[2], 0.0]
            }
            Dim::Three => {
                let m = Matrix4::new(
                    1.0, 1.0, 1.0, 1.0, //
                    v[0].x, v[1].x, v[2].x, v[3].x, //
                    v[0].y, v[1].y, v[2].y, v[3].y, //
                    v[0].z, v[1].z, v[2].z, v[3].z,
                );
                let rhs = Vector4::new(1.0, x.x, x.y, x.z);
                let sol = m
                    .lu()
                    .solve(&rhs)
                    .expect("simplex validated nondegenerate");
                [sol[0], sol[1], sol[2], sol[3]]
            }
        }
    }

    pub fn contains(&self, x: &Vec3, mode: ContainMode) -> bool {
        let lambda = self.barycentric(x);
        let taken = self.dim.vertex_count();
        match mode {
            ContainMode::Closed => lambda[..taken].iter().all(|&l| l >= -tol::EPS_GEOM),
            ContainMode::Open => lambda[..taken].iter().all(|&l| l > tol::EPS_GEOM),
        }
    }

    /// True when the circumcenter lies in the open simplex.
    pub fn is_well_centered(&self) -> bool {
        self.contains(&self.circum.center, ContainMode::Open)
    }

    /// Frame of the facet opposite vertex `i`.
    pub fn facet_data(&self, i: usize) -> FacetData {
        assert!(i < self.verts.len(), "facet index out of range");
        let opposite = self.verts[i];
        let fverts: Vec<Vec3> = self
            .verts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| *v)
            .collect();
        let circ = circumsphere(&fverts).expect("facet of a valid simplex is nondegenerate");
        let mut normal = match self.dim {
            Dim::Two => {
                let t = fverts[1] - fverts[0];
                Vec3::new(-t.y, t.x, 0.0).normalize()
            }
            Dim::Three => (fverts[1] - fverts[0])
                .cross(&(fverts[2] - fverts[0]))
                .normalize(),
        };
        // Orient away from the opposite vertex.
        if normal.dot(&(opposite - circ.center)) > 0.0 {
            normal = -normal;
        }
        let c = self.circum.center;
        let reflected = c - 2.0 * (c - circ.center).dot(&normal) * normal;
        FacetData {
            index: i,
            opposite,
            verts: fverts,
            normal,
            offset: normal.dot(&circ.center),
            center: circ.center,
            radius: circ.radius,
            reflected,
        }
    }

    pub fn facets(&self) -> Vec<FacetData> {
        (0..self.verts.len()).map(|i| self.facet_data(i)).collect()
    }

    /// Euclidean distance from `x` to the solid simplex.
    pub fn distance(&self, x: &Vec3) -> f64 {
        let lambda = self.barycentric(x);
        let taken = self.dim.vertex_count();
        if lambda[..taken].iter().all(|&l| l >= 0.0) {
            return 0.0;
        }
        match self.dim {
            Dim::Two => (0..3)
                .map(|i| {
                    let a = self.verts[(i + 1) % 3];
                    let b = self.verts[(i + 2) % 3];
                    dist_to_segment(x, &a, &b)
                })
                .fold(f64::INFINITY, f64::min),
            Dim::Three => (0..4)
                .map(|i| {
                    let f: Vec<Vec3> = self
                        .verts
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, v)| *v)
                        .collect();
                    dist_to_triangle(x, &f[0], &f[1], &f[2])
                })
                .fold(f64::INFINITY, f64::min),
        }
    }
}

/// Facet of a simplex together with the frame used by supporting-ball
/// constructions: circumcenter and circumradius of the facet, unit normal
/// oriented away from the opposite vertex, and the reflection of the simplex
/// circumcenter across the facet plane.
#[derive(Clone, Debug)]
pub struct FacetData {
    pub index: usize,
    pub opposite: Vec3,
    pub verts: Vec<Vec3>,
    pub normal: Vec3,
    /// `normal . p` for points p of the facet plane.
    pub offset: f64,
    pub center: Vec3,
    pub radius: f64,
    pub reflected: Vec3,
}

impl FacetData {
    /// Signed offset of `x` along the outward normal, zero on the plane.
    pub fn height(&self, x: &Vec3) -> f64 {
        self.normal.dot(x) - self.offset
    }
}

/// Circumsphere of 2 to 4 affinely independent points, with the center
/// restricted to their affine hull.
pub fn circumsphere(points: &[Vec3]) -> Result<Sphere> {
    let k = points.len().checked_sub(1).unwrap_or(0);
    if !(1..=3).contains(&k) {
        return Err(Error::DegenerateInput(format!(
            "circumsphere needs 2 to 4 points, got {}",
            points.len()
        )));
    }
    let p0 = points[0];
    let edges: Vec<Vec3> = points[1..].iter().map(|p| p - p0).collect();
    let max_edge = edges.iter().map(|e| e.norm()).fold(0.0_f64, f64::max);
    if max_edge == 0.0 {
        return Err(Error::DegenerateInput("coincident points".into()));
    }
    let alpha: Vec<f64> = match k {
        1 => vec![0.5],
        2 => {
            let g = Matrix2::new(
                edges[0].dot(&edges[0]),
                edges[0].dot(&edges[1]),
                edges[1].dot(&edges[0]),
                edges[1].dot(&edges[1]),
            );
            if g.determinant().sqrt() <= tol::EPS_DEGEN * max_edge.powi(2) {
                return Err(Error::DegenerateInput(
                    "collinear points have no circumcircle".into(),
                ));
            }
            let b = Vector2::new(edges[0].norm_squared() / 2.0, edges[1].norm_squared() / 2.0);
            let sol = g.lu().solve(&b).ok_or_else(|| {
                Error::DegenerateInput("singular Gram matrix".into())
            })?;
            vec![sol[0], sol[1]]
        }
        3 => {
            let g = Matrix3::from_fn(|r, c| edges[r].dot(&edges[c]));
            if g.determinant().max(0.0).sqrt() <= tol::EPS_DEGEN * max_edge.powi(3) {
                return Err(Error::DegenerateInput(
                    "coplanar points have no circumsphere".into(),
                ));
            }
            let b = Vector3::new(
                edges[0].norm_squared() / 2.0,
                edges[1].norm_squared() / 2.0,
                edges[2].norm_squared() / 2.0,
            );
            let sol = g.lu().solve(&b).ok_or_else(|| {
                Error::DegenerateInput("singular Gram matrix".into())
            })?;
            vec![sol[0], sol[1], sol[2]]
        }
        _ => unreachable!(),
    };
    let center = p0
        + edges
            .iter()
            .zip(&alpha)
            .map(|(e, a)| e * *a)
            .sum::<Vec3>();
    let radius = (center - p0).norm();
    Ok(Sphere { center, radius })
}

/// The two intersection points of three spheres.  A tangential configuration
/// returns a doubled point.  Fails when the centers are near-collinear or the
/// spheres cannot meet.
pub fn sphere_triple_intersection(a: &Sphere, b: &Sphere, c: &Sphere) -> Result<(Vec3, Vec3)> {
    let scale = a.radius.max(b.radius).max(c.radius).max(1e-300);
    let ex_raw = b.center - a.center;
    let d = ex_raw.norm();
    if d <= tol::EPS_DEGEN * scale {
        return Err(Error::DegenerateCenters("coincident sphere centers".into()));
    }
    let ex = ex_raw / d;
    let ac = c.center - a.center;
    let i = ex.dot(&ac);
    let ey_raw = ac - i * ex;
    let j = ey_raw.norm();
    if j <= tol::EPS_DEGEN * scale {
        return Err(Error::DegenerateCenters("collinear sphere centers".into()));
    }
    let ey = ey_raw / j;
    let ez = ex.cross(&ey);
    let x = (a.radius.powi(2) - b.radius.powi(2) + d * d) / (2.0 * d);
    let y = (a.radius.powi(2) - c.radius.powi(2) + i * i + j * j) / (2.0 * j) - (i / j) * x;
    let z2 = a.radius.powi(2) - x * x - y * y;
    if z2 < -tol::EPS_GEOM * scale * scale {
        return Err(Error::RootBracketFailure(format!(
            "spheres do not share a point (z^2 = {z2:.3e})"
        )));
    }
    let z = z2.max(0.0).sqrt();
    let base = a.center + x * ex + y * ey;
    Ok((base + z * ez, base - z * ez))
}

pub fn dist_to_segment(x: &Vec3, a: &Vec3, b: &Vec3) -> f64 {
    let ab = b - a;
    let t = (x - a).dot(&ab) / ab.norm_squared();
    let t = t.clamp(0.0, 1.0);
    (x - (a + t * ab)).norm()
}

/// Distance from a point to a solid triangle (Ericson, Real-Time Collision
/// Detection, 5.1.5).
pub fn dist_to_triangle(p: &Vec3, a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return (p - a).norm();
    }
    let bp = p - b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return (p - b).norm();
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return (p - (a + v * ab)).norm();
    }
    let cp = p - c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return (p - c).norm();
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return (p - (a + w * ac)).norm();
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (p - (b + w * (c - b))).norm();
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    (p - (a + ab * v + ac * w)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn regular_tetrahedron() -> Simplex {
        let s = 1.0 / 3.0_f64.sqrt();
        Simplex::new(vec![
            Vec3::new(s, s, s),
            Vec3::new(s, -s, -s),
            Vec3::new(-s, s, -s),
            Vec3::new(-s, -s, s),
        ])
        .unwrap()
    }

    pub fn trirectangular() -> Simplex {
        Simplex::new(vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        ])
        .unwrap()
    }

    /// Squat pyramid: equilateral base of side sqrt(12/5), apex at distance 1
    /// from each base vertex.
    pub fn squat_pyramid() -> Simplex {
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
    fn regular_tetrahedron_circumsphere() {
        let s = regular_tetrahedron();
        assert!(s.circumcenter().norm() < 1e-12);
        assert!((s.circumradius() - 1.0).abs() < 1e-12);
        for v in s.vertices() {
            assert!(((v - s.circumcenter()).norm() - s.circumradius()).abs() < 1e-12);
        }
        assert!(s.is_well_centered());
    }

    #[test]
    fn trirectangular_circumsphere_and_center() {
        let s = trirectangular();
        let c = s.circumcenter();
        assert!((c - Vec3::new(0.5, 0.5, 0.5)).norm() < 1e-12);
        assert!((s.circumradius() - 0.75_f64.sqrt()).abs() < 1e-12);
        let lam = s.barycentric(&c);
        let expect = [-0.5, 0.5, 0.5, 0.5];
        for (l, e) in lam.iter().zip(expect.iter()) {
            assert!((l - e).abs() < 1e-12, "barycentric {lam:?}");
        }
        assert!(!s.is_well_centered());
    }

    #[test]
    fn trirectangular_hypotenuse_facet() {
        let s = trirectangular();
        let f = s.facet_data(0);
        let third = 1.0 / 3.0;
        assert!((f.center - Vec3::new(third, third, third)).norm() < 1e-12);
        assert!((f.radius - (2.0 / 3.0_f64).sqrt()).abs() < 1e-12);
        // Normal points away from the origin vertex.
        assert!(f.normal.dot(&(f.opposite - f.center)) < 0.0);
        assert!((f.normal.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn squat_pyramid_circumradius() {
        let s = squat_pyramid();
        let want = (5.0 / 4.0_f64).sqrt();
        assert!(
            (s.circumradius() - want).abs() <= 1e-12 * want,
            "got {}",
            s.circumradius()
        );
        assert!(!s.is_well_centered());
    }

    #[test]
    fn facet_reflection_is_mirror_image() {
        let s = trirectangular();
        for i in 0..4 {
            let f = s.facet_data(i);
            let c = s.circumcenter();
            // Midpoint of c and its reflection lies on the facet plane.
            let mid = (c + f.reflected) / 2.0;
            assert!(f.height(&mid).abs() < 1e-12);
            assert!((f.height(&c) + f.height(&f.reflected)).abs() < 1e-12);
        }
    }

    #[test]
    fn edge_circumsphere_is_midpoint() {
        let a = Vec3::new(1.0, 2.0, 3.0);
        let b = Vec3::new(-1.0, 0.0, 5.0);
        let s = circumsphere(&[a, b]).unwrap();
        assert!((s.center - (a + b) / 2.0).norm() < 1e-12);
        assert!((s.radius - (a - b).norm() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn facet_circumcircle_lies_in_plane() {
        let s = regular_tetrahedron();
        for i in 0..4 {
            let f = s.facet_data(i);
            assert!(f.height(&f.center).abs() < 1e-12);
            for v in &f.verts {
                assert!(((v - f.center).norm() - f.radius).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let flat = Simplex::new(vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
        ]);
        assert!(matches!(flat, Err(Error::DegenerateInput(_))));
        let nan = Simplex::new(vec![
            Vec3::new(f64::NAN, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        ]);
        assert!(nan.is_err());
        let collinear = circumsphere(&[
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(2.0, 0.0, 0.0),
        ]);
        assert!(collinear.is_err());
    }

    #[test]
    fn containment_modes() {
        let s = trirectangular();
        let centroid = s.centroid();
        assert!(s.contains(&centroid, ContainMode::Open));
        assert!(s.contains(&centroid, ContainMode::Closed));
        let vertex = *s.vertex(0);
        assert!(s.contains(&vertex, ContainMode::Closed));
        assert!(!s.contains(&vertex, ContainMode::Open));
        let outside = Vec3::new(2.0, 2.0, 2.0);
        assert!(!s.contains(&outside, ContainMode::Closed));
    }

    #[test]
    fn barycentric_reconstructs_point() {
        let s = trirectangular();
        let x = Vec3::new(0.2, 0.3, 0.1);
        let lam = s.barycentric(&x);
        assert!((lam.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let rebuilt: Vec3 = s
            .vertices()
            .iter()
            .zip(lam.iter())
            .map(|(v, l)| v * *l)
            .sum();
        assert!((rebuilt - x).norm() < 1e-12);
    }

    #[test]
    fn planar_right_triangle() {
        let s = Simplex::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(s.dim(), Dim::Two);
        assert!((s.circumcenter() - Vec3::new(0.5, 0.5, 0.0)).norm() < 1e-12);
        assert!((s.circumradius() - 0.5_f64.sqrt()).abs() < 1e-12);
        // Circumcenter sits on the hypotenuse, so the open test fails.
        assert!(!s.is_well_centered());
        let eq = Simplex::from_rows(&[
            vec![1.0, 0.0],
            vec![-0.5, 0.75_f64.sqrt()],
            vec![-0.5, -(0.75_f64.sqrt())],
        ])
        .unwrap();
        assert!(eq.is_well_centered());
    }

    #[test]
    fn planar_facet_is_edge_midpoint() {
        let s = Simplex::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let f = s.facet_data(2);
        // Facet opposite (0,1) is the segment from (0,0) to (1,0).
        assert!((f.center - Vec3::new(0.5, 0.0, 0.0)).norm() < 1e-12);
        assert!((f.radius - 0.5).abs() < 1e-12);
        assert!((f.normal - Vec3::new(0.0, -1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn distance_to_simplex() {
        let s = trirectangular();
        assert_eq!(s.distance(&Vec3::new(0.1, 0.1, 0.1)), 0.0);
        let below = Vec3::new(0.25, 0.25, -1.0);
        assert!((s.distance(&below) - 1.0).abs() < 1e-12);
        let beyond = Vec3::new(-3.0, -4.0, 0.0);
        assert!((s.distance(&beyond) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_distance_matches_dense_sampling() {
        // Every closest-feature branch, including the far edge regions.
        let a = Vec3::new(0.2, -0.1, 0.05);
        let b = Vec3::new(1.3, 0.4, -0.2);
        let c = Vec3::new(0.5, 1.1, 0.6);
        let mut idx = 0u64;
        let queries: Vec<Vec3> = (0..500)
            .map(|_| {
                idx += 1;
                let h = |base: u64| {
                    let (mut f, mut r, mut i) = (1.0 / base as f64, 0.0, idx);
                    while i > 0 {
                        r += f * (i % base) as f64;
                        i /= base;
                        f /= base as f64;
                    }
                    r
                };
                Vec3::new(6.0 * h(2) - 3.0, 6.0 * h(3) - 3.0, 6.0 * h(5) - 3.0)
            })
            .collect();
        let n = 160;
        for p in queries {
            let got = dist_to_triangle(&p, &a, &b, &c);
            let mut brute = f64::INFINITY;
            for i in 0..=n {
                for j in 0..=(n - i) {
                    let (u, v) = (i as f64 / n as f64, j as f64 / n as f64);
                    let q = a + u * (b - a) + v * (c - a);
                    brute = brute.min((p - q).norm());
                }
            }
            // The grid only overestimates, by at most one cell diagonal.
            assert!(got <= brute + 1e-12, "p={p:?}: got {got}, brute {brute}");
            assert!(brute - got <= 2.5e-2, "p={p:?}: got {got}, brute {brute}");
        }
    }

    #[test]
    fn triple_intersection_two_points() {
        let a = Sphere::new(Vec3::new(1.0, 0.0, 0.0), 2.0_f64.sqrt());
        let b = Sphere::new(Vec3::new(-1.0, 0.0, 0.0), 2.0_f64.sqrt());
        let c = Sphere::new(Vec3::new(0.0, 1.0, 0.0), 2.0_f64.sqrt());
        let (p, q) = sphere_triple_intersection(&a, &b, &c).unwrap();
        let want = Vec3::new(0.0, 0.0, 1.0);
        let hit = (p - want).norm() < 1e-9 || (q - want).norm() < 1e-9;
        assert!(hit, "p={p:?} q={q:?}");
        assert!((p.xy() - q.xy()).norm() < 1e-9);
        assert!((p.z + q.z).abs() < 1e-9);
    }

    #[test]
    fn triple_intersection_collinear_rejected() {
        let a = Sphere::new(Vec3::new(0.0, 0.0, 0.0), 1.0);
        let b = Sphere::new(Vec3::new(1.0, 0.0, 0.0), 1.0);
        let c = Sphere::new(Vec3::new(2.0, 0.0, 0.0), 1.0);
        assert!(matches!(
            sphere_triple_intersection(&a, &b, &c),
            Err(Error::DegenerateCenters(_))
        ));
    }
}
