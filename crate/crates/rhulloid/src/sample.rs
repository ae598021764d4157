//! Deterministic sampling: Halton sequences, simplex interiors, spheres.
//!
//! Everything here is reproducible from an explicit seed (or no seed at all),
//! so repeated runs of a check see the same points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{Dim, Simplex, Vec3};

/// Radical-inverse (van der Corput) value of `index` in the given base.
pub fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Low-discrepancy points in the closed simplex, via sorted Halton tuples
/// mapped to barycentric weights.
pub fn simplex_points(s: &Simplex, n: usize) -> Vec<Vec3> {
    let verts = s.vertices();
    (0..n)
        .map(|i| {
            let idx = i as u64 + 1;
            let lambda = match s.dim() {
                Dim::Two => {
                    let mut u = [halton(idx, 2), halton(idx, 3)];
                    u.sort_by(f64::total_cmp);
                    vec![u[0], u[1] - u[0], 1.0 - u[1]]
                }
                Dim::Three => {
                    let mut u = [halton(idx, 2), halton(idx, 3), halton(idx, 5)];
                    u.sort_by(f64::total_cmp);
                    vec![u[0], u[1] - u[0], u[2] - u[1], 1.0 - u[2]]
                }
            };
            verts
                .iter()
                .zip(lambda.iter())
                .map(|(v, l)| v * *l)
                .sum()
        })
        .collect()
}

/// Low-discrepancy points in the relative interior of the convex hull of
/// `verts` (2 or 3 points), discarding points closer than `min_vertex_dist`
/// to any vertex.
pub fn hull_interior_points(verts: &[Vec3], n: usize, min_vertex_dist: f64) -> Vec<Vec3> {
    let mut out = Vec::with_capacity(n);
    let mut idx = 1u64;
    while out.len() < n && idx < 100 * n as u64 + 1000 {
        let lambda: Vec<f64> = match verts.len() {
            2 => {
                let u = halton(idx, 2);
                vec![u, 1.0 - u]
            }
            3 => {
                let mut u = [halton(idx, 2), halton(idx, 3)];
                u.sort_by(f64::total_cmp);
                vec![u[0], u[1] - u[0], 1.0 - u[1]]
            }
            _ => panic!("hull_interior_points expects 2 or 3 vertices"),
        };
        let p: Vec3 = verts
            .iter()
            .zip(lambda.iter())
            .map(|(v, l)| v * *l)
            .sum();
        idx += 1;
        if verts.iter().all(|v| (p - v).norm() >= min_vertex_dist) {
            out.push(p);
        }
    }
    out
}

/// Seeded uniform directions on the unit sphere (or circle for `Dim::Two`).
pub fn unit_directions(n: usize, seed: u64, dim: Dim) -> Vec<Vec3> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| match dim {
            Dim::Two => {
                let th: f64 = r.gen_range(0.0..std::f64::consts::TAU);
                Vec3::new(th.cos(), th.sin(), 0.0)
            }
            Dim::Three => {
                // Cylindrical equal-area map: exact uniform measure.
                let z: f64 = r.gen_range(-1.0..1.0);
                let th: f64 = r.gen_range(0.0..std::f64::consts::TAU);
                let rho = (1.0 - z * z).max(0.0).sqrt();
                Vec3::new(rho * th.cos(), rho * th.sin(), z)
            }
        })
        .collect()
}

/// Deterministic spiral of `n` directions covering the unit sphere evenly.
pub fn fibonacci_directions(n: usize) -> Vec<Vec3> {
    let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let th = golden * i as f64;
            Vec3::new(rho * th.cos(), rho * th.sin(), z)
        })
        .collect()
}

/// Halton points in an axis-aligned box around `center`, shifted by a seeded
/// Cranley-Patterson rotation so different seeds decorrelate.
pub fn box_points(center: Vec3, half_width: f64, n: usize, seed: u64, dim: Dim) -> Vec<Vec3> {
    let mut r = rng(seed);
    let shift = [r.gen::<f64>(), r.gen::<f64>(), r.gen::<f64>()];
    let bases = [2u64, 3, 5];
    (0..n)
        .map(|i| {
            let idx = i as u64 + 1;
            let mut p = center;
            for (axis, &base) in bases.iter().enumerate().take(dim.ambient()) {
                let u = (halton(idx, base) + shift[axis]).fract();
                p[axis] += (2.0 * u - 1.0) * half_width;
            }
            p
        })
        .collect()
}
