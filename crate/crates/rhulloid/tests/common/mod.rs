//! Shared generators for the integration suites.
#![allow(dead_code)]

use rand::Rng;
use rhulloid::{sample, Simplex, Vec3};

/// Seeded random tetrahedron with vertices in the unit cube, rejected until
/// its inradius-to-circumradius ratio clears a quality floor, so downstream
/// solvers never see near-flat inputs.
pub fn random_tetrahedron(seed: u64) -> Simplex {
    let mut r = sample::rng(seed.wrapping_mul(0x9e37_79b9).wrapping_add(seed));
    loop {
        let verts: Vec<Vec3> = (0..4)
            .map(|_| Vec3::new(r.gen(), r.gen(), r.gen()))
            .collect();
        let Ok(s) = Simplex::new(verts) else {
            continue;
        };
        if radius_ratio(&s) >= 0.12 {
            return s;
        }
    }
}

/// Inradius over circumradius; 1/3 for the regular tetrahedron.
pub fn radius_ratio(s: &Simplex) -> f64 {
    let v = s.vertices();
    let volume = (v[1] - v[0]).cross(&(v[2] - v[0])).dot(&(v[3] - v[0])).abs() / 6.0;
    let area: f64 = (0..4)
        .map(|i| {
            let f = s.facet_data(i);
            (f.verts[1] - f.verts[0])
                .cross(&(f.verts[2] - f.verts[0]))
                .norm()
                / 2.0
        })
        .sum();
    let inradius = 3.0 * volume / area;
    inradius / s.circumradius()
}

pub fn regular_tetrahedron() -> Simplex {
    let t = 1.0 / 3.0_f64.sqrt();
    Simplex::new(vec![
        Vec3::new(t, t, t),
        Vec3::new(t, -t, -t),
        Vec3::new(-t, t, -t),
        Vec3::new(-t, -t, t),
    ])
    .unwrap()
}

pub fn trirectangular_tetrahedron() -> Simplex {
    Simplex::new(vec![
        Vec3::zeros(),
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(0.0, 0.0, 1.0),
    ])
    .unwrap()
}

/// Flat-topped pyramid whose circumcenter sits below the base: equilateral
/// base of side sqrt(12/5) and apex at distance 1 from each base vertex.
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
