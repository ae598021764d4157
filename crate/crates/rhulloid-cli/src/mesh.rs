//! Boundary mesh export: OBJ patches of the supporting spheres in 3D, an
//! SVG arc drawing in 2D.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use rhulloid::hulloid::{PlanarHulloid, SupportFamily};
use rhulloid::{tol, ContainMode, Simplex, Vec3};

pub struct ObjMesh {
    pub text: String,
    pub face_count: usize,
}

/// Grid node, with both pole rows collapsed to a single logical node each.
type Node = (usize, usize);

/// Lat-long sampling of each supporting sphere, clipped to the simplex and
/// to the complement of the other balls.  Poles sit on the facet normal and
/// the azimuth is anchored at the first facet vertex, so congruent inputs
/// produce congruent patches with equal vertex counts.
///
/// The facet planes themselves are scanned too, but a facet triangle lies
/// inside the plane section of its own supporting ball (the facet
/// circumdisk), so those patches come out empty except at the vertices;
/// running the scan keeps the export honest about that.
pub fn obj_mesh(s: &Simplex, fam: &SupportFamily, res_w: usize, res_h: usize) -> ObjMesh {
    let rho = fam.rho();
    let band = tol::EPS_GEOM * s.diameter();
    let mut text = String::new();
    writeln!(
        text,
        "# rhulloid {} hulloid boundary",
        env!("CARGO_PKG_VERSION")
    )
    .unwrap();
    writeln!(text, "# radius {rho}").unwrap();
    writeln!(text, "# resolution {res_w}x{res_h}").unwrap();
    let mut face_count = 0usize;
    let mut global_base = 0usize;

    for (i, ball) in fam.balls().iter().enumerate() {
        let fd = s.facet_data(ball.facet);
        let n = fd.normal;
        let anchor = fd.verts[0] - ball.center;
        let u = (anchor - n * n.dot(&anchor)).normalize();
        let v = n.cross(&u);
        let point = |a: usize, b: usize| -> Vec3 {
            let theta = TAU * (a % res_w) as f64 / res_w as f64;
            let phi = PI * b as f64 / res_h as f64;
            ball.center + rho * (phi.sin() * (theta.cos() * u + theta.sin() * v) + phi.cos() * n)
        };
        let node_of = |a: usize, b: usize| -> Node {
            if b == 0 {
                (0, 0)
            } else if b == res_h {
                (0, res_h)
            } else {
                (a % res_w, b)
            }
        };
        let keep = |p: &Vec3| -> bool {
            s.contains(p, ContainMode::Closed)
                && fam
                    .balls()
                    .iter()
                    .enumerate()
                    .all(|(j, other)| j == i || other.excludes(p, band))
        };
        let mut kept = vec![vec![false; res_h + 1]; res_w];
        for a in 0..res_w {
            for b in 0..=res_h {
                if node_of(a, b) == (a, b) {
                    kept[a][b] = keep(&point(a, b));
                }
            }
        }
        let kept_at = |(a, b): Node| kept[a][b];

        let mut faces: Vec<[Node; 3]> = Vec::new();
        for b in 0..res_h {
            for a in 0..res_w {
                let c00 = node_of(a, b);
                let c10 = node_of(a + 1, b);
                let c01 = node_of(a, b + 1);
                let c11 = node_of(a + 1, b + 1);
                if b == 0 {
                    // Top row: c00 and c10 are the same pole node.
                    if [c00, c11, c01].iter().all(|&nd| kept_at(nd)) {
                        faces.push([c00, c11, c01]);
                    }
                } else if b + 1 == res_h {
                    // Bottom row: c01 and c11 are the same pole node.
                    if [c00, c10, c01].iter().all(|&nd| kept_at(nd)) {
                        faces.push([c00, c10, c01]);
                    }
                } else if [c00, c10, c11, c01].iter().all(|&nd| kept_at(nd)) {
                    faces.push([c00, c10, c11]);
                    faces.push([c00, c11, c01]);
                }
            }
        }
        if faces.is_empty() {
            continue;
        }
        writeln!(text, "o ball_{}", ball.facet).unwrap();
        emit_patch(&mut text, &faces, &mut global_base, |(a, b)| point(a, b));
        face_count += faces.len();
    }

    let nsub = res_h;
    for fd in s.facets() {
        let origin = fd.verts[0];
        let eb = fd.verts[1] - origin;
        let ec = fd.verts[2] - origin;
        let point =
            |i: usize, j: usize| origin + (i as f64 / nsub as f64) * eb + (j as f64 / nsub as f64) * ec;
        let keep = |p: &Vec3| fam.balls().iter().all(|b| b.excludes(p, band));
        let mut kept: HashMap<Node, bool> = HashMap::new();
        for i in 0..=nsub {
            for j in 0..=(nsub - i) {
                kept.insert((i, j), keep(&point(i, j)));
            }
        }
        let mut faces: Vec<[Node; 3]> = Vec::new();
        for i in 0..nsub {
            for j in 0..(nsub - i) {
                let up = [(i, j), (i + 1, j), (i, j + 1)];
                if up.iter().all(|nd| kept[nd]) {
                    faces.push(up);
                }
                if i + j + 2 <= nsub {
                    let down = [(i + 1, j), (i + 1, j + 1), (i, j + 1)];
                    if down.iter().all(|nd| kept[nd]) {
                        faces.push(down);
                    }
                }
            }
        }
        if faces.is_empty() {
            continue;
        }
        writeln!(text, "o facet_{}", fd.index).unwrap();
        emit_patch(&mut text, &faces, &mut global_base, |(i, j)| point(i, j));
        face_count += faces.len();
    }

    ObjMesh { text, face_count }
}

/// Writes one object's vertices and faces; indices are global and 1-based.
fn emit_patch(
    text: &mut String,
    faces: &[[Node; 3]],
    global_base: &mut usize,
    point: impl Fn(Node) -> Vec3,
) {
    let mut index: HashMap<Node, usize> = HashMap::new();
    let mut order: Vec<Node> = Vec::new();
    for f in faces {
        for nd in f {
            if !index.contains_key(nd) {
                index.insert(*nd, order.len());
                order.push(*nd);
            }
        }
    }
    for nd in &order {
        let p = point(*nd);
        writeln!(text, "v {} {} {}", p.x, p.y, p.z).unwrap();
    }
    for f in faces {
        writeln!(
            text,
            "f {} {} {}",
            *global_base + index[&f[0]] + 1,
            *global_base + index[&f[1]] + 1,
            *global_base + index[&f[2]] + 1
        )
        .unwrap();
    }
    *global_base += order.len();
}

/// Arc drawing of a planar hulloid with the triangle dashed for context.
/// The y axis is flipped so the figure appears in mathematical orientation;
/// the counterclockwise arc parameterization then runs in the negative
/// angle direction, hence sweep flag 0.
pub fn svg_mesh(s: &Simplex, ph: &PlanarHulloid) -> String {
    let flip = |p: &Vec3| (fnum(p.x), fnum(-p.y));
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for vtx in s.vertices() {
        let (x, y) = flip(vtx);
        xs.push(x);
        ys.push(y);
    }
    for arc in &ph.arcs {
        let m = 48usize;
        for t in 0..=m {
            let theta = arc.start + arc.sweep() * t as f64 / m as f64;
            let (x, y) = flip(&arc.point_at(theta));
            xs.push(x);
            ys.push(y);
        }
    }
    let min_x = xs.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let max_x = xs.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let min_y = ys.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let max_y = ys.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let span = (max_x - min_x).max(max_y - min_y).max(1e-12);
    let margin = 0.06 * span;

    let mut text = String::new();
    writeln!(
        text,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        fnum(min_x - margin),
        fnum(min_y - margin),
        fnum(max_x - min_x + 2.0 * margin),
        fnum(max_y - min_y + 2.0 * margin)
    )
    .unwrap();
    writeln!(
        text,
        "<!-- rhulloid {} radius {} arcs {} -->",
        env!("CARGO_PKG_VERSION"),
        ph.rho,
        ph.arcs.len()
    )
    .unwrap();
    let outline: Vec<String> = s
        .vertices()
        .iter()
        .map(|vtx| {
            let (x, y) = flip(vtx);
            format!("{x},{y}")
        })
        .collect();
    let thin = fnum(0.004 * span);
    let dash = fnum(0.012 * span);
    writeln!(
        text,
        r##"<polygon points="{}" fill="none" stroke="#999999" stroke-width="{thin}" stroke-dasharray="{dash},{dash}"/>"##,
        outline.join(" ")
    )
    .unwrap();
    let thick = fnum(0.008 * span);
    for arc in &ph.arcs {
        let (p_start, p_end) = arc.endpoints();
        let (x1, y1) = flip(&p_start);
        let (x2, y2) = flip(&p_end);
        let large = u8::from(arc.sweep() > PI);
        let r = fnum(arc.rho);
        writeln!(
            text,
            r##"<path d="M {x1} {y1} A {r} {r} 0 {large} 0 {x2} {y2}" fill="none" stroke="#000000" stroke-width="{thick}"/>"##
        )
        .unwrap();
    }
    writeln!(text, "</svg>").unwrap();
    text
}

/// Normalizes negative zero so printed coordinates stay tidy.
fn fnum(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}
