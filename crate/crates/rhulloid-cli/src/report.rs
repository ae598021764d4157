//! Report structures serialized as JSON.  Field order is fixed by struct
//! declarations and floats print in shortest-round-trip form, which makes
//! reports byte-stable across runs for a given input, seed, and version.

use std::path::Path;

use serde::Serialize;

use rhulloid::{tol, Dim, Vec3};

use crate::CliError;

pub fn version() -> String {
    env!("CARGO_PKG_VERSION").into()
}

/// Coordinates trimmed to the ambient dimension.
pub fn coords(v: &Vec3, dim: Dim) -> Vec<f64> {
    match dim {
        Dim::Two => vec![v.x, v.y],
        Dim::Three => vec![v.x, v.y, v.z],
    }
}

/// Snapshot of the tolerance constants the verdicts depend on.
#[derive(Serialize)]
pub struct Tolerances {
    pub eps_geom: f64,
    pub eps_degen: f64,
    pub eps_circ: f64,
    pub eps_clear: f64,
    pub dedup_rel: f64,
}

impl Tolerances {
    pub fn current() -> Self {
        Tolerances {
            eps_geom: tol::EPS_GEOM,
            eps_degen: tol::EPS_DEGEN,
            eps_circ: tol::EPS_CIRC,
            eps_clear: tol::EPS_CLEAR,
            dedup_rel: tol::DEDUP_REL,
        }
    }
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub version: String,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
    pub dimension: usize,
    pub vertices: Vec<Vec<f64>>,
    pub diameter: f64,
    pub circumradius: f64,
    pub circumcenter: Vec<f64>,
    pub well_centered: bool,
    pub facets: Vec<FacetReport>,
    pub collapse: Option<CollapseReport>,
    pub classifications: Vec<ClassificationReport>,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
pub struct FacetReport {
    pub index: usize,
    pub center: Vec<f64>,
    pub radius: f64,
    pub normal: Vec<f64>,
}

#[derive(Serialize)]
pub struct CollapseReport {
    pub r_star: f64,
    pub o_star: Option<Vec<f64>>,
    pub collapsed: bool,
    pub gap_residual: f64,
}

#[derive(Serialize)]
pub struct ClassificationReport {
    pub rho: f64,
    pub class: String,
    pub o_star: Option<Vec<f64>>,
}

#[derive(Serialize)]
pub struct FourCrossingReport {
    pub version: String,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
    pub r_max: f64,
    pub scan_upper_radius: f64,
    pub grid: usize,
    pub records: Vec<CrossingRecord>,
    pub diagnostics: CrossingDiagnostics,
}

#[derive(Serialize)]
pub struct CrossingRecord {
    pub radius: f64,
    pub point: Vec<f64>,
    pub pattern: [i8; 4],
    pub interior: bool,
    pub residual: f64,
    pub circumsphere_margin: f64,
    pub min_center_separation: f64,
}

#[derive(Serialize)]
pub struct CrossingDiagnostics {
    pub rejected: Vec<RejectedRecord>,
    pub degenerate_skips: usize,
    pub interior_count: usize,
    pub interior_matches_collapse: bool,
}

#[derive(Serialize)]
pub struct RejectedRecord {
    pub radius: f64,
    pub point: Vec<f64>,
    pub pattern: [i8; 4],
    pub reason: String,
    pub detail: f64,
}

#[derive(Serialize)]
pub struct MemberReport {
    pub version: String,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
    pub rho: f64,
    pub verdicts: Vec<PointVerdict>,
}

#[derive(Serialize)]
pub struct PointVerdict {
    pub point: Vec<f64>,
    pub member: bool,
}

#[derive(Serialize)]
pub struct OracleCheckReport {
    pub version: String,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
    pub samples: usize,
    pub budget_starts: usize,
    pub budget_iters: usize,
    pub diameter: f64,
    pub circumradius: f64,
    pub runs: Vec<OracleRun>,
}

#[derive(Serialize)]
pub struct OracleRun {
    pub rho: f64,
    pub checked: usize,
    pub agreements: usize,
    pub agreement: Option<f64>,
    pub disagreements: Vec<Disagreement>,
}

#[derive(Serialize)]
pub struct Disagreement {
    pub point: Vec<f64>,
    pub formula_member: bool,
    pub oracle_member: bool,
    pub boundary_distance: f64,
}

pub fn emit_json<T: Serialize>(rep: &T, output: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(rep).expect("report serializes");
    text.push('\n');
    emit_text(&text, output)
}

pub fn emit_text(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
