//! Command-line interface for hulloid geometry on simplex vertex sets.
//!
//! Reports are JSON with struct-fixed field order and shortest-round-trip
//! floats, so one input, seed, and version always produces byte-identical
//! output.  Errors leave a machine-readable payload on stderr and map to
//! exit codes: 2 for input problems, 3 for geometric degeneracy, 4 for a
//! violated structural property.

mod input;
mod mesh;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rhulloid::critical::{self, HulloidClass};
use rhulloid::four_crossing::{self, EnumerateOptions, RejectReason};
use rhulloid::hulloid;
use rhulloid::oracle::{self, SearchBudget};
use rhulloid::sample;
use rhulloid::{Dim, Error, Simplex, Vec3};

use report::{
    coords, emit_json, emit_text, version, AnalyzeReport, ClassificationReport, CollapseReport,
    CrossingDiagnostics, CrossingRecord, Disagreement, FacetReport, FourCrossingReport,
    MemberReport, OracleCheckReport, OracleRun, PointVerdict, RejectedRecord, Tolerances,
};

#[derive(Parser)]
#[command(name = "rhulloid", version, about = "Hulloid computations for triangle and tetrahedron vertex sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize circumsphere data, the collapse radius, and hulloid classes.
    Analyze(AnalyzeArgs),
    /// Enumerate radii where four vertex-triple spheres meet at one point.
    FourCrossing(FourCrossingArgs),
    /// Export the hulloid boundary as a mesh (OBJ in 3D, SVG in 2D).
    Mesh(MeshArgs),
    /// Decide membership of explicit points at one radius.
    Member(MemberArgs),
    /// Compare the membership formulas against the escape-ball search.
    OracleCheck(OracleCheckArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input JSON file with a "vertices" array of coordinate rows.
    input: PathBuf,
    /// Radius to classify (repeatable).
    #[arg(long)]
    rho: Vec<f64>,
    /// Comma-separated radii to classify.
    #[arg(long, value_delimiter = ',')]
    rho_list: Vec<f64>,
    /// Report format; only json is available here.
    #[arg(long)]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FourCrossingArgs {
    /// Input JSON file with a "vertices" array of coordinate rows.
    input: PathBuf,
    /// Upper end of the radius scan, as a multiple of the circumradius.
    #[arg(long, default_value_t = 8.0)]
    r_max: f64,
    /// Radius grid points per sign pattern.
    #[arg(long, default_value_t = 2048)]
    grid: usize,
    /// Seed for the aliasing-guard probe radii.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report format; only json is available here.
    #[arg(long)]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MeshArgs {
    /// Input JSON file with a "vertices" array of coordinate rows.
    input: PathBuf,
    /// Ball radius of the hulloid boundary to export.
    #[arg(long)]
    rho: f64,
    /// Sphere grid as longitudes x latitudes.
    #[arg(long, default_value = "128x64")]
    resolution: String,
    /// obj (3D) or svg (2D); defaults to the one matching the input.
    #[arg(long)]
    format: Option<String>,
    /// Write the mesh here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MemberArgs {
    /// Input JSON file with a "vertices" array of coordinate rows.
    input: PathBuf,
    /// Ball radius defining the hulloid.
    #[arg(long)]
    rho: f64,
    /// Point to test, as comma-separated coordinates (repeatable).
    #[arg(long = "point", value_name = "X,Y[,Z]", required = true)]
    points: Vec<String>,
    /// Report format; only json is available here.
    #[arg(long)]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleCheckArgs {
    /// Input JSON file with a "vertices" array of coordinate rows.
    input: PathBuf,
    /// Number of sample points per radius.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Seed for sampling and the escape-ball searches.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Radius to check (repeatable); defaults bracket the collapse radius.
    #[arg(long)]
    rho: Vec<f64>,
    /// Comma-separated radii to check.
    #[arg(long, value_delimiter = ',')]
    rho_list: Vec<f64>,
    /// Search start centers per point.
    #[arg(long, default_value_t = 24)]
    starts: usize,
    /// Compass iterations per search start.
    #[arg(long, default_value_t = 120)]
    iters: usize,
    /// Report format; only json is available here.
    #[arg(long)]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Error carrying its process exit code and a stable kind label.
pub struct CliError {
    pub code: u8,
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn input(message: String) -> Self {
        CliError {
            code: 2,
            kind: "input".into(),
            message,
        }
    }

    fn render(&self) -> String {
        let value = serde_json::json!({
            "error": { "kind": self.kind, "message": self.message },
            "version": env!("CARGO_PKG_VERSION"),
        });
        serde_json::to_string_pretty(&value).expect("error payload serializes")
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::RadiusTooSmall { .. } | Error::WrongDimension { .. } => 2,
            Error::DegenerateInput(_)
            | Error::AmbiguousSelection { .. }
            | Error::RadiusBelowFacet { .. }
            | Error::DegenerateCenters(_)
            | Error::RootBracketFailure(_)
            | Error::NonInteriorFixedPoint { .. } => 3,
            Error::UniquenessViolation(_) | Error::PropertyViolation(_) => 4,
        };
        let kind = match &e {
            Error::DegenerateInput(_) => "degenerate_input",
            Error::WrongDimension { .. } => "wrong_dimension",
            Error::RadiusTooSmall { .. } => "radius_too_small",
            Error::AmbiguousSelection { .. } => "ambiguous_selection",
            Error::RadiusBelowFacet { .. } => "radius_below_facet",
            Error::DegenerateCenters(_) => "degenerate_centers",
            Error::RootBracketFailure(_) => "root_bracket_failure",
            Error::NonInteriorFixedPoint { .. } => "non_interior_fixed_point",
            Error::UniquenessViolation(_) => "uniqueness_violation",
            Error::PropertyViolation(_) => "property_violation",
        };
        CliError {
            code,
            kind: kind.into(),
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    cap_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.render());
            ExitCode::from(e.code)
        }
    }
}

/// RHULLOID_THREADS caps the worker pool; unset leaves the rayon default.
fn cap_threads() {
    if let Ok(text) = std::env::var("RHULLOID_THREADS") {
        if let Ok(n) = text.parse::<usize>() {
            if n > 0 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .ok();
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::FourCrossing(args) => cmd_four_crossing(args),
        Command::Mesh(args) => cmd_mesh(args),
        Command::Member(args) => cmd_member(args),
        Command::OracleCheck(args) => cmd_oracle_check(args),
    }
}

fn require_json_format(requested: Option<&str>) -> Result<(), CliError> {
    match requested {
        None | Some("json") => Ok(()),
        Some(other) => Err(CliError::input(format!(
            "format {other:?} not available for this report, use json"
        ))),
    }
}

fn gather_rhos(single: &[f64], list: &[f64]) -> Result<Vec<f64>, CliError> {
    let rhos: Vec<f64> = single.iter().chain(list).copied().collect();
    for &rho in &rhos {
        if !(rho.is_finite() && rho > 0.0) {
            return Err(CliError::input(format!(
                "radius {rho} must be positive and finite"
            )));
        }
    }
    Ok(rhos)
}

fn parse_point(text: &str, dim: Dim) -> Result<Vec3, CliError> {
    let comps: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::input(format!("bad point {text:?}: {e}")))?;
    if comps.len() != dim.ambient() {
        return Err(CliError::input(format!(
            "point {text:?} has {} coordinates, expected {}",
            comps.len(),
            dim.ambient()
        )));
    }
    let z = if comps.len() == 3 { comps[2] } else { 0.0 };
    Ok(Vec3::new(comps[0], comps[1], z))
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    require_json_format(args.format.as_deref())?;
    let s = input::load_simplex(&args.input)?;
    let dim = s.dim();
    let mut warnings: Vec<String> = Vec::new();
    let collapse = match critical::critical_radius(&s) {
        Ok(crit) => Some(CollapseReport {
            r_star: crit.r_star,
            o_star: crit.o_star.as_ref().map(|o| coords(o, dim)),
            collapsed: crit.collapsed,
            gap_residual: crit.gap_residual,
        }),
        Err(e @ (Error::RootBracketFailure(_) | Error::NonInteriorFixedPoint { .. })) => {
            warnings.push(format!("collapse radius unavailable: {e}"));
            None
        }
        Err(e) => return Err(e.into()),
    };
    let mut classifications = Vec::new();
    for rho in gather_rhos(&args.rho, &args.rho_list)? {
        let (class, o_star) = match critical::classify(&s, rho)? {
            HulloidClass::VerticesOnly => ("vertices_only", None),
            HulloidClass::VerticesPlusPoint { o_star } => {
                ("vertices_plus_point", Some(coords(&o_star, dim)))
            }
            HulloidClass::Full => ("full", None),
        };
        classifications.push(ClassificationReport {
            rho,
            class: class.into(),
            o_star,
        });
    }
    let facets = s
        .facets()
        .iter()
        .map(|fd| FacetReport {
            index: fd.index,
            center: coords(&fd.center, dim),
            radius: fd.radius,
            normal: coords(&fd.normal, dim),
        })
        .collect();
    let rep = AnalyzeReport {
        version: version(),
        seed: None,
        tolerances: Tolerances::current(),
        dimension: dim.ambient(),
        vertices: s.vertices().iter().map(|v| coords(v, dim)).collect(),
        diameter: s.diameter(),
        circumradius: s.circumradius(),
        circumcenter: coords(&s.circumcenter(), dim),
        well_centered: s.is_well_centered(),
        facets,
        collapse,
        classifications,
        warnings,
    };
    emit_json(&rep, args.output.as_deref())
}

fn cmd_four_crossing(args: FourCrossingArgs) -> Result<(), CliError> {
    require_json_format(args.format.as_deref())?;
    let s = input::load_simplex(&args.input)?;
    if !(args.r_max.is_finite() && args.r_max > 1.0) {
        return Err(CliError::input(format!(
            "--r-max {} must exceed 1 (it scales the circumradius)",
            args.r_max
        )));
    }
    let en = four_crossing::enumerate(
        &s,
        EnumerateOptions {
            r_max_rel: args.r_max,
            grid_n: args.grid,
            seed: args.seed,
        },
    )?;
    four_crossing::verify_interior_uniqueness(&s, &en.records)?;
    let dim = s.dim();
    let records = en
        .records
        .iter()
        .map(|r| CrossingRecord {
            radius: r.radius,
            point: coords(&r.point, dim),
            pattern: r.pattern,
            interior: r.interior,
            residual: r.residual,
            circumsphere_margin: r.circumsphere_margin,
            min_center_separation: r.min_center_separation,
        })
        .collect();
    let rejected = en
        .rejected
        .iter()
        .map(|rej| {
            let (reason, detail) = match rej.reason {
                RejectReason::OnCircumsphere { margin } => ("on_circumsphere", margin),
                RejectReason::CoincidentSpheres { min_separation } => {
                    ("coincident_spheres", min_separation)
                }
                RejectReason::ResidualTooLarge { residual } => ("residual_too_large", residual),
            };
            RejectedRecord {
                radius: rej.radius,
                point: coords(&rej.point, dim),
                pattern: rej.pattern,
                reason: reason.into(),
                detail,
            }
        })
        .collect();
    let interior_count = en.records.iter().filter(|r| r.interior).count();
    let rep = FourCrossingReport {
        version: version(),
        seed: Some(args.seed),
        tolerances: Tolerances::current(),
        r_max: args.r_max,
        scan_upper_radius: args.r_max * s.circumradius(),
        grid: args.grid,
        records,
        diagnostics: CrossingDiagnostics {
            rejected,
            degenerate_skips: en.degenerate_skips,
            interior_count,
            interior_matches_collapse: true,
        },
    };
    emit_json(&rep, args.output.as_deref())
}

fn cmd_member(args: MemberArgs) -> Result<(), CliError> {
    require_json_format(args.format.as_deref())?;
    let s = input::load_simplex(&args.input)?;
    let dim = s.dim();
    let rho = gather_rhos(&[args.rho], &[])?[0];
    let mut verdicts = Vec::new();
    for text in &args.points {
        let x = parse_point(text, dim)?;
        let member = hulloid::membership(&s, rho, &x)?;
        verdicts.push(PointVerdict {
            point: coords(&x, dim),
            member,
        });
    }
    let rep = MemberReport {
        version: version(),
        seed: None,
        tolerances: Tolerances::current(),
        rho,
        verdicts,
    };
    emit_json(&rep, args.output.as_deref())
}

fn cmd_oracle_check(args: OracleCheckArgs) -> Result<(), CliError> {
    require_json_format(args.format.as_deref())?;
    let s = input::load_simplex(&args.input)?;
    let dim = s.dim();
    let r_v = s.circumradius();
    let user = gather_rhos(&args.rho, &args.rho_list)?;
    let rhos = if user.is_empty() {
        default_check_radii(&s)?
    } else {
        user
    };
    let budget = SearchBudget {
        starts: args.starts,
        iters: args.iters,
    };
    let pts = sample::box_points(s.circumcenter(), 2.0 * r_v, args.samples, args.seed, dim);
    let mut runs = Vec::with_capacity(rhos.len());
    for (ri, &rho) in rhos.iter().enumerate() {
        let fam = hulloid::support_family(&s, rho).ok();
        let mut agreements = 0usize;
        let mut disagreements = Vec::new();
        for (pi, x) in pts.iter().enumerate() {
            let formula = hulloid::membership(&s, rho, x)?;
            let point_seed = args.seed
                ^ (((ri * pts.len() + pi) as u64)
                    .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                    .wrapping_add(1));
            let oracle_member =
                oracle::oracle_membership(s.vertices(), rho, x, dim, budget, point_seed);
            if formula == oracle_member {
                agreements += 1;
            } else {
                // Distance to the nearest boundary feature; disagreements
                // are expected only inside a thin band around it.
                let boundary_distance = match &fam {
                    Some(f) => hulloid::boundary_proximity(&s, f, x),
                    None => s
                        .vertices()
                        .iter()
                        .map(|v| (x - v).norm())
                        .fold(f64::INFINITY, f64::min),
                };
                disagreements.push(Disagreement {
                    point: coords(x, dim),
                    formula_member: formula,
                    oracle_member,
                    boundary_distance,
                });
            }
        }
        let checked = pts.len();
        runs.push(OracleRun {
            rho,
            checked,
            agreements,
            agreement: (checked > 0).then(|| agreements as f64 / checked as f64),
            disagreements,
        });
    }
    let rep = OracleCheckReport {
        version: version(),
        seed: Some(args.seed),
        tolerances: Tolerances::current(),
        samples: args.samples,
        budget_starts: budget.starts,
        budget_iters: budget.iters,
        diameter: s.diameter(),
        circumradius: r_v,
        runs,
    };
    emit_json(&rep, args.output.as_deref())
}

/// Radii bracketing the interesting regimes when the caller gave none.
fn default_check_radii(s: &Simplex) -> Result<Vec<f64>, CliError> {
    let r_v = s.circumradius();
    match critical::critical_radius(s) {
        Ok(crit) if crit.collapsed => Ok(vec![
            (r_v * crit.r_star).sqrt(),
            1.25 * crit.r_star,
            2.5 * crit.r_star,
        ]),
        Ok(_) => Ok(vec![1.25 * r_v, 2.0 * r_v, 4.0 * r_v]),
        Err(Error::RootBracketFailure(_)) | Err(Error::NonInteriorFixedPoint { .. }) => {
            Ok(vec![1.25 * r_v, 2.0 * r_v, 4.0 * r_v])
        }
        Err(e) => Err(e.into()),
    }
}

enum MeshFormat {
    Obj,
    Svg,
}

fn resolve_format(requested: Option<&str>, dim: Dim) -> Result<MeshFormat, CliError> {
    match (requested, dim) {
        (None | Some("obj"), Dim::Three) => Ok(MeshFormat::Obj),
        (None | Some("svg"), Dim::Two) => Ok(MeshFormat::Svg),
        (Some("obj"), Dim::Two) | (Some("svg"), Dim::Three) => Err(CliError::input(
            "mesh format does not match the input dimension: obj is 3D, svg is 2D".into(),
        )),
        (Some(other), _) => Err(CliError::input(format!("unknown mesh format {other:?}"))),
    }
}

fn parse_resolution(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::input(format!("resolution {text:?} must look like 128x64"));
    let (w, h) = text.split_once('x').ok_or_else(bad)?;
    let w: usize = w.parse().map_err(|_| bad())?;
    let h: usize = h.parse().map_err(|_| bad())?;
    if w < 8 || h < 4 {
        return Err(CliError::input(format!(
            "resolution {text:?} too coarse, need at least 8x4"
        )));
    }
    Ok((w, h))
}

fn warn_empty(rho: f64) {
    let value = serde_json::json!({
        "warning": format!("mesh at radius {rho} has no boundary elements"),
        "version": env!("CARGO_PKG_VERSION"),
    });
    eprintln!(
        "{}",
        serde_json::to_string_pretty(&value).expect("warning payload serializes")
    );
}

fn cmd_mesh(args: MeshArgs) -> Result<(), CliError> {
    let s = input::load_simplex(&args.input)?;
    let rho = gather_rhos(&[args.rho], &[])?[0];
    let (res_w, res_h) = parse_resolution(&args.resolution)?;
    let text = match resolve_format(args.format.as_deref(), s.dim())? {
        MeshFormat::Obj => {
            let fam = hulloid::support_family(&s, rho)?;
            let obj = mesh::obj_mesh(&s, &fam, res_w, res_h);
            if obj.face_count == 0 {
                warn_empty(rho);
            }
            obj.text
        }
        MeshFormat::Svg => {
            let ph = hulloid::planar_hulloid(&s, rho)?;
            if ph.arcs.is_empty() {
                warn_empty(rho);
            }
            mesh::svg_mesh(&s, &ph)
        }
    };
    emit_text(&text, args.output.as_deref())
}
