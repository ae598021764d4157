//! Input loading: a JSON object holding a "vertices" array of coordinate
//! rows, either three rows of two coordinates or four rows of three.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use rhulloid::Simplex;

use crate::CliError;

#[derive(Deserialize)]
struct VertexFile {
    vertices: Vec<Vec<f64>>,
}

pub fn load_simplex(path: &Path) -> Result<Simplex, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let file: VertexFile = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("invalid input JSON: {e}")))?;
    let rows = &file.vertices;
    let shape_ok = matches!(
        (rows.len(), rows.first().map(Vec::len)),
        (3, Some(2)) | (4, Some(3))
    ) && rows.iter().all(|r| r.len() == rows[0].len());
    if !shape_ok {
        return Err(CliError::input(
            "vertices must be three rows of two coordinates or four rows of three".into(),
        ));
    }
    Simplex::from_rows(rows).map_err(CliError::from)
}
