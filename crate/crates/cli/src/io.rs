use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use effmat::matrix::{PositiveVector, ReciprocalMatrix, SquareMatrix};
use effmat::rational::{is_positive, parse_rational, Rat};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Versioned JSON carrier for a matrix: entries are exact rational strings.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MatrixDocument {
    pub schema: String,
    pub n: usize,
    pub entries: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

pub const MATRIX_SCHEMA: &str = "effmat/1";

pub struct MatrixInput {
    pub matrix: ReciprocalMatrix,
    pub labels: Option<Vec<String>>,
}

/// Loads a matrix from a MatrixDocument JSON file or a plain CSV grid of
/// rational strings; the two are distinguished by the leading character.
pub fn load_matrix(path: &Path) -> Result<MatrixInput, CliError> {
    let text = read_file(path)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let doc: MatrixDocument = serde_json::from_str(&text)
            .map_err(|e| CliError::Parse(format!("{}: invalid matrix document: {e}", path.display())))?;
        matrix_from_document(&doc)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    } else {
        matrix_from_csv(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }
}

pub fn matrix_from_document(doc: &MatrixDocument) -> Result<MatrixInput, String> {
    if doc.schema != MATRIX_SCHEMA {
        return Err(format!(
            "unsupported schema {:?}; expected {:?}",
            doc.schema, MATRIX_SCHEMA
        ));
    }
    if doc.entries.len() != doc.n {
        return Err(format!(
            "entry grid has {} rows but n = {}",
            doc.entries.len(),
            doc.n
        ));
    }
    for (i, row) in doc.entries.iter().enumerate() {
        if row.len() != doc.n {
            return Err(format!(
                "row {} has {} entries but n = {}",
                i + 1,
                row.len(),
                doc.n
            ));
        }
    }
    if let Some(labels) = &doc.labels {
        if labels.len() != doc.n {
            return Err(format!("{} labels for {} alternatives", labels.len(), doc.n));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err("labels are not distinct".to_owned());
        }
    }
    let matrix = grid_to_matrix(&doc.entries)?;
    Ok(MatrixInput {
        matrix,
        labels: doc.labels.clone(),
    })
}

fn matrix_from_csv(text: &str) -> Result<MatrixInput, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut grid: Vec<Vec<String>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| format!("invalid CSV: {e}"))?;
        let row: Vec<String> = record.iter().map(|s| s.to_owned()).collect();
        if row.iter().all(|s| s.is_empty()) {
            continue;
        }
        grid.push(row);
    }
    if grid.is_empty() {
        return Err("empty matrix file".to_owned());
    }
    let n = grid.len();
    for (i, row) in grid.iter().enumerate() {
        if row.len() != n {
            return Err(format!(
                "row {} has {} entries but the grid has {} rows",
                i + 1,
                row.len(),
                n
            ));
        }
    }
    let matrix = grid_to_matrix(&grid)?;
    Ok(MatrixInput {
        matrix,
        labels: None,
    })
}

fn grid_to_matrix(grid: &[Vec<String>]) -> Result<ReciprocalMatrix, String> {
    let n = grid.len();
    let mut values = Vec::with_capacity(n);
    for (i, row) in grid.iter().enumerate() {
        let mut out = Vec::with_capacity(n);
        for (j, text) in row.iter().enumerate() {
            let value = parse_rational(text)
                .map_err(|_| format!("entry ({},{}) is not a rational: {:?}", i + 1, j + 1, text))?;
            out.push(value);
        }
        values.push(out);
    }
    let square = SquareMatrix::from_rows(values).map_err(|e| e.to_string())?;
    ReciprocalMatrix::new(square).map_err(|e| e.to_string())
}

/// Loads a weight vector from a JSON array of rational strings (integers
/// allowed) or a one-rational-per-line text file.
pub fn load_vector(path: &Path) -> Result<PositiveVector, CliError> {
    let text = read_file(path)?;
    let trimmed = text.trim_start();
    let entries: Vec<Rat> = if trimmed.starts_with('[') {
        let raw: Vec<serde_json::Value> = serde_json::from_str(&text)
            .map_err(|e| CliError::Parse(format!("{}: invalid vector file: {e}", path.display())))?;
        raw.iter()
            .enumerate()
            .map(|(i, value)| {
                let text = match value {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                    other => {
                        return Err(CliError::Parse(format!(
                            "{}: coordinate {} must be a rational string, got {other}",
                            path.display(),
                            i + 1
                        )))
                    }
                };
                parse_rational(&text).map_err(|e| {
                    CliError::Parse(format!("{}: coordinate {}: {e}", path.display(), i + 1))
                })
            })
            .collect::<Result<_, _>>()?
    } else {
        text.lines()
            .map(str::trim)
            .filter(|line| !line.is_empty())
            .enumerate()
            .map(|(i, line)| {
                parse_rational(line).map_err(|e| {
                    CliError::Parse(format!("{}: line {}: {e}", path.display(), i + 1))
                })
            })
            .collect::<Result<_, _>>()?
    };
    if let Some(pos) = entries.iter().position(|v| !is_positive(v)) {
        return Err(CliError::Parse(format!(
            "{}: coordinate {} is not positive",
            path.display(),
            pos + 1
        )));
    }
    PositiveVector::new(entries)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}
