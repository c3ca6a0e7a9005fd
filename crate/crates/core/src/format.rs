//! File formats: matrix text (one '0'/'1' row per line, optional leading
//! '#' comments) and the JSON forms for matrices and label classes.

use serde::{Deserialize, Serialize};

use crate::bitmatrix::BinaryMatrix;
use crate::error::{Error, Result};
use crate::hypercube::LabelClass;

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<String>,
}

/// JSON object {"rows": m, "cols": n, "data": ["0101", ...]}.
pub fn matrix_to_json(x: &BinaryMatrix) -> String {
    let data: Vec<String> = (0..x.row_count())
        .map(|i| {
            (0..x.col_count())
                .map(|j| if x.get(i, j) { '1' } else { '0' })
                .collect()
        })
        .collect();
    serde_json::to_string(&MatrixJson {
        rows: x.row_count(),
        cols: x.col_count(),
        data,
    })
    .expect("matrix serialization cannot fail")
}

pub fn matrix_from_json(s: &str) -> Result<BinaryMatrix> {
    let parsed: MatrixJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("matrix json: {e}")))?;
    if parsed.data.len() != parsed.rows {
        return Err(Error::Parse(format!(
            "matrix json: {} data rows, header says {}",
            parsed.data.len(),
            parsed.rows
        )));
    }
    let text = parsed.data.join("\n");
    let x: BinaryMatrix = text.parse()?;
    if x.col_count() != parsed.cols {
        return Err(Error::Parse(format!(
            "matrix json: rows have {} columns, header says {}",
            x.col_count(),
            parsed.cols
        )));
    }
    Ok(x)
}

/// Accepts either the text format or the JSON object form.
pub fn matrix_from_str_any(s: &str) -> Result<BinaryMatrix> {
    if s.trim_start().starts_with('{') {
        matrix_from_json(s)
    } else {
        s.parse()
    }
}

#[derive(Serialize, Deserialize)]
struct LabelClassJson {
    n: usize,
    vertices: Vec<String>,
}

/// JSON object {"n": 4, "vertices": ["1100", ...]}.
pub fn label_class_to_json(s: &LabelClass) -> String {
    serde_json::to_string(&LabelClassJson {
        n: s.dimension(),
        vertices: s.vertex_strings(),
    })
    .expect("label class serialization cannot fail")
}

pub fn label_class_from_json(s: &str) -> Result<LabelClass> {
    let parsed: LabelClassJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("label class json: {e}")))?;
    LabelClass::from_strings(parsed.n, &parsed.vertices)
}

/// Text form: one vertex bit string per line, optional '#' comments.
pub fn label_class_from_text(dim: usize, s: &str) -> Result<LabelClass> {
    let lines: Vec<String> = s
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(str::to_owned)
        .collect();
    LabelClass::from_strings(dim, &lines)
}

pub fn label_class_to_text(s: &LabelClass) -> String {
    s.vertex_strings().join("\n")
}

pub fn label_class_from_str_any(dim: usize, s: &str) -> Result<LabelClass> {
    if s.trim_start().starts_with('{') {
        let parsed = label_class_from_json(s)?;
        if parsed.dimension() != dim {
            return Err(Error::Parse(format!(
                "label class json has n = {}, expected {dim}",
                parsed.dimension()
            )));
        }
        Ok(parsed)
    } else {
        label_class_from_text(dim, s)
    }
}
