//! Matrix file formats.
//!
//! CSV: `n` lines of `n` comma-separated positive decimal numbers,
//! row-major, no header. Scientific notation is accepted on input.
//! JSON: `{"n": <order>, "rows": [[...], ...]}`.
//!
//! Parsing validates the reciprocal-matrix invariants and then rebuilds
//! the diagonal and lower triangle, so `serialize(parse(text))` is the
//! identity up to numeric formatting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComparisonMatrix;
use crate::scalar::Scalar;

/// Parses CSV matrix text, validating reciprocity within `tol`.
pub fn parse_csv<T: Scalar>(text: &str, tol: T) -> Result<ComparisonMatrix<T>> {
    let mut rows: Vec<Vec<T>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for cell in line.split(',') {
            let cell = cell.trim();
            let value = cell.parse::<T>().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("'{cell}' is not a number"),
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "no rows found".into(),
        });
    }
    ComparisonMatrix::from_rows(&rows, tol)
}

/// Renders the matrix as CSV. Numbers use the shortest representation
/// that parses back to the same value.
pub fn to_csv<T: Scalar>(m: &ComparisonMatrix<T>) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    rows: Vec<Vec<f64>>,
}

/// Parses the JSON matrix object, validating like [`parse_csv`].
pub fn parse_json<T: Scalar>(text: &str, tol: T) -> Result<ComparisonMatrix<T>> {
    let parsed: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    if parsed.rows.len() != parsed.n {
        return Err(Error::Parse {
            line: 1,
            msg: format!("field n = {} but {} rows given", parsed.n, parsed.rows.len()),
        });
    }
    let rows: Vec<Vec<T>> = parsed
        .rows
        .iter()
        .map(|r| r.iter().map(|&v| T::cast(v)).collect())
        .collect();
    ComparisonMatrix::from_rows(&rows, tol)
}

pub fn to_json<T: Scalar>(m: &ComparisonMatrix<T>) -> String {
    let doc = MatrixJson {
        n: m.order(),
        rows: m
            .rows()
            .map(|r| r.iter().map(|v| v.to_f64_lossy()).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("matrix serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{CornerSpec, DEFAULT_RECIPROCITY_TOL};

    fn tol() -> f64 {
        DEFAULT_RECIPROCITY_TOL
    }

    #[test]
    fn parse_valid_two_by_two() {
        let m: ComparisonMatrix<f64> = parse_csv("1,2\n0.5,1", tol()).unwrap();
        assert_eq!(m.order(), 2);
        assert_eq!(m.get(0, 1), 2.0);
    }

    #[test]
    fn parse_rejects_broken_reciprocity_with_cell_indices() {
        let err = parse_csv::<f64>("1,2\n0.4,1", tol()).unwrap_err();
        match err {
            Error::Invalid(report) => {
                let text = report.to_string();
                assert!(text.contains("(0,1)"), "report should name the cell pair: {text}");
            }
            other => panic!("expected validation error, got {other}"),
        }
    }

    #[test]
    fn parse_rejects_malformed_and_non_square() {
        assert!(matches!(
            parse_csv::<f64>("1,x\n0.5,1", tol()),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_csv::<f64>("1,2,3\n0.5,1", tol()).is_err());
        assert!(parse_csv::<f64>("", tol()).is_err());
    }

    #[test]
    fn parse_accepts_scientific_notation_and_blank_lines() {
        let m: ComparisonMatrix<f64> = parse_csv("1,2e0\n5e-1,1\n", tol()).unwrap();
        assert_eq!(m.get(0, 1), 2.0);
    }

    #[test]
    fn serialize_corner_matrix() {
        let c = ComparisonMatrix::corner(CornerSpec::new(3, 2.0).unwrap());
        assert_eq!(to_csv(&c), "1,1,2\n1,1,1\n0.5,1,1\n");
    }

    #[test]
    fn csv_round_trip_is_identity() {
        let m = ComparisonMatrix::from_upper_triangle(3, &[0.1, 0.15, 0.3]).unwrap();
        let back: ComparisonMatrix<f64> = parse_csv(&to_csv(&m), tol()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_round_trip_is_identity() {
        let m = ComparisonMatrix::from_upper_triangle(4, &[2.0, 3.0, 0.25, 5.0, 1.0, 7.0]).unwrap();
        let back: ComparisonMatrix<f64> = parse_json(&to_json(&m), tol()).unwrap();
        assert_eq!(back, m);

        let doc = to_json(&m);
        assert!(doc.starts_with("{\"n\":4,\"rows\":[["), "schema fixed: {doc}");
    }

    #[test]
    fn json_rejects_inconsistent_order_field() {
        let err = parse_json::<f64>(r#"{"n": 3, "rows": [[1,2],[0.5,1]]}"#, tol()).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }
}
