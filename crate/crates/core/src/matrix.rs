//! Reciprocal pairwise-comparison matrices.
//!
//! A comparison matrix is a square positive matrix with unit diagonal in
//! which `a[j][i] == 1 / a[i][j]`. Constructors never accept both sides of
//! a reciprocal pair independently: the lower triangle is always derived
//! from the upper one, so matrices are exactly reciprocal as stored.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{positive_finite, Scalar};

/// Relative tolerance on `a_ij * a_ji - 1` when validating external data.
pub const DEFAULT_RECIPROCITY_TOL: f64 = 1e-6;

/// Tolerance on `|triad ratio - 1|` below which a matrix counts as
/// consistent. Near machine precision so that constructed-consistent
/// matrices are separated from perturbed ones.
pub const DEFAULT_CONSISTENCY_TOL: f64 = 1e-9;

/// Square positive reciprocal matrix of preference ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonMatrix<T> {
    n: usize,
    entries: Vec<T>, // row-major, len n*n
}

/// Ordered index triple `i < j < k` with its consistency ratio
/// `a_ik / (a_ij * a_jk)`. The ratio is 1 exactly when the triple is
/// transitive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triad<T> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub ratio: T,
}

/// Parameters of a corner matrix: all entries 1 except `a[0][n-1] = x`
/// and `a[n-1][0] = 1/x`. Consistent if and only if `x = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerSpec<T> {
    pub n: usize,
    pub x: T,
}

impl<T: Scalar> CornerSpec<T> {
    pub fn new(n: usize, x: T) -> Result<Self> {
        if n < 3 {
            return Err(Error::OrderTooSmall {
                n,
                min: 3,
                context: "corner matrix",
            });
        }
        if !positive_finite(x) {
            return Err(Error::NonPositiveEntry {
                row: 0,
                col: n - 1,
                value: x.to_f64_lossy(),
            });
        }
        Ok(Self { n, x })
    }
}

/// One structural defect found while validating raw matrix data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Violation {
    NotSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },
    NonPositive {
        row: usize,
        col: usize,
        value: f64,
    },
    DiagonalNotOne {
        index: usize,
        value: f64,
    },
    NotReciprocal {
        row: usize,
        col: usize,
        product: f64,
    },
    OrderTooSmall {
        n: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare { rows, row, cols } => {
                write!(f, "row {row} has {cols} entries, expected {rows}")
            }
            Violation::NonPositive { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is not a positive finite number")
            }
            Violation::DiagonalNotOne { index, value } => {
                write!(f, "diagonal entry ({index},{index}) = {value}, expected 1")
            }
            Violation::NotReciprocal { row, col, product } => {
                write!(
                    f,
                    "entries ({row},{col}) and ({col},{row}) are not reciprocal: product = {product}"
                )
            }
            Violation::OrderTooSmall { n } => {
                write!(f, "matrix order {n} is below the minimum of 2")
            }
        }
    }
}

/// Outcome of validating raw rows against the reciprocal-matrix invariants.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (idx, v) in self.violations.iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            write!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Checks raw row data for squareness, positivity, unit diagonal, and
/// reciprocity within `tol`. Indices in the report are zero-based.
pub fn validate<T: Scalar>(rows: &[Vec<T>], tol: T) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = rows.len();
    if n < 2 {
        report.violations.push(Violation::OrderTooSmall { n });
        return report;
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            report.violations.push(Violation::NotSquare {
                rows: n,
                row: i,
                cols: row.len(),
            });
        }
    }
    if !report.is_ok() {
        return report;
    }
    let one = T::one();
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if !positive_finite(v) {
                report.violations.push(Violation::NonPositive {
                    row: i,
                    col: j,
                    value: v.to_f64_lossy(),
                });
            }
        }
        if (row[i] - one).abs() > tol {
            report.violations.push(Violation::DiagonalNotOne {
                index: i,
                value: row[i].to_f64_lossy(),
            });
        }
    }
    if !report.is_ok() {
        return report;
    }
    for (i, row) in rows.iter().enumerate() {
        for j in (i + 1)..n {
            let product = row[j] * rows[j][i];
            if (product - one).abs() > tol {
                report.violations.push(Violation::NotReciprocal {
                    row: i,
                    col: j,
                    product: product.to_f64_lossy(),
                });
            }
        }
    }
    report
}

impl<T: Scalar> ComparisonMatrix<T> {
    /// Builds a matrix of order `n` from the `n(n-1)/2` upper-triangle
    /// entries listed row by row. The diagonal is set to 1 and the lower
    /// triangle to the exact reciprocals.
    pub fn from_upper_triangle(n: usize, upper: &[T]) -> Result<Self> {
        if n < 2 {
            return Err(Error::OrderTooSmall {
                n,
                min: 2,
                context: "comparison matrix",
            });
        }
        let expected = n * (n - 1) / 2;
        if upper.len() != expected {
            return Err(Error::WrongEntryCount {
                n,
                expected,
                got: upper.len(),
            });
        }
        let mut entries = vec![T::one(); n * n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = *it.next().expect("length checked");
                if !positive_finite(v) {
                    return Err(Error::NonPositiveEntry {
                        row: i,
                        col: j,
                        value: v.to_f64_lossy(),
                    });
                }
                entries[i * n + j] = v;
                entries[j * n + i] = T::one() / v;
            }
        }
        Ok(Self { n, entries })
    }

    /// Builds the consistent matrix `a_ij = w_i / w_j` from positive weights.
    pub fn from_weights(weights: &[T]) -> Result<Self> {
        let n = weights.len();
        if n < 2 {
            return Err(Error::OrderTooSmall {
                n,
                min: 2,
                context: "comparison matrix",
            });
        }
        for (index, &w) in weights.iter().enumerate() {
            if !positive_finite(w) {
                return Err(Error::NonPositiveWeight {
                    index,
                    value: w.to_f64_lossy(),
                });
            }
        }
        let mut upper = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                upper.push(weights[i] / weights[j]);
            }
        }
        Self::from_upper_triangle(n, &upper)
    }

    /// Builds the corner matrix described by `spec`.
    pub fn corner(spec: CornerSpec<T>) -> Self {
        let CornerSpec { n, x } = spec;
        let mut entries = vec![T::one(); n * n];
        entries[n - 1] = x; // (0, n-1)
        entries[(n - 1) * n] = T::one() / x; // (n-1, 0)
        Self { n, entries }
    }

    /// Validating constructor for externally supplied full rows.
    ///
    /// Reciprocity and diagonal must hold within `tol`; the stored matrix
    /// keeps the upper triangle as given and rebuilds the diagonal and
    /// lower triangle so the invariants hold exactly.
    pub fn from_rows(rows: &[Vec<T>], tol: T) -> Result<Self> {
        let report = validate(rows, tol);
        if !report.is_ok() {
            return Err(Error::Invalid(report));
        }
        let n = rows.len();
        let mut upper = Vec::with_capacity(n * (n - 1) / 2);
        for (i, row) in rows.iter().enumerate() {
            upper.extend_from_slice(&row[i + 1..]);
        }
        Self::from_upper_triangle(n, &upper)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry at zero-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// Upper-triangle entries in row-major order, as accepted by
    /// [`ComparisonMatrix::from_upper_triangle`].
    pub fn upper_triangle(&self) -> Vec<T> {
        let mut upper = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                upper.push(self.get(i, j));
            }
        }
        upper
    }

    /// Always-ok report for an already constructed matrix; provided so the
    /// same check used on raw data can be run against internal values.
    pub fn validate(&self, tol: T) -> ValidationReport {
        validate(&self.to_rows(), tol)
    }

    /// True when every triad ratio lies within `tol` of 1. Matrices of
    /// order 2 have no triads and are always consistent.
    pub fn is_consistent(&self, tol: T) -> bool {
        let one = T::one();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                for k in (j + 1)..self.n {
                    let ratio = self.get(i, k) / (self.get(i, j) * self.get(j, k));
                    if (ratio - one).abs() > tol {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All ordered triples `i < j < k` with their consistency ratios;
    /// `n(n-1)(n-2)/6` of them.
    pub fn triads(&self) -> Result<Vec<Triad<T>>> {
        if self.n < 3 {
            return Err(Error::OrderTooSmall {
                n: self.n,
                min: 3,
                context: "triads",
            });
        }
        let mut out = Vec::with_capacity(self.n * (self.n - 1) * (self.n - 2) / 6);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                for k in (j + 1)..self.n {
                    out.push(Triad {
                        i,
                        j,
                        k,
                        ratio: self.get(i, k) / (self.get(i, j) * self.get(j, k)),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Reorders alternatives: entry `(i, j)` of the result is
    /// `a[sigma[i]][sigma[j]]`.
    pub fn permute(&self, sigma: &[usize]) -> Result<Self> {
        let n = self.n;
        if sigma.len() != n {
            return Err(Error::NotAPermutation {
                n,
                detail: format!("length {} != {}", sigma.len(), n),
            });
        }
        let mut seen = vec![false; n];
        for &s in sigma {
            if s >= n || seen[s] {
                return Err(Error::NotAPermutation {
                    n,
                    detail: format!("index {s} out of range or repeated"),
                });
            }
            seen[s] = true;
        }
        let mut entries = vec![T::one(); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.get(sigma[i], sigma[j]);
            }
        }
        Ok(Self { n, entries })
    }

    /// Raises every entry to the power `b > 0`. Reciprocity is preserved
    /// exactly: the lower triangle is rebuilt from the powered upper one.
    pub fn elementwise_power(&self, b: T) -> Result<Self> {
        if !positive_finite(b) {
            return Err(Error::NonPositiveExponent(b.to_f64_lossy()));
        }
        let upper: Vec<T> = self.upper_triangle().iter().map(|&v| v.powf(b)).collect();
        Self::from_upper_triangle(self.n, &upper)
    }

    /// Replaces `a_ij` of a consistent matrix by `a_ij^delta` (and `a_ji`
    /// by its reciprocal), leaving everything else untouched. Requires
    /// `a_ij != 1`, a consistent input, and `delta > 0`.
    pub fn perturb_entry(&self, i: usize, j: usize, delta: T) -> Result<Self> {
        if i == j {
            return Err(Error::DiagonalPerturbation(i));
        }
        if !positive_finite(delta) {
            return Err(Error::NonPositiveExponent(delta.to_f64_lossy()));
        }
        if !self.is_consistent(T::cast(DEFAULT_CONSISTENCY_TOL)) {
            return Err(Error::NotConsistent);
        }
        let a = self.get(i, j);
        if a == T::one() {
            return Err(Error::UnitEntry { row: i, col: j });
        }
        let mut out = self.clone();
        let powered = a.powf(delta);
        out.entries[i * self.n + j] = powered;
        out.entries[j * self.n + i] = T::one() / powered;
        Ok(out)
    }

    /// Multiplies `a_ij` by `1 + eps` (adjusting `a_ji`), for probing how
    /// an index responds to a small change in one comparison.
    pub fn nudge_entry(&self, i: usize, j: usize, eps: T) -> Result<Self> {
        if i == j {
            return Err(Error::DiagonalPerturbation(i));
        }
        let scaled = self.get(i, j) * (T::one() + eps);
        if !positive_finite(scaled) {
            return Err(Error::NonPositiveEntry {
                row: i,
                col: j,
                value: scaled.to_f64_lossy(),
            });
        }
        let mut out = self.clone();
        out.entries[i * self.n + j] = scaled;
        out.entries[j * self.n + i] = T::one() / scaled;
        Ok(out)
    }
}
