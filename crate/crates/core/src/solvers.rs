//! Priority-vector derivation.
//!
//! Two methods: the eigenvalue method (principal eigenpair via power
//! iteration, valid for positive matrices by Perron-Frobenius) and the
//! geometric-mean method (normalized row geometric means, computed in log
//! space so entries like 100 cannot overflow a product).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComparisonMatrix;
use crate::scalar::{positive_finite, Scalar};

pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// Which prioritization method produced a weight vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightMethod {
    #[serde(rename = "EM")]
    Em,
    #[serde(rename = "GM")]
    Gm,
}

impl fmt::Display for WeightMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightMethod::Em => "EM",
            WeightMethod::Gm => "GM",
        })
    }
}

impl FromStr for WeightMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "em" => Ok(WeightMethod::Em),
            "gm" => Ok(WeightMethod::Gm),
            other => Err(format!("unknown weight method '{other}', expected em or gm")),
        }
    }
}

/// Normalized positive weight vector (sums to 1).
#[derive(Debug, Clone, PartialEq)]
pub struct PriorityVector<T> {
    weights: Vec<T>,
    method: WeightMethod,
}

impl<T: Scalar> PriorityVector<T> {
    /// Normalizes `weights` to sum 1. All entries must be positive finite.
    pub fn new(weights: Vec<T>, method: WeightMethod) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::OrderTooSmall {
                n: weights.len(),
                min: 2,
                context: "priority vector",
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
        let total: T = weights.iter().copied().sum();
        let weights = weights.into_iter().map(|w| w / total).collect();
        Ok(Self { weights, method })
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn get(&self, i: usize) -> T {
        self.weights[i]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn method(&self) -> WeightMethod {
        self.method
    }
}

/// Principal eigenpair of a comparison matrix.
#[derive(Debug, Clone)]
pub struct EigenResult<T> {
    pub lambda_max: T,
    pub vector: PriorityVector<T>,
    pub iterations: usize,
    /// `max_i |(A w)_i - lambda_max * w_i|` at the returned vector.
    pub residual: T,
}

fn matvec<T: Scalar>(m: &ComparisonMatrix<T>, v: &[T]) -> Vec<T> {
    m.rows()
        .map(|row| row.iter().zip(v).map(|(&a, &x)| a * x).sum())
        .collect()
}

/// Iterations of plain power iteration before the spectral shift kicks
/// in. Well-conditioned comparison matrices converge long before this.
const SHIFT_AFTER: usize = 200;

/// Power iteration for the largest eigenvalue and its eigenvector.
///
/// Starts from the uniform vector (positive starts converge to the Perron
/// vector for positive matrices), renormalizes to sum 1 each step, and
/// estimates the eigenvalue as the sum of `A v` over the sum of `v`.
/// Converges when successive iterates agree within `tol` in the max norm
/// and the residual satisfies `|A w - lambda w|_inf <= tol * lambda`.
///
/// Strongly inconsistent matrices (extreme corners, cyclic preferences)
/// carry a complex eigenpair whose modulus approaches the principal
/// eigenvalue, which stalls the plain iteration. If no convergence is
/// reached within a few hundred steps, the loop continues on the shifted
/// matrix `A + lambda_est * I`: same eigenvectors, but the rotating pair
/// is damped to roughly half the principal modulus. The eigenvalue
/// estimate and convergence checks are always taken on `A` itself.
pub fn principal_eigen<T: Scalar>(
    m: &ComparisonMatrix<T>,
    tol: T,
    max_iter: usize,
) -> Result<EigenResult<T>> {
    let n = m.order();
    let mut v: Vec<T> = vec![T::one() / T::cast(n as f64); n];
    let mut last_residual = T::infinity();
    let mut lambda_prev = T::zero();

    for iteration in 1..=max_iter {
        let av = matvec(m, &v);
        let lambda: T = av.iter().copied().sum(); // sum(v) == 1 after normalization

        let shift = if iteration > SHIFT_AFTER {
            lambda_prev
        } else {
            T::zero()
        };
        lambda_prev = lambda;
        let total = lambda + shift;
        let next: Vec<T> = av
            .iter()
            .zip(&v)
            .map(|(&a, &x)| (a + shift * x) / total)
            .collect();

        let step = v
            .iter()
            .zip(&next)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max);
        v = next;

        if step <= tol {
            let check = matvec(m, &v);
            let residual = check
                .iter()
                .zip(&v)
                .map(|(&av_i, &w)| (av_i - lambda * w).abs())
                .fold(T::zero(), T::max);
            last_residual = residual;
            if residual <= tol * lambda {
                return Ok(EigenResult {
                    lambda_max: lambda,
                    vector: PriorityVector::new(v, WeightMethod::Em)?,
                    iterations: iteration,
                    residual,
                });
            }
        }
    }

    Err(Error::NonConvergence {
        iterations: max_iter,
        residual: last_residual.to_f64_lossy(),
    })
}

/// Power iteration with the default tolerance and iteration cap.
pub fn principal_eigen_default<T: Scalar>(m: &ComparisonMatrix<T>) -> Result<EigenResult<T>> {
    principal_eigen(m, T::cast(DEFAULT_EIGEN_TOL), DEFAULT_MAX_ITER)
}

/// Geometric-mean weights: `w_i` proportional to the n-th root of the
/// product of row i, normalized to sum 1.
pub fn geometric_mean_weights<T: Scalar>(m: &ComparisonMatrix<T>) -> Result<PriorityVector<T>> {
    let n = T::cast(m.order() as f64);
    let gm: Vec<T> = m
        .rows()
        .map(|row| {
            let log_sum: T = row.iter().map(|&a| a.ln()).sum();
            (log_sum / n).exp()
        })
        .collect();
    PriorityVector::new(gm, WeightMethod::Gm)
}
