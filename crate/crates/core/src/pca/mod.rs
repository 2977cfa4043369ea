//! Principal component analysis for small dense matrices and the two
//! selection procedures built on it.
//!
//! The covariance uses the population divisor `1/n`, and columns are only
//! centred unless standardisation is requested.

mod eigen;
mod matrix;
mod selection;

use serde::Serialize;

pub use eigen::{canonicalize_sign, eigen_symmetric, EigenDecomposition, MAX_SWEEPS};
pub use matrix::Matrix;
pub use selection::{
    all_negative_candidates, components_for_target, less_responsive_class,
    most_significant_measure, strongest_loading, Candidate, Selection, SelectionMode,
    SelectionOptions, SelectionReport,
};

use crate::error::{Error, Result};

pub fn column_means(x: &Matrix) -> Result<Vec<f64>> {
    if x.is_empty() {
        return Err(Error::Dimension("column means of an empty matrix".into()));
    }
    let n = x.rows() as f64;
    Ok((0..x.cols())
        .map(|j| x.column(j).iter().sum::<f64>() / n)
        .collect())
}

/// Subtracts each column's mean.
pub fn center(x: &Matrix) -> Result<Matrix> {
    let means = column_means(x)?;
    let mut c = x.clone();
    for i in 0..x.rows() {
        for (j, mu) in means.iter().enumerate() {
            c.set(i, j, x.get(i, j) - mu);
        }
    }
    Ok(c)
}

/// `(1/n) Xcᵀ Xc` for a centred `n x m` matrix.
pub fn covariance(xc: &Matrix) -> Result<Matrix> {
    let (n, m) = (xc.rows(), xc.cols());
    if n == 0 || m == 0 {
        return Err(Error::Dimension("covariance of an empty matrix".into()));
    }
    let mut r = Matrix::zeros(m, m);
    for a in 0..m {
        for b in a..m {
            let s: f64 = (0..n).map(|i| xc.get(i, a) * xc.get(i, b)).sum::<f64>() / n as f64;
            r.set(a, b, s);
            r.set(b, a, s);
        }
    }
    Ok(r)
}

/// Relative size below which a negative eigenvalue is treated as round-off.
const NEGATIVE_EIGEN_TOL: f64 = 1e-9;

fn clamp_eigenvalues(values: &[f64]) -> Result<Vec<f64>> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let top = sorted.first().copied().unwrap_or(0.0).max(0.0);
    sorted
        .into_iter()
        .map(|l| {
            if l >= 0.0 {
                Ok(l)
            } else if l >= -NEGATIVE_EIGEN_TOL * top.max(f64::MIN_POSITIVE) || l == 0.0 {
                Ok(0.0)
            } else {
                Err(Error::Numeric(format!(
                    "eigenvalue {l} is too negative for a covariance matrix"
                )))
            }
        })
        .collect()
}

/// Fraction of total variance captured by the `d` largest eigenvalues.
/// The input is sorted internally; round-off negatives are clamped to zero.
pub fn retained_variance(eigenvalues: &[f64], d: usize) -> Result<f64> {
    let m = eigenvalues.len();
    if d == 0 || d > m {
        return Err(Error::Dimension(format!(
            "component count {d} outside 1..={m}"
        )));
    }
    let vals = clamp_eigenvalues(eigenvalues)?;
    let total: f64 = vals.iter().sum();
    if total <= 0.0 {
        return Err(Error::Degenerate("total variance is zero".into()));
    }
    Ok(vals[..d].iter().sum::<f64>() / total)
}

/// Cumulative retained variance for every `d`; all zeros when the total is zero.
pub fn retained_variance_curve(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    let vals = clamp_eigenvalues(eigenvalues)?;
    let total: f64 = vals.iter().sum();
    if total <= 0.0 {
        return Ok(vec![0.0; vals.len()]);
    }
    let mut acc = 0.0;
    let mut curve: Vec<f64> = vals
        .iter()
        .map(|l| {
            acc += l;
            (acc / total).min(1.0)
        })
        .collect();
    if let Some(last) = curve.last_mut() {
        *last = 1.0;
    }
    Ok(curve)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PcaOptions {
    /// Scale centred columns to unit (population) variance.
    pub standardize: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PcaResult {
    pub labels: Vec<String>,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    pub column_means: Vec<f64>,
    pub retained_variance: Vec<f64>,
    pub standardized: bool,
    pub rows: usize,
}

impl PcaResult {
    pub fn total_variance(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

/// Centre, form the covariance, decompose, and tabulate retained variance.
pub fn pca(x: &Matrix, labels: &[String], opts: PcaOptions) -> Result<PcaResult> {
    if x.rows() < 2 {
        return Err(Error::InsufficientData(format!(
            "PCA needs at least 2 rows, got {}",
            x.rows()
        )));
    }
    if x.cols() == 0 {
        return Err(Error::Dimension("PCA needs at least one column".into()));
    }
    if labels.len() != x.cols() {
        return Err(Error::Dimension(format!(
            "{} labels for {} columns",
            labels.len(),
            x.cols()
        )));
    }
    let means = column_means(x)?;
    let mut xc = center(x)?;
    if opts.standardize {
        let n = x.rows() as f64;
        for j in 0..xc.cols() {
            let sd = (xc.column(j).iter().map(|v| v * v).sum::<f64>() / n).sqrt();
            if sd > 0.0 {
                for i in 0..xc.rows() {
                    xc.set(i, j, xc.get(i, j) / sd);
                }
            }
        }
    }
    let r = covariance(&xc)?;
    let eig = eigen_symmetric(&r)?;
    let eigenvalues = clamp_eigenvalues(&eig.values)?;
    let retained = retained_variance_curve(&eigenvalues)?;
    Ok(PcaResult {
        labels: labels.to_vec(),
        eigenvalues,
        eigenvectors: eig.vectors,
        column_means: means,
        retained_variance: retained,
        standardized: opts.standardize,
        rows: x.rows(),
    })
}
