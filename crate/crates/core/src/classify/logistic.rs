//! L2-regularized binary logistic regression.
//!
//! Training minimizes the regularized negative log-likelihood
//! `L(w) = -sum[y log p + (1-y) log(1-p)] + (lambda/2) ||w||^2` with the
//! bias unregularized, by deterministic full-batch gradient descent with
//! backtracking line search from zero initialization, to gradient-norm
//! tolerance 1e-6 or 5000 iterations. Features are standardized to zero
//! mean and unit variance over the training set; the standardization is
//! stored in the model, so weights live in standardized space.

use serde::{Deserialize, Serialize};

use crate::classify::optimize::{gradient_descent, log1p_exp, sigmoid};
use crate::error::{Error, Result};

pub const GRADIENT_TOLERANCE: f64 = 1e-6;
pub const MAX_ITERATIONS: usize = 5000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticModel {
    pub feature_names: Vec<String>,
    /// Weights over standardized features.
    pub weights: Vec<f64>,
    pub bias: f64,
    /// L2 strength on the weights (never the bias).
    pub lambda: f64,
    /// Per-feature training means.
    pub means: Vec<f64>,
    /// Per-feature training standard deviations (1.0 for constant features).
    pub scales: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

impl LogisticModel {
    /// Probability of the positive class for a raw (unstandardized) row.
    pub fn predict_proba(&self, features: &[f64]) -> Result<f64> {
        if features.len() != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                got: features.len(),
            });
        }
        let mut z = self.bias;
        for ((x, w), (m, s)) in features
            .iter()
            .zip(&self.weights)
            .zip(self.means.iter().zip(&self.scales))
        {
            z += w * (x - m) / s;
        }
        Ok(sigmoid(z))
    }

    /// L2 norm of the weight vector (bias excluded).
    pub fn weight_norm(&self) -> f64 {
        self.weights.iter().map(|w| w * w).sum::<f64>().sqrt()
    }
}

/// Regularized negative log-likelihood and its gradient. `params` is the
/// weight vector followed by the bias; the bias is not penalized.
pub fn loss_and_gradient(
    rows: &[Vec<f64>],
    labels: &[bool],
    lambda: f64,
    params: &[f64],
) -> (f64, Vec<f64>) {
    let d = params.len() - 1;
    let (weights, bias) = params.split_at(d);
    let bias = bias[0];
    let mut loss = 0.0;
    let mut grad = vec![0.0; params.len()];
    for (row, &label) in rows.iter().zip(labels) {
        let mut z = bias;
        for (x, w) in row.iter().zip(weights) {
            z += x * w;
        }
        let y = f64::from(label);
        // -[y log p + (1-y) log(1-p)] = log(1 + e^z) - y z
        loss += log1p_exp(z) - y * z;
        let residual = sigmoid(z) - y;
        for (g, x) in grad.iter_mut().zip(row) {
            *g += residual * x;
        }
        grad[d] += residual;
    }
    for (g, w) in grad.iter_mut().zip(weights) {
        *g += lambda * w;
    }
    loss += 0.5 * lambda * weights.iter().map(|w| w * w).sum::<f64>();
    (loss, grad)
}

/// Standardization parameters for a training matrix.
pub fn standardize(rows: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n = rows.len() as f64;
    let d = rows.first().map_or(0, Vec::len);
    let mut means = vec![0.0; d];
    for row in rows {
        for (m, x) in means.iter_mut().zip(row) {
            *m += x;
        }
    }
    for m in means.iter_mut() {
        *m /= n;
    }
    let mut scales = vec![0.0; d];
    for row in rows {
        for ((s, x), m) in scales.iter_mut().zip(row).zip(&means) {
            let dx = x - m;
            *s += dx * dx;
        }
    }
    for s in scales.iter_mut() {
        *s = (*s / n).sqrt();
        if *s < 1e-12 {
            *s = 1.0;
        }
    }
    (means, scales)
}

/// Train a binary logistic model on raw feature rows.
pub fn train_logistic(
    rows: &[Vec<f64>],
    labels: &[bool],
    feature_names: Vec<String>,
    lambda: f64,
) -> Result<LogisticModel> {
    if rows.is_empty() || rows.len() != labels.len() {
        return Err(Error::invalid("rows and labels must be non-empty and equal length"));
    }
    if lambda < 0.0 || !lambda.is_finite() {
        return Err(Error::invalid("lambda must be non-negative"));
    }
    let d = feature_names.len();
    for row in rows {
        if row.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: row.len(),
            });
        }
        if row.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("non-finite feature value"));
        }
    }
    if !labels.contains(&true) || !labels.contains(&false) {
        return Err(Error::invalid("training data contains a single class"));
    }

    let (means, scales) = standardize(rows);
    let standardized: Vec<Vec<f64>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .zip(means.iter().zip(&scales))
                .map(|(x, (m, s))| (x - m) / s)
                .collect()
        })
        .collect();

    let result = gradient_descent(
        |params| loss_and_gradient(&standardized, labels, lambda, params),
        vec![0.0; d + 1],
        GRADIENT_TOLERANCE,
        MAX_ITERATIONS,
    );
    let mut params = result.params;
    let bias = params.pop().expect("bias parameter");
    Ok(LogisticModel {
        feature_names,
        weights: params,
        bias,
        lambda,
        means,
        scales,
        converged: result.converged,
        iterations: result.iterations,
    })
}
