//! Platt-style score calibration: a logistic map from raw log-odds to
//! probabilities, fit by maximizing the Bernoulli likelihood of held-out
//! labels with the same optimizer used for logistic training.

use serde::{Deserialize, Serialize};

use crate::classify::logistic::{GRADIENT_TOLERANCE, MAX_ITERATIONS};
use crate::classify::optimize::{gradient_descent, log1p_exp, sigmoid};
use crate::error::{Error, Result};

/// Monotone logistic map `p = sigmoid(a * s + b)` over raw scores.
///
/// `a` is kept strictly positive so that calibration preserves score
/// order; when the unconstrained fit lands at `a <= 0` (scores carrying no
/// signal, or anticorrelated with labels), `a` is clamped to a tiny
/// positive value and `clamped` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationMap {
    pub a: f64,
    pub b: f64,
    /// Set when the scores were perfectly separable and a small ridge was
    /// applied to keep the parameters finite.
    pub separable: bool,
    /// Set when `a` was clamped up to the positivity floor.
    pub clamped: bool,
}

const A_FLOOR: f64 = 1e-9;
const SEPARABLE_RIDGE: f64 = 1e-6;

impl CalibrationMap {
    /// Identity-like map, useful as a neutral default.
    pub fn identity() -> Self {
        CalibrationMap {
            a: 1.0,
            b: 0.0,
            separable: false,
            clamped: false,
        }
    }

    pub fn apply(&self, score: f64) -> f64 {
        sigmoid(self.a * score + self.b)
    }
}

/// Fit `(a, b)` on raw scores and binary labels.
///
/// Perfectly separable scores get a `1e-6` ridge on `(a, b)` to keep the
/// parameters finite, and are flagged in the result.
pub fn calibrate(raw_scores: &[f64], labels: &[bool]) -> Result<CalibrationMap> {
    if raw_scores.is_empty() || raw_scores.len() != labels.len() {
        return Err(Error::invalid(
            "scores and labels must be non-empty and equal length",
        ));
    }
    if raw_scores.iter().any(|s| !s.is_finite()) {
        return Err(Error::invalid("scores must be finite"));
    }
    if !labels.contains(&true) || !labels.contains(&false) {
        return Err(Error::invalid("both labels must be present"));
    }

    let max_neg = raw_scores
        .iter()
        .zip(labels)
        .filter(|(_, &y)| !y)
        .map(|(s, _)| *s)
        .fold(f64::NEG_INFINITY, f64::max);
    let min_pos = raw_scores
        .iter()
        .zip(labels)
        .filter(|(_, &y)| y)
        .map(|(s, _)| *s)
        .fold(f64::INFINITY, f64::min);
    let max_pos = raw_scores
        .iter()
        .zip(labels)
        .filter(|(_, &y)| y)
        .map(|(s, _)| *s)
        .fold(f64::NEG_INFINITY, f64::max);
    let min_neg = raw_scores
        .iter()
        .zip(labels)
        .filter(|(_, &y)| !y)
        .map(|(s, _)| *s)
        .fold(f64::INFINITY, f64::min);
    let separable = max_neg < min_pos || max_pos < min_neg;
    let ridge = if separable { SEPARABLE_RIDGE } else { 0.0 };

    let objective = |params: &[f64]| {
        let (a, b) = (params[0], params[1]);
        let mut loss = 0.0;
        let mut ga = 0.0;
        let mut gb = 0.0;
        for (&s, &y) in raw_scores.iter().zip(labels) {
            let z = a * s + b;
            loss += log1p_exp(z) - f64::from(y) * z;
            let residual = sigmoid(z) - f64::from(y);
            ga += residual * s;
            gb += residual;
        }
        loss += 0.5 * ridge * (a * a + b * b);
        ga += ridge * a;
        gb += ridge * b;
        (loss, vec![ga, gb])
    };

    let result = gradient_descent(objective, vec![0.0, 0.0], GRADIENT_TOLERANCE, MAX_ITERATIONS);
    let mut a = result.params[0];
    let b = result.params[1];
    let clamped = a < A_FLOOR;
    if clamped {
        a = A_FLOOR;
    }
    Ok(CalibrationMap {
        a,
        b,
        separable,
        clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn confident_scores_calibrate_to_extremes() {
        let scores = [-10.0, -10.0, -10.0, 10.0, 10.0, 10.0];
        let labels = [false, false, false, true, true, true];
        let map = calibrate(&scores, &labels).unwrap();
        assert!(map.separable);
        assert!(map.apply(10.0) >= 0.99);
        assert!(map.apply(-10.0) <= 0.01);
    }

    #[test]
    fn null_data_fits_the_base_rate() {
        // Labels independent of scores, base rate 0.25.
        let mut scores = Vec::new();
        let mut labels = Vec::new();
        for i in 0..200 {
            scores.push((i % 7) as f64 - 3.0);
            labels.push(i % 4 == 0);
        }
        let map = calibrate(&scores, &labels).unwrap();
        assert!(map.a.abs() < 0.1, "a should be near zero, got {}", map.a);
        let p = map.apply(0.0);
        assert!((p - 0.25).abs() < 0.05, "expected near base rate, got {p}");
    }

    #[test]
    fn calibration_preserves_score_order() {
        let scores = [-3.0, -1.0, 0.5, 2.0, 4.0];
        let labels = [false, false, true, false, true];
        let map = calibrate(&scores, &labels).unwrap();
        assert!(map.a > 0.0);
        for pair in scores.windows(2) {
            assert!(map.apply(pair[0]) < map.apply(pair[1]));
        }
    }

    #[test]
    fn anticorrelated_scores_clamp_a() {
        let scores = [5.0, 4.0, 3.0, -3.0, -4.0, -5.0];
        let labels = [false, false, false, true, true, true];
        let map = calibrate(&scores, &labels).unwrap();
        assert!(map.clamped);
        assert!(map.a > 0.0);
    }

    #[test]
    fn degenerate_inputs_error() {
        assert!(calibrate(&[], &[]).is_err());
        assert!(calibrate(&[1.0, 2.0], &[true, true]).is_err());
        assert!(calibrate(&[f64::NAN, 2.0], &[true, false]).is_err());
    }
}
