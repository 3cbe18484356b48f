//! Multinomial naive Bayes over word counts with Laplace smoothing.
//!
//! The event model is multinomial, not Bernoulli: volume- and page-length
//! documents are distinguished by details of word frequency rather than
//! mere presence or absence.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayesModel {
    /// Class ids in lexicographic order.
    pub classes: Vec<String>,
    /// Log prior per class; exp sums to 1.
    pub log_priors: Vec<f64>,
    /// Log likelihood per class and feature; each class row's exp sums to 1.
    pub log_likelihoods: Vec<Vec<f64>>,
    /// Laplace smoothing strength.
    pub alpha: f64,
    pub feature_names: Vec<String>,
}

/// Train a multinomial NB model from (count vector, class) examples.
///
/// `log_likelihood(c, f) = log((count(f in c) + alpha) / (total count in c + alpha * F))`,
/// with priors from class frequencies.
pub fn train_naive_bayes(
    examples: &[(Vec<f64>, String)],
    feature_names: Vec<String>,
    alpha: f64,
) -> Result<NaiveBayesModel> {
    if examples.is_empty() {
        return Err(Error::invalid("no training examples"));
    }
    if !(alpha > 0.0) {
        return Err(Error::invalid("alpha must be positive"));
    }
    let d = feature_names.len();
    let mut classes: Vec<String> = examples.iter().map(|(_, c)| c.clone()).collect();
    classes.sort_unstable();
    classes.dedup();
    if classes.len() < 2 {
        return Err(Error::invalid("training data contains a single class"));
    }
    for (counts, _) in examples {
        if counts.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: counts.len(),
            });
        }
        if counts.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::invalid("counts must be finite and non-negative"));
        }
    }

    let class_index = |c: &str| classes.iter().position(|x| x == c).expect("known class");
    let mut feature_totals = vec![vec![0.0f64; d]; classes.len()];
    let mut class_counts = vec![0usize; classes.len()];
    for (counts, class) in examples {
        let ci = class_index(class);
        class_counts[ci] += 1;
        for (acc, c) in feature_totals[ci].iter_mut().zip(counts) {
            *acc += c;
        }
    }

    let n = examples.len() as f64;
    let log_priors = class_counts
        .iter()
        .map(|&c| (c as f64 / n).ln())
        .collect();
    let log_likelihoods = feature_totals
        .iter()
        .map(|totals| {
            let class_total: f64 = totals.iter().sum();
            let denom = class_total + alpha * d as f64;
            totals.iter().map(|t| ((t + alpha) / denom).ln()).collect()
        })
        .collect();

    Ok(NaiveBayesModel {
        classes,
        log_priors,
        log_likelihoods,
        alpha,
        feature_names,
    })
}

impl NaiveBayesModel {
    pub fn class_index(&self, class: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }

    /// Unnormalized log joint per class: log prior + sum count * log lik.
    pub fn log_joint(&self, counts: &[f64]) -> Result<Vec<f64>> {
        if counts.len() != self.feature_names.len() {
            return Err(Error::DimensionMismatch {
                expected: self.feature_names.len(),
                got: counts.len(),
            });
        }
        Ok(self
            .log_priors
            .iter()
            .zip(&self.log_likelihoods)
            .map(|(prior, liks)| {
                prior + liks.iter().zip(counts).map(|(l, c)| l * c).sum::<f64>()
            })
            .collect())
    }

    /// Normalized posterior probabilities via log-sum-exp.
    pub fn posteriors(&self, counts: &[f64]) -> Result<Vec<f64>> {
        let joint = self.log_joint(counts)?;
        let max = joint.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = joint.iter().map(|j| (j - max).exp()).sum();
        Ok(joint.iter().map(|j| (j - max).exp() / sum).collect())
    }

    /// Predicted class: argmax posterior, lexicographic tie-break (classes
    /// are stored sorted, so the first maximum wins).
    pub fn predict(&self, counts: &[f64]) -> Result<&str> {
        let joint = self.log_joint(counts)?;
        let mut best = 0;
        for (i, j) in joint.iter().enumerate().skip(1) {
            if *j > joint[best] {
                best = i;
            }
        }
        Ok(&self.classes[best])
    }

    /// Raw log-odds of `positive_class` against the rest; for binary
    /// models this is the usual two-class log-odds.
    pub fn log_odds(&self, counts: &[f64], positive_class: &str) -> Result<f64> {
        let pi = self
            .class_index(positive_class)
            .ok_or_else(|| Error::MissingGenre(positive_class.to_string()))?;
        let joint = self.log_joint(counts)?;
        let max = joint
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pi)
            .map(|(_, j)| *j)
            .fold(f64::NEG_INFINITY, f64::max);
        let rest: f64 = joint
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pi)
            .map(|(_, j)| (j - max).exp())
            .sum();
        Ok(joint[pi] - (max + rest.ln()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(d: usize) -> Vec<String> {
        (0..d).map(|i| format!("w{i}")).collect()
    }

    #[test]
    fn identical_profiles_reduce_to_priors() {
        // Same per-class count profile (totals [2, 1] each side), so the
        // smoothed likelihoods coincide and only the priors remain.
        let examples = vec![
            (vec![2.0, 1.0], "a".to_string()),
            (vec![1.0, 0.5], "b".to_string()),
            (vec![1.0, 0.5], "b".to_string()),
        ];
        let model = train_naive_bayes(&examples, names(2), 1.0).unwrap();
        let posteriors = model.posteriors(&[5.0, 3.0]).unwrap();
        assert!((posteriors[0] - 1.0 / 3.0).abs() < 1e-12);
        assert!((posteriors[1] - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn unseen_feature_keeps_finite_likelihood() {
        let examples = vec![
            (vec![3.0, 0.0], "a".to_string()),
            (vec![0.0, 3.0], "b".to_string()),
        ];
        let model = train_naive_bayes(&examples, names(2), 1.0).unwrap();
        for row in &model.log_likelihoods {
            assert!(row.iter().all(|l| l.is_finite()));
        }
    }

    /// Direct Bayes-rule oracle on a 3-feature toy problem.
    #[test]
    fn matches_bayes_rule_oracle() {
        let examples = vec![
            (vec![4.0, 1.0, 0.0], "a".to_string()),
            (vec![3.0, 2.0, 1.0], "a".to_string()),
            (vec![0.0, 2.0, 5.0], "b".to_string()),
        ];
        let alpha = 0.5;
        let model = train_naive_bayes(&examples, names(3), alpha).unwrap();

        // Oracle: recompute theta and the posterior from first principles.
        let theta = |totals: [f64; 3]| -> [f64; 3] {
            let sum: f64 = totals.iter().sum();
            [
                (totals[0] + alpha) / (sum + alpha * 3.0),
                (totals[1] + alpha) / (sum + alpha * 3.0),
                (totals[2] + alpha) / (sum + alpha * 3.0),
            ]
        };
        let theta_a = theta([7.0, 3.0, 1.0]);
        let theta_b = theta([0.0, 2.0, 5.0]);
        let x = [2.0, 1.0, 3.0];
        let joint = |prior: f64, th: [f64; 3]| -> f64 {
            prior * th[0].powf(x[0]) * th[1].powf(x[1]) * th[2].powf(x[2])
        };
        let ja = joint(2.0 / 3.0, theta_a);
        let jb = joint(1.0 / 3.0, theta_b);
        let expected = [ja / (ja + jb), jb / (ja + jb)];

        let got = model.posteriors(&x).unwrap();
        assert!((got[0] - expected[0]).abs() < 1e-12);
        assert!((got[1] - expected[1]).abs() < 1e-12);
    }

    #[test]
    fn invariants_hold() {
        let examples = vec![
            (vec![4.0, 1.0], "a".to_string()),
            (vec![1.0, 4.0], "b".to_string()),
            (vec![2.0, 2.0], "b".to_string()),
        ];
        let model = train_naive_bayes(&examples, names(2), 1.0).unwrap();
        let prior_sum: f64 = model.log_priors.iter().map(|p| p.exp()).sum();
        assert!((prior_sum - 1.0).abs() < 1e-12);
        for row in &model.log_likelihoods {
            let s: f64 = row.iter().map(|l| l.exp()).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn count_scaling_leaves_argmax_unchanged() {
        let examples = vec![
            (vec![5.0, 1.0, 1.0], "a".to_string()),
            (vec![1.0, 5.0, 1.0], "b".to_string()),
            (vec![1.0, 1.0, 5.0], "c".to_string()),
        ];
        let model = train_naive_bayes(&examples, names(3), 1.0).unwrap();
        for x in [[3.0, 1.0, 0.0], [0.0, 2.0, 1.0], [1.0, 1.0, 4.0]] {
            let base = model.predict(&x).unwrap().to_string();
            for scale in [2.0, 5.0, 17.0] {
                let scaled: Vec<f64> = x.iter().map(|c| c * scale).collect();
                assert_eq!(model.predict(&scaled).unwrap(), base);
            }
        }
    }

    #[test]
    fn single_class_is_rejected() {
        let examples = vec![(vec![1.0], "a".to_string()), (vec![2.0], "a".to_string())];
        assert!(train_naive_bayes(&examples, names(1), 1.0).is_err());
    }

    #[test]
    fn binary_log_odds_matches_posteriors() {
        let examples = vec![
            (vec![4.0, 0.0], "neg".to_string()),
            (vec![0.0, 4.0], "pos".to_string()),
        ];
        let model = train_naive_bayes(&examples, names(2), 1.0).unwrap();
        let x = [1.0, 3.0];
        let posteriors = model.posteriors(&x).unwrap();
        let pi = model.class_index("pos").unwrap();
        let odds = (posteriors[pi] / (1.0 - posteriors[pi])).ln();
        assert!((model.log_odds(&x, "pos").unwrap() - odds).abs() < 1e-9);
    }
}
