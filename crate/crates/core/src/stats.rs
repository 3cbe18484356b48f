//! Rank and correlation statistics: Wilcoxon rank-sum (Mann-Whitney U)
//! with the tie-corrected normal approximation, and Pearson correlation.

use crate::error::{Error, Result};

/// Which group ranks higher, judged by the sign of `u - nA*nB/2`.
/// An exact tie reports `AHigher`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    AHigher,
    BHigher,
}

/// Result of a two-sample Wilcoxon rank-sum test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankSumResult {
    /// U statistic of group A: rank-sum of A minus nA(nA+1)/2.
    pub u_statistic: f64,
    /// Normal approximation with mid-rank tie correction and a 0.5
    /// continuity correction toward the mean.
    pub z_score: f64,
    pub direction: Direction,
    /// Set when the pooled sample has zero rank variance (all values
    /// identical); z is 0 in that case rather than an error.
    pub degenerate: bool,
}

/// Wilcoxon rank-sum over two samples of per-document values.
///
/// Ranks are assigned over the pooled sample with mid-ranks for ties.
pub fn wilcoxon_rank_sum(freqs_a: &[f64], freqs_b: &[f64]) -> Result<RankSumResult> {
    if freqs_a.is_empty() || freqs_b.is_empty() {
        return Err(Error::invalid("rank-sum samples must be non-empty"));
    }
    if freqs_a.iter().chain(freqs_b).any(|v| !v.is_finite()) {
        return Err(Error::invalid("rank-sum samples must be finite"));
    }
    let na = freqs_a.len() as f64;
    let nb = freqs_b.len() as f64;
    let n = na + nb;

    let mut pooled: Vec<(f64, bool)> = freqs_a
        .iter()
        .map(|&v| (v, true))
        .chain(freqs_b.iter().map(|&v| (v, false)))
        .collect();
    pooled.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite values"));

    // Mid-ranks per tie group, accumulating the tie-correction term.
    let mut rank_sum_a = 0.0f64;
    let mut tie_term = 0.0f64;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i + 1;
        while j < pooled.len() && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        let t = (j - i) as f64;
        let mid_rank = (i + 1 + j) as f64 / 2.0;
        for item in &pooled[i..j] {
            if item.1 {
                rank_sum_a += mid_rank;
            }
        }
        tie_term += t * t * t - t;
        i = j;
    }

    let u = rank_sum_a - na * (na + 1.0) / 2.0;
    let mean = na * nb / 2.0;
    let variance = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    let direction = if u >= mean {
        Direction::AHigher
    } else {
        Direction::BHigher
    };
    if variance <= 0.0 {
        return Ok(RankSumResult {
            u_statistic: u,
            z_score: 0.0,
            direction,
            degenerate: true,
        });
    }
    let sd = variance.sqrt();
    let z_score = if u > mean {
        (u - mean - 0.5) / sd
    } else if u < mean {
        (u - mean + 0.5) / sd
    } else {
        0.0
    };
    Ok(RankSumResult {
        u_statistic: u,
        z_score,
        direction,
        degenerate: false,
    })
}

/// Standard Pearson correlation coefficient.
pub fn pearson_correlation(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    if x.len() < 3 {
        return Err(Error::invalid("need at least 3 paired observations"));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::invalid("correlation inputs must be finite"));
    }
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mean_x;
        let dy = yi - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(Error::ConstantInput);
    }
    Ok((cov / (var_x * var_y).sqrt()).clamp(-1.0, 1.0))
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complete_separation_gives_zero_u() {
        let r = wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(r.u_statistic, 0.0);
        assert_eq!(r.direction, Direction::BHigher);
        assert!(!r.degenerate);
        assert!(r.z_score < 0.0);
    }

    #[test]
    fn all_identical_values_are_degenerate() {
        let r = wilcoxon_rank_sum(&[5.0, 5.0], &[5.0, 5.0]).unwrap();
        assert_eq!(r.u_statistic, 2.0);
        assert_eq!(r.z_score, 0.0);
        assert!(r.degenerate);
    }

    #[test]
    fn matches_brute_force_oracle_on_small_sample() {
        let a = [0.1, 0.4, 0.2];
        let b = [0.3, 0.5];
        let r = wilcoxon_rank_sum(&a, &b).unwrap();
        assert_eq!(r.u_statistic, oracle::pair_count_u(&a, &b));
        assert!((r.z_score - oracle::tie_corrected_z(&a, &b)).abs() < 1e-12);
        // Hand-checked: ranks 1..5, R_A = 1 + 4 + 2 = 7, U = 7 - 6 = 1.
        assert_eq!(r.u_statistic, 1.0);
    }

    #[test]
    fn empty_sample_is_an_error() {
        assert!(wilcoxon_rank_sum(&[], &[1.0]).is_err());
        assert!(wilcoxon_rank_sum(&[1.0], &[]).is_err());
    }

    #[test]
    fn pearson_identity_and_reflection() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson_correlation(&x, &x).unwrap() - 1.0).abs() < 1e-12);
        assert!((pearson_correlation(&x, &neg).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn pearson_hand_computed_example() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [2.0, 1.0, 4.0, 3.0];
        assert!((pearson_correlation(&x, &y).unwrap() - 0.6).abs() < 1e-12);
    }

    #[test]
    fn pearson_constant_input_errors() {
        let err = pearson_correlation(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).unwrap_err();
        assert_eq!(err.to_string(), "constant input");
    }

    #[test]
    fn pearson_rejects_short_inputs() {
        assert!(pearson_correlation(&[1.0, 2.0], &[2.0, 1.0]).is_err());
    }

    fn small_samples() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        let val = prop_oneof![Just(0.0), Just(0.1), Just(0.2), Just(0.3), Just(0.5)];
        (
            proptest::collection::vec(val.clone(), 1..9),
            proptest::collection::vec(val, 1..9),
        )
    }

    proptest! {
        #[test]
        fn u_complement_identity((a, b) in small_samples()) {
            let ab = wilcoxon_rank_sum(&a, &b).unwrap();
            let ba = wilcoxon_rank_sum(&b, &a).unwrap();
            let product = (a.len() * b.len()) as f64;
            prop_assert_eq!(ab.u_statistic + ba.u_statistic, product);
        }

        #[test]
        fn invariant_under_monotone_transform((a, b) in small_samples()) {
            // exp is strictly monotone, so ranks are unchanged.
            let ta: Vec<f64> = a.iter().map(|v| v.exp()).collect();
            let tb: Vec<f64> = b.iter().map(|v| v.exp()).collect();
            let plain = wilcoxon_rank_sum(&a, &b).unwrap();
            let transformed = wilcoxon_rank_sum(&ta, &tb).unwrap();
            prop_assert_eq!(plain.u_statistic, transformed.u_statistic);
            prop_assert_eq!(plain.z_score, transformed.z_score);
        }

        #[test]
        fn matches_oracle_everywhere((a, b) in small_samples()) {
            let r = wilcoxon_rank_sum(&a, &b).unwrap();
            prop_assert_eq!(r.u_statistic, oracle::pair_count_u(&a, &b));
            prop_assert!((r.z_score - oracle::tie_corrected_z(&a, &b)).abs() < 1e-9);
        }

        #[test]
        fn pearson_affine_invariance(
            x in proptest::collection::vec(-5.0f64..5.0, 3..12),
            y_seed in proptest::collection::vec(-5.0f64..5.0, 3..12),
            a in 0.1f64..4.0,
            b in -2.0f64..2.0,
        ) {
            let n = x.len().min(y_seed.len());
            let x = &x[..n];
            let y = &y_seed[..n];
            let scaled: Vec<f64> = x.iter().map(|v| a * v + b).collect();
            let negated: Vec<f64> = x.iter().map(|v| -a * v + b).collect();
            if let Ok(r) = pearson_correlation(x, y) {
                let rs = pearson_correlation(&scaled, y).unwrap();
                let rn = pearson_correlation(&negated, y).unwrap();
                prop_assert!((rs - r).abs() < 1e-9);
                prop_assert!((rn + r).abs() < 1e-9);
            }
        }
    }
}
