//! Hidden Markov model over page genres.
//!
//! The genre of each page depends stochastically on the genre of the page
//! before it. Transitions and the initial distribution are estimated from
//! labeled volumes with additive smoothing; classifier posteriors become
//! emission scores through the scaled-likelihood rule (posterior divided
//! by class prior); Viterbi decoding returns the most likely genre for
//! every page in the sequence.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classify::{classify_page_one_vs_all, GenreClassifierBank};
use crate::corpus::{extract_page_features, Vocabulary, Volume};
use crate::error::{Error, Result};
use crate::taxonomy::GenreTaxonomy;

/// Ratios are floored at this value before renormalization, so a zero
/// posterior can never produce an infinitely negative emission.
pub const EMISSION_FLOOR: f64 = 1e-9;

/// Initial distribution and row-stochastic transition matrix over genre
/// states. All entries are strictly positive after smoothing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HmmModel {
    pub states: Vec<String>,
    pub initial: Vec<f64>,
    pub transitions: Vec<Vec<f64>>,
    #[serde(rename = "kappa")]
    pub smoothing_kappa: f64,
}

impl HmmModel {
    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, state: &str) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.states.len();
        if s == 0 {
            return Err(Error::invalid("model must have at least one state"));
        }
        if self.initial.len() != s || self.transitions.len() != s {
            return Err(Error::DimensionMismatch {
                expected: s,
                got: self.initial.len().min(self.transitions.len()),
            });
        }
        let pi_sum: f64 = self.initial.iter().sum();
        if (pi_sum - 1.0).abs() > 1e-9 || self.initial.iter().any(|p| *p <= 0.0) {
            return Err(Error::invalid("initial distribution must be positive and sum to 1"));
        }
        for (i, row) in self.transitions.iter().enumerate() {
            if row.len() != s {
                return Err(Error::DimensionMismatch {
                    expected: s,
                    got: row.len(),
                });
            }
            let row_sum: f64 = row.iter().sum();
            if (row_sum - 1.0).abs() > 1e-9 || row.iter().any(|p| *p <= 0.0) {
                return Err(Error::invalid(format!(
                    "transition row {i} must be positive and sum to 1"
                )));
            }
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let model: HmmModel = serde_json::from_str(&text)
            .map_err(|e| Error::json(path.display().to_string(), e))?;
        model.validate()?;
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).expect("model serializes");
        fs::write(path, json)?;
        Ok(())
    }

    /// Emission log-scores for one page from classifier posteriors.
    ///
    /// `emission(g) ∝ posterior(g) / prior(g)`, floored at
    /// [`EMISSION_FLOOR`] before normalization across states.
    pub fn emission_log_scores(
        &self,
        posteriors: &BTreeMap<String, f64>,
        class_priors: &BTreeMap<String, f64>,
    ) -> Result<Vec<f64>> {
        let mut ratios = Vec::with_capacity(self.states.len());
        for state in &self.states {
            let posterior = *posteriors
                .get(state)
                .ok_or_else(|| Error::MissingGenre(state.clone()))?;
            let prior = *class_priors
                .get(state)
                .ok_or_else(|| Error::MissingGenre(state.clone()))?;
            if !(prior > 0.0) {
                return Err(Error::invalid(format!("prior for {state} must be positive")));
            }
            ratios.push((posterior / prior).max(EMISSION_FLOOR));
        }
        let total: f64 = ratios.iter().sum();
        Ok(ratios.iter().map(|r| (r / total).ln()).collect())
    }
}

/// Estimate transitions and the initial distribution from gold labels.
///
/// `A[i][j] = (count(i->j) + kappa) / (count(i->.) + kappa * S)`, and the
/// initial distribution from first-page labels with the same smoothing.
/// States are the taxonomy leaves in lexicographic order.
pub fn estimate_transition_matrix(
    labeled: &[Volume],
    taxonomy: &GenreTaxonomy,
    kappa: f64,
) -> Result<HmmModel> {
    if labeled.is_empty() {
        return Err(Error::invalid("no labeled volumes"));
    }
    if !(kappa > 0.0) {
        return Err(Error::invalid("kappa must be positive"));
    }
    let states = taxonomy.leaf_vec();
    let s = states.len();
    let index: BTreeMap<&str, usize> = states
        .iter()
        .enumerate()
        .map(|(i, st)| (st.as_str(), i))
        .collect();

    let mut transition_counts = vec![vec![0u64; s]; s];
    let mut first_counts = vec![0u64; s];
    for volume in labeled {
        let labels = volume.gold_labels.as_ref().ok_or_else(|| {
            Error::invalid(format!("volume {} has no gold labels", volume.volume_id))
        })?;
        let idx = |label: &str| -> Result<usize> {
            index
                .get(label)
                .copied()
                .ok_or_else(|| Error::UnknownGenre(label.to_string()))
        };
        first_counts[idx(&labels[0])?] += 1;
        for pair in labels.windows(2) {
            transition_counts[idx(&pair[0])?][idx(&pair[1])?] += 1;
        }
    }

    let initial = {
        let total = labeled.len() as f64 + kappa * s as f64;
        first_counts
            .iter()
            .map(|&c| (c as f64 + kappa) / total)
            .collect()
    };
    let transitions = transition_counts
        .iter()
        .map(|row| {
            let row_total: u64 = row.iter().sum();
            let denom = row_total as f64 + kappa * s as f64;
            row.iter().map(|&c| (c as f64 + kappa) / denom).collect()
        })
        .collect();

    let model = HmmModel {
        states,
        initial,
        transitions,
        smoothing_kappa: kappa,
    };
    model.validate()?;
    Ok(model)
}

/// Most likely state sequence for one volume.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodedVolume {
    /// Decoded genre per page.
    pub labels: Vec<String>,
    /// Contribution of each page to the path score: log transition into
    /// the decoded state (log initial for the first page) plus emission.
    pub page_log_scores: Vec<f64>,
    /// Total Viterbi log-probability; at most 0 for probability inputs.
    pub log_prob: f64,
}

/// Viterbi decoding in log space.
///
/// Ties break toward the lexicographically smaller state id, both at each
/// backpointer and at the final state.
pub fn viterbi_decode(hmm: &HmmModel, emissions: &[Vec<f64>]) -> Result<DecodedVolume> {
    hmm.validate()?;
    if emissions.is_empty() {
        return Err(Error::invalid("need at least one page of emissions"));
    }
    let s = hmm.n_states();
    for row in emissions {
        if row.len() != s {
            return Err(Error::DimensionMismatch {
                expected: s,
                got: row.len(),
            });
        }
        if row.iter().any(|e| e.is_nan()) {
            return Err(Error::invalid("emission scores must not be NaN"));
        }
    }
    let t_len = emissions.len();
    let log_initial: Vec<f64> = hmm.initial.iter().map(|p| p.ln()).collect();
    let log_trans: Vec<Vec<f64>> = hmm
        .transitions
        .iter()
        .map(|row| row.iter().map(|p| p.ln()).collect())
        .collect();

    // prefers(i, j): state i is a strictly better predecessor than j on a
    // score tie, i.e. lexicographically smaller.
    let prefer = |a: usize, b: usize| hmm.states[a] < hmm.states[b];

    let mut delta: Vec<f64> = (0..s).map(|j| log_initial[j] + emissions[0][j]).collect();
    let mut backpointers: Vec<Vec<usize>> = Vec::with_capacity(t_len);
    for t in 1..t_len {
        let mut next = vec![f64::NEG_INFINITY; s];
        let mut back = vec![0usize; s];
        for j in 0..s {
            let mut best_i = 0usize;
            let mut best = delta[0] + log_trans[0][j];
            for i in 1..s {
                let score = delta[i] + log_trans[i][j];
                if score > best || (score == best && prefer(i, best_i)) {
                    best = score;
                    best_i = i;
                }
            }
            next[j] = best + emissions[t][j];
            back[j] = best_i;
        }
        delta = next;
        backpointers.push(back);
    }

    let mut last = 0usize;
    for j in 1..s {
        if delta[j] > delta[last] || (delta[j] == delta[last] && prefer(j, last)) {
            last = j;
        }
    }
    let mut path = vec![last; t_len];
    for t in (1..t_len).rev() {
        path[t - 1] = backpointers[t - 1][path[t]];
    }

    let mut page_log_scores = Vec::with_capacity(t_len);
    page_log_scores.push(log_initial[path[0]] + emissions[0][path[0]]);
    for t in 1..t_len {
        page_log_scores.push(log_trans[path[t - 1]][path[t]] + emissions[t][path[t]]);
    }
    let log_prob = page_log_scores.iter().sum();
    Ok(DecodedVolume {
        labels: path.into_iter().map(|i| hmm.states[i].clone()).collect(),
        page_log_scores,
        log_prob,
    })
}

/// Per-page raw and smoothed labels for one volume.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothedVolume {
    pub volume_id: String,
    /// One-vs-all labels before smoothing.
    pub raw_labels: Vec<String>,
    /// Viterbi-decoded labels.
    pub smoothed_labels: Vec<String>,
    #[serde(rename = "logprob")]
    pub log_prob: f64,
    #[serde(skip)]
    pub page_log_scores: Vec<f64>,
}

/// Smoothed page-label frequencies over a labeled corpus; used as the
/// class priors in the scaled-likelihood emission rule.
pub fn class_priors_from_volumes(
    volumes: &[Volume],
    taxonomy: &GenreTaxonomy,
    kappa: f64,
) -> Result<BTreeMap<String, f64>> {
    if volumes.is_empty() {
        return Err(Error::invalid("no labeled volumes"));
    }
    if !(kappa > 0.0) {
        return Err(Error::invalid("kappa must be positive"));
    }
    let mut counts: BTreeMap<&str, u64> = taxonomy.leaves().map(|l| (l, 0)).collect();
    let mut total = 0u64;
    for volume in volumes {
        let labels = volume.gold_labels.as_ref().ok_or_else(|| {
            Error::invalid(format!("volume {} has no gold labels", volume.volume_id))
        })?;
        for label in labels {
            let entry = counts
                .get_mut(label.as_str())
                .ok_or_else(|| Error::UnknownGenre(label.clone()))?;
            *entry += 1;
            total += 1;
        }
    }
    let denom = total as f64 + kappa * taxonomy.len() as f64;
    Ok(counts
        .into_iter()
        .map(|(l, c)| (l.to_string(), (c as f64 + kappa) / denom))
        .collect())
}

/// Classify every page, then decode the genre sequence against the
/// transition model. The models must have been trained on a corpus that
/// excludes this volume.
pub fn smooth_volume(
    bank: &GenreClassifierBank,
    hmm: &HmmModel,
    class_priors: &BTreeMap<String, f64>,
    volume: &Volume,
    vocab: &Vocabulary,
) -> Result<SmoothedVolume> {
    let mut raw_labels = Vec::with_capacity(volume.pages.len());
    let mut emissions = Vec::with_capacity(volume.pages.len());
    for page_index in 0..volume.pages.len() {
        let fv = extract_page_features(volume, page_index, vocab)?;
        let decision = classify_page_one_vs_all(bank, &fv)?;
        emissions.push(hmm.emission_log_scores(&decision.posteriors, class_priors)?);
        raw_labels.push(decision.leaf);
    }
    let decoded = viterbi_decode(hmm, &emissions)?;
    Ok(SmoothedVolume {
        volume_id: volume.volume_id.clone(),
        raw_labels,
        smoothed_labels: decoded.labels,
        log_prob: decoded.log_prob,
        page_log_scores: decoded.page_log_scores,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Tokenizer;
    use proptest::prelude::*;

    fn taxonomy3() -> GenreTaxonomy {
        GenreTaxonomy::from_map(
            [("fiction", "fiction"), ("index", "back-matter"), ("poetry", "poetry")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        )
        .unwrap()
    }

    fn labeled_volume(id: &str, labels: &[&str]) -> Volume {
        Volume::new(
            id.to_string(),
            1800,
            labels.iter().map(|_| vec!["text".to_string()]).collect(),
            Some(labels.iter().map(|l| l.to_string()).collect()),
            &Tokenizer::default(),
            &taxonomy3(),
        )
        .unwrap()
    }

    #[test]
    fn hand_counted_estimate_in_the_small_kappa_limit() {
        let volumes = vec![labeled_volume("v", &["fiction", "fiction", "index"])];
        let hmm = estimate_transition_matrix(&volumes, &taxonomy3(), 1e-9).unwrap();
        let f = hmm.state_index("fiction").unwrap();
        let i = hmm.state_index("index").unwrap();
        assert!((hmm.transitions[f][f] - 0.5).abs() < 1e-6);
        assert!((hmm.transitions[f][i] - 0.5).abs() < 1e-6);
        assert!((hmm.initial[f] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn huge_kappa_approaches_uniform_rows() {
        let volumes = vec![labeled_volume("v", &["fiction", "fiction", "fiction"])];
        let hmm = estimate_transition_matrix(&volumes, &taxonomy3(), 1e9).unwrap();
        for row in &hmm.transitions {
            for p in row {
                assert!((p - 1.0 / 3.0).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn rows_are_stochastic_for_any_kappa() {
        for kappa in [0.01, 0.5, 3.0, 100.0] {
            let volumes = vec![
                labeled_volume("a", &["fiction", "index"]),
                labeled_volume("b", &["poetry", "poetry", "fiction"]),
            ];
            let hmm = estimate_transition_matrix(&volumes, &taxonomy3(), kappa).unwrap();
            hmm.validate().unwrap();
        }
    }

    #[test]
    fn unlabeled_volume_is_rejected() {
        let v = Volume::new(
            "v".into(),
            1800,
            vec![vec!["x".into()]],
            None,
            &Tokenizer::default(),
            &taxonomy3(),
        )
        .unwrap();
        assert!(estimate_transition_matrix(&[v], &taxonomy3(), 0.5).is_err());
    }

    fn toy_hmm(states: &[&str], initial: &[f64], transitions: &[&[f64]]) -> HmmModel {
        HmmModel {
            states: states.iter().map(|s| s.to_string()).collect(),
            initial: initial.to_vec(),
            transitions: transitions.iter().map(|r| r.to_vec()).collect(),
            smoothing_kappa: 0.5,
        }
    }

    #[test]
    fn emissions_with_uniform_priors_renormalize_posteriors() {
        let hmm = toy_hmm(
            &["a", "b"],
            &[0.5, 0.5],
            &[&[0.5, 0.5], &[0.5, 0.5]],
        );
        let posteriors: BTreeMap<String, f64> =
            [("a".to_string(), 0.2), ("b".to_string(), 0.6)].into_iter().collect();
        let priors: BTreeMap<String, f64> =
            [("a".to_string(), 0.5), ("b".to_string(), 0.5)].into_iter().collect();
        let e = hmm.emission_log_scores(&posteriors, &priors).unwrap();
        assert!((e[0].exp() - 0.25).abs() < 1e-12);
        assert!((e[1].exp() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn posterior_equal_to_prior_gives_uniform_emissions() {
        let hmm = toy_hmm(&["a", "b"], &[0.5, 0.5], &[&[0.5, 0.5], &[0.5, 0.5]]);
        let m: BTreeMap<String, f64> =
            [("a".to_string(), 0.3), ("b".to_string(), 0.7)].into_iter().collect();
        let e = hmm.emission_log_scores(&m, &m).unwrap();
        assert!((e[0].exp() - 0.5).abs() < 1e-12);
        assert!((e[1].exp() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zero_posterior_is_floored_not_infinite() {
        let hmm = toy_hmm(&["a", "b"], &[0.5, 0.5], &[&[0.5, 0.5], &[0.5, 0.5]]);
        let posteriors: BTreeMap<String, f64> =
            [("a".to_string(), 0.0), ("b".to_string(), 1.0)].into_iter().collect();
        let priors: BTreeMap<String, f64> =
            [("a".to_string(), 0.5), ("b".to_string(), 0.5)].into_iter().collect();
        let e = hmm.emission_log_scores(&posteriors, &priors).unwrap();
        assert!(e[0].is_finite());
    }

    #[test]
    fn missing_genre_key_errors() {
        let hmm = toy_hmm(&["a", "b"], &[0.5, 0.5], &[&[0.5, 0.5], &[0.5, 0.5]]);
        let posteriors: BTreeMap<String, f64> = [("a".to_string(), 1.0)].into_iter().collect();
        let priors: BTreeMap<String, f64> =
            [("a".to_string(), 0.5), ("b".to_string(), 0.5)].into_iter().collect();
        let err = hmm.emission_log_scores(&posteriors, &priors).unwrap_err();
        assert_eq!(err.to_string(), "missing genre key: b");
    }

    #[test]
    fn single_page_decodes_to_argmax_of_initial_plus_emission() {
        let hmm = toy_hmm(&["a", "b"], &[0.9, 0.1], &[&[0.5, 0.5], &[0.5, 0.5]]);
        let decoded = viterbi_decode(&hmm, &[vec![-1.0, -0.2]]).unwrap();
        // log 0.9 - 1.0 = -1.105 vs log 0.1 - 0.2 = -2.50
        assert_eq!(decoded.labels, ["a"]);
        assert!((decoded.log_prob - (0.9f64.ln() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn diagonal_dominant_transitions_lock_the_better_state() {
        let hmm = toy_hmm(
            &["a", "b"],
            &[0.5, 0.5],
            &[&[0.999_999_999, 1e-9], &[1e-9, 0.999_999_999]],
        );
        // State b has the larger emission sum; with near-identity
        // transitions the decode stays constant in b.
        let emissions = vec![
            vec![-1.0, -0.5],
            vec![-0.4, -0.6],
            vec![-1.0, -0.3],
        ];
        let decoded = viterbi_decode(&hmm, &emissions).unwrap();
        assert_eq!(decoded.labels, ["b", "b", "b"]);
    }

    #[test]
    fn backpointer_ties_prefer_smaller_state_id() {
        let hmm = toy_hmm(
            &["a", "b"],
            &[0.5, 0.5],
            &[&[0.5, 0.5], &[0.5, 0.5]],
        );
        let emissions = vec![vec![0.0, 0.0], vec![0.0, 0.0]];
        let decoded = viterbi_decode(&hmm, &emissions).unwrap();
        assert_eq!(decoded.labels, ["a", "a"]);
    }

    /// Exhaustive oracle: maximize over every possible path.
    fn brute_force_best(hmm: &HmmModel, emissions: &[Vec<f64>]) -> (f64, Vec<usize>) {
        let s = hmm.n_states();
        let t = emissions.len();
        let mut best = (f64::NEG_INFINITY, vec![0; t]);
        let total = (s as u64).pow(t as u32);
        for code in 0..total {
            let mut path = Vec::with_capacity(t);
            let mut c = code;
            for _ in 0..t {
                path.push((c % s as u64) as usize);
                c /= s as u64;
            }
            let mut score = hmm.initial[path[0]].ln() + emissions[0][path[0]];
            for i in 1..t {
                score += hmm.transitions[path[i - 1]][path[i]].ln() + emissions[i][path[i]];
            }
            if score > best.0 {
                best = (score, path);
            }
        }
        best
    }

    #[test]
    fn viterbi_matches_exhaustive_search() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..25 {
            let s = rng.gen_range(2..=4usize);
            let t = rng.gen_range(1..=6usize);
            let states: Vec<String> = (0..s).map(|i| format!("s{i}")).collect();
            let rand_dist = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<f64> {
                let raw: Vec<f64> = (0..s).map(|_| rng.gen_range(0.05..1.0)).collect();
                let sum: f64 = raw.iter().sum();
                raw.iter().map(|v| v / sum).collect()
            };
            let hmm = HmmModel {
                states,
                initial: rand_dist(&mut rng),
                transitions: (0..s).map(|_| rand_dist(&mut rng)).collect(),
                smoothing_kappa: 0.5,
            };
            let emissions: Vec<Vec<f64>> = (0..t)
                .map(|_| (0..s).map(|_| rng.gen_range(0.01..1.0f64).ln()).collect())
                .collect();
            let decoded = viterbi_decode(&hmm, &emissions).unwrap();
            let (best_score, _) = brute_force_best(&hmm, &emissions);
            assert!(
                (decoded.log_prob - best_score).abs() < 1e-9,
                "viterbi {} vs brute force {}",
                decoded.log_prob,
                best_score
            );
        }
    }

    #[test]
    fn smoothing_flips_an_isolated_low_confidence_page() {
        // 21 pages, all confidently fiction except a weak nonfiction
        // blip in the middle; the transition penalty outweighs the
        // emission gap, so the smoothed sequence is constant.
        let hmm = toy_hmm(
            &["fiction", "nonfiction"],
            &[0.5, 0.5],
            &[&[0.95, 0.05], &[0.05, 0.95]],
        );
        let priors: BTreeMap<String, f64> =
            [("fiction".to_string(), 0.5), ("nonfiction".to_string(), 0.5)]
                .into_iter()
                .collect();
        let mut emissions = Vec::new();
        for t in 0..21 {
            let posterior = if t == 10 {
                // Low-confidence nonfiction call.
                [("fiction".to_string(), 0.45), ("nonfiction".to_string(), 0.55)]
            } else {
                [("fiction".to_string(), 0.95), ("nonfiction".to_string(), 0.05)]
            };
            let map: BTreeMap<String, f64> = posterior.into_iter().collect();
            emissions.push(hmm.emission_log_scores(&map, &priors).unwrap());
        }
        let decoded = viterbi_decode(&hmm, &emissions).unwrap();
        assert!(decoded.labels.iter().all(|l| l == "fiction"));
    }

    #[test]
    fn viterbi_total_is_not_positive_for_probability_inputs() {
        let hmm = toy_hmm(&["a", "b"], &[0.6, 0.4], &[&[0.7, 0.3], &[0.2, 0.8]]);
        let emissions = vec![vec![0.5f64.ln(), 0.5f64.ln()]; 4];
        let decoded = viterbi_decode(&hmm, &emissions).unwrap();
        assert!(decoded.log_prob <= 0.0);
        assert_eq!(decoded.page_log_scores.len(), 4);
        let sum: f64 = decoded.page_log_scores.iter().sum();
        assert!((sum - decoded.log_prob).abs() < 1e-12);
    }

    proptest! {
        /// Adding a per-page constant to that page's emission vector
        /// shifts the score but never the decoded path.
        #[test]
        fn decode_invariant_under_per_page_emission_shifts(
            shifts in proptest::collection::vec(-5.0f64..5.0, 5),
            seed in 0u64..50,
        ) {
            use rand::prelude::*;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let hmm = toy_hmm(&["a", "b", "c"], &[0.3, 0.3, 0.4],
                &[&[0.8, 0.1, 0.1], &[0.1, 0.8, 0.1], &[0.2, 0.2, 0.6]]);
            let emissions: Vec<Vec<f64>> = (0..5)
                .map(|_| (0..3).map(|_| rng.gen_range(0.01..1.0f64).ln()).collect())
                .collect();
            let base = viterbi_decode(&hmm, &emissions).unwrap();
            let shifted: Vec<Vec<f64>> = emissions
                .iter()
                .zip(&shifts)
                .map(|(row, s)| row.iter().map(|e| e + s).collect())
                .collect();
            let moved = viterbi_decode(&hmm, &shifted).unwrap();
            prop_assert_eq!(base.labels, moved.labels);
        }

        /// Raising the transition diagonal never increases the number of
        /// label changes in the decoded sequence.
        #[test]
        fn stronger_diagonal_never_adds_label_changes(seed in 0u64..40) {
            use rand::prelude::*;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let emissions: Vec<Vec<f64>> = (0..8)
                .map(|_| (0..2).map(|_| rng.gen_range(0.01..1.0f64).ln()).collect())
                .collect();
            let changes = |labels: &[String]| {
                labels.windows(2).filter(|w| w[0] != w[1]).count()
            };
            let mut last_changes = usize::MAX;
            for diag in [0.5, 0.7, 0.9, 0.99] {
                let hmm = toy_hmm(
                    &["a", "b"],
                    &[0.5, 0.5],
                    &[&[diag, 1.0 - diag], &[1.0 - diag, diag]],
                );
                let decoded = viterbi_decode(&hmm, &emissions).unwrap();
                let c = changes(&decoded.labels);
                prop_assert!(c <= last_changes);
                last_changes = c;
            }
        }
    }
}
