//! Feature selection and corpus-wide correlation mining.
//!
//! Selection ranks candidate words by the tie-corrected z of a Wilcoxon
//! rank-sum test over per-document relative frequencies, taking the k most
//! extreme words in each direction. Correlation mining scores every
//! vocabulary word by the Pearson correlation between its whole-volume
//! relative frequency and a per-volume target (by default the smoothed
//! ratio of first- to third-person pronouns).

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{volume_counts, FeatureVector, Vocabulary, Volume};
use crate::error::{Error, Result};
use crate::stats::{pearson_correlation, wilcoxon_rank_sum};

/// Words that consistently characterize each side of a two-corpus
/// contrast, plus the z score of every candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSelection {
    /// Top-k words more common in corpus A, ranked by |z| descending.
    pub positive: Vec<String>,
    /// Top-k words more common in corpus B, ranked by |z| descending.
    pub negative: Vec<String>,
    /// z score per candidate word (positive means higher in A).
    pub z: BTreeMap<String, f64>,
}

/// Run a rank-sum test per candidate word and keep the k most extreme
/// words in each direction. Deterministic: lexicographic tie-break.
pub fn select_discriminative_features(
    corpus_a: &[FeatureVector],
    corpus_b: &[FeatureVector],
    candidates: &Vocabulary,
    k: usize,
) -> Result<FeatureSelection> {
    if corpus_a.is_empty() || corpus_b.is_empty() {
        return Err(Error::invalid("both corpora must be non-empty"));
    }
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > candidates.size() {
        return Err(Error::invalid("k exceeds candidate count"));
    }
    for fv in corpus_a.iter().chain(corpus_b) {
        if fv.word_freqs.len() != candidates.size() {
            return Err(Error::DimensionMismatch {
                expected: candidates.size(),
                got: fv.word_freqs.len(),
            });
        }
    }
    let scored: Vec<(String, f64)> = (0..candidates.size())
        .into_par_iter()
        .map(|i| {
            let a_vals: Vec<f64> = corpus_a.iter().map(|fv| fv.word_freqs[i]).collect();
            let b_vals: Vec<f64> = corpus_b.iter().map(|fv| fv.word_freqs[i]).collect();
            let word = candidates.features()[i].clone();
            wilcoxon_rank_sum(&a_vals, &b_vals).map(|r| (word, r.z_score))
        })
        .collect::<Result<_>>()?;

    let mut by_z = scored.clone();
    // Highest z first; equal z falls back to lexicographic order.
    by_z.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
    let mut positive: Vec<(String, f64)> = by_z.iter().take(k).cloned().collect();
    let mut negative: Vec<(String, f64)> = by_z.iter().rev().take(k).cloned().collect();
    let abs_rank = |a: &(String, f64), b: &(String, f64)| {
        b.1.abs()
            .partial_cmp(&a.1.abs())
            .unwrap()
            .then_with(|| a.0.cmp(&b.0))
    };
    positive.sort_by(abs_rank);
    negative.sort_by(abs_rank);

    Ok(FeatureSelection {
        positive: positive.into_iter().map(|(w, _)| w).collect(),
        negative: negative.into_iter().map(|(w, _)| w).collect(),
        z: scored.into_iter().collect(),
    })
}

/// One word's correlation with the per-volume target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRecord {
    pub word: String,
    pub r: f64,
    pub n: usize,
}

/// Correlate every vocabulary word's whole-volume relative frequency with
/// a per-volume target. Zero-variance words are skipped; output is sorted
/// by r descending (lexicographic tie-break).
pub fn mine_correlations(
    volumes: &[Volume],
    vocab: &Vocabulary,
    target: &[f64],
) -> Result<Vec<CorrelationRecord>> {
    if volumes.len() < 3 {
        return Err(Error::invalid("need at least 3 volumes"));
    }
    if target.len() != volumes.len() {
        return Err(Error::DimensionMismatch {
            expected: volumes.len(),
            got: target.len(),
        });
    }
    let n = volumes.len();
    // freqs[v][w]: whole-volume relative frequency of word w in volume v.
    let freqs: Vec<Vec<f64>> = volumes
        .par_iter()
        .map(|v| {
            let denom = v.total_tokens().max(1) as f64;
            volume_counts(v, vocab).into_iter().map(|c| c / denom).collect()
        })
        .collect();

    let mut records: Vec<CorrelationRecord> = (0..vocab.size())
        .into_par_iter()
        .filter_map(|w| {
            let xs: Vec<f64> = freqs.iter().map(|row| row[w]).collect();
            match pearson_correlation(&xs, target) {
                Ok(r) => Some(Ok(CorrelationRecord {
                    word: vocab.features()[w].clone(),
                    r,
                    n,
                })),
                Err(Error::ConstantInput) if xs.iter().all(|&x| x == xs[0]) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect::<Result<_>>()?;
    records.sort_by(|a, b| b.r.partial_cmp(&a.r).unwrap().then_with(|| a.word.cmp(&b.word)));
    Ok(records)
}

/// First- and third-person pronoun lists used by [`pronoun_ratio`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PronounLexicon {
    pub first_person: BTreeSet<String>,
    pub third_person: BTreeSet<String>,
}

impl Default for PronounLexicon {
    fn default() -> Self {
        let first = [
            "i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves",
        ];
        let third = [
            "he", "him", "his", "himself", "she", "her", "hers", "herself", "they", "them",
            "their", "theirs", "themselves",
        ];
        PronounLexicon {
            first_person: first.iter().map(|s| s.to_string()).collect(),
            third_person: third.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// Smoothed ratio of first- to third-person pronoun tokens:
/// `(first + 1) / (third + 1)`.
pub fn pronoun_ratio(volume: &Volume, lexicon: &PronounLexicon) -> f64 {
    let mut first = 0u64;
    let mut third = 0u64;
    for token in volume.all_tokens() {
        if lexicon.first_person.contains(token) {
            first += 1;
        } else if lexicon.third_person.contains(token) {
            third += 1;
        }
    }
    (first as f64 + 1.0) / (third as f64 + 1.0)
}
