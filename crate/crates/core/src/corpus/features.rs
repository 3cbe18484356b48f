//! Page-level feature extraction: relative word frequencies for a fixed
//! vocabulary plus three structural features (relative page length,
//! relative position in the volume, line-initial capitalization density).

use serde::{Deserialize, Serialize};

use crate::corpus::vocab::Vocabulary;
use crate::corpus::volume::Volume;
use crate::error::{Error, Result};

/// Structural feature names, in the order they follow the vocabulary block
/// in a dense feature row. Tokenization can never produce these ids (it
/// splits on `_`), so they cannot collide with vocabulary words.
pub const STRUCTURAL_FEATURES: [&str; 3] = ["rel_length", "rel_position", "capline_density"];

/// Fixed-length numeric description of one page.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    /// Relative frequency of each vocabulary feature: count / max(1, tokens).
    pub word_freqs: Vec<f64>,
    /// Page token count / mean token count over the volume's pages.
    pub rel_length: f64,
    /// page_index / (n_pages - 1); 0.0 for single-page volumes.
    pub rel_position: f64,
    /// Lines whose first alphabetic character is uppercase / non-empty lines.
    pub capline_density: f64,
    /// Token count of the page, kept so integer counts can be recovered.
    pub token_count: usize,
}

impl FeatureVector {
    /// Dense row: word frequencies followed by the structural features.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut row = Vec::with_capacity(self.word_freqs.len() + STRUCTURAL_FEATURES.len());
        row.extend_from_slice(&self.word_freqs);
        row.push(self.rel_length);
        row.push(self.rel_position);
        row.push(self.capline_density);
        row
    }

    /// Integer vocabulary counts recovered from frequencies.
    pub fn word_counts(&self) -> Vec<f64> {
        let scale = self.token_count.max(1) as f64;
        self.word_freqs.iter().map(|f| (f * scale).round()).collect()
    }
}

/// Feature names for a dense page row: vocabulary then structural.
pub fn page_feature_names(vocab: &Vocabulary) -> Vec<String> {
    let mut names: Vec<String> = vocab.features().to_vec();
    names.extend(STRUCTURAL_FEATURES.iter().map(|s| s.to_string()));
    names
}

/// Fraction of non-empty lines whose first alphabetic character is
/// uppercase; 0 when there are no non-empty lines.
pub fn capline_density(lines: &[String]) -> f64 {
    let mut non_empty = 0usize;
    let mut capitalized = 0usize;
    for line in lines {
        if line.chars().all(char::is_whitespace) {
            continue;
        }
        non_empty += 1;
        if let Some(first) = line.chars().find(|c| c.is_alphabetic()) {
            if first.is_uppercase() {
                capitalized += 1;
            }
        }
    }
    if non_empty == 0 {
        0.0
    } else {
        capitalized as f64 / non_empty as f64
    }
}

/// Extract the feature vector for one page.
pub fn extract_page_features(
    volume: &Volume,
    page_index: usize,
    vocab: &Vocabulary,
) -> Result<FeatureVector> {
    let n_pages = volume.pages.len();
    if page_index >= n_pages {
        return Err(Error::invalid(format!(
            "page index {page_index} out of range for volume {} with {n_pages} pages",
            volume.volume_id
        )));
    }
    let page = &volume.pages[page_index];
    let mut counts = vec![0u32; vocab.size()];
    for token in &page.tokens {
        if let Some(i) = vocab.index_of(token) {
            counts[i] += 1;
        }
    }
    let denom = page.token_count.max(1) as f64;
    let word_freqs = counts.iter().map(|&c| f64::from(c) / denom).collect();
    let mean_tokens = volume.mean_token_count();
    let rel_length = if mean_tokens > 0.0 {
        page.token_count as f64 / mean_tokens
    } else {
        0.0
    };
    let rel_position = if n_pages == 1 {
        0.0
    } else {
        page_index as f64 / (n_pages - 1) as f64
    };
    Ok(FeatureVector {
        word_freqs,
        rel_length,
        rel_position,
        capline_density: capline_density(&page.lines),
        token_count: page.token_count,
    })
}

/// Integer vocabulary counts for one page, as f64.
pub fn extract_page_counts(
    volume: &Volume,
    page_index: usize,
    vocab: &Vocabulary,
) -> Result<Vec<f64>> {
    if page_index >= volume.pages.len() {
        return Err(Error::invalid(format!(
            "page index {page_index} out of range for volume {} with {} pages",
            volume.volume_id,
            volume.pages.len()
        )));
    }
    let mut counts = vec![0.0f64; vocab.size()];
    for token in &volume.pages[page_index].tokens {
        if let Some(i) = vocab.index_of(token) {
            counts[i] += 1.0;
        }
    }
    Ok(counts)
}

/// Whole-volume vocabulary counts, as f64.
pub fn volume_counts(volume: &Volume, vocab: &Vocabulary) -> Vec<f64> {
    let mut counts = vec![0.0f64; vocab.size()];
    for token in volume.all_tokens() {
        if let Some(i) = vocab.index_of(token) {
            counts[i] += 1.0;
        }
    }
    counts
}

/// Whole-volume analogue of a page feature vector: frequencies over the
/// volume's full token stream, `rel_length` 1.0 (or 0.0 when empty),
/// `rel_position` 0.0, capitalization density over all lines.
pub fn volume_feature_vector(volume: &Volume, vocab: &Vocabulary) -> FeatureVector {
    let counts = volume_counts(volume, vocab);
    let total = volume.total_tokens();
    let denom = total.max(1) as f64;
    let all_lines: Vec<String> = volume
        .pages
        .iter()
        .flat_map(|p| p.lines.iter().cloned())
        .collect();
    FeatureVector {
        word_freqs: counts.iter().map(|c| c / denom).collect(),
        rel_length: if total > 0 { 1.0 } else { 0.0 },
        rel_position: 0.0,
        capline_density: capline_density(&all_lines),
        token_count: total,
    }
}
