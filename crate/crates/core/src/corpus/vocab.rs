//! Vocabulary construction: the n most frequent feature ids in a corpus.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::volume::Volume;
use crate::error::{Error, Result};

/// An ordered feature list: descending corpus frequency, lexicographic
/// tie-break. Compressed-category ids (`#arabic-number`, `#roman-numeral`,
/// `#personal-name`) may appear as ordinary features.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "VocabularyFile", into = "VocabularyFile")]
pub struct Vocabulary {
    features: Vec<String>,
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct VocabularyFile {
    features: Vec<String>,
}

impl TryFrom<VocabularyFile> for Vocabulary {
    type Error = Error;
    fn try_from(file: VocabularyFile) -> Result<Self> {
        Vocabulary::from_features(file.features)
    }
}

impl From<Vocabulary> for VocabularyFile {
    fn from(v: Vocabulary) -> Self {
        VocabularyFile { features: v.features }
    }
}

impl Vocabulary {
    pub fn from_features(features: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(features.len());
        for (i, f) in features.iter().enumerate() {
            if index.insert(f.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate feature: {f}")));
            }
        }
        Ok(Vocabulary { features, index })
    }

    pub fn features(&self) -> &[String] {
        &self.features
    }

    pub fn size(&self) -> usize {
        self.features.len()
    }

    pub fn index_of(&self, feature: &str) -> Option<usize> {
        self.index.get(feature).copied()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(&VocabularyFile {
            features: self.features.clone(),
        })
        .expect("vocabulary serializes");
        fs::write(path, json)?;
        Ok(())
    }
}

/// The `n` most frequent feature ids over all pages of all volumes.
/// Deterministic: descending total count, then lexicographic.
pub fn build_vocabulary(volumes: &[Volume], n: usize) -> Result<Vocabulary> {
    if n == 0 {
        return Err(Error::invalid("vocabulary size must be at least 1"));
    }
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for volume in volumes {
        for token in volume.all_tokens() {
            *counts.entry(token).or_insert(0) += 1;
        }
    }
    if counts.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut ranked: Vec<(&str, u64)> = counts.into_iter().collect();
    ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let features = ranked
        .into_iter()
        .take(n)
        .map(|(w, _)| w.to_string())
        .collect();
    Vocabulary::from_features(features)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tokenize::Tokenizer;
    use crate::taxonomy::GenreTaxonomy;
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn volume_from_texts(id: &str, texts: &[&str]) -> Volume {
        Volume::new(
            id.to_string(),
            1800,
            texts.iter().map(|t| vec![t.to_string()]).collect(),
            None,
            &Tokenizer::default(),
            &GenreTaxonomy::default(),
        )
        .unwrap()
    }

    #[test]
    fn ties_break_lexicographically() {
        let vols = vec![volume_from_texts("v", &["a a b", "a c"])];
        let vocab = build_vocabulary(&vols, 2).unwrap();
        assert_eq!(vocab.features(), ["a", "b"]);
    }

    #[test]
    fn n_larger_than_distinct_returns_all() {
        let vols = vec![volume_from_texts("v", &["b a b"])];
        let vocab = build_vocabulary(&vols, 100).unwrap();
        assert_eq!(vocab.features(), ["b", "a"]);
    }

    #[test]
    fn empty_corpus_errors() {
        let vols = vec![volume_from_texts("v", &["..."])];
        let err = build_vocabulary(&vols, 3).unwrap_err();
        assert_eq!(err.to_string(), "empty corpus");
    }

    /// Brute-force oracle: count every token, sort by (count desc, word asc).
    fn oracle_top_n(volumes: &[Volume], n: usize) -> Vec<String> {
        let mut counts: std::collections::BTreeMap<String, u64> = Default::default();
        for v in volumes {
            for t in v.all_tokens() {
                *counts.entry(t.to_string()).or_insert(0) += 1;
            }
        }
        let mut items: Vec<(String, u64)> = counts.into_iter().collect();
        items.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        items.into_iter().take(n).map(|(w, _)| w).collect()
    }

    #[test]
    fn planted_zipf_matches_counting_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let words: Vec<String> = (0..60).map(|i| format!("zw{}", to_alpha(i))).collect();
        let weights: Vec<f64> = (0..words.len()).map(|r| 1.0 / (r as f64 + 1.0)).collect();
        let dist = rand::distributions::WeightedIndex::new(&weights).unwrap();
        let mut volumes = Vec::new();
        for v in 0..8 {
            let texts: Vec<String> = (0..5)
                .map(|_| {
                    (0..40)
                        .map(|_| words[dist.sample(&mut rng)].as_str())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
            volumes.push(volume_from_texts(&format!("v{v}"), &refs));
        }
        let vocab = build_vocabulary(&volumes, 25).unwrap();
        assert_eq!(vocab.features(), oracle_top_n(&volumes, 25).as_slice());
    }

    fn to_alpha(mut i: usize) -> String {
        let mut s = String::new();
        loop {
            s.push(char::from(b'a' + (i % 26) as u8));
            i /= 26;
            if i == 0 {
                break;
            }
        }
        s
    }

    proptest! {
        #[test]
        fn invariant_under_volume_reordering(texts in proptest::collection::vec("[a-e ]{0,30}", 1..6), n in 1usize..10) {
            let volumes: Vec<Volume> = texts
                .iter()
                .enumerate()
                .map(|(i, t)| volume_from_texts(&format!("v{i}"), &[t.as_str()]))
                .collect();
            let forward = build_vocabulary(&volumes, n);
            let mut reversed = volumes;
            reversed.reverse();
            let backward = build_vocabulary(&reversed, n);
            match (forward, backward) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.features(), b.features()),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "one ordering errored"),
            }
        }
    }
}
