//! Per-leaf binary classifiers and the one-vs-all page decision.
//!
//! One classifier is trained per taxonomy leaf. A page's genre is the leaf
//! with the highest predicted probability (no renormalization across
//! leaves); the winning leaf's superclass implements subclass ensembles:
//! if any nonfiction leaf wins, the page is nonfiction.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::calibration::{calibrate, CalibrationMap};
use crate::classify::logistic::{train_logistic, LogisticModel};
use crate::classify::naive_bayes::{train_naive_bayes, NaiveBayesModel};
use crate::corpus::{extract_page_features, page_feature_names, FeatureVector, Vocabulary, Volume};
use crate::error::{Error, Result};
use crate::eval::kfold_indices;
use crate::taxonomy::GenreTaxonomy;

/// Classifier family used for page-level training.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassifierKind {
    Logistic { lambda: f64 },
    NaiveBayes { alpha: f64 },
}

impl Default for ClassifierKind {
    fn default() -> Self {
        ClassifierKind::Logistic { lambda: 1.0 }
    }
}

/// One leaf's binary classifier.
///
/// `Prior` stands in when a leaf has no examples of one class in training:
/// a constant Laplace-smoothed base rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PageModel {
    Logistic(LogisticModel),
    NaiveBayes {
        model: NaiveBayesModel,
        calibration: CalibrationMap,
    },
    Prior { p: f64 },
}

impl PageModel {
    /// Probability that the page belongs to this leaf.
    pub fn predict_proba(&self, fv: &FeatureVector) -> Result<f64> {
        match self {
            PageModel::Logistic(model) => model.predict_proba(&fv.to_dense()),
            PageModel::NaiveBayes { model, calibration } => {
                let counts = fv.word_counts();
                if counts.len() != model.feature_names.len() {
                    return Err(Error::DimensionMismatch {
                        expected: model.feature_names.len(),
                        got: counts.len(),
                    });
                }
                let positive = &model.classes[1];
                Ok(calibration.apply(model.log_odds(&counts, positive)?))
            }
            PageModel::Prior { p } => Ok(*p),
        }
    }
}

/// Exactly one binary classifier per taxonomy leaf.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenreClassifierBank {
    pub taxonomy: GenreTaxonomy,
    /// Dense page feature names: vocabulary words then structural features.
    pub feature_names: Vec<String>,
    pub classifiers: BTreeMap<String, PageModel>,
}

/// Result of the one-vs-all decision for a page.
#[derive(Debug, Clone, PartialEq)]
pub struct PageDecision {
    pub leaf: String,
    pub superclass: String,
    /// All leaf probabilities, for downstream sequence smoothing.
    pub posteriors: BTreeMap<String, f64>,
}

impl GenreClassifierBank {
    pub fn validate(&self) -> Result<()> {
        if self.classifiers.len() != self.taxonomy.len()
            || !self.taxonomy.leaves().all(|l| self.classifiers.contains_key(l))
        {
            return Err(Error::invalid(
                "bank must hold exactly one classifier per taxonomy leaf",
            ));
        }
        Ok(())
    }

    /// Probability per leaf for one page.
    pub fn posteriors(&self, fv: &FeatureVector) -> Result<BTreeMap<String, f64>> {
        self.classifiers
            .iter()
            .map(|(leaf, model)| Ok((leaf.clone(), model.predict_proba(fv)?)))
            .collect()
    }
}

/// One-vs-all decision: the leaf with the highest probability wins, with
/// ties broken toward the lexicographically smaller genre id.
pub fn classify_page_one_vs_all(
    bank: &GenreClassifierBank,
    fv: &FeatureVector,
) -> Result<PageDecision> {
    let posteriors = bank.posteriors(fv)?;
    // BTreeMap iterates in key order, so strict > implements the tie-break.
    let mut best: Option<(&String, f64)> = None;
    for (leaf, &p) in &posteriors {
        match best {
            Some((_, bp)) if p <= bp => {}
            _ => best = Some((leaf, p)),
        }
    }
    let (leaf, _) = best.ok_or_else(|| Error::invalid("bank has no classifiers"))?;
    let superclass = bank
        .taxonomy
        .superclass(leaf)
        .ok_or_else(|| Error::MissingGenre(leaf.clone()))?
        .to_string();
    Ok(PageDecision {
        leaf: leaf.clone(),
        superclass,
        posteriors: posteriors.clone(),
    })
}

/// All page feature vectors plus gold labels for a labeled training corpus.
pub(crate) fn labeled_page_features(
    volumes: &[Volume],
    vocab: &Vocabulary,
) -> Result<(Vec<FeatureVector>, Vec<String>)> {
    let per_volume: Vec<(Vec<FeatureVector>, Vec<String>)> = volumes
        .par_iter()
        .map(|volume| {
            let labels = volume.gold_labels.as_ref().ok_or_else(|| {
                Error::invalid(format!("volume {} has no gold labels", volume.volume_id))
            })?;
            let fvs = (0..volume.pages.len())
                .map(|i| extract_page_features(volume, i, vocab))
                .collect::<Result<Vec<_>>>()?;
            Ok((fvs, labels.clone()))
        })
        .collect::<Result<_>>()?;
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for (fvs, ls) in per_volume {
        features.extend(fvs);
        labels.extend(ls);
    }
    Ok((features, labels))
}

/// Train one binary classifier per taxonomy leaf on labeled volumes.
///
/// `seed` drives the internal out-of-fold split used to calibrate naive
/// Bayes scores; results are deterministic for a fixed seed.
pub fn train_bank(
    volumes: &[Volume],
    vocab: &Vocabulary,
    taxonomy: &GenreTaxonomy,
    kind: &ClassifierKind,
    seed: u64,
) -> Result<GenreClassifierBank> {
    if volumes.is_empty() {
        return Err(Error::invalid("no training volumes"));
    }
    let (features, labels) = labeled_page_features(volumes, vocab)?;
    for label in &labels {
        if !taxonomy.contains(label) {
            return Err(Error::UnknownGenre(label.clone()));
        }
    }
    let feature_names = page_feature_names(vocab);
    let leaves = taxonomy.leaf_vec();
    let classifiers: BTreeMap<String, PageModel> = leaves
        .par_iter()
        .enumerate()
        .map(|(li, leaf)| {
            let binary: Vec<bool> = labels.iter().map(|l| l == leaf).collect();
            let model = train_leaf_classifier(
                &features,
                &binary,
                &feature_names,
                kind,
                seed.wrapping_add(li as u64),
            )?;
            Ok((leaf.clone(), model))
        })
        .collect::<Result<_>>()?;
    let bank = GenreClassifierBank {
        taxonomy: taxonomy.clone(),
        feature_names,
        classifiers,
    };
    bank.validate()?;
    Ok(bank)
}

fn train_leaf_classifier(
    features: &[FeatureVector],
    labels: &[bool],
    feature_names: &[String],
    kind: &ClassifierKind,
    seed: u64,
) -> Result<PageModel> {
    let n = labels.len();
    let positives = labels.iter().filter(|&&y| y).count();
    if positives == 0 || positives == n {
        // Laplace-smoothed base rate for a leaf with only one class seen.
        return Ok(PageModel::Prior {
            p: (positives as f64 + 1.0) / (n as f64 + 2.0),
        });
    }
    match kind {
        ClassifierKind::Logistic { lambda } => {
            let rows: Vec<Vec<f64>> = features.iter().map(FeatureVector::to_dense).collect();
            let model = train_logistic(&rows, labels, feature_names.to_vec(), *lambda)?;
            Ok(PageModel::Logistic(model))
        }
        ClassifierKind::NaiveBayes { alpha } => {
            let word_names: Vec<String> =
                feature_names[..feature_names.len() - crate::corpus::STRUCTURAL_FEATURES.len()]
                    .to_vec();
            let counts: Vec<Vec<f64>> = features.iter().map(FeatureVector::word_counts).collect();
            let class_of = |y: bool| if y { "pos" } else { "neg" }.to_string();

            // Out-of-fold scores from an internal 5-fold split, so the
            // calibration never sees its own training scores.
            let k = 5.min(n);
            let folds = kfold_indices(n, k, seed)?;
            let mut scores = vec![f64::NAN; n];
            for fold in &folds {
                let train: Vec<(Vec<f64>, String)> = fold
                    .train
                    .iter()
                    .map(|&i| (counts[i].clone(), class_of(labels[i])))
                    .collect();
                let fold_positives = fold.train.iter().filter(|&&i| labels[i]).count();
                if fold_positives == 0 || fold_positives == fold.train.len() {
                    return Err(Error::invalid(
                        "too few examples of each class to calibrate",
                    ));
                }
                let nb = train_naive_bayes(&train, word_names.clone(), *alpha)?;
                for &i in &fold.test {
                    scores[i] = nb.log_odds(&counts[i], "pos")?;
                }
            }
            let calibration = calibrate(&scores, labels)?;
            let examples: Vec<(Vec<f64>, String)> = counts
                .iter()
                .zip(labels)
                .map(|(c, &y)| (c.clone(), class_of(y)))
                .collect();
            let model = train_naive_bayes(&examples, word_names, *alpha)?;
            Ok(PageModel::NaiveBayes { model, calibration })
        }
    }
}
