//! Time-sliced classifier ensembles with date-weighted voting.
//!
//! Genres are historically mutable, so a single classifier trained on a
//! multi-century corpus can blur period-specific signals. Instead, several
//! classifiers are trained on overlapping spans of time and their votes
//! are weighted by each volume's publication date.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{CalibrationMap, LogisticModel, NaiveBayesModel};
use crate::corpus::{volume_counts, Vocabulary, Volume};
use crate::error::{Error, Result};
use crate::stats::pearson_correlation;

/// A volume-level binary classifier: calibrated naive Bayes or logistic
/// regression over a fixed word-feature list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum VolumeModel {
    NaiveBayes {
        model: NaiveBayesModel,
        calibration: CalibrationMap,
        positive_class: String,
    },
    Logistic(LogisticModel),
}

impl VolumeModel {
    pub fn feature_names(&self) -> &[String] {
        match self {
            VolumeModel::NaiveBayes { model, .. } => &model.feature_names,
            VolumeModel::Logistic(model) => &model.feature_names,
        }
    }

    /// Probability that the volume belongs to the model's positive class.
    pub fn predict_volume(&self, volume: &Volume) -> Result<f64> {
        let vocab = Vocabulary::from_features(self.feature_names().to_vec())?;
        let counts = volume_counts(volume, &vocab);
        self.predict_counts(&counts)
    }

    /// Probability from a precomputed count vector over `feature_names`.
    pub fn predict_counts(&self, counts: &[f64]) -> Result<f64> {
        match self {
            VolumeModel::NaiveBayes {
                model,
                calibration,
                positive_class,
            } => Ok(calibration.apply(model.log_odds(counts, positive_class)?)),
            VolumeModel::Logistic(model) => {
                let total: f64 = counts.iter().sum();
                let denom = if total > 0.0 { total } else { 1.0 };
                let freqs: Vec<f64> = counts.iter().map(|c| c / denom).collect();
                model.predict_proba(&freqs)
            }
        }
    }
}

/// Vote-weight shape over a slice's year span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightShape {
    /// 1 at the midpoint, falling linearly to 0 at the slice bounds.
    Triangular,
    /// 1 inside the span, 0 outside.
    Uniform,
    /// Raised cosine over the span.
    Cosine,
}

impl Default for WeightShape {
    fn default() -> Self {
        WeightShape::Triangular
    }
}

/// One classifier trained on evidence from a span of years.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSlice {
    pub start_year: i32,
    pub end_year: i32,
    pub model: VolumeModel,
}

/// Vote weight of a slice for a given publication year; 0 strictly
/// outside `[start_year, end_year]`.
pub fn slice_weight(slice: &TimeSlice, year: i32, shape: WeightShape) -> f64 {
    if year < slice.start_year || year > slice.end_year {
        return 0.0;
    }
    let midpoint = (slice.start_year + slice.end_year) as f64 / 2.0;
    let half_width = (slice.end_year - slice.start_year) as f64 / 2.0;
    match shape {
        WeightShape::Uniform => 1.0,
        WeightShape::Triangular => (1.0 - (year as f64 - midpoint).abs() / half_width).max(0.0),
        WeightShape::Cosine => {
            0.5 * (1.0 + (std::f64::consts::PI * (year as f64 - midpoint) / half_width).cos())
        }
    }
}

/// Ensemble prediction plus a flag for out-of-coverage years.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsemblePrediction {
    pub p: f64,
    /// Set when the year fell outside coverage and the nearest slice was
    /// used with weight 1.
    pub out_of_coverage: bool,
}

/// Overlapping time slices blended by date-dependent weights.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSlicedEnsemble {
    slices: Vec<TimeSlice>,
    weighting: WeightShape,
}

impl TimeSlicedEnsemble {
    /// Validates that every year in coverage receives positive total
    /// weight, so the blend is always defined inside coverage.
    pub fn new(slices: Vec<TimeSlice>, weighting: WeightShape) -> Result<Self> {
        if slices.is_empty() {
            return Err(Error::invalid("ensemble must have at least one slice"));
        }
        for slice in &slices {
            if slice.start_year >= slice.end_year {
                return Err(Error::invalid(format!(
                    "slice start {} must precede end {}",
                    slice.start_year, slice.end_year
                )));
            }
        }
        let ensemble = TimeSlicedEnsemble { slices, weighting };
        // Triangular and cosine weights are 0 exactly at a slice's own
        // bounds, so the two extreme coverage years are exempt; they are
        // served by the continuous extension in `predict`. Interior years
        // must have positive total weight.
        let (lo, hi) = ensemble.coverage();
        for year in (lo + 1)..hi {
            let total: f64 = ensemble
                .slices
                .iter()
                .map(|s| slice_weight(s, year, ensemble.weighting))
                .sum();
            if total <= 0.0 {
                return Err(Error::invalid(format!(
                    "year {year} has zero total weight under the weighting rule"
                )));
            }
        }
        Ok(ensemble)
    }

    pub fn slices(&self) -> &[TimeSlice] {
        &self.slices
    }

    pub fn weighting(&self) -> WeightShape {
        self.weighting
    }

    /// `[min start, max end]` over all slices.
    pub fn coverage(&self) -> (i32, i32) {
        let lo = self.slices.iter().map(|s| s.start_year).min().expect("non-empty");
        let hi = self.slices.iter().map(|s| s.end_year).max().expect("non-empty");
        (lo, hi)
    }

    /// Weighted vote over slices with positive weight. Years outside
    /// coverage fall back to the nearest slice (earliest on ties) with
    /// weight 1 and are flagged.
    pub fn predict(&self, volume: &Volume) -> Result<EnsemblePrediction> {
        let year = volume.year;
        let (lo, hi) = self.coverage();
        if year < lo || year > hi {
            let nearest = self
                .slices
                .iter()
                .min_by_key(|s| {
                    if year < s.start_year {
                        (s.start_year - year, s.start_year)
                    } else {
                        (year - s.end_year, s.start_year)
                    }
                })
                .expect("non-empty");
            return Ok(EnsemblePrediction {
                p: nearest.model.predict_volume(volume)?,
                out_of_coverage: true,
            });
        }
        let mut votes: Vec<(f64, f64)> = Vec::new();
        for slice in &self.slices {
            let w = slice_weight(slice, year, self.weighting);
            if w > 0.0 {
                votes.push((w, slice.model.predict_volume(volume)?));
            }
        }
        let p = match votes.as_slice() {
            // Coverage endpoints of boundary-zero shapes: the continuous
            // extension is the touching slice's own prediction.
            [] => {
                let touching = self
                    .slices
                    .iter()
                    .filter(|s| year >= s.start_year && year <= s.end_year)
                    .min_by_key(|s| (s.start_year, s.end_year))
                    .expect("year is within coverage");
                touching.model.predict_volume(volume)?
            }
            // Exact equality contracts: a lone positive-weight slice wins
            // with no arithmetic applied.
            [(_, p)] => *p,
            votes => {
                let total: f64 = votes.iter().map(|(w, _)| w).sum();
                votes.iter().map(|(w, p)| w * p).sum::<f64>() / total
            }
        };
        Ok(EnsemblePrediction {
            p,
            out_of_coverage: false,
        })
    }
}

/// Inter-model agreement: per-volume probability pairs and their Pearson
/// correlation.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementResult {
    pub r: f64,
    pub n: usize,
    /// `(volume_id, p_a, p_b)` scatter pairs for plotting.
    pub pairs: Vec<(String, f64, f64)>,
}

/// Correlate two models' per-volume probabilities over a shared corpus.
pub fn model_agreement(
    model_a: &VolumeModel,
    model_b: &VolumeModel,
    volumes: &[Volume],
) -> Result<AgreementResult> {
    if volumes.len() < 3 {
        return Err(Error::invalid("need at least 3 volumes"));
    }
    let pairs: Vec<(String, f64, f64)> = volumes
        .par_iter()
        .map(|v| {
            Ok((
                v.volume_id.clone(),
                model_a.predict_volume(v)?,
                model_b.predict_volume(v)?,
            ))
        })
        .collect::<Result<_>>()?;
    let xs: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.2).collect();
    let r = pearson_correlation(&xs, &ys)?;
    Ok(AgreementResult {
        r,
        n: pairs.len(),
        pairs,
    })
}
