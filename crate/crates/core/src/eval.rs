//! Evaluation: confusion matrices, F1 metrics, volume-partitioned k-fold
//! cross-validation, and time-binned trend series.
//!
//! F1 matters here because genre classes differ wildly in size; a crude
//! accuracy metric could be maximized by ignoring the small ones. Folds
//! are partitioned by volume, never by page, so a model is never scored
//! against pages of a volume it trained on.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hmm::smooth_volume;
use crate::pipeline::{PagePipeline, PipelineConfig};
use crate::taxonomy::GenreTaxonomy;
use crate::corpus::Volume;

/// Square actual-by-predicted count matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    classes: Vec<String>,
    counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    pub fn new(classes: Vec<String>) -> Self {
        let n = classes.len();
        ConfusionMatrix {
            classes,
            counts: vec![vec![0; n]; n],
        }
    }

    pub fn from_counts(classes: Vec<String>, counts: Vec<Vec<u64>>) -> Result<Self> {
        let n = classes.len();
        if counts.len() != n || counts.iter().any(|row| row.len() != n) {
            return Err(Error::invalid("confusion matrix must be square"));
        }
        Ok(ConfusionMatrix { classes, counts })
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn record(&mut self, actual: &str, predicted: &str) -> Result<()> {
        let a = self.index_of(actual)?;
        let p = self.index_of(predicted)?;
        self.counts[a][p] += 1;
        Ok(())
    }

    fn index_of(&self, class: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c == class)
            .ok_or_else(|| Error::UnknownGenre(class.to_string()))
    }

    pub fn merge(&mut self, other: &ConfusionMatrix) -> Result<()> {
        if self.classes != other.classes {
            return Err(Error::invalid("cannot merge matrices over different classes"));
        }
        for (mine, theirs) in self.counts.iter_mut().zip(&other.counts) {
            for (m, t) in mine.iter_mut().zip(theirs) {
                *m += t;
            }
        }
        Ok(())
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.classes.len()).map(|i| self.counts[i][i]).sum()
    }
}

/// Precision, recall, and F1 for one class with non-zero support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub class: String,
    pub support: u64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Per-class metrics plus macro- and micro-averaged F1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    /// Classes with zero support are absent.
    pub per_class: Vec<ClassMetrics>,
    /// Unweighted mean F1 over present classes.
    pub macro_f1: f64,
    /// F1 from globally pooled counts; equals accuracy for single-label
    /// multiclass evaluation.
    pub micro_f1: f64,
}

impl MetricsReport {
    pub fn class(&self, name: &str) -> Option<&ClassMetrics> {
        self.per_class.iter().find(|c| c.class == name)
    }
}

/// Compute per-class and averaged F1 from a confusion matrix.
pub fn f1_scores(cm: &ConfusionMatrix) -> Result<MetricsReport> {
    let total = cm.total();
    if total == 0 {
        return Err(Error::invalid("empty confusion matrix"));
    }
    let n = cm.classes.len();
    let mut per_class = Vec::new();
    for i in 0..n {
        let support: u64 = cm.counts[i].iter().sum();
        if support == 0 {
            continue;
        }
        let tp = cm.counts[i][i] as f64;
        let predicted: u64 = (0..n).map(|a| cm.counts[a][i]).sum();
        let precision = if predicted == 0 { 0.0 } else { tp / predicted as f64 };
        let recall = tp / support as f64;
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        per_class.push(ClassMetrics {
            class: cm.classes[i].clone(),
            support,
            precision,
            recall,
            f1,
        });
    }
    let macro_f1 = per_class.iter().map(|c| c.f1).sum::<f64>() / per_class.len() as f64;
    let micro_f1 = cm.trace() as f64 / total as f64;
    Ok(MetricsReport {
        per_class,
        macro_f1,
        micro_f1,
    })
}

/// Train and test index sets for one cross-validation fold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Seed-deterministic k-fold split over item indices.
pub(crate) fn kfold_indices(n: usize, k: usize, seed: u64) -> Result<Vec<Fold>> {
    if k < 2 {
        return Err(Error::invalid("k must be at least 2"));
    }
    if k > n {
        return Err(Error::invalid(format!("k = {k} exceeds {n} items")));
    }
    let mut indices: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    indices.shuffle(&mut rng);

    let base = n / k;
    let extra = n % k;
    let mut folds = Vec::with_capacity(k);
    let mut start = 0;
    for fold_idx in 0..k {
        let size = base + usize::from(fold_idx < extra);
        let test: Vec<usize> = indices[start..start + size].to_vec();
        let train: Vec<usize> = indices[..start]
            .iter()
            .chain(&indices[start + size..])
            .copied()
            .collect();
        folds.push(Fold { train, test });
        start += size;
    }
    Ok(folds)
}

/// K-fold partitions over volumes. Pages of one volume never straddle the
/// train/test boundary; splitting by page would compare authors to
/// themselves and overstate accuracy.
pub fn kfold_by_volume(volumes: &[Volume], k: usize, seed: u64) -> Result<Vec<Fold>> {
    kfold_indices(volumes.len(), k, seed)
}

/// Raw and smoothed results of one cross-validated pipeline run.
#[derive(Debug, Clone)]
pub struct CrossvalOutcome {
    pub raw_matrix: ConfusionMatrix,
    pub smoothed_matrix: ConfusionMatrix,
    pub raw: MetricsReport,
    pub smoothed: MetricsReport,
}

/// Volume-partitioned cross-validation of the full page pipeline.
///
/// Each fold trains its own vocabulary, classifier bank, transition model,
/// and class priors on the train volumes only, then scores raw one-vs-all
/// and smoothed labels on the test pages. Confusion counts are pooled
/// across folds per condition.
pub fn crossvalidate_pipeline(
    volumes: &[Volume],
    taxonomy: &GenreTaxonomy,
    k: usize,
    seed: u64,
    config: &PipelineConfig,
) -> Result<CrossvalOutcome> {
    for volume in volumes {
        if volume.gold_labels.is_none() {
            return Err(Error::invalid(format!(
                "volume {} has no gold labels",
                volume.volume_id
            )));
        }
    }
    let folds = kfold_by_volume(volumes, k, seed)?;
    let classes = taxonomy.leaf_vec();
    let mut raw_matrix = ConfusionMatrix::new(classes.clone());
    let mut smoothed_matrix = ConfusionMatrix::new(classes);

    for fold in &folds {
        let train: Vec<Volume> = fold.train.iter().map(|&i| volumes[i].clone()).collect();
        let pipeline = PagePipeline::train(&train, taxonomy, config)?;
        let smoothed: Vec<_> = fold
            .test
            .par_iter()
            .map(|&i| {
                smooth_volume(
                    &pipeline.bank,
                    &pipeline.hmm,
                    &pipeline.class_priors,
                    &volumes[i],
                    &pipeline.vocab,
                )
                .map(|s| (i, s))
            })
            .collect::<Result<_>>()?;
        for (i, result) in smoothed {
            let gold = volumes[i].gold_labels.as_ref().expect("checked above");
            for (page, gold_label) in gold.iter().enumerate() {
                raw_matrix.record(gold_label, &result.raw_labels[page])?;
                smoothed_matrix.record(gold_label, &result.smoothed_labels[page])?;
            }
        }
    }

    let raw = f1_scores(&raw_matrix)?;
    let smoothed = f1_scores(&smoothed_matrix)?;
    Ok(CrossvalOutcome {
        raw_matrix,
        smoothed_matrix,
        raw,
        smoothed,
    })
}

/// One bin of a trend series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendBin {
    pub start_year: i32,
    pub n: usize,
    pub mean: f64,
    /// Standard error of the mean: sample sd / sqrt(n); 0 when n = 1.
    pub stderr: f64,
}

/// Disjoint, ordered year bins with per-bin mean and standard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendSeries {
    pub bins: Vec<TrendBin>,
}

/// Bin per-volume values by year. Bins are aligned to multiples of
/// `bin_width` from the minimum year; empty bins are omitted.
pub fn time_binned_means(values: &[f64], years: &[i32], bin_width: i32) -> Result<TrendSeries> {
    if values.is_empty() {
        return Err(Error::invalid("no values to bin"));
    }
    if values.len() != years.len() {
        return Err(Error::DimensionMismatch {
            expected: values.len(),
            got: years.len(),
        });
    }
    if bin_width < 1 {
        return Err(Error::invalid("bin width must be at least 1"));
    }
    let min_year = *years.iter().min().expect("non-empty");
    let mut grouped: BTreeMap<i32, Vec<f64>> = BTreeMap::new();
    for (&value, &year) in values.iter().zip(years) {
        let bin = min_year + (year - min_year) / bin_width * bin_width;
        grouped.entry(bin).or_default().push(value);
    }
    let bins = grouped
        .into_iter()
        .map(|(start_year, vs)| {
            let n = vs.len();
            let mean = vs.iter().sum::<f64>() / n as f64;
            let stderr = if n > 1 {
                let var = vs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
                (var / n as f64).sqrt()
            } else {
                0.0
            };
            TrendBin {
                start_year,
                n,
                mean,
                stderr,
            }
        })
        .collect();
    Ok(TrendSeries { bins })
}
