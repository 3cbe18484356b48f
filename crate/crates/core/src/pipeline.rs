//! The trained page pipeline: vocabulary, classifier bank, transition
//! model, and class priors, trained together on one labeled corpus.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classify::{train_bank, ClassifierKind, GenreClassifierBank};
use crate::corpus::{build_vocabulary, Vocabulary, Volume};
use crate::error::Result;
use crate::hmm::{class_priors_from_volumes, estimate_transition_matrix, smooth_volume, HmmModel,
    SmoothedVolume};
use crate::taxonomy::GenreTaxonomy;

/// Knobs for pipeline training.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    /// Vocabulary size for page features.
    pub vocab_size: usize,
    pub classifier: ClassifierKind,
    /// Transition and prior smoothing strength.
    pub kappa: f64,
    /// Seed for internal calibration splits.
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            vocab_size: 250,
            classifier: ClassifierKind::default(),
            kappa: 0.5,
            seed: 0,
        }
    }
}

/// Everything needed to label and smooth an unseen volume.
#[derive(Debug, Clone)]
pub struct PagePipeline {
    pub vocab: Vocabulary,
    pub bank: GenreClassifierBank,
    pub hmm: HmmModel,
    pub class_priors: BTreeMap<String, f64>,
}

impl PagePipeline {
    /// Train vocabulary, bank, transition model, and priors on labeled
    /// volumes.
    pub fn train(
        volumes: &[Volume],
        taxonomy: &GenreTaxonomy,
        config: &PipelineConfig,
    ) -> Result<Self> {
        let vocab = build_vocabulary(volumes, config.vocab_size)?;
        let bank = train_bank(volumes, &vocab, taxonomy, &config.classifier, config.seed)?;
        let hmm = estimate_transition_matrix(volumes, taxonomy, config.kappa)?;
        let class_priors = class_priors_from_volumes(volumes, taxonomy, config.kappa)?;
        Ok(PagePipeline {
            vocab,
            bank,
            hmm,
            class_priors,
        })
    }

    /// Raw one-vs-all labels plus the Viterbi-smoothed sequence for one
    /// volume the pipeline has not trained on.
    pub fn smooth_volume(&self, volume: &Volume) -> Result<SmoothedVolume> {
        smooth_volume(&self.bank, &self.hmm, &self.class_priors, volume, &self.vocab)
    }
}
