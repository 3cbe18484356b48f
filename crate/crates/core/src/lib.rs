//! Genre mapping for collections of multi-page, dated volumes.
//!
//! The pieces fit together as a pipeline: [`corpus`] loads volumes and
//! turns pages into feature vectors; [`classify`] trains probabilistic
//! per-genre classifiers; [`hmm`] smooths per-page predictions with a
//! hidden Markov model over genre transitions, segmenting internally
//! heterogeneous volumes; [`ensemble`] blends classifiers trained on
//! overlapping time slices to handle historically mutable genres;
//! [`selection`] and [`stats`] supply Wilcoxon rank-sum feature selection
//! and correlation mining; [`eval`] provides volume-partitioned
//! cross-validation, F1 metrics, and time-binned trend series; [`synth`]
//! generates seeded corpora with known ground truth for desk-scale
//! verification.

pub mod classify;
pub mod corpus;
pub mod ensemble;
pub mod error;
pub mod eval;
pub mod hmm;
pub mod persist;
pub mod pipeline;
pub mod segment;
pub mod selection;
pub mod stats;
pub mod synth;
pub mod taxonomy;

pub use classify::{
    calibrate, classify_page_one_vs_all, train_bank, train_logistic, train_naive_bayes,
    CalibrationMap, ClassifierKind, GenreClassifierBank, LogisticModel, NaiveBayesModel,
    PageDecision, PageModel,
};
pub use corpus::{
    build_vocabulary, extract_page_features, load_volumes, save_volumes, FeatureVector, Page,
    Tokenizer, Vocabulary, Volume,
};
pub use ensemble::{
    model_agreement, slice_weight, AgreementResult, EnsemblePrediction, TimeSlice,
    TimeSlicedEnsemble, VolumeModel, WeightShape,
};
pub use error::{Error, Result};
pub use eval::{
    crossvalidate_pipeline, f1_scores, kfold_by_volume, time_binned_means, ClassMetrics,
    ConfusionMatrix, CrossvalOutcome, Fold, MetricsReport, TrendBin, TrendSeries,
};
pub use hmm::{
    class_priors_from_volumes, estimate_transition_matrix, smooth_volume, viterbi_decode,
    DecodedVolume, HmmModel, SmoothedVolume,
};
pub use pipeline::{PagePipeline, PipelineConfig};
pub use segment::{classify_lines, extract_page_ranges, LineClass, LineLabel, LineRuleConfig, PageRange};
pub use selection::{
    mine_correlations, pronoun_ratio, select_discriminative_features, CorrelationRecord,
    FeatureSelection, PronounLexicon,
};
pub use stats::{pearson_correlation, wilcoxon_rank_sum, Direction, RankSumResult};
pub use synth::{generate_corpus, pseudo_word_lexicon, CorpusSpec, EraDrift, GenreGenerator};
pub use taxonomy::GenreTaxonomy;
