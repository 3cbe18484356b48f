//! Corpus handling: volumes on disk, tokenization, vocabularies, and
//! page-level feature extraction.

pub mod features;
pub mod tokenize;
pub mod vocab;
pub mod volume;

pub use features::{
    capline_density, extract_page_counts, extract_page_features, page_feature_names,
    volume_counts, volume_feature_vector, FeatureVector, STRUCTURAL_FEATURES,
};
pub use tokenize::{Tokenizer, ARABIC_NUMBER, PERSONAL_NAME, ROMAN_NUMERAL};
pub use vocab::{build_vocabulary, Vocabulary};
pub use volume::{load_volumes, save_volumes, Page, Volume, MAX_YEAR, MIN_YEAR};
