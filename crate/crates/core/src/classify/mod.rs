//! Probabilistic genre classifiers: multinomial naive Bayes with Platt
//! calibration, L2-regularized logistic regression, and the per-leaf
//! one-vs-all classifier bank.

pub mod bank;
pub mod calibration;
pub mod logistic;
pub mod naive_bayes;
pub mod optimize;

pub use bank::{
    classify_page_one_vs_all, train_bank, ClassifierKind, GenreClassifierBank, PageDecision,
    PageModel,
};
pub use calibration::{calibrate, CalibrationMap};
pub use logistic::{loss_and_gradient, train_logistic, LogisticModel};
pub use naive_bayes::{train_naive_bayes, NaiveBayesModel};
pub use optimize::{gradient_descent, sigmoid, Minimization};
