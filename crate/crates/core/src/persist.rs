//! Versioned JSON model files.
//!
//! Every model file carries `kind` (naive_bayes | logistic | bank), a
//! `version`, `feature_names`, and kind-specific `parameters`. Finite
//! values round-trip bit-exactly through save/load. Ensembles get their
//! own file listing slices by model path.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classify::{CalibrationMap, GenreClassifierBank, LogisticModel, NaiveBayesModel, PageModel};
use crate::ensemble::{TimeSlice, TimeSlicedEnsemble, VolumeModel, WeightShape};
use crate::error::{Error, Result};
use crate::taxonomy::GenreTaxonomy;

pub const MODEL_FILE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct LogisticParams {
    weights: Vec<f64>,
    bias: f64,
    lambda: f64,
    means: Vec<f64>,
    scales: Vec<f64>,
    converged: bool,
    iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct NaiveBayesParams {
    classes: Vec<String>,
    log_priors: Vec<f64>,
    log_likelihoods: Vec<Vec<f64>>,
    alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    calibration: Option<CalibrationMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    positive_class: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct BankParams {
    taxonomy: BTreeMap<String, String>,
    classifiers: BTreeMap<String, PageModel>,
}

/// On-disk model envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ModelFile {
    NaiveBayes {
        version: u32,
        feature_names: Vec<String>,
        parameters: NaiveBayesParams,
    },
    Logistic {
        version: u32,
        feature_names: Vec<String>,
        parameters: LogisticParams,
    },
    Bank {
        version: u32,
        feature_names: Vec<String>,
        parameters: BankParams,
    },
}

/// Any trained model that can live in a model file.
#[derive(Debug, Clone, PartialEq)]
pub enum TrainedModel {
    NaiveBayes {
        model: NaiveBayesModel,
        calibration: Option<CalibrationMap>,
        positive_class: Option<String>,
    },
    Logistic(LogisticModel),
    Bank(GenreClassifierBank),
}

impl TrainedModel {
    pub fn kind(&self) -> &'static str {
        match self {
            TrainedModel::NaiveBayes { .. } => "naive_bayes",
            TrainedModel::Logistic(_) => "logistic",
            TrainedModel::Bank(_) => "bank",
        }
    }

    /// View as a volume-level classifier, when the file holds one.
    pub fn into_volume_model(self) -> Result<VolumeModel> {
        match self {
            TrainedModel::Logistic(model) => Ok(VolumeModel::Logistic(model)),
            TrainedModel::NaiveBayes {
                model,
                calibration,
                positive_class,
            } => {
                let positive_class = positive_class
                    .ok_or_else(|| Error::invalid("model file lacks positive_class"))?;
                Ok(VolumeModel::NaiveBayes {
                    model,
                    calibration: calibration
                        .ok_or_else(|| Error::invalid("model file lacks calibration"))?,
                    positive_class,
                })
            }
            TrainedModel::Bank(_) => Err(Error::invalid(
                "expected a volume-level model, found a classifier bank",
            )),
        }
    }

    pub fn into_bank(self) -> Result<GenreClassifierBank> {
        match self {
            TrainedModel::Bank(bank) => Ok(bank),
            other => Err(Error::invalid(format!(
                "expected a classifier bank, found kind {}",
                other.kind()
            ))),
        }
    }
}

impl From<VolumeModel> for TrainedModel {
    fn from(model: VolumeModel) -> Self {
        match model {
            VolumeModel::Logistic(m) => TrainedModel::Logistic(m),
            VolumeModel::NaiveBayes {
                model,
                calibration,
                positive_class,
            } => TrainedModel::NaiveBayes {
                model,
                calibration: Some(calibration),
                positive_class: Some(positive_class),
            },
        }
    }
}

fn to_file(model: &TrainedModel) -> ModelFile {
    match model {
        TrainedModel::Logistic(m) => ModelFile::Logistic {
            version: MODEL_FILE_VERSION,
            feature_names: m.feature_names.clone(),
            parameters: LogisticParams {
                weights: m.weights.clone(),
                bias: m.bias,
                lambda: m.lambda,
                means: m.means.clone(),
                scales: m.scales.clone(),
                converged: m.converged,
                iterations: m.iterations,
            },
        },
        TrainedModel::NaiveBayes {
            model,
            calibration,
            positive_class,
        } => ModelFile::NaiveBayes {
            version: MODEL_FILE_VERSION,
            feature_names: model.feature_names.clone(),
            parameters: NaiveBayesParams {
                classes: model.classes.clone(),
                log_priors: model.log_priors.clone(),
                log_likelihoods: model.log_likelihoods.clone(),
                alpha: model.alpha,
                calibration: *calibration,
                positive_class: positive_class.clone(),
            },
        },
        TrainedModel::Bank(bank) => ModelFile::Bank {
            version: MODEL_FILE_VERSION,
            feature_names: bank.feature_names.clone(),
            parameters: BankParams {
                taxonomy: bank.taxonomy.as_map().clone(),
                classifiers: bank.classifiers.clone(),
            },
        },
    }
}

fn from_file(file: ModelFile, path: &Path) -> Result<TrainedModel> {
    let check_version = |version: u32| -> Result<()> {
        if version != MODEL_FILE_VERSION {
            return Err(Error::invalid(format!(
                "{}: unsupported model file version {version}",
                path.display()
            )));
        }
        Ok(())
    };
    match file {
        ModelFile::Logistic {
            version,
            feature_names,
            parameters,
        } => {
            check_version(version)?;
            Ok(TrainedModel::Logistic(LogisticModel {
                feature_names,
                weights: parameters.weights,
                bias: parameters.bias,
                lambda: parameters.lambda,
                means: parameters.means,
                scales: parameters.scales,
                converged: parameters.converged,
                iterations: parameters.iterations,
            }))
        }
        ModelFile::NaiveBayes {
            version,
            feature_names,
            parameters,
        } => {
            check_version(version)?;
            Ok(TrainedModel::NaiveBayes {
                model: NaiveBayesModel {
                    classes: parameters.classes,
                    log_priors: parameters.log_priors,
                    log_likelihoods: parameters.log_likelihoods,
                    alpha: parameters.alpha,
                    feature_names,
                },
                calibration: parameters.calibration,
                positive_class: parameters.positive_class,
            })
        }
        ModelFile::Bank {
            version,
            feature_names,
            parameters,
        } => {
            check_version(version)?;
            let bank = GenreClassifierBank {
                taxonomy: GenreTaxonomy::from_map(parameters.taxonomy)?,
                feature_names,
                classifiers: parameters.classifiers,
            };
            bank.validate()?;
            Ok(TrainedModel::Bank(bank))
        }
    }
}

pub fn save_model(path: &Path, model: &TrainedModel) -> Result<()> {
    let file = to_file(model);
    let json = serde_json::to_string_pretty(&file).expect("model serializes");
    fs::write(path, json)?;
    Ok(())
}

pub fn load_model(path: &Path) -> Result<TrainedModel> {
    let text = fs::read_to_string(path)?;
    let file: ModelFile =
        serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))?;
    from_file(file, path)
}

/// Ensemble file: slices by model path, plus the weighting shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleFile {
    pub slices: Vec<EnsembleSliceEntry>,
    pub weighting: WeightShape,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSliceEntry {
    pub start: i32,
    pub end: i32,
    pub model_path: String,
}

pub fn save_ensemble_file(path: &Path, file: &EnsembleFile) -> Result<()> {
    let json = serde_json::to_string_pretty(file).expect("ensemble serializes");
    fs::write(path, json)?;
    Ok(())
}

/// Load an ensemble file and its slice models. Relative model paths
/// resolve against the ensemble file's directory.
pub fn load_ensemble(path: &Path) -> Result<TimeSlicedEnsemble> {
    let text = fs::read_to_string(path)?;
    let file: EnsembleFile =
        serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut slices = Vec::with_capacity(file.slices.len());
    for entry in &file.slices {
        let model_path = base.join(&entry.model_path);
        let model = load_model(&model_path)?.into_volume_model()?;
        slices.push(TimeSlice {
            start_year: entry.start,
            end_year: entry.end,
            model,
        });
    }
    TimeSlicedEnsemble::new(slices, file.weighting)
}
