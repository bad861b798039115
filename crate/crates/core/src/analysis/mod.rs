// Copyright 2026 The structsums developers
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.

//! Classification experiments and derived measures.

mod experiment;
mod fit;
mod irregularity;
mod naive_bayes;
mod scan;

pub use experiment::{
    accuracy, confusion_matrix, cross_validate, fit_and_score, random_baseline, repeated_accuracy,
    run_experiment, split_fraction, split_k_per_class, AccuracyCell, CrossValidation, ExperimentSettings,
    FeatureSamples, DEFAULT_FOLDS, DEFAULT_REPEATS, DEFAULT_TRAIN_FRACTION,
};
pub use fit::{fit_log_curve, LogFit};
pub use irregularity::{irregularity, irregularity_from_sums, Irregularity};
pub use naive_bayes::{GaussianNb, LabeledDataset, VARIANCE_FLOOR_FACTOR};
pub use scan::{two_feature_scan, PairScore};
