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

//! Train/test protocols, accuracy grids and confusion matrices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::naive_bayes::{GaussianNb, LabeledDataset};
use crate::error::{Error, Result};
use crate::features::{FeatureVector, Projection};

/// Repeats of the random `k`-per-class split.
pub const DEFAULT_REPEATS: usize = 10;
/// Folds of the stratified 25:75 protocol.
pub const DEFAULT_FOLDS: usize = 3;
pub const DEFAULT_TRAIN_FRACTION: f64 = 0.25;

fn split_rng(seed: u64, repeat: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(repeat as u64 + 1);
    rng
}

/// Picks `k` random training samples of every class; the rest is the test
/// set. Both index lists are sorted.
pub fn split_k_per_class(ds: &LabeledDataset, k: usize, rng: &mut impl Rng) -> Result<(Vec<usize>, Vec<usize>)> {
    split_by(ds, |_| k, rng)
}

/// Stratified split keeping `round(fraction * n_c)` (at least 2) samples of
/// each class for training.
pub fn split_fraction(ds: &LabeledDataset, fraction: f64, rng: &mut impl Rng) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::Parameter(format!("training fraction {fraction} not in (0, 1)")));
    }
    split_by(ds, |n| ((fraction * n as f64).round() as usize).max(2), rng)
}

fn split_by(
    ds: &LabeledDataset,
    k_of: impl Fn(usize) -> usize,
    rng: &mut impl Rng,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (c, mut idx) in ds.class_indices().into_iter().enumerate() {
        let k = k_of(idx.len());
        if k >= idx.len() {
            return Err(Error::Parameter(format!(
                "class {} has {} samples, cannot train on {k}",
                ds.class_names()[c],
                idx.len()
            )));
        }
        idx.shuffle(rng);
        train.extend_from_slice(&idx[..k]);
        test.extend_from_slice(&idx[k..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

/// Fraction of predictions equal to the truth.
pub fn accuracy(predicted: &[usize], truth: &[usize]) -> f64 {
    let hits = predicted.iter().zip(truth).filter(|(a, b)| a == b).count();
    hits as f64 / truth.len() as f64
}

/// `c x c` counts; entry `(i, j)` counts samples of class `i` assigned to `j`.
pub fn confusion_matrix(model: &GaussianNb, test: &LabeledDataset) -> Result<Vec<Vec<usize>>> {
    let c = test.n_classes();
    let mut m = vec![vec![0usize; c]; c];
    for (x, &truth) in test.samples().iter().zip(test.labels()) {
        m[truth][model.predict_one(x)?] += 1;
    }
    Ok(m)
}

/// Fits on `train` rows and scores on `test` rows.
pub fn fit_and_score(ds: &LabeledDataset, train: &[usize], test: &[usize]) -> Result<(f64, Vec<Vec<usize>>)> {
    let model = GaussianNb::fit(&ds.subset(train))?;
    let test = ds.subset(test);
    let cm = confusion_matrix(&model, &test)?;
    let hits: usize = (0..cm.len()).map(|i| cm[i][i]).sum();
    Ok((hits as f64 / test.len() as f64, cm))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub accuracies: Vec<f64>,
    pub mean_accuracy: f64,
    /// Confusion counts summed over folds.
    pub confusion: Vec<Vec<usize>>,
}

/// `folds` independent stratified splits at the given training fraction,
/// the 25:75 protocol with three folds by default.
pub fn cross_validate(ds: &LabeledDataset, folds: usize, train_fraction: f64, seed: u64) -> Result<CrossValidation> {
    if folds == 0 {
        return Err(Error::Parameter("at least one fold is required".into()));
    }
    let c = ds.n_classes();
    let mut confusion = vec![vec![0usize; c]; c];
    let mut accuracies = Vec::with_capacity(folds);
    for f in 0..folds {
        let (train, test) = split_fraction(ds, train_fraction, &mut split_rng(seed, f))?;
        let (acc, cm) = fit_and_score(ds, &train, &test)?;
        accuracies.push(acc);
        for (row, add) in confusion.iter_mut().zip(cm) {
            for (a, b) in row.iter_mut().zip(add) {
                *a += b;
            }
        }
    }
    let mean_accuracy = accuracies.iter().sum::<f64>() / folds as f64;
    Ok(CrossValidation {
        accuracies,
        mean_accuracy,
        confusion,
    })
}

/// Mean accuracy of `repeats` random `k`-per-class splits. Repeat `r` uses
/// the same split for every call with the same seed.
pub fn repeated_accuracy(ds: &LabeledDataset, k: usize, repeats: usize, seed: u64) -> Result<Vec<f64>> {
    (0..repeats)
        .map(|r| {
            let (train, test) = split_k_per_class(ds, k, &mut split_rng(seed, r))?;
            Ok(fit_and_score(ds, &train, &test)?.0)
        })
        .collect()
}

/// Accuracy of uniformly random guessing under the `k`-per-class protocol.
pub fn random_baseline(ds: &LabeledDataset, k: usize, repeats: usize, seed: u64) -> Result<f64> {
    let c = ds.n_classes();
    let mut total = 0.0;
    for r in 0..repeats {
        let mut rng = split_rng(seed, r);
        let (_, test) = split_k_per_class(ds, k, &mut rng)?;
        let truth: Vec<usize> = test.iter().map(|&i| ds.labels()[i]).collect();
        let guess: Vec<usize> = truth.iter().map(|_| rng.random_range(0..c)).collect();
        total += accuracy(&guess, &truth);
    }
    Ok(total / repeats as f64)
}

/// Feature vectors of labelled samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSamples {
    pub class_names: Vec<String>,
    pub labels: Vec<usize>,
    pub vectors: Vec<FeatureVector>,
}

impl FeatureSamples {
    /// Dataset of the projected `X_q` (taken from the stored vectors).
    pub fn dataset(&self, q: u32, projection: Projection) -> Result<LabeledDataset> {
        let mut names = Vec::new();
        let mut rows = Vec::with_capacity(self.vectors.len());
        for v in &self.vectors {
            if v.order_q < q {
                return Err(Error::Parameter(format!(
                    "feature vector of order {} cannot provide X_{q}",
                    v.order_q
                )));
            }
            let p = v.restrict(q).project(projection);
            if names.is_empty() {
                names = p.names;
            }
            rows.push(p.values);
        }
        LabeledDataset::new(rows, self.labels.clone(), names, self.class_names.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSettings {
    pub k: usize,
    pub repeats: usize,
    pub q_values: Vec<u32>,
    pub projections: Vec<Projection>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyCell {
    pub projection: Projection,
    pub q: u32,
    pub k: usize,
    pub mean_accuracy: f64,
    pub std_accuracy: f64,
    pub accuracies: Vec<f64>,
}

/// Accuracy for every `(projection, q)`: the mean over `repeats` random
/// `k`-per-class splits, shared by all cells.
pub fn run_experiment(samples: &FeatureSamples, settings: &ExperimentSettings) -> Result<Vec<AccuracyCell>> {
    if settings.repeats == 0 {
        return Err(Error::Parameter("at least one repeat is required".into()));
    }
    let cells: Vec<(Projection, u32)> = settings
        .projections
        .iter()
        .flat_map(|&p| settings.q_values.iter().map(move |&q| (p, q)))
        .collect();
    cells
        .par_iter()
        .map(|&(projection, q)| {
            let ds = samples.dataset(q, projection)?;
            let accuracies = repeated_accuracy(&ds, settings.k, settings.repeats, settings.seed)?;
            let n = accuracies.len() as f64;
            let mean = accuracies.iter().sum::<f64>() / n;
            let var = accuracies.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / n;
            Ok(AccuracyCell {
                projection,
                q,
                k: settings.k,
                mean_accuracy: mean,
                std_accuracy: var.sqrt(),
                accuracies,
            })
        })
        .collect()
}
