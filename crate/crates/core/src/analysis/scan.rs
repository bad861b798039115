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

//! Exhaustive search over pairs of features.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::experiment::cross_validate;
use super::naive_bayes::LabeledDataset;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairScore {
    pub first: String,
    pub second: String,
    pub columns: (usize, usize),
    pub mean_accuracy: f64,
}

/// Cross-validated accuracy of every pair of columns, best first. Ties keep
/// column order. All pairs use the same folds.
pub fn two_feature_scan(ds: &LabeledDataset, folds: usize, train_fraction: f64, seed: u64) -> Result<Vec<PairScore>> {
    let d = ds.n_features();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let mut out = pairs
        .par_iter()
        .map(|&(i, j)| {
            let cv = cross_validate(&ds.select_features(&[i, j]), folds, train_fraction, seed)?;
            Ok(PairScore {
                first: ds.feature_names()[i].clone(),
                second: ds.feature_names()[j].clone(),
                columns: (i, j),
                mean_accuracy: cv.mean_accuracy,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| {
        b.mean_accuracy
            .total_cmp(&a.mean_accuracy)
            .then(a.columns.cmp(&b.columns))
    });
    Ok(out)
}
