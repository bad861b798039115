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

//! Gaussian naive Bayes classifier.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Feature matrix with class labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    samples: Vec<Vec<f64>>,
    labels: Vec<usize>,
    feature_names: Vec<String>,
    class_names: Vec<String>,
}

impl LabeledDataset {
    pub fn new(
        samples: Vec<Vec<f64>>,
        labels: Vec<usize>,
        feature_names: Vec<String>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if samples.len() != labels.len() {
            return Err(Error::Dimension {
                expected: samples.len(),
                got: labels.len(),
            });
        }
        if class_names.len() < 2 {
            return Err(Error::Parameter("at least two classes are required".into()));
        }
        let d = feature_names.len();
        for row in &samples {
            if row.len() != d {
                return Err(Error::Dimension {
                    expected: d,
                    got: row.len(),
                });
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::Parameter("features must be finite".into()));
            }
        }
        if let Some(l) = labels.iter().find(|l| **l >= class_names.len()) {
            return Err(Error::Parameter(format!(
                "label {l} out of range for {} classes",
                class_names.len()
            )));
        }
        Ok(LabeledDataset {
            samples,
            labels,
            feature_names,
            class_names,
        })
    }

    /// Dataset with generated names `f0, f1, ...` and `c0, c1, ...`.
    pub fn unnamed(samples: Vec<Vec<f64>>, labels: Vec<usize>, n_classes: usize) -> Result<Self> {
        let d = samples.first().map_or(0, Vec::len);
        Self::new(
            samples,
            labels,
            (0..d).map(|i| format!("f{i}")).collect(),
            (0..n_classes).map(|i| format!("c{i}")).collect(),
        )
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.n_classes()];
        for &l in &self.labels {
            c[l] += 1;
        }
        c
    }

    /// Sample indices of every class, in dataset order.
    pub fn class_indices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_classes()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l].push(i);
        }
        out
    }

    pub fn subset(&self, rows: &[usize]) -> LabeledDataset {
        LabeledDataset {
            samples: rows.iter().map(|&i| self.samples[i].clone()).collect(),
            labels: rows.iter().map(|&i| self.labels[i]).collect(),
            feature_names: self.feature_names.clone(),
            class_names: self.class_names.clone(),
        }
    }

    pub fn select_features(&self, columns: &[usize]) -> LabeledDataset {
        LabeledDataset {
            samples: self
                .samples
                .iter()
                .map(|row| columns.iter().map(|&c| row[c]).collect())
                .collect(),
            labels: self.labels.clone(),
            feature_names: columns.iter().map(|&c| self.feature_names[c].clone()).collect(),
            class_names: self.class_names.clone(),
        }
    }
}

/// Per-class Gaussian likelihoods with independent features.
///
/// Variances use the population convention and are floored at
/// `epsilon = 1e-9` times the largest per-feature variance of the whole
/// training set (or `1e-9` if every feature is constant).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNb {
    pub means: Vec<Vec<f64>>,
    pub variances: Vec<Vec<f64>>,
    pub priors: Vec<f64>,
    pub epsilon: f64,
}

pub const VARIANCE_FLOOR_FACTOR: f64 = 1e-9;

fn mean_var<'a>(rows: impl Iterator<Item = &'a [f64]> + Clone, col: usize) -> (f64, f64) {
    let n = rows.clone().count() as f64;
    let mean = rows.clone().map(|r| r[col]).sum::<f64>() / n;
    let var = rows.map(|r| (r[col] - mean).powi(2)).sum::<f64>() / n;
    (mean, var)
}

impl GaussianNb {
    pub fn fit(train: &LabeledDataset) -> Result<Self> {
        let counts = train.class_counts();
        if let Some((c, n)) = counts.iter().enumerate().find(|(_, n)| **n < 2) {
            return Err(Error::Training(format!(
                "class {} has {n} training samples, at least 2 are needed",
                train.class_names()[c]
            )));
        }
        let d = train.n_features();
        let all = train.samples().iter().map(Vec::as_slice);
        let max_var = (0..d).map(|j| mean_var(all.clone(), j).1).fold(0.0, f64::max);
        let epsilon = if max_var > 0.0 {
            VARIANCE_FLOOR_FACTOR * max_var
        } else {
            VARIANCE_FLOOR_FACTOR
        };

        let groups = train.class_indices();
        let mut means = Vec::with_capacity(groups.len());
        let mut variances = Vec::with_capacity(groups.len());
        for idx in &groups {
            let rows = idx.iter().map(|&i| train.samples()[i].as_slice());
            let (m, v): (Vec<f64>, Vec<f64>) = (0..d)
                .map(|j| {
                    let (m, v) = mean_var(rows.clone(), j);
                    (m, v.max(epsilon))
                })
                .unzip();
            means.push(m);
            variances.push(v);
        }
        let total = train.len() as f64;
        let priors = counts.iter().map(|&n| n as f64 / total).collect();
        Ok(GaussianNb {
            means,
            variances,
            priors,
            epsilon,
        })
    }

    pub fn n_classes(&self) -> usize {
        self.priors.len()
    }

    pub fn n_features(&self) -> usize {
        self.means.first().map_or(0, Vec::len)
    }

    /// Unnormalized log posteriors `log prior + sum log N(x; mu, sigma^2)`.
    pub fn log_posteriors(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n_features() {
            return Err(Error::Dimension {
                expected: self.n_features(),
                got: x.len(),
            });
        }
        Ok((0..self.n_classes())
            .map(|c| {
                let mut s = self.priors[c].ln();
                for ((xi, m), v) in x.iter().zip(&self.means[c]).zip(&self.variances[c]) {
                    s -= 0.5 * (2.0 * PI * v).ln() + (xi - m).powi(2) / (2.0 * v);
                }
                s
            })
            .collect())
    }

    /// Class with the largest log posterior; ties go to the lowest index.
    pub fn predict_one(&self, x: &[f64]) -> Result<usize> {
        let lp = self.log_posteriors(x)?;
        Ok(argmax(&lp))
    }

    pub fn predict(&self, samples: &[Vec<f64>]) -> Result<Vec<usize>> {
        samples.iter().map(|x| self.predict_one(x)).collect()
    }
}

pub(crate) fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate().skip(1) {
        if *x > v[best] {
            best = i;
        }
    }
    best
}
