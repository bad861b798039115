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

//! Error type shared by every module of the crate.

use std::path::PathBuf;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Configuration(String),

    #[error("invalid multi-order {order:?}: {reason}")]
    MultiOrder { order: Vec<u32>, reason: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Random sequential adsorption gave up before placing every object.
    #[error("saturation after {attempts} rejected attempts: placed {placed} of {requested} objects")]
    Saturation {
        placed: usize,
        requested: usize,
        attempts: usize,
    },

    #[error("brute-force oracle refused: {0}")]
    OracleLimit(String),

    #[error("training error: {0}")]
    Training(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("logarithm of non-positive argument: (1 - e33) = {factor_e33}, (1 + e88) = {factor_e88}")]
    LogDomain { factor_e33: f64, factor_e88: f64 },

    #[error("fit did not converge (residual {residual:e})")]
    NonConvergence { residual: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
