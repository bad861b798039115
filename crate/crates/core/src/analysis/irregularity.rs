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

//! Irregularity measure of a configuration.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::configuration::DiskConfiguration;
use crate::eisenstein::EisensteinEvaluator;
use crate::error::{Error, Result};
use crate::multiorder::MultiOrder;
use crate::structsum::{eval_sum, SumCache};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Irregularity {
    pub mu: f64,
    pub e33: Complex64,
    pub e88: Complex64,
}

/// `log((1 - Re e33) (1 + Re e88))`.
pub fn irregularity_from_sums(e33: f64, e88: f64) -> Result<f64> {
    let a = 1.0 - e33;
    let b = 1.0 + e88;
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::LogDomain {
            factor_e33: a,
            factor_e88: b,
        });
    }
    Ok((a * b).ln())
}

/// Irregularity `mu` of `config`; zero for the hexagonal array. The
/// imaginary parts of both sums are returned for inspection.
pub fn irregularity(config: &DiskConfiguration, ev: &EisensteinEvaluator, cache: &SumCache) -> Result<Irregularity> {
    let e33 = eval_sum(config, &MultiOrder::new(vec![3, 3])?, ev, cache)?;
    let e88 = eval_sum(config, &MultiOrder::new(vec![8, 8])?, ev, cache)?;
    Ok(Irregularity {
        mu: irregularity_from_sums(e33.re, e88.re)?,
        e33,
        e88,
    })
}
