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

//! Structural-sums feature vectors `X_q` and their real projections.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::configuration::DiskConfiguration;
use crate::eisenstein::EisensteinEvaluator;
use crate::error::{Error, Result};
use crate::multiorder::{generate_gq, MultiOrder};
use crate::structsum::{eval_sum, SumCache};

/// Largest supported feature-vector order.
pub const MAX_FEATURE_ORDER: u32 = 12;

/// Complex structural sums keyed by multi-order, sorted by order and then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub order_q: u32,
    pub entries: Vec<(MultiOrder, Complex64)>,
}

/// Real-valued views of a complex feature vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Projection {
    Abs,
    Re,
    Im,
    Arg,
    /// Real parts followed by imaginary parts.
    ReIm,
}

impl Projection {
    pub const ALL: [Projection; 5] = [
        Projection::Abs,
        Projection::Re,
        Projection::Im,
        Projection::Arg,
        Projection::ReIm,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Projection::Abs => "abs",
            Projection::Re => "re",
            Projection::Im => "im",
            Projection::Arg => "arg",
            Projection::ReIm => "re_im",
        }
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Projection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "abs" => Projection::Abs,
            "re" => Projection::Re,
            "im" => Projection::Im,
            "arg" => Projection::Arg,
            "re_im" | "reim" => Projection::ReIm,
            other => return Err(Error::Parameter(format!("unknown projection `{other}`"))),
        })
    }
}

/// Real features plus their column names.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedFeatures {
    pub names: Vec<String>,
    pub values: Vec<f64>,
    /// Indices of entries whose argument was taken of an exact zero.
    pub zero_arguments: Vec<usize>,
}

/// Principal argument in `(-pi, pi]`.
pub fn principal_arg(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -PI {
        PI
    } else {
        a
    }
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &MultiOrder> {
        self.entries.iter().map(|(k, _)| k)
    }

    pub fn values(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.entries.iter().map(|(_, v)| *v)
    }

    pub fn get(&self, order: &MultiOrder) -> Option<Complex64> {
        self.entries.iter().find(|(k, _)| k == order).map(|(_, v)| *v)
    }

    /// Entries of order at most `q`, i.e. `X_q` taken out of a larger vector.
    pub fn restrict(&self, q: u32) -> FeatureVector {
        FeatureVector {
            order_q: q.min(self.order_q),
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| k.delta() <= q)
                .cloned()
                .collect(),
        }
    }

    /// Only the entries whose multi-orders satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(&MultiOrder) -> bool) -> FeatureVector {
        FeatureVector {
            order_q: self.order_q,
            entries: self.entries.iter().filter(|(k, _)| keep(k)).cloned().collect(),
        }
    }

    pub fn project(&self, projection: Projection) -> ProjectedFeatures {
        project(self, projection)
    }
}

/// Multi-orders of `X_q = G_1 u ... u G_q`, sorted by order then
/// lexicographically.
pub fn feature_orders(q: u32) -> Vec<MultiOrder> {
    let mut out: Vec<MultiOrder> = (1..=q).flat_map(generate_gq).collect();
    out.sort_by(|a, b| a.feature_key().cmp(&b.feature_key()));
    out
}

/// Multi-orders of `X'_q = {(p, p) : 2 <= p <= q}`.
pub fn diagonal_orders(q: u32) -> Vec<MultiOrder> {
    (2..=q)
        .map(|p| MultiOrder::new(vec![p, p]).expect("(p, p) is a valid multi-order"))
        .collect()
}

fn check_q(q: u32, min: u32) -> Result<()> {
    if q < min || q > MAX_FEATURE_ORDER {
        return Err(Error::Parameter(format!(
            "feature order q must be in {min}..={MAX_FEATURE_ORDER}, got {q}"
        )));
    }
    Ok(())
}

/// Evaluates arbitrary multi-orders into a feature vector.
pub fn build_from_orders(
    config: &DiskConfiguration,
    order_q: u32,
    orders: Vec<MultiOrder>,
    ev: &EisensteinEvaluator,
    cache: &SumCache,
) -> Result<FeatureVector> {
    let mut entries = Vec::with_capacity(orders.len());
    for o in orders {
        let v = eval_sum(config, &o, ev, cache)?;
        entries.push((o, v));
    }
    Ok(FeatureVector { order_q, entries })
}

/// The structural-sums feature vector `X_q`.
pub fn build_xq(
    config: &DiskConfiguration,
    q: u32,
    ev: &EisensteinEvaluator,
    cache: &SumCache,
) -> Result<FeatureVector> {
    check_q(q, 1)?;
    build_from_orders(config, q, feature_orders(q), ev, cache)
}

/// The diagonal subset `X'_q`.
pub fn build_xq_prime(
    config: &DiskConfiguration,
    q: u32,
    ev: &EisensteinEvaluator,
    cache: &SumCache,
) -> Result<FeatureVector> {
    check_q(q, 2)?;
    build_from_orders(config, q, diagonal_orders(q), ev, cache)
}

/// Real projection of a feature vector. Column names carry the projection
/// as a suffix, e.g. `e_2_3_3_abs`.
pub fn project(v: &FeatureVector, projection: Projection) -> ProjectedFeatures {
    let mut names = Vec::new();
    let mut values = Vec::new();
    let mut zero_arguments = Vec::new();
    let mut push = |suffix: &str, f: &dyn Fn(Complex64) -> f64| {
        for (k, z) in &v.entries {
            names.push(format!("{}_{suffix}", k.name()));
            values.push(f(*z));
        }
    };
    match projection {
        Projection::Abs => push("abs", &|z| z.norm()),
        Projection::Re => push("re", &|z| z.re),
        Projection::Im => push("im", &|z| z.im),
        Projection::Arg => {
            push("arg", &|z| if z.re == 0.0 && z.im == 0.0 { 0.0 } else { principal_arg(z) });
            zero_arguments = v
                .entries
                .iter()
                .enumerate()
                .filter(|(_, (_, z))| z.re == 0.0 && z.im == 0.0)
                .map(|(i, _)| i)
                .collect();
        }
        Projection::ReIm => {
            push("re", &|z| z.re);
            push("im", &|z| z.im);
        }
    }
    ProjectedFeatures {
        names,
        values,
        zero_arguments,
    }
}
