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

//! Multi-orders `p = (p_1, ..., p_n)` indexing structural sums.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A validated multi-order.
///
/// Every entry is at least 2 and the exponent chain `t_0 = 1`,
/// `t_j = p_j - t_{j-1}` ends in `t_n = 1`. The latter forces `sum p_j` to be
/// even, so the order `delta = sum p_j / 2` is an integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiOrder {
    p: Vec<u32>,
}

impl MultiOrder {
    pub fn new(p: Vec<u32>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::MultiOrder {
                order: p,
                reason: "empty tuple".into(),
            });
        }
        if p.iter().any(|&x| x < 2) {
            return Err(Error::MultiOrder {
                order: p,
                reason: "every entry must be >= 2".into(),
            });
        }
        let t_n = exponents_of(&p).last().copied().unwrap_or(1);
        if t_n != 1 {
            return Err(Error::MultiOrder {
                order: p,
                reason: format!("exponent chain ends in t_n = {t_n}, expected 1"),
            });
        }
        Ok(MultiOrder { p })
    }

    pub fn entries(&self) -> &[u32] {
        &self.p
    }

    /// Number of Eisenstein factors `n`.
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// `alpha = sum p_j`.
    pub fn alpha(&self) -> u32 {
        self.p.iter().sum()
    }

    /// The order `delta = alpha / 2`.
    pub fn delta(&self) -> u32 {
        self.alpha() / 2
    }

    /// Polydispersity exponents `(t_0, ..., t_n)`.
    pub fn exponents(&self) -> Vec<i32> {
        exponents_of(&self.p)
    }

    pub fn reversed(&self) -> MultiOrder {
        let mut p = self.p.clone();
        p.reverse();
        // reversal preserves t_n = 1: the chain read backwards is t_{n-j}
        MultiOrder { p }
    }

    pub fn is_palindrome(&self) -> bool {
        self.p.iter().eq(self.p.iter().rev())
    }

    /// Lexicographically smaller of `self` and its mirror.
    pub fn canonical(&self) -> MultiOrder {
        let r = self.reversed();
        if r < *self {
            r
        } else {
            self.clone()
        }
    }

    /// Whether this is a two-factor diagonal order `(p, p)`.
    pub fn is_diagonal_pair(&self) -> bool {
        self.p.len() == 2 && self.p[0] == self.p[1]
    }

    /// Column-style name, e.g. `e_2_3_3`.
    pub fn name(&self) -> String {
        let mut s = String::from("e");
        for x in &self.p {
            s.push('_');
            s.push_str(&x.to_string());
        }
        s
    }

    /// Value of the mirror sum `e_{reverse p}` given `e_p`:
    /// `e_p = (-1)^alpha C^{n+1} e_{reverse p}`.
    pub fn mirror_value(&self, value: Complex64) -> Complex64 {
        let signed = if self.alpha().is_multiple_of(2) { value } else { -value };
        if (self.len() + 1) % 2 == 1 {
            signed.conj()
        } else {
            signed
        }
    }

    /// Sort key used for feature columns: ascending order, then lexicographic.
    pub fn feature_key(&self) -> (u32, &[u32]) {
        (self.delta(), &self.p)
    }
}

fn exponents_of(p: &[u32]) -> Vec<i32> {
    let mut t = Vec::with_capacity(p.len() + 1);
    t.push(1i32);
    for &pj in p {
        let prev = *t.last().unwrap();
        t.push(pj as i32 - prev);
    }
    t
}

impl fmt::Display for MultiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for MultiOrder {
    type Err = Error;

    /// Parses `e_2_3_3`, `2_3_3` or `2,3,3`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().strip_prefix("e_").unwrap_or(s.trim());
        let p = body
            .split(['_', ','])
            .map(|x| x.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parameter(format!("cannot parse multi-order `{s}`: {e}")))?;
        MultiOrder::new(p)
    }
}

impl Serialize for MultiOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for MultiOrder {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All multi-orders of order exactly `q`, in lexicographic order.
///
/// Starts from `(2)` and `(2,2)` and grows by the two rules
/// `(m_1..m_k) -> (2, m_1..m_k)` and `(m_1..m_k) -> (m_1+1, m_2+1, m_3..m_k)`
/// for `k > 1`.
pub fn generate_mq(q: u32) -> Vec<MultiOrder> {
    match q {
        0 => Vec::new(),
        1 => vec![MultiOrder { p: vec![2] }],
        _ => {
            let mut level: BTreeSet<Vec<u32>> = BTreeSet::from([vec![2, 2]]);
            for _ in 2..q {
                let mut next = BTreeSet::new();
                for m in &level {
                    let mut prepend = Vec::with_capacity(m.len() + 1);
                    prepend.push(2);
                    prepend.extend_from_slice(m);
                    next.insert(prepend);
                    let mut bump = m.clone();
                    bump[0] += 1;
                    bump[1] += 1;
                    next.insert(bump);
                }
                level = next;
            }
            level.into_iter().map(|p| MultiOrder { p }).collect()
        }
    }
}

/// Keeps one representative per mirror pair `{p, reverse p}`: the
/// lexicographically smaller tuple. Output is sorted lexicographically.
pub fn reduce_mirrors<'a>(orders: impl IntoIterator<Item = &'a MultiOrder>) -> Vec<MultiOrder> {
    let set: BTreeSet<MultiOrder> = orders.into_iter().map(MultiOrder::canonical).collect();
    set.into_iter().collect()
}

/// Independent sums of order `q`: `reduce_mirrors(generate_mq(q))`.
pub fn generate_gq(q: u32) -> Vec<MultiOrder> {
    reduce_mirrors(&generate_mq(q))
}
