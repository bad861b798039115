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

//! Structural sums of a disk configuration.
//!
//! For a multi-order `p = (p_1..p_n)` the sum is
//!
//! ```text
//! e_p = eta^-(delta+1) sum_{k_0..k_n} nu_{k_0}^{t_0} ... nu_{k_n}^{t_n}
//!       E_{p_1}(a_{k_0} - a_{k_1}) conj(E_{p_2}(a_{k_1} - a_{k_2})) ...
//! ```
//!
//! with every second factor conjugated. [`eval_sum`] folds the weight
//! vector through the chain of `N x N` Eisenstein matrices from the right,
//! which costs `O(n N^2)` per sum. Both the matrices and the partial
//! products (keyed by the chain suffix) live in a [`SumCache`], so sums that
//! share a suffix reuse each other's work. [`eval_sum_bruteforce`] is the
//! literal `N^(n+1)` nested sum and serves as a reference.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use crate::configuration::DiskConfiguration;
use crate::eisenstein::EisensteinEvaluator;
use crate::error::{Error, Result};
use crate::multiorder::MultiOrder;

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

type MatrixKey = (u64, u32);
type VectorKey = (u64, Vec<u32>, bool);

#[derive(Default)]
struct CacheInner {
    matrices: HashMap<MatrixKey, Arc<Vec<Complex64>>>,
    vectors: HashMap<VectorKey, Arc<Vec<Complex64>>>,
    hits: usize,
    misses: usize,
}

/// Store of Eisenstein matrices and partial chain products.
///
/// Internally synchronized: one cache can be shared by threads evaluating
/// sums of the same configuration, or each thread can own its own. Cached
/// values are exactly the values a fresh computation produces, so results
/// never depend on whether (or how) a cache is used.
pub struct SumCache {
    enabled: bool,
    inner: Mutex<CacheInner>,
}

impl Default for SumCache {
    fn default() -> Self {
        Self::new()
    }
}

impl std::fmt::Debug for SumCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (m, v) = self.len();
        f.debug_struct("SumCache")
            .field("enabled", &self.enabled)
            .field("matrices", &m)
            .field("vectors", &v)
            .finish()
    }
}

impl SumCache {
    pub fn new() -> Self {
        SumCache {
            enabled: true,
            inner: Mutex::new(CacheInner::default()),
        }
    }

    /// A cache that never stores anything; every call recomputes.
    pub fn disabled() -> Self {
        SumCache {
            enabled: false,
            inner: Mutex::new(CacheInner::default()),
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn clear(&self) {
        let mut g = self.lock();
        g.matrices.clear();
        g.vectors.clear();
    }

    /// Number of cached `(matrices, vectors)`.
    pub fn len(&self) -> (usize, usize) {
        let g = self.lock();
        (g.matrices.len(), g.vectors.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == (0, 0)
    }

    /// `(hits, misses)` of vector lookups so far.
    pub fn stats(&self) -> (usize, usize) {
        let g = self.lock();
        (g.hits, g.misses)
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, CacheInner> {
        self.inner.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn matrix(
        &self,
        key: u64,
        p: u32,
        config: &DiskConfiguration,
        ev: &EisensteinEvaluator,
    ) -> Result<Arc<Vec<Complex64>>> {
        if self.enabled {
            if let Some(m) = self.lock().matrices.get(&(key, p)) {
                return Ok(Arc::clone(m));
            }
        }
        let m = Arc::new(eisenstein_matrix(config, p as usize, ev)?);
        if self.enabled {
            self.lock().matrices.entry((key, p)).or_insert_with(|| Arc::clone(&m));
        }
        Ok(m)
    }

    fn vector(&self, key: &VectorKey) -> Option<Arc<Vec<Complex64>>> {
        if !self.enabled {
            return None;
        }
        let mut g = self.lock();
        match g.vectors.get(key).cloned() {
            Some(v) => {
                g.hits += 1;
                Some(v)
            }
            None => {
                g.misses += 1;
                None
            }
        }
    }

    fn store_vector(&self, key: VectorKey, v: Arc<Vec<Complex64>>) {
        if self.enabled {
            self.lock().vectors.entry(key).or_insert(v);
        }
    }
}

/// Row-major `N x N` matrix of `E_p(a_k - a_l)`, with `E_p(0) = S_p` on the
/// diagonal. The lower triangle comes from `E_p(-z) = (-1)^p E_p(z)`.
pub fn eisenstein_matrix(
    config: &DiskConfiguration,
    p: usize,
    ev: &EisensteinEvaluator,
) -> Result<Vec<Complex64>> {
    let n = config.len();
    let a = config.centers();
    let lattice = config.lattice();
    let diag = ev.eval_reduced(p, Complex64::new(0.0, 0.0))?;
    let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for k in 0..n {
        m[k * n + k] = diag;
        for l in k + 1..n {
            let z = lattice.min_image(a[k] - a[l]);
            let v = ev.eval_reduced(p, z)?;
            m[k * n + l] = v;
            m[l * n + k] = v * sign;
        }
    }
    Ok(m)
}

fn check_compatible(config: &DiskConfiguration, ev: &EisensteinEvaluator) -> Result<()> {
    if config.lattice() != ev.lattice() {
        return Err(Error::Configuration(
            "configuration and Eisenstein evaluator use different lattices".into(),
        ));
    }
    Ok(())
}

fn cache_key(config: &DiskConfiguration, ev: &EisensteinEvaluator) -> u64 {
    let mut h = DefaultHasher::new();
    config.fingerprint().hash(&mut h);
    ev.series_order().hash(&mut h);
    ev.tolerance().to_bits().hash(&mut h);
    ev.max_n().hash(&mut h);
    h.finish()
}

fn powers(nu: &[f64], t: i32) -> Vec<f64> {
    nu.iter().map(|x| x.powi(t)).collect()
}

/// Structural sum `e_p` of `config`, evaluated as a matrix-vector chain.
pub fn eval_sum(
    config: &DiskConfiguration,
    order: &MultiOrder,
    ev: &EisensteinEvaluator,
    cache: &SumCache,
) -> Result<Complex64> {
    check_compatible(config, ev)?;
    let key = cache_key(config, ev);
    let p = order.entries();
    let t = order.exponents();
    let n = p.len();
    let size = config.len();
    let nu = config.nu();

    // v after processing factor j (1-based) depends on p_j..p_n and the
    // parity of j. Find the longest suffix already cached.
    let mut start = n + 1;
    let mut v: Arc<Vec<Complex64>> = Arc::new(
        powers(nu, t[n])
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect(),
    );
    for j in 1..=n {
        if let Some(hit) = cache.vector(&(key, p[j - 1..].to_vec(), j % 2 == 0)) {
            v = hit;
            start = j;
            break;
        }
    }

    for j in (1..start).rev() {
        let a = cache.matrix(key, p[j - 1], config, ev)?;
        let conj = j % 2 == 0;
        let w = powers(nu, t[j - 1]);
        let mut next = vec![Complex64::new(0.0, 0.0); size];
        for (k, out) in next.iter_mut().enumerate() {
            let row = &a[k * size..(k + 1) * size];
            let mut acc = CompensatedSum::new();
            if conj {
                for (x, y) in row.iter().zip(v.iter()) {
                    acc.add(x.conj() * y);
                }
            } else {
                for (x, y) in row.iter().zip(v.iter()) {
                    acc.add(x * y);
                }
            }
            *out = acc.value() * w[k];
        }
        v = Arc::new(next);
        cache.store_vector((key, p[j - 1..].to_vec(), j % 2 == 0), Arc::clone(&v));
    }

    let mut total = CompensatedSum::new();
    for x in v.iter() {
        total.add(*x);
    }
    Ok(total.value() / config.eta().powi(order.delta() as i32 + 1))
}

/// Size limits protecting the `N^(n+1)` reference evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceLimits {
    pub max_disks: usize,
    pub max_factors: usize,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        BruteForceLimits {
            max_disks: 30,
            max_factors: 5,
        }
    }
}

/// Literal nested-loop evaluation of `e_p` with the default limits.
pub fn eval_sum_bruteforce(
    config: &DiskConfiguration,
    order: &MultiOrder,
    ev: &EisensteinEvaluator,
) -> Result<Complex64> {
    eval_sum_bruteforce_with_limits(config, order, ev, BruteForceLimits::default())
}

pub fn eval_sum_bruteforce_with_limits(
    config: &DiskConfiguration,
    order: &MultiOrder,
    ev: &EisensteinEvaluator,
    limits: BruteForceLimits,
) -> Result<Complex64> {
    check_compatible(config, ev)?;
    let size = config.len();
    let n = order.len();
    if size > limits.max_disks || n > limits.max_factors {
        return Err(Error::OracleLimit(format!(
            "N = {size}, n = {n} exceeds limits N <= {}, n <= {}",
            limits.max_disks, limits.max_factors
        )));
    }
    let p = order.entries();
    let t = order.exponents();
    let a = config.centers();
    let nu = config.nu();

    // factor tables, each evaluated pair by pair
    let mut factors = Vec::with_capacity(n);
    for (j, &pj) in p.iter().enumerate() {
        let conj = j % 2 == 1;
        let mut table = vec![Complex64::new(0.0, 0.0); size * size];
        for k in 0..size {
            for l in 0..size {
                let e = ev.eval(pj as usize, a[k] - a[l])?;
                table[k * size + l] = if conj { e.conj() } else { e };
            }
        }
        factors.push(table);
    }

    let mut idx = vec![0usize; n + 1];
    let mut total = CompensatedSum::new();
    loop {
        let mut term = Complex64::new(nu[idx[0]].powi(t[0]), 0.0);
        for j in 1..=n {
            term *= factors[j - 1][idx[j - 1] * size + idx[j]] * nu[idx[j]].powi(t[j]);
        }
        total.add(term);
        // odometer
        let mut pos = n + 1;
        loop {
            if pos == 0 {
                return Ok(total.value() / config.eta().powi(order.delta() as i32 + 1));
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < size {
                break;
            }
            idx[pos] = 0;
        }
    }
}
