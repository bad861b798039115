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

//! Markov-chain random walk of disks.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::distr::Open01;
use rand::Rng;
use rand_distr::StandardNormal;

use super::spec::{GeneratorSpec, StepLaw};
use super::{rng_for, WALK_STREAM};
use crate::configuration::DiskConfiguration;
use crate::error::Result;
use crate::lattice::Lattice;

/// Standard normal variable truncated to `[-3, 3]` by rejection.
pub fn truncated_normal(rng: &mut impl Rng) -> f64 {
    loop {
        let x: f64 = rng.sample(StandardNormal);
        if (-3.0..=3.0).contains(&x) {
            return x;
        }
    }
}

/// One draw of the step fraction `Z`.
pub fn draw_step(law: StepLaw, rng: &mut impl Rng) -> f64 {
    match law {
        StepLaw::Z1 => rng.random::<f64>(),
        StepLaw::Z2 => truncated_normal(rng) / 6.0 + 0.5,
        StepLaw::Z3 => {
            let x = truncated_normal(rng) / 6.0 + 1.0;
            x - x.floor()
        }
    }
}

/// Collision-free travel range `(d_min, d_max)` of disk `k` along `u`.
///
/// `d_max >= 0` is the distance it can move along `u`, `d_min <= 0` the
/// (negated) distance along `-u`. Both are capped at `cap`. `images` holds
/// the lattice translations to test, including zero.
pub fn free_path(
    lattice: &Lattice,
    centers: &[Complex64],
    radii: &[f64],
    k: usize,
    u: Complex64,
    cap: f64,
    images: &[Complex64],
) -> (f64, f64) {
    let a = centers[k];
    let mut d_max = cap;
    let mut d_min = -cap;
    for (j, (&b, &rb)) in centers.iter().zip(radii).enumerate() {
        if j == k {
            continue;
        }
        let contact = radii[k] + rb;
        let base = lattice.min_image(b - a);
        for &w in images {
            let w = base + w;
            let proj = w.re * u.re + w.im * u.im;
            let c = w.norm_sqr() - contact * contact;
            let disc = proj * proj - c;
            if disc < 0.0 {
                continue;
            }
            let root = disc.sqrt();
            if proj > 0.0 {
                d_max = d_max.min((proj - root).max(0.0));
            } else {
                d_min = d_min.max((proj + root).min(0.0));
            }
        }
    }
    (d_min, d_max)
}

/// Lattice translations reaching every image that can block a move of
/// length at most `cap`.
pub(crate) fn blocking_images(lattice: &Lattice, cap: f64, r_max: f64) -> Vec<Complex64> {
    let mut images = vec![Complex64::new(0.0, 0.0)];
    images.extend(lattice.vectors_within(cap + 2.0 * r_max + lattice.covering_radius() + 1e-9));
    images
}

/// Runs `spec.cycles` cycles of the walk from `initial`. Within a cycle each
/// disk in index order draws a direction `phi` in `(0, pi)`, then `Z`, and
/// moves by `d_min + (d_max - d_min) Z` along `phi`.
pub fn gen_mc_walk(spec: &GeneratorSpec, initial: &DiskConfiguration) -> Result<DiskConfiguration> {
    if spec.cycles == 0 {
        return Ok(initial.clone());
    }
    let lattice = initial.lattice().clone();
    let radii = initial.radii().to_vec();
    let mut centers = initial.centers().to_vec();
    let mut rng = rng_for(spec.seed, WALK_STREAM);
    let cap = lattice.shortest_period();
    let images = blocking_images(&lattice, cap, initial.r_max());
    for _ in 0..spec.cycles {
        for k in 0..centers.len() {
            let t: f64 = rng.sample(Open01);
            let u = Complex64::from_polar(1.0, PI * t);
            let (d_min, d_max) = free_path(&lattice, &centers, &radii, k, u, cap, &images);
            let z = draw_step(spec.step_law, &mut rng);
            let d = d_min + (d_max - d_min) * z;
            centers[k] = lattice.wrap_to_cell(centers[k] + u * d);
        }
    }
    DiskConfiguration::new(lattice, centers, radii)
}
