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

//! Random and regular disk configurations.
//!
//! Every generator draws from a ChaCha8 stream seeded by `spec.seed`.
//! Placement (radii, then positions) uses stream 0 and the random walk uses
//! stream 1, so a walk started from a generated initial state replays
//! exactly.

mod regular;
mod rsa;
mod shapes;
mod spec;
mod walk;

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use regular::gen_regular;
pub use rsa::gen_rsa;
pub use shapes::{gen_rsa_shapes, shape_library, Shape, ShapeLibrary, ShapePlacement, ShapeSample, SHAPE_DISKS};
pub use spec::{
    sample_seed, GeneratorSpec, InitialState, Protocol, RadiiLaw, StepLaw, DEFAULT_CYCLES,
    DEFAULT_MAX_ATTEMPTS,
};
pub use walk::{draw_step, free_path, gen_mc_walk, truncated_normal};

use crate::configuration::DiskConfiguration;
use crate::error::Result;

pub(crate) const PLACEMENT_STREAM: u64 = 0;
pub(crate) const WALK_STREAM: u64 = 1;

pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Radii drawn from `law` around a unit mean, then rescaled so that the
/// disks cover exactly `concentration * area`.
pub(crate) fn sample_radii(law: &RadiiLaw, n: usize, concentration: f64, area: f64, rng: &mut impl Rng) -> Vec<f64> {
    let raw: Vec<f64> = match *law {
        RadiiLaw::Identical => vec![1.0; n],
        RadiiLaw::Uniform { half_width } => (0..n)
            .map(|_| 1.0 - half_width + 2.0 * half_width * rng.random::<f64>())
            .collect(),
        RadiiLaw::Normal { sigma, floor } => (0..n)
            .map(|_| (1.0 + sigma * truncated_normal(rng)).max(floor))
            .collect(),
    };
    let covered: f64 = raw.iter().map(|r| PI * r * r).sum();
    let scale = (concentration * area / covered).sqrt();
    raw.into_iter().map(|r| r * scale).collect()
}

/// Generates one sample. For `mc_walk` the initial state comes from
/// `spec.initial`; `rsa_shapes` drops the placement metadata.
pub fn generate(spec: &GeneratorSpec) -> Result<DiskConfiguration> {
    spec.validate()?;
    match spec.protocol {
        Protocol::Rsa => gen_rsa(spec),
        Protocol::Square | Protocol::Hexagonal => gen_regular(spec),
        Protocol::RsaShapes => Ok(gen_rsa_shapes(spec)?.config),
        Protocol::McWalk => {
            let mut init = spec.clone();
            init.protocol = match spec.initial {
                InitialState::Rsa => Protocol::Rsa,
                InitialState::Square => Protocol::Square,
                InitialState::Hexagonal => Protocol::Hexagonal,
            };
            let start = generate(&init)?;
            gen_mc_walk(spec, &start)
        }
    }
}
