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

//! Random sequential adsorption of disks.

use num_complex::Complex64;
use rand::Rng;

use super::spec::GeneratorSpec;
use super::{rng_for, sample_radii, PLACEMENT_STREAM};
use crate::configuration::DiskConfiguration;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Places `spec.n` disks one after another at uniformly random positions,
/// rejecting candidates that overlap an already placed disk. Radii are drawn
/// first and placed largest first.
pub fn gen_rsa(spec: &GeneratorSpec) -> Result<DiskConfiguration> {
    spec.validate()?;
    let lattice = spec.build_lattice()?;
    let mut rng = rng_for(spec.seed, PLACEMENT_STREAM);
    let mut radii = sample_radii(&spec.radii_law, spec.n, spec.concentration, lattice.area(), &mut rng);
    radii.sort_by(|a, b| b.total_cmp(a));
    let centers = place(&lattice, &radii, spec.max_attempts, &mut rng)?;
    DiskConfiguration::new(lattice, centers, radii)
}

pub(crate) fn uniform_point(lattice: &Lattice, rng: &mut impl Rng) -> Complex64 {
    let t1 = rng.random::<f64>() - 0.5;
    let t2 = rng.random::<f64>() - 0.5;
    lattice.point(t1, t2)
}

fn place(lattice: &Lattice, radii: &[f64], max_attempts: usize, rng: &mut impl Rng) -> Result<Vec<Complex64>> {
    let r_max = radii.iter().copied().fold(0.0, f64::max);
    if 2.0 * r_max >= lattice.shortest_period() {
        return Err(Error::Parameter(format!(
            "a disk of radius {r_max} does not fit in the cell"
        )));
    }
    let mut centers: Vec<Complex64> = Vec::with_capacity(radii.len());
    let mut rejected = 0;
    for (k, &r) in radii.iter().enumerate() {
        loop {
            let c = uniform_point(lattice, rng);
            let free = centers
                .iter()
                .zip(radii)
                .all(|(b, rb)| lattice.periodic_distance(c, *b) >= r + rb);
            if free {
                centers.push(c);
                break;
            }
            rejected += 1;
            if rejected >= max_attempts {
                return Err(Error::Saturation {
                    placed: k,
                    requested: radii.len(),
                    attempts: rejected,
                });
            }
        }
    }
    Ok(centers)
}
