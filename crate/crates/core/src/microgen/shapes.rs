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

//! Rigid clusters of 21 disks and their random sequential adsorption.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rsa::uniform_point;
use super::spec::GeneratorSpec;
use super::{rng_for, PLACEMENT_STREAM};
use crate::configuration::DiskConfiguration;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

const LIBRARY_JSON: &str = include_str!("../../assets/shapes.json");

/// Disks per shape.
pub const SHAPE_DISKS: usize = 21;

/// Relative gap between neighbouring disks of a cluster.
const CLUSTER_GAP: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeLibrary {
    pub version: u32,
    /// Cells are axial coordinates `(i, j)` of the triangular grid with
    /// basis `1` and `exp(i pi / 3)`.
    pub grid: String,
    pub spacing: f64,
    pub disk_radius: f64,
    pub shapes: Vec<Shape>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Shape {
    pub id: usize,
    pub name: String,
    pub mirror_of: usize,
    pub cells: Vec<[i32; 2]>,
}

impl Shape {
    /// Disk centers for disks of radius `r`, centred on the centroid.
    pub fn offsets(&self, r: f64) -> Vec<Complex64> {
        let h = 3f64.sqrt() / 2.0;
        let pts: Vec<Complex64> = self
            .cells
            .iter()
            .map(|&[i, j]| {
                Complex64::new(f64::from(i) + 0.5 * f64::from(j), h * f64::from(j))
                    * (2.0 * r * (1.0 + CLUSTER_GAP))
            })
            .collect();
        let c = pts.iter().sum::<Complex64>() / pts.len() as f64;
        pts.into_iter().map(|p| p - c).collect()
    }
}

/// The shipped library of ten shapes; `2k` and `2k + 1` are mirror images.
pub fn shape_library() -> &'static ShapeLibrary {
    static LIB: OnceLock<ShapeLibrary> = OnceLock::new();
    LIB.get_or_init(|| serde_json::from_str(LIBRARY_JSON).expect("bundled shape library parses"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapePlacement {
    pub shape_id: usize,
    pub center: Complex64,
    /// Index of the first disk of this cluster in the configuration.
    pub first_disk: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeSample {
    pub config: DiskConfiguration,
    pub placements: Vec<ShapePlacement>,
}

fn clusters_overlap(lattice: &Lattice, a: &[Complex64], b: &[Complex64], r: f64) -> bool {
    a.iter()
        .any(|p| b.iter().any(|q| lattice.periodic_distance(*p, *q) < 2.0 * r))
}

/// Places `spec.n` copies of shape `spec.shape_id` at uniformly random
/// positions with fixed orientation. A candidate is rejected when any of its
/// disks overlaps a disk already placed.
pub fn gen_rsa_shapes(spec: &GeneratorSpec) -> Result<ShapeSample> {
    spec.validate()?;
    let lattice = spec.build_lattice()?;
    let id = spec.shape_id.expect("validated");
    let shape = &shape_library().shapes[id];
    let total = spec.n * shape.cells.len();
    let r = (spec.concentration * lattice.area() / (PI * total as f64)).sqrt();
    let offsets = shape.offsets(r);
    let extent = offsets.iter().map(|z| z.norm()).fold(0.0, f64::max) + r;
    if 2.0 * extent >= lattice.shortest_period() {
        return Err(Error::Parameter(format!(
            "shape {id} does not fit in the cell at concentration {}",
            spec.concentration
        )));
    }

    let mut rng = rng_for(spec.seed, PLACEMENT_STREAM);
    let mut clusters: Vec<(Complex64, Vec<Complex64>)> = Vec::with_capacity(spec.n);
    let mut rejected = 0;
    while clusters.len() < spec.n {
        let c = uniform_point(&lattice, &mut rng);
        let disks: Vec<Complex64> = offsets.iter().map(|o| lattice.wrap_to_cell(c + o)).collect();
        let blocked = clusters.iter().any(|(c2, d2)| {
            lattice.periodic_distance(c, *c2) < 2.0 * extent && clusters_overlap(&lattice, &disks, d2, r)
        });
        if !blocked {
            clusters.push((c, disks));
            continue;
        }
        rejected += 1;
        if rejected >= spec.max_attempts {
            return Err(Error::Saturation {
                placed: clusters.len(),
                requested: spec.n,
                attempts: rejected,
            });
        }
    }

    let mut placements = Vec::with_capacity(spec.n);
    let mut centers = Vec::with_capacity(total);
    for (c, disks) in clusters {
        placements.push(ShapePlacement {
            shape_id: id,
            center: c,
            first_disk: centers.len(),
        });
        centers.extend(disks);
    }
    let config = DiskConfiguration::new(lattice, centers, vec![r; total])?;
    Ok(ShapeSample { config, placements })
}
