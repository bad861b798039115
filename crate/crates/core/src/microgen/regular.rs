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

//! Regular square and hexagonal arrays of identical disks.

use std::f64::consts::PI;

use super::spec::{GeneratorSpec, Protocol};
use crate::configuration::DiskConfiguration;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

fn is_square_cell(l: &Lattice) -> bool {
    let r = l.omega2() / l.omega1();
    (r.norm() - 1.0).abs() < 1e-12 && r.re.abs() < 1e-12
}

fn is_hexagonal_cell(l: &Lattice) -> bool {
    let r = l.omega2() / l.omega1();
    (r.norm() - 1.0).abs() < 1e-12 && (r.re.abs() - 0.5).abs() < 1e-12
}

/// `m x m` copy of the cell's own lattice scaled by `1/m`: a square array
/// in a square cell and a triangular array in a hexagonal cell.
pub fn gen_regular(spec: &GeneratorSpec) -> Result<DiskConfiguration> {
    spec.validate()?;
    let lattice = spec.build_lattice()?;
    match spec.protocol {
        Protocol::Square if !is_square_cell(&lattice) => {
            return Err(Error::Parameter("a square array needs a square cell".into()))
        }
        Protocol::Hexagonal if !is_hexagonal_cell(&lattice) => {
            return Err(Error::Parameter("a hexagonal array needs a hexagonal cell".into()))
        }
        Protocol::Square | Protocol::Hexagonal => {}
        p => return Err(Error::Parameter(format!("{p:?} is not a regular array"))),
    }
    let m = (spec.n as f64).sqrt().round() as usize;
    if m * m != spec.n {
        return Err(Error::Parameter(format!(
            "a regular array needs N = m^2 disks, got {}",
            spec.n
        )));
    }
    let r = (spec.concentration * lattice.area() / (PI * spec.n as f64)).sqrt();
    if 2.0 * r > lattice.shortest_period() / m as f64 {
        return Err(Error::Parameter(format!(
            "concentration {} exceeds close packing of the array",
            spec.concentration
        )));
    }
    let step = 1.0 / m as f64;
    let mut centers = Vec::with_capacity(spec.n);
    for i in 0..m {
        for j in 0..m {
            centers.push(lattice.point(-0.5 + (i as f64 + 0.5) * step, -0.5 + (j as f64 + 0.5) * step));
        }
    }
    DiskConfiguration::new(lattice, centers, vec![r; spec.n])
}
