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

//! Lattice sums `S_n` of the square and hexagonal cells.
//!
//! ```text
//! cargo run --release --example lattice_sums
//! ```

use structsums::lattice::{lattice_sum_s2, lattice_sum_sn};
use structsums::Lattice;

fn main() -> structsums::Result<()> {
    for (name, lat) in [("square", Lattice::square()), ("hexagonal", Lattice::hexagonal())] {
        println!("{name}: tau = {:.6}, |q| = {:.3e}", lat.tau(), lat.nome().norm());
        println!("  S_2 = {:.15}", lattice_sum_s2(&lat)?);
        for n in 3..=16 {
            let s = lattice_sum_sn(&lat, n)?;
            println!("  S_{n:<2} = {:>22.15} {:+.3e}i", s.re, s.im);
        }
    }

    // arbitrary periods work too
    let rect = Lattice::new(num_complex::Complex64::new(1.5, 0.0), num_complex::Complex64::new(0.0, 2.0 / 3.0))?;
    println!("rectangle 1.5 x 2/3: S_2 = {:.12}, S_4 = {:.12}", rect.sum(2)?, rect.sum(4)?);
    Ok(())
}
