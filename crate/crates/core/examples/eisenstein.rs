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

//! Eisenstein functions `E_n(z)` and the Weierstrass function.

use num_complex::Complex64;
use structsums::{EisensteinEvaluator, Lattice};

fn main() -> structsums::Result<()> {
    let lat = Lattice::hexagonal();
    let ev = EisensteinEvaluator::new(lat.clone());
    println!(
        "hexagonal cell: {} explicit lattice points, far-field contraction {:.3}",
        ev.near_shell_len(),
        ev.contraction()
    );

    let z = Complex64::new(0.23, -0.11);
    for n in 2..=8 {
        println!("E_{n}({z}) = {:.12}", ev.eval(n, z)?);
    }

    let shifted = z + lat.omega1() * 3.0 - lat.omega2() * 2.0;
    println!("E_3 after a lattice shift: {:.12}", ev.eval(3, shifted)?);
    println!("E_3(-z) = {:.12}", ev.eval(3, -z)?);
    println!("E_4(0) = S_4 = {:.12}", ev.eval(4, Complex64::new(0.0, 0.0))?);

    let p = ev.weierstrass_p(z)?;
    let residual = ev.weierstrass_p_second_derivative(z)? - 6.0 * p * p + 30.0 * lat.sum(4)?;
    println!("wp(z) = {p:.12}, |wp'' - 6 wp^2 + 30 S_4| = {:.2e}", residual.norm());
    Ok(())
}
