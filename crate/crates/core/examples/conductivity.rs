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

//! Symbolic `B_q` coefficients and the effective conductivity series.

use structsums::conductivity::{build_bq_all, effective_conductivity};
use structsums::microgen::{gen_regular, generate, GeneratorSpec, StepLaw};
use structsums::{EisensteinEvaluator, SumCache};

fn main() -> structsums::Result<()> {
    for b in build_bq_all(5) {
        println!("B_{} = {b}", b.q);
    }

    let samples = [
        ("hexagonal array", gen_regular(&GeneratorSpec::hexagonal(64, 0.5))?),
        ("square array", gen_regular(&GeneratorSpec::square(64, 0.5))?),
        ("random walk Z3", generate(&GeneratorSpec::mc_walk(64, 0.5, StepLaw::Z3).seed(3))?),
    ];
    for (name, config) in &samples {
        let ev = EisensteinEvaluator::new(config.lattice().clone());
        let cache = SumCache::new();
        println!("\n{name}");
        for lambda_f in [1.0, 2.0, 10.0, 50.0] {
            let r = effective_conductivity(config, lambda_f, 6, &ev, &cache)?;
            let partial: Vec<String> = r.partial_sums.iter().map(|l| format!("{l:.5}")).collect();
            println!("  lambda_f = {lambda_f:>4}: lambda = {:.6} (im {:.1e}), partial sums {}", r.lambda, r.imaginary, partial.join(" "));
        }
    }
    Ok(())
}
