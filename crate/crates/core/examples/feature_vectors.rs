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

//! Feature vectors `X_q`, the diagonal subset `X'_q` and their real
//! projections for one random-walk sample.

use structsums::features::project;
use structsums::microgen::{generate, GeneratorSpec, StepLaw};
use structsums::{build_xq, build_xq_prime, EisensteinEvaluator, Projection, SumCache};

fn main() -> structsums::Result<()> {
    let spec = GeneratorSpec::mc_walk(64, 0.5, StepLaw::Z1).seed(7);
    let config = generate(&spec)?;
    let ev = EisensteinEvaluator::new(config.lattice().clone());
    let cache = SumCache::new();

    let x4 = build_xq(&config, 4, &ev, &cache)?;
    for (order, value) in &x4.entries {
        println!("{:<12} {:.10}", order.name(), value);
    }
    for p in [Projection::Abs, Projection::Re, Projection::Im, Projection::Arg] {
        let v = project(&x4, p);
        println!("{p:<4} {:?}", v.values.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>());
    }

    let x10 = build_xq(&config, 10, &ev, &cache)?;
    println!("\n|X_10| has {} entries", x10.len());
    let prime = build_xq_prime(&config, 10, &ev, &cache)?;
    for (order, value) in &prime.entries {
        println!("{:<8} re {:>12.6}  im {:>10.2e}", order.name(), value.re, value.im);
    }
    Ok(())
}
