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

//! Irregularity `mu` of the regular arrays and of random-walk classes.

use rayon::prelude::*;
use structsums::analysis::irregularity;
use structsums::microgen::{gen_regular, generate, sample_seed, GeneratorSpec, RadiiLaw, StepLaw};
use structsums::{DiskConfiguration, EisensteinEvaluator, SumCache};

fn mu(config: &DiskConfiguration) -> structsums::Result<f64> {
    let ev = EisensteinEvaluator::new(config.lattice().clone());
    Ok(irregularity(config, &ev, &SumCache::new())?.mu)
}

fn main() -> structsums::Result<()> {
    println!("hexagonal array {:.4}", mu(&gen_regular(&GeneratorSpec::hexagonal(64, 0.5))?)?);
    println!("square array    {:.4}", mu(&gen_regular(&GeneratorSpec::square(64, 0.5))?)?);

    let classes = [
        (StepLaw::Z2, RadiiLaw::Identical),
        (StepLaw::Z1, RadiiLaw::Identical),
        (StepLaw::Z3, RadiiLaw::Identical),
        (StepLaw::Z3, RadiiLaw::uniform()),
        (StepLaw::Z3, RadiiLaw::normal()),
    ];
    for (c, (z, law)) in classes.into_iter().enumerate() {
        let values: Vec<f64> = (0..20u64)
            .into_par_iter()
            .map(|i| {
                let spec = GeneratorSpec::mc_walk(64, 0.5, z).radii_law(law).seed(sample_seed(c as u64, i));
                mu(&generate(&spec)?)
            })
            .collect::<structsums::Result<_>>()?;
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        println!("{z:?} {:<9} <mu> = {mean:.3} over {} samples", law.name(), values.len());
    }
    Ok(())
}
