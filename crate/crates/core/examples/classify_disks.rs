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

//! A small disk-classification experiment: nine classes from three step
//! laws and three radii laws, accuracy against order and projection.

use rayon::prelude::*;
use structsums::analysis::{random_baseline, run_experiment, ExperimentSettings, FeatureSamples};
use structsums::microgen::{generate, sample_seed, GeneratorSpec, RadiiLaw, StepLaw};
use structsums::{build_xq, EisensteinEvaluator, Lattice, Projection, SumCache};

fn main() -> structsums::Result<()> {
    let per_class = 20;
    let mut classes = Vec::new();
    for z in [StepLaw::Z1, StepLaw::Z2, StepLaw::Z3] {
        for law in [RadiiLaw::Identical, RadiiLaw::uniform(), RadiiLaw::normal()] {
            classes.push((z, law));
        }
    }
    let ev = EisensteinEvaluator::new(Lattice::square());
    let jobs: Vec<(usize, u64)> = (0..classes.len()).flat_map(|c| (0..per_class).map(move |i| (c, i))).collect();
    let vectors = jobs
        .par_iter()
        .map(|&(c, i)| {
            let (z, law) = classes[c];
            let config = generate(&GeneratorSpec::mc_walk(64, 0.5, z).radii_law(law).seed(sample_seed(c as u64, i)))?;
            build_xq(&config, 8, &ev, &SumCache::new())
        })
        .collect::<structsums::Result<Vec<_>>>()?;
    let samples = FeatureSamples {
        class_names: classes.iter().map(|(z, l)| format!("{z:?}/{}", l.name())).collect(),
        labels: jobs.iter().map(|j| j.0).collect(),
        vectors,
    };

    let settings = ExperimentSettings {
        k: 5,
        repeats: 10,
        q_values: (1..=8).collect(),
        projections: vec![Projection::Abs, Projection::Re, Projection::Im, Projection::Arg],
        seed: 1,
    };
    let grid = run_experiment(&samples, &settings)?;
    print!("q   ");
    for p in &settings.projections {
        print!("{:>8}", p.to_string());
    }
    println!();
    for &q in &settings.q_values {
        print!("{q:<4}");
        for &p in &settings.projections {
            let c = grid.iter().find(|c| c.q == q && c.projection == p).expect("full grid");
            print!("{:>8.3}", c.mean_accuracy);
        }
        println!();
    }
    let baseline = random_baseline(&samples.dataset(1, Projection::Abs)?, 5, 10, 1)?;
    println!("random guessing: {baseline:.3}");
    Ok(())
}
