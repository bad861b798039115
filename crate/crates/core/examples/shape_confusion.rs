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

//! Mirrored shape clusters: classification by projection and the confusion
//! matrix of `|X_3|`, whose errors sit on mirror pairs.

use rayon::prelude::*;
use structsums::analysis::{cross_validate, run_experiment, ExperimentSettings, FeatureSamples};
use structsums::microgen::{gen_rsa_shapes, sample_seed, shape_library, GeneratorSpec};
use structsums::{build_xq, EisensteinEvaluator, Lattice, Projection, SumCache};

fn main() -> structsums::Result<()> {
    let per_class = 20;
    let ev = EisensteinEvaluator::new(Lattice::square());
    let jobs: Vec<(usize, u64)> = (0..10).flat_map(|c| (0..per_class).map(move |i| (c, i))).collect();
    let vectors = jobs
        .par_iter()
        .map(|&(c, i)| {
            let sample = gen_rsa_shapes(&GeneratorSpec::shapes(5, 0.3, c).seed(sample_seed(100 + c as u64, i)))?;
            build_xq(&sample.config, 6, &ev, &SumCache::new())
        })
        .collect::<structsums::Result<Vec<_>>>()?;
    let samples = FeatureSamples {
        class_names: shape_library().shapes.iter().map(|s| s.name.clone()).collect(),
        labels: jobs.iter().map(|j| j.0).collect(),
        vectors,
    };

    let settings = ExperimentSettings {
        k: 5,
        repeats: 10,
        q_values: vec![2, 4, 6],
        projections: vec![Projection::Abs, Projection::Re, Projection::Im, Projection::Arg],
        seed: 3,
    };
    for c in run_experiment(&samples, &settings)? {
        println!("{:<4} q = {}: {:.3}", c.projection.to_string(), c.q, c.mean_accuracy);
    }

    let cv = cross_validate(&samples.dataset(3, Projection::Abs)?, 3, 0.25, 3)?;
    println!("\n|X_3| confusion (rows true, columns predicted), accuracy {:.3}", cv.mean_accuracy);
    for (i, row) in cv.confusion.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|n| format!("{n:>3}")).collect();
        println!("{:<18}{}", samples.class_names[i], cells.join(""));
    }
    Ok(())
}
