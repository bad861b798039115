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

//! Exhaustive search over pairs of diagonal sums `e_{p,p}`, plus a
//! logarithmic fit of accuracy against the number of features.

use rayon::prelude::*;
use structsums::analysis::{fit_log_curve, two_feature_scan};
use structsums::features::diagonal_orders;
use structsums::microgen::{generate, sample_seed, GeneratorSpec, RadiiLaw, StepLaw};
use structsums::{build_xq_prime, EisensteinEvaluator, Lattice, Projection, SumCache};

fn main() -> structsums::Result<()> {
    let classes = [
        (StepLaw::Z1, RadiiLaw::Identical),
        (StepLaw::Z2, RadiiLaw::Identical),
        (StepLaw::Z3, RadiiLaw::uniform()),
    ];
    let ev = EisensteinEvaluator::new(Lattice::square());
    let jobs: Vec<(usize, u64)> = (0..classes.len()).flat_map(|c| (0..24).map(move |i| (c, i))).collect();
    let vectors = jobs
        .par_iter()
        .map(|&(c, i)| {
            let (z, law) = classes[c];
            let config = generate(&GeneratorSpec::mc_walk(64, 0.5, z).radii_law(law).seed(sample_seed(50 + c as u64, i)))?;
            build_xq_prime(&config, 10, &ev, &SumCache::new())
        })
        .collect::<structsums::Result<Vec<_>>>()?;
    assert_eq!(vectors[0].len(), diagonal_orders(10).len());
    let samples = structsums::analysis::FeatureSamples {
        class_names: classes.iter().map(|(z, l)| format!("{z:?}/{}", l.name())).collect(),
        labels: jobs.iter().map(|j| j.0).collect(),
        vectors,
    };
    let ds = samples.dataset(10, Projection::Abs)?;

    let ranked = two_feature_scan(&ds, 3, 0.25, 7)?;
    println!("{} pairs; best five:", ranked.len());
    for s in ranked.iter().take(5) {
        println!("  {:<10} {:<10} {:.3}", s.first, s.second, s.mean_accuracy);
    }

    // accuracy of the first m columns against m
    let mut points = Vec::new();
    for m in 1..=ds.n_features() {
        let cols: Vec<usize> = (0..m).collect();
        let cv = structsums::analysis::cross_validate(&ds.select_features(&cols), 3, 0.25, 7)?;
        points.push((m as f64, cv.mean_accuracy));
    }
    let fit = fit_log_curve(&points)?;
    println!("accuracy ~ {:.3} log({:.3} m + 1), residual {:.2e}", fit.a, fit.b, fit.residual);
    Ok(())
}
