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

//! Structural sums of a small polydisperse configuration: the multi-order
//! sets, the fast evaluator against the nested-loop definition, and the
//! mirror relation.

use num_complex::Complex64;
use structsums::multiorder::reduce_mirrors;
use structsums::{
    eval_sum, eval_sum_bruteforce, generate_gq, generate_mq, DiskConfiguration, EisensteinEvaluator, Lattice,
    SumCache,
};

fn main() -> structsums::Result<()> {
    for q in 1..=6 {
        let m = generate_mq(q);
        let names: Vec<String> = m.iter().map(|o| o.name()).collect();
        println!("M_{q} ({}): {}", m.len(), names.join(" "));
    }
    let g6 = reduce_mirrors(&generate_mq(6));
    assert_eq!(g6, generate_gq(6));
    println!("G_6 ({}): {}", g6.len(), g6.iter().map(|o| o.name()).collect::<Vec<_>>().join(" "));

    let config = DiskConfiguration::new(
        Lattice::square(),
        vec![
            Complex64::new(-0.31, -0.22),
            Complex64::new(0.12, 0.35),
            Complex64::new(0.33, -0.12),
            Complex64::new(-0.05, 0.02),
            Complex64::new(-0.4, 0.4),
        ],
        vec![0.08, 0.05, 0.11, 0.06, 0.07],
    )?;
    println!("\nN = {}, concentration {:.4}, eta = {:.4}", config.len(), config.concentration(), config.eta());

    let ev = EisensteinEvaluator::new(config.lattice().clone());
    let cache = SumCache::new();
    for q in 1..=5 {
        for o in generate_mq(q) {
            let fast = eval_sum(&config, &o, &ev, &cache)?;
            let slow = eval_sum_bruteforce(&config, &o, &ev)?;
            println!("{:<14} {:>24.12}  |fast - loops| = {:.1e}", o.name(), fast, (fast - slow).norm());
        }
    }
    let (hits, misses) = cache.stats();
    println!("cache: {hits} hits, {misses} misses");

    let o = generate_mq(5)[1].clone();
    let v = eval_sum(&config, &o, &ev, &cache)?;
    let r = eval_sum(&config, &o.reversed(), &ev, &cache)?;
    println!("\n{} = {v:.12}\n{} = {r:.12} (mirror predicts {:.12})", o.name(), o.reversed().name(), o.mirror_value(v));
    Ok(())
}
