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

//! Every generator protocol, written to JSON in a temporary directory.

use structsums::microgen::{
    gen_rsa_shapes, generate, shape_library, GeneratorSpec, InitialState, RadiiLaw, StepLaw,
};

fn main() -> structsums::Result<()> {
    let out = std::env::temp_dir().join("structsums-generate");
    std::fs::create_dir_all(&out).expect("temp dir is writable");

    let specs = [
        ("rsa", GeneratorSpec::rsa(64, 0.4).radii_law(RadiiLaw::uniform())),
        ("walk_z1", GeneratorSpec::mc_walk(64, 0.5, StepLaw::Z1)),
        ("walk_z2_normal", GeneratorSpec::mc_walk(64, 0.5, StepLaw::Z2).radii_law(RadiiLaw::normal())),
        ("walk_z3_from_square", GeneratorSpec::mc_walk(64, 0.5, StepLaw::Z3).initial(InitialState::Square).cycles(20)),
        ("square", GeneratorSpec::square(64, 0.5)),
        ("hexagonal", GeneratorSpec::hexagonal(64, 0.5)),
    ];
    for (name, spec) in specs {
        let config = generate(&spec.seed(42))?;
        let radii = config.radii();
        let (lo, hi) = radii.iter().fold((f64::MAX, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
        println!("{name:<20} N = {:>3}  nu = {:.4}  r in [{lo:.4}, {hi:.4}]", config.len(), config.concentration());
        config.write_json(out.join(format!("{name}.json")))?;
    }

    let lib = shape_library();
    for s in &lib.shapes {
        print!("{}:{} ", s.id, s.name);
    }
    println!();
    let sample = gen_rsa_shapes(&GeneratorSpec::shapes(5, 0.3, 4).seed(1))?;
    for p in &sample.placements {
        println!("shape {} at {:.4} (disks {}..{})", p.shape_id, p.center, p.first_disk, p.first_disk + 21);
    }
    sample.config.write_json(out.join("shapes.json"))?;
    println!("written to {}", out.display());

    let infeasible = generate(&GeneratorSpec::rsa(64, 0.9).seed(1));
    println!("nu = 0.9: {}", infeasible.unwrap_err());
    Ok(())
}
