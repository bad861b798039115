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

//! Structural sums of periodic 2D disk composites.
//!
//! The crate computes lattice sums and Eisenstein functions of a doubly
//! periodic cell, the structural sums `e_p` of a configuration of
//! non-overlapping disks, feature vectors built from them, and the
//! effective conductivity series. It also ships random microstructure
//! generators and small classification utilities.
//!
//! ```
//! use num_complex::Complex64;
//! use structsums::{DiskConfiguration, EisensteinEvaluator, Lattice, MultiOrder, SumCache};
//!
//! let lattice = Lattice::square();
//! let config = DiskConfiguration::identical(lattice.clone(), vec![Complex64::new(0.0, 0.0)], 0.2)?;
//! let ev = EisensteinEvaluator::new(lattice);
//! let e2 = structsums::eval_sum(&config, &"2".parse::<MultiOrder>()?, &ev, &SumCache::new())?;
//! assert!((e2.re - std::f64::consts::PI).abs() < 1e-12);
//! # Ok::<(), structsums::Error>(())
//! ```

pub mod analysis;
pub mod cli;
pub mod conductivity;
pub mod configuration;
pub mod eisenstein;
pub mod error;
pub mod features;
pub mod lattice;
pub mod microgen;
pub mod multiorder;
pub mod structsum;

pub use configuration::DiskConfiguration;
pub use eisenstein::EisensteinEvaluator;
pub use error::{Error, Result};
pub use features::{build_xq, build_xq_prime, FeatureVector, Projection};
pub use lattice::{Lattice, LatticeSpec};
pub use multiorder::{generate_gq, generate_mq, MultiOrder};
pub use structsum::{eval_sum, eval_sum_bruteforce, SumCache};
