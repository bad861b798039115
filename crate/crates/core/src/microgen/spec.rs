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

//! Generator descriptors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticePreset, LatticeSpec};

pub const DEFAULT_CYCLES: usize = 100;
pub const DEFAULT_MAX_ATTEMPTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    Rsa,
    McWalk,
    Hexagonal,
    Square,
    RsaShapes,
}

/// Distribution of disk radii around the mean radius `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum RadiiLaw {
    #[default]
    Identical,
    /// Uniform on `[(1 - half_width) r, (1 + half_width) r]`.
    Uniform {
        #[serde(default = "default_half_width")]
        half_width: f64,
    },
    /// Normal with standard deviation `sigma * r`, truncated at three sigma
    /// and floored at `floor * r`.
    Normal {
        #[serde(default = "default_sigma")]
        sigma: f64,
        #[serde(default = "default_floor")]
        floor: f64,
    },
}

fn default_half_width() -> f64 {
    0.5
}

fn default_sigma() -> f64 {
    0.25
}

fn default_floor() -> f64 {
    0.1
}

impl RadiiLaw {
    pub fn uniform() -> Self {
        RadiiLaw::Uniform {
            half_width: default_half_width(),
        }
    }

    pub fn normal() -> Self {
        RadiiLaw::Normal {
            sigma: default_sigma(),
            floor: default_floor(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RadiiLaw::Identical => "identical",
            RadiiLaw::Uniform { .. } => "uniform",
            RadiiLaw::Normal { .. } => "normal",
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            RadiiLaw::Identical => Ok(()),
            RadiiLaw::Uniform { half_width } if (0.0..1.0).contains(&half_width) => Ok(()),
            RadiiLaw::Normal { sigma, floor } if sigma >= 0.0 && floor > 0.0 && floor <= 1.0 => {
                Ok(())
            }
            law => Err(Error::Parameter(format!("invalid radii law {law:?}"))),
        }
    }
}

/// Law of the step fraction `Z` of the random walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum StepLaw {
    /// Uniform on `[0, 1)`.
    #[default]
    #[serde(alias = "z1")]
    Z1,
    /// `Z_N / 6 + 1/2` with `Z_N` standard normal truncated to `[-3, 3]`.
    #[serde(alias = "z2")]
    Z2,
    /// `frac(Z_N / 6 + 1)`.
    #[serde(alias = "z3")]
    Z3,
}

/// Starting point of a random walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    #[default]
    Rsa,
    Square,
    Hexagonal,
}

/// Complete, serializable description of one random sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub protocol: Protocol,
    /// Number of disks, or number of shapes for `rsa_shapes`.
    #[serde(rename = "N", alias = "n")]
    pub n: usize,
    pub concentration: f64,
    #[serde(default)]
    pub radii_law: RadiiLaw,
    #[serde(default)]
    pub step_law: StepLaw,
    #[serde(default = "default_cycles")]
    pub cycles: usize,
    #[serde(default)]
    pub initial: InitialState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape_id: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSpec>,
    #[serde(default = "default_max_attempts")]
    pub max_attempts: usize,
}

fn default_cycles() -> usize {
    DEFAULT_CYCLES
}

fn default_max_attempts() -> usize {
    DEFAULT_MAX_ATTEMPTS
}

impl GeneratorSpec {
    pub fn new(protocol: Protocol, n: usize, concentration: f64) -> Self {
        GeneratorSpec {
            protocol,
            n,
            concentration,
            radii_law: RadiiLaw::Identical,
            step_law: StepLaw::Z1,
            cycles: DEFAULT_CYCLES,
            initial: InitialState::Rsa,
            shape_id: None,
            seed: 0,
            lattice: None,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn rsa(n: usize, concentration: f64) -> Self {
        Self::new(Protocol::Rsa, n, concentration)
    }

    pub fn mc_walk(n: usize, concentration: f64, step_law: StepLaw) -> Self {
        Self::new(Protocol::McWalk, n, concentration).step_law(step_law)
    }

    pub fn square(n: usize, concentration: f64) -> Self {
        Self::new(Protocol::Square, n, concentration)
    }

    pub fn hexagonal(n: usize, concentration: f64) -> Self {
        Self::new(Protocol::Hexagonal, n, concentration)
    }

    pub fn shapes(count: usize, concentration: f64, shape_id: usize) -> Self {
        let mut s = Self::new(Protocol::RsaShapes, count, concentration);
        s.shape_id = Some(shape_id);
        s
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn radii_law(mut self, law: RadiiLaw) -> Self {
        self.radii_law = law;
        self
    }

    pub fn step_law(mut self, law: StepLaw) -> Self {
        self.step_law = law;
        self
    }

    pub fn cycles(mut self, cycles: usize) -> Self {
        self.cycles = cycles;
        self
    }

    pub fn initial(mut self, initial: InitialState) -> Self {
        self.initial = initial;
        self
    }

    /// The cell. Hexagonal arrays default to the hexagonal cell, everything
    /// else to the unit square.
    pub fn build_lattice(&self) -> Result<Lattice> {
        match &self.lattice {
            Some(spec) => spec.build(),
            None if self.protocol == Protocol::Hexagonal => {
                LatticeSpec::Preset(LatticePreset::Hexagonal).build()
            }
            None => Ok(Lattice::square()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Parameter("N must be positive".into()));
        }
        if !(self.concentration > 0.0 && self.concentration < 1.0) {
            return Err(Error::Parameter(format!(
                "concentration must lie in (0, 1), got {}",
                self.concentration
            )));
        }
        self.radii_law.validate()?;
        if self.protocol == Protocol::RsaShapes {
            match self.shape_id {
                Some(id) if id < 10 => {}
                other => {
                    return Err(Error::Parameter(format!(
                        "rsa_shapes needs shape_id in 0..=9, got {other:?}"
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: GeneratorSpec = serde_json::from_str(s)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Seed of the `index`-th sample of a batch started from `base`.
pub fn sample_seed(base: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
