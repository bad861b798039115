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

//! Disk configurations on a periodic cell and their file formats.

use std::collections::hash_map::DefaultHasher;
use std::f64::consts::PI;
use std::hash::{Hash, Hasher};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeSpec};

/// Tolerated overlap when checking disks for contact.
pub const OVERLAP_SLACK: f64 = 1e-12;

/// `N` non-overlapping disks with centers in the fundamental cell.
#[derive(Debug, Clone)]
pub struct DiskConfiguration {
    lattice: Lattice,
    centers: Vec<Complex64>,
    radii: Vec<f64>,
    nu: Vec<f64>,
    r_max: f64,
    eta: f64,
    fingerprint: u64,
}

impl PartialEq for DiskConfiguration {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.centers == other.centers && self.radii == other.radii
    }
}

impl DiskConfiguration {
    /// Validates and builds a configuration. Centers must already lie in the
    /// fundamental cell.
    pub fn new(lattice: Lattice, centers: Vec<Complex64>, radii: Vec<f64>) -> Result<Self> {
        Self::build(lattice, centers, radii, OVERLAP_SLACK)
    }

    /// Like [`DiskConfiguration::new`] but first wraps every center into the
    /// fundamental cell.
    pub fn wrapped(lattice: Lattice, centers: Vec<Complex64>, radii: Vec<f64>) -> Result<Self> {
        let centers = centers.into_iter().map(|c| lattice.wrap_to_cell(c)).collect();
        Self::new(lattice, centers, radii)
    }

    /// Identical disks of radius `r`.
    pub fn identical(lattice: Lattice, centers: Vec<Complex64>, r: f64) -> Result<Self> {
        let n = centers.len();
        Self::wrapped(lattice, centers, vec![r; n])
    }

    fn build(lattice: Lattice, centers: Vec<Complex64>, radii: Vec<f64>, slack: f64) -> Result<Self> {
        if centers.is_empty() {
            return Err(Error::Configuration("at least one disk is required".into()));
        }
        if centers.len() != radii.len() {
            return Err(Error::Configuration(format!(
                "{} centers but {} radii",
                centers.len(),
                radii.len()
            )));
        }
        if let Some(r) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return Err(Error::Configuration(format!("radius {r} is not positive")));
        }
        if let Some((k, c)) = centers
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_finite() || !lattice.in_cell(**c, 1e-12))
        {
            return Err(Error::Configuration(format!(
                "center {k} = {c} lies outside the fundamental cell"
            )));
        }
        for j in 0..centers.len() {
            for k in j + 1..centers.len() {
                let d = lattice.periodic_distance(centers[j], centers[k]);
                if d < radii[j] + radii[k] - slack {
                    return Err(Error::Configuration(format!(
                        "disks {j} and {k} overlap: distance {d} < {}",
                        radii[j] + radii[k]
                    )));
                }
            }
        }
        let r_max = radii.iter().copied().fold(0.0, f64::max);
        let nu: Vec<f64> = radii.iter().map(|r| (r / r_max).powi(2)).collect();
        let eta = nu.iter().sum();

        let mut h = DefaultHasher::new();
        for v in [lattice.omega1(), lattice.omega2()].iter().chain(centers.iter()) {
            v.re.to_bits().hash(&mut h);
            v.im.to_bits().hash(&mut h);
        }
        for r in &radii {
            r.to_bits().hash(&mut h);
        }
        Ok(DiskConfiguration {
            lattice,
            centers,
            radii,
            nu,
            r_max,
            eta,
            fingerprint: h.finish(),
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn centers(&self) -> &[Complex64] {
        &self.centers
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Largest radius `r`.
    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Polydispersity factors `nu_j = (r_j / r)^2`.
    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    /// `eta = sum nu_j`.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Area fraction `pi sum r_j^2 / |cell|`.
    pub fn concentration(&self) -> f64 {
        PI * self.radii.iter().map(|r| r * r).sum::<f64>() / self.lattice.area()
    }

    /// Hash of the exact bit patterns of lattice, centers and radii.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Same disks with every center shifted by `shift` and wrapped back.
    pub fn translated(&self, shift: Complex64) -> Result<Self> {
        Self::wrapped(
            self.lattice.clone(),
            self.centers.iter().map(|c| c + shift).collect(),
            self.radii.clone(),
        )
    }

    /// Same disks listed in the order given by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: perm.len(),
            });
        }
        Self::new(
            self.lattice.clone(),
            perm.iter().map(|&k| self.centers[k]).collect(),
            perm.iter().map(|&k| self.radii[k]).collect(),
        )
    }

    pub fn to_file(&self) -> ConfigurationFile {
        ConfigurationFile {
            lattice: self.lattice.spec(),
            disks: self
                .centers
                .iter()
                .zip(&self.radii)
                .map(|(c, &r)| Disk { x: c.re, y: c.im, r })
                .collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str::<ConfigurationFile>(s)?.build()
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut s = self.to_json()?;
        s.push('\n');
        std::fs::write(path, s).map_err(|e| Error::io(path, e))
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let s = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&s)
    }

    /// Reads a three-column `x,y,r` CSV file (header row required).
    pub fn read_csv(path: impl AsRef<Path>, lattice: Lattice) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_reader(file, lattice)
    }

    pub fn from_csv_reader(reader: impl std::io::Read, lattice: Lattice) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let mut centers = Vec::new();
        let mut radii = Vec::new();
        for row in rdr.deserialize() {
            let d: Disk = row?;
            centers.push(Complex64::new(d.x, d.y));
            radii.push(d.r);
        }
        Self::new(lattice, centers, radii)
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path.as_ref())?;
        for d in self.to_file().disks {
            w.serialize(d)?;
        }
        w.flush().map_err(|e| Error::io(path.as_ref(), e))
    }

    /// Reads JSON, or CSV when the extension is `.csv` (square lattice).
    pub fn read_any(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Self::read_csv(path, Lattice::square()),
            _ => Self::read_json(path),
        }
    }
}

/// One disk as stored in JSON and CSV files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub x: f64,
    pub y: f64,
    pub r: f64,
}

/// On-disk JSON layout of a configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigurationFile {
    #[serde(default)]
    pub lattice: LatticeSpec,
    pub disks: Vec<Disk>,
}

impl ConfigurationFile {
    pub fn build(&self) -> Result<DiskConfiguration> {
        DiskConfiguration::new(
            self.lattice.build()?,
            self.disks.iter().map(|d| Complex64::new(d.x, d.y)).collect(),
            self.disks.iter().map(|d| d.r).collect(),
        )
    }
}
