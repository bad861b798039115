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

//! Doubly periodic lattices and their lattice sums.
//!
//! A lattice is spanned by two complex periods `omega1`, `omega2` with
//! `Im(omega2 / omega1) > 0`. The even lattice sums `S_2`, `S_4`, `S_6` are
//! evaluated with rapidly convergent q-series in the nome `q = exp(i pi tau)`
//! and the higher even sums follow from the classical quadratic recurrence.
//! Odd sums vanish identically and are stored as exact zeros.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default length of the lattice-sum table (`S_2 ..= S_128`).
pub const DEFAULT_N_MAX: usize = 128;

const Q_SERIES_REL_TOL: f64 = 1e-16;
const Q_SERIES_MAX_TERMS: usize = 10_000;

/// Named lattice presets, both normalized to a unit-area cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticePreset {
    /// `omega1 = 1`, `omega2 = i`.
    Square,
    /// Unit area cell with `tau = exp(i pi / 3)`.
    Hexagonal,
}

/// Serialized description of a lattice: a preset name or explicit periods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    Preset(LatticePreset),
    Periods { omega1: [f64; 2], omega2: [f64; 2] },
}

impl Default for LatticeSpec {
    fn default() -> Self {
        LatticeSpec::Preset(LatticePreset::Square)
    }
}

impl LatticeSpec {
    pub fn build(&self) -> Result<Lattice> {
        match self {
            LatticeSpec::Preset(LatticePreset::Square) => Ok(Lattice::square()),
            LatticeSpec::Preset(LatticePreset::Hexagonal) => Ok(Lattice::hexagonal()),
            LatticeSpec::Periods { omega1, omega2 } => Lattice::new(
                Complex64::new(omega1[0], omega1[1]),
                Complex64::new(omega2[0], omega2[1]),
            ),
        }
    }
}

impl FromStr for LatticeSpec {
    type Err = Error;

    /// Accepts `square`, `hexagonal`, or four comma separated reals
    /// `re(omega1),im(omega1),re(omega2),im(omega2)`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "square" => return Ok(LatticeSpec::Preset(LatticePreset::Square)),
            "hexagonal" | "hex" => return Ok(LatticeSpec::Preset(LatticePreset::Hexagonal)),
            _ => {}
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidLattice(format!("cannot parse `{s}`: {e}")))?;
        if parts.len() != 4 {
            return Err(Error::InvalidLattice(format!(
                "expected a preset name or four reals, got `{s}`"
            )));
        }
        Ok(LatticeSpec::Periods {
            omega1: [parts[0], parts[1]],
            omega2: [parts[2], parts[3]],
        })
    }
}

/// A doubly periodic lattice together with its table of lattice sums.
///
/// Immutable after construction and therefore freely shareable between
/// threads.
#[derive(Clone)]
pub struct Lattice {
    omega1: Complex64,
    omega2: Complex64,
    tau: Complex64,
    nome: Complex64,
    sums: Vec<Complex64>,
    /// Lagrange-reduced basis used for minimum-image reduction.
    reduced: (Complex64, Complex64),
    area: f64,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("omega1", &self.omega1)
            .field("omega2", &self.omega2)
            .field("tau", &self.tau)
            .field("n_max", &self.n_max())
            .finish()
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.omega1 == other.omega1 && self.omega2 == other.omega2 && self.n_max() == other.n_max()
    }
}

impl Lattice {
    pub fn new(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        Self::with_n_max(omega1, omega2, DEFAULT_N_MAX)
    }

    pub fn with_n_max(omega1: Complex64, omega2: Complex64, n_max: usize) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::InvalidLattice(format!("n_max must be >= 2, got {n_max}")));
        }
        if !(omega1.is_finite() && omega2.is_finite()) || omega1.norm() == 0.0 {
            return Err(Error::InvalidLattice("periods must be finite and non-zero".into()));
        }
        let tau = omega2 / omega1;
        if !(tau.im > 0.0) {
            return Err(Error::InvalidLattice(format!(
                "Im(omega2/omega1) must be positive, got tau = {tau}"
            )));
        }
        let nome = (Complex64::i() * PI * tau).exp();
        let sums = lattice_sum_table(omega1, nome, n_max)?;
        let area = (omega1.conj() * omega2).im.abs();
        Ok(Lattice {
            omega1,
            omega2,
            tau,
            nome,
            sums,
            reduced: lagrange_reduce(omega1, omega2),
            area,
        })
    }

    /// Unit square lattice `omega1 = 1`, `omega2 = i`.
    pub fn square() -> Self {
        Self::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0))
            .expect("square lattice is valid")
    }

    /// Hexagonal lattice with unit cell area and `tau = exp(i pi/3)`.
    pub fn hexagonal() -> Self {
        let a = (2.0 / 3f64.sqrt()).sqrt();
        let omega1 = Complex64::new(a, 0.0);
        let omega2 = omega1 * Complex64::from_polar(1.0, PI / 3.0);
        Self::new(omega1, omega2).expect("hexagonal lattice is valid")
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn nome(&self) -> Complex64 {
        self.nome
    }

    /// Largest index held in the lattice-sum table.
    pub fn n_max(&self) -> usize {
        self.sums.len() - 1
    }

    /// Area of the fundamental cell.
    pub fn area(&self) -> f64 {
        self.area
    }

    /// Lattice sum `S_n`. Odd `n` gives exactly zero.
    pub fn sum(&self, n: usize) -> Result<Complex64> {
        if n < 2 {
            return Err(Error::Domain(format!("lattice sums start at n = 2, got {n}")));
        }
        self.sums.get(n).copied().ok_or_else(|| {
            Error::Domain(format!("S_{n} is beyond the table length n_max = {}", self.n_max()))
        })
    }

    /// The table `S_2, S_3, ..., S_{n_max}`.
    pub fn sums(&self) -> &[Complex64] {
        &self.sums[2..]
    }

    /// The spec describing this lattice by its periods.
    pub fn spec(&self) -> LatticeSpec {
        if *self == Lattice::square() {
            LatticeSpec::Preset(LatticePreset::Square)
        } else if *self == Lattice::hexagonal() {
            LatticeSpec::Preset(LatticePreset::Hexagonal)
        } else {
            LatticeSpec::Periods {
                omega1: [self.omega1.re, self.omega1.im],
                omega2: [self.omega2.re, self.omega2.im],
            }
        }
    }

    /// Real coordinates `(t1, t2)` with `z = t1 omega1 + t2 omega2`.
    pub fn coords(&self, z: Complex64) -> (f64, f64) {
        coords_in(self.omega1, self.omega2, z)
    }

    pub fn point(&self, t1: f64, t2: f64) -> Complex64 {
        self.omega1 * t1 + self.omega2 * t2
    }

    /// Representative of `z` in the fundamental cell `-1/2 <= t_j < 1/2`.
    pub fn wrap_to_cell(&self, z: Complex64) -> Complex64 {
        let (t1, t2) = self.coords(z);
        let w1 = t1 - (t1 + 0.5).floor();
        let w2 = t2 - (t2 + 0.5).floor();
        self.point(w1, w2)
    }

    /// Whether `z` lies in the fundamental cell, up to `slack` in lattice
    /// coordinates.
    pub fn in_cell(&self, z: Complex64, slack: f64) -> bool {
        let (t1, t2) = self.coords(z);
        (-0.5 - slack..0.5 + slack).contains(&t1) && (-0.5 - slack..0.5 + slack).contains(&t2)
    }

    /// Minimum-norm representative of `z` modulo the lattice.
    pub fn min_image(&self, z: Complex64) -> Complex64 {
        let (b1, b2) = self.reduced;
        let (t1, t2) = coords_in(b1, b2, z);
        let base = z - b1 * t1.round() - b2 * t2.round();
        let mut best = base;
        let mut best_norm = base.norm_sqr();
        for i in -1i32..=1 {
            for j in -1i32..=1 {
                if i == 0 && j == 0 {
                    continue;
                }
                let cand = base - b1 * f64::from(i) - b2 * f64::from(j);
                let n = cand.norm_sqr();
                if n < best_norm {
                    best = cand;
                    best_norm = n;
                }
            }
        }
        best
    }

    /// Distance between `a` and `b` minimized over lattice translations.
    pub fn periodic_distance(&self, a: Complex64, b: Complex64) -> f64 {
        self.min_image(a - b).norm()
    }

    /// Length of the shortest non-zero lattice vector.
    pub fn shortest_period(&self) -> f64 {
        self.reduced.0.norm()
    }

    /// Largest distance from the origin to a point of its Voronoi cell, i.e.
    /// the largest `|min_image(z)|`.
    pub fn covering_radius(&self) -> f64 {
        let (b1, b2) = self.reduced;
        // For a reduced basis one of the triangles (0, b1, +-b2) is the
        // non-obtuse Delaunay triangle; its circumradius is the answer.
        let b2 = if (b1.conj() * b2).re >= 0.0 { b2 } else { -b2 };
        let c = b1 - b2;
        let twice_area = (b1.conj() * b2).im.abs();
        b1.norm() * b2.norm() * c.norm() / (2.0 * twice_area)
    }

    /// All non-zero lattice vectors with norm strictly below `radius`,
    /// ordered by norm and then by lattice indices.
    pub fn vectors_within(&self, radius: f64) -> Vec<Complex64> {
        let (b1, b2) = self.reduced;
        // Bound on |m_j| from the dual basis: |m_j| <= radius * |dual_j|.
        let twice_area = (b1.conj() * b2).im.abs();
        let m1 = (radius * b2.norm() / twice_area).ceil() as i64 + 1;
        let m2 = (radius * b1.norm() / twice_area).ceil() as i64 + 1;
        let mut out: Vec<(f64, i64, i64, Complex64)> = Vec::new();
        for i in -m1..=m1 {
            for j in -m2..=m2 {
                if i == 0 && j == 0 {
                    continue;
                }
                let w = b1 * i as f64 + b2 * j as f64;
                let n = w.norm();
                if n < radius {
                    out.push((n, i, j, w));
                }
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        out.into_iter().map(|e| e.3).collect()
    }
}

fn coords_in(b1: Complex64, b2: Complex64, z: Complex64) -> (f64, f64) {
    // Solve z = t1 b1 + t2 b2 with Cramer's rule on the real 2x2 system.
    let det = b1.re * b2.im - b1.im * b2.re;
    let t1 = (z.re * b2.im - z.im * b2.re) / det;
    let t2 = (b1.re * z.im - b1.im * z.re) / det;
    (t1, t2)
}

fn lagrange_reduce(mut u: Complex64, mut v: Complex64) -> (Complex64, Complex64) {
    if u.norm_sqr() > v.norm_sqr() {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let mu = ((u.conj() * v).re / u.norm_sqr()).round();
        v -= u * mu;
        if v.norm_sqr() < u.norm_sqr() {
            std::mem::swap(&mut u, &mut v);
        } else {
            return (u, v);
        }
    }
}

/// `sum_{m >= 1} m^k q^{2m} / (1 - q^{2m})`, truncated once the last term
/// drops below `1e-16` of the partial sum.
fn divisor_q_series(q: Complex64, k: i32) -> Result<Complex64> {
    if q.norm() >= 1.0 {
        return Err(Error::InvalidLattice(format!("nome |q| = {} >= 1", q.norm())));
    }
    let q2 = q * q;
    let mut q2m = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 1..=Q_SERIES_MAX_TERMS {
        q2m *= q2;
        let term = q2m * (m as f64).powi(k) / (Complex64::new(1.0, 0.0) - q2m);
        acc += term;
        if term.norm() < Q_SERIES_REL_TOL * acc.norm() || term.norm() == 0.0 {
            return Ok(acc);
        }
    }
    Err(Error::InvalidLattice(format!(
        "q-series did not converge within {Q_SERIES_MAX_TERMS} terms (|q| = {})",
        q.norm()
    )))
}

/// `S_2` from the q-series `(pi/omega1)^2 (1/3 - 8 sum m q^2m/(1-q^2m))`.
pub fn lattice_sum_s2(lattice: &Lattice) -> Result<Complex64> {
    q_series_s2(lattice.omega1, lattice.nome)
}

/// `S_n` for `n >= 3`. Odd `n` gives exactly zero.
pub fn lattice_sum_sn(lattice: &Lattice, n: usize) -> Result<Complex64> {
    if n < 3 {
        return Err(Error::Domain(format!("lattice_sum_sn needs n >= 3, got {n}")));
    }
    if n <= lattice.n_max() {
        return lattice.sum(n);
    }
    let table = lattice_sum_table(lattice.omega1, lattice.nome, n)?;
    Ok(table[n])
}

fn q_series_s2(omega1: Complex64, q: Complex64) -> Result<Complex64> {
    let c = (PI / omega1).powi(2);
    Ok(c * (1.0 / 3.0 - 8.0 * divisor_q_series(q, 1)?))
}

fn lattice_sum_table(omega1: Complex64, q: Complex64, n_max: usize) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let mut s = vec![zero; n_max.max(6) + 1];
    let c = PI / omega1;
    s[2] = q_series_s2(omega1, q)?;
    s[4] = c.powi(4) / 60.0 * (4.0 / 3.0 + 320.0 * divisor_q_series(q, 3)?);
    s[6] = c.powi(6) / 140.0 * (8.0 / 27.0 - 448.0 / 3.0 * divisor_q_series(q, 5)?);
    // S_2n = 3 sum_{m=2}^{n-2} (2m-1)(2n-2m-1) S_2m S_2(n-m) / ((2n+1)(2n-1)(n-3))
    for n in 4..=n_max / 2 {
        let mut acc = zero;
        for m in 2..=n - 2 {
            let w = ((2 * m - 1) * (2 * n - 2 * m - 1)) as f64;
            acc += s[2 * m] * s[2 * (n - m)] * w;
        }
        let denom = ((2 * n + 1) * (2 * n - 1) * (n - 3)) as f64;
        s[2 * n] = acc * 3.0 / denom;
    }
    s.truncate(n_max + 1);
    if s.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidLattice(format!(
            "lattice sums overflow before n_max = {n_max}; rescale the periods"
        )));
    }
    Ok(s)
}
