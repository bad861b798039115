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

//! Eisenstein functions `E_n(z) = sum (z - w)^(-n)` over the lattice.
//!
//! The argument is first reduced to its minimum-norm representative `z`.
//! Lattice points inside a small disk around the origin ("near shell") are
//! summed explicitly and the rest of the lattice is handled by the Taylor
//! expansion
//!
//! ```text
//! sum_{|w| far} (z - w)^(-n) = (-1)^n sum_j C(n+j-1, j) T_{n+j} z^j
//! ```
//!
//! where `T_m` is the lattice sum `S_m` with the near shell removed. The
//! near shell has radius three times the covering radius, so the expansion
//! converges at least like `3^-j` everywhere in the cell. With an empty near
//! shell this is the plain Laurent expansion `z^-n + (-1)^n sum C S z^j`.
//! At the origin the convention `E_n(0) = S_n` applies.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

pub const DEFAULT_SERIES_ORDER: usize = 64;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Highest `n` for which coefficients are prepared by default.
pub const DEFAULT_MAX_N: usize = 32;

const NEAR_SHELL_FACTOR: f64 = 3.0;

/// Evaluates Eisenstein functions of one lattice.
#[derive(Debug, Clone)]
pub struct EisensteinEvaluator {
    lattice: Lattice,
    series_order: usize,
    tolerance: f64,
    near: Vec<Complex64>,
    /// `coeffs[n]` holds the truncated Taylor coefficients of the far part.
    coeffs: Vec<Vec<Complex64>>,
    /// Ratio of the covering radius to the nearest far lattice point.
    contraction: f64,
}

impl EisensteinEvaluator {
    pub fn new(lattice: Lattice) -> Self {
        Self::with_options(lattice, DEFAULT_SERIES_ORDER, DEFAULT_TOLERANCE, DEFAULT_MAX_N)
            .expect("default evaluator options are valid")
    }

    pub fn with_options(
        lattice: Lattice,
        series_order: usize,
        tolerance: f64,
        max_n: usize,
    ) -> Result<Self> {
        if series_order < 2 {
            return Err(Error::Parameter(format!("series_order must be >= 2, got {series_order}")));
        }
        if !(tolerance > 0.0) {
            return Err(Error::Parameter(format!("tolerance must be positive, got {tolerance}")));
        }
        if max_n < 2 {
            return Err(Error::Parameter(format!("max_n must be >= 2, got {max_n}")));
        }
        let rho = lattice.covering_radius();
        let near_radius = NEAR_SHELL_FACTOR * rho;
        let near = lattice.vectors_within(near_radius);
        let far_min = lattice
            .vectors_within(near_radius * 2.0 + lattice.shortest_period())
            .into_iter()
            .map(|w| w.norm())
            .find(|&r| r >= near_radius)
            .unwrap_or(near_radius);
        let contraction = rho / far_min;

        let needed = max_n + series_order;
        let sums = if needed <= lattice.n_max() {
            lattice.sums().to_vec()
        } else {
            Lattice::with_n_max(lattice.omega1(), lattice.omega2(), needed)?
                .sums()
                .to_vec()
        };
        // sums[k] is S_{k+2}
        let s = |m: usize| sums[m - 2];
        let tail = |m: usize| -> Complex64 {
            if m % 2 == 1 {
                return Complex64::new(0.0, 0.0);
            }
            let mut t = s(m);
            for w in &near {
                t -= w.powi(-(m as i32));
            }
            t
        };

        let mut coeffs = vec![Vec::new(); max_n + 1];
        for (n, slot) in coeffs.iter_mut().enumerate().skip(2) {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let mut binom = 1.0f64;
            let mut c = Vec::with_capacity(series_order);
            for j in 0..series_order {
                if j > 0 {
                    binom *= (n + j - 1) as f64 / j as f64;
                }
                c.push(tail(n + j) * (sign * binom));
            }
            // Drop the trailing terms that cannot matter anywhere in the cell.
            let mut scale = 1.0;
            let mut last_significant = 0;
            for (j, cj) in c.iter().enumerate() {
                if cj.norm() * scale > tolerance * 1e-3 {
                    last_significant = j;
                }
                scale *= rho;
            }
            c.truncate(last_significant + 1);
            *slot = c;
        }

        Ok(EisensteinEvaluator {
            lattice,
            series_order,
            tolerance,
            near,
            coeffs,
            contraction,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn series_order(&self) -> usize {
        self.series_order
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_n(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Number of explicitly summed lattice points around the origin.
    pub fn near_shell_len(&self) -> usize {
        self.near.len()
    }

    /// Geometric convergence ratio of the far-field expansion over the cell.
    pub fn contraction(&self) -> f64 {
        self.contraction
    }

    /// `E_n(z)`; `E_n(0)` is defined as `S_n`.
    pub fn eval(&self, n: usize, z: Complex64) -> Result<Complex64> {
        self.check_n(n)?;
        Ok(self.eval_reduced_unchecked(n, self.lattice.min_image(z)))
    }

    /// `E_n` at an argument that is already a minimum-norm representative.
    pub fn eval_reduced(&self, n: usize, z: Complex64) -> Result<Complex64> {
        self.check_n(n)?;
        Ok(self.eval_reduced_unchecked(n, z))
    }

    /// Weierstrass `wp(z) = E_2(z) - S_2`.
    pub fn weierstrass_p(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval(2, z)? - self.lattice.sum(2)?)
    }

    /// `wp''(z) = 3! E_4(z)`.
    pub fn weierstrass_p_second_derivative(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval(4, z)? * 6.0)
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::Domain(format!("Eisenstein functions start at n = 2, got {n}")));
        }
        if n > self.max_n() {
            return Err(Error::Domain(format!(
                "E_{n} exceeds the evaluator's max_n = {}",
                self.max_n()
            )));
        }
        Ok(())
    }

    fn eval_reduced_unchecked(&self, n: usize, z: Complex64) -> Complex64 {
        if z.re == 0.0 && z.im == 0.0 {
            return self.lattice.sum(n).expect("n is within the table");
        }
        let p = -(n as i32);
        let mut acc = z.powi(p);
        for w in &self.near {
            acc += (z - w).powi(p);
        }
        let c = &self.coeffs[n];
        let mut series = Complex64::new(0.0, 0.0);
        for cj in c.iter().rev() {
            series = series * z + cj;
        }
        acc + series
    }
}
