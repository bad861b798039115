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

//! Reference computations shared by the integration tests. Nothing here
//! calls into the library's numerical code.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use structsums::microgen::{gen_rsa, GeneratorSpec, RadiiLaw};
use structsums::{DiskConfiguration, Lattice};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn square() -> (Complex64, Complex64) {
    (c(1.0, 0.0), c(0.0, 1.0))
}

/// Unit-area cell with `tau = exp(i pi / 3)`.
pub fn hexagonal() -> (Complex64, Complex64) {
    let s = (2.0 / 3f64.sqrt()).sqrt();
    (c(s, 0.0), Complex64::from_polar(s, PI / 3.0))
}

/// Riemann zeta by Euler-Maclaurin after `K` explicit terms.
pub fn zeta(n: u32) -> f64 {
    let k = 2000.0f64;
    let head: f64 = (1..2000).map(|j| (j as f64).powi(-(n as i32))).sum();
    let s = n as f64;
    head + k.powf(1.0 - s) / (s - 1.0) + 0.5 * k.powf(-s) + s * k.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * k.powf(-s - 3.0) / 720.0
}

/// `sum_{m in Z} (x - m)^(-n)` for `n >= 2` from derivatives of `pi cot(pi x)`.
pub fn row_sum(n: u32, x: Complex64) -> Complex64 {
    // d^k/dx^k [pi cot(pi x)] = pi^(k+1) P_k(cot(pi x)),  P_{k+1} = -(1 + c^2) P_k'
    let mut p = vec![0.0, 1.0];
    for _ in 0..n - 1 {
        let mut next = vec![0.0; p.len() + 1];
        for (j, &a) in p.iter().enumerate().skip(1) {
            let d = a * j as f64;
            next[j - 1] -= d;
            next[j + 1] -= d;
        }
        p = next;
    }
    let cot = (x * PI).cos() / (x * PI).sin();
    let mut v = Complex64::new(0.0, 0.0);
    for &a in p.iter().rev() {
        v = v * cot + a;
    }
    let mut fact = 1.0;
    for j in 1..n {
        fact *= j as f64;
    }
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    v * PI.powi(n as i32) * sign / fact
}

/// `E_n(z)` by rows: the sum along `omega1` is done in closed form and the
/// rows are added symmetrically until they stop contributing. At a lattice
/// point the singular term is dropped, which gives `S_n`.
pub fn eisenstein_rows(periods: (Complex64, Complex64), n: u32, z: Complex64) -> Complex64 {
    let (w1, w2) = periods;
    let scale = w1.powi(-(n as i32));
    let u0 = z / w1;
    let t = w2 / w1;
    let mut total = Complex64::new(0.0, 0.0);
    for m2 in 0..400i32 {
        let mut row = Complex64::new(0.0, 0.0);
        for s in if m2 == 0 { vec![0] } else { vec![m2, -m2] } {
            let u = u0 - t * s as f64;
            let nearest = u.re.round();
            if (u - nearest).norm() < 1e-13 {
                // drop the lattice point itself
                let shifted: Complex64 = if n.is_multiple_of(2) { c(2.0 * zeta(n), 0.0) } else { c(0.0, 0.0) };
                row += shifted;
            } else {
                row += row_sum(n, u);
            }
        }
        total += row;
        // rows decay like exp(-2 pi |Im u|)
        if m2 as f64 * t.im.abs() - u0.im.abs() > 7.0 {
            break;
        }
    }
    total * scale
}

/// Truncated box sum `sum' (m1 w1 + m2 w2)^(-n)` over `|m1|, |m2| <= m`.
pub fn box_lattice_sum(periods: (Complex64, Complex64), n: u32, m: i32) -> Complex64 {
    let (w1, w2) = periods;
    let mut total = Complex64::new(0.0, 0.0);
    for m1 in -m..=m {
        let mut col = Complex64::new(0.0, 0.0);
        for m2 in -m..=m {
            if m1 != 0 || m2 != 0 {
                col += (w1 * m1 as f64 + w2 * m2 as f64).powi(-(n as i32));
            }
        }
        total += col;
    }
    total
}

/// Random point of the cell `{t1 w1 + t2 w2 : |t| <= 1/2}`.
pub fn random_cell_point(periods: (Complex64, Complex64), rng: &mut impl Rng) -> Complex64 {
    let (w1, w2) = periods;
    w1 * (rng.random::<f64>() - 0.5) + w2 * (rng.random::<f64>() - 0.5)
}

/// Polydisperse RSA configuration of `n` disks.
pub fn random_config(lattice: Lattice, n: usize, concentration: f64, seed: u64) -> DiskConfiguration {
    let mut spec = GeneratorSpec::rsa(n, concentration)
        .radii_law(RadiiLaw::uniform())
        .seed(seed);
    spec.lattice = Some(lattice.spec());
    gen_rsa(&spec).expect("feasible test configuration")
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Gaussian naive Bayes log posteriors written out term by term: class
/// priors from counts, population variances floored at `1e-9` times the
/// largest whole-set variance.
pub fn nb_log_posteriors(train: &[Vec<f64>], labels: &[usize], classes: usize, x: &[f64]) -> Vec<f64> {
    let d = x.len();
    let n = train.len() as f64;
    let mut max_var: f64 = 0.0;
    for j in 0..d {
        let m = train.iter().map(|r| r[j]).sum::<f64>() / n;
        let v = train.iter().map(|r| (r[j] - m) * (r[j] - m)).sum::<f64>() / n;
        max_var = max_var.max(v);
    }
    let eps = if max_var > 0.0 { 1e-9 * max_var } else { 1e-9 };
    (0..classes)
        .map(|cl| {
            let rows: Vec<&Vec<f64>> = train.iter().zip(labels).filter(|(_, &l)| l == cl).map(|(r, _)| r).collect();
            let nc = rows.len() as f64;
            let mut lp = (nc / n).ln();
            for j in 0..d {
                let m = rows.iter().map(|r| r[j]).sum::<f64>() / nc;
                let v = (rows.iter().map(|r| (r[j] - m) * (r[j] - m)).sum::<f64>() / nc).max(eps);
                lp += -0.5 * (2.0 * PI * v).ln() - (x[j] - m) * (x[j] - m) / (2.0 * v);
            }
            lp
        })
        .collect()
}

/// Spearman rank correlation (average ranks for ties).
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            for &k in &idx[i..=j] {
                r[k] = (i + j) as f64 / 2.0;
            }
            i = j + 1;
        }
        r
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}
