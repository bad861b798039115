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

//! Least-squares fit of `y = a log(b x + 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogFit {
    pub a: f64,
    pub b: f64,
    /// Sum of squared residuals.
    pub residual: f64,
    pub iterations: usize,
}

const MAX_ITERATIONS: usize = 500;

fn best_a(points: &[(f64, f64)], b: f64) -> (f64, f64) {
    let (mut gy, mut gg) = (0.0, 0.0);
    for &(x, y) in points {
        let g = (b * x).ln_1p();
        gy += g * y;
        gg += g * g;
    }
    let a = if gg > 0.0 { gy / gg } else { 0.0 };
    (a, ssr(points, a, b))
}

fn ssr(points: &[(f64, f64)], a: f64, b: f64) -> f64 {
    points.iter().map(|&(x, y)| (y - a * (b * x).ln_1p()).powi(2)).sum()
}

/// Fits `a` and `b > 0`. A log-spaced grid over `b` (with the optimal `a`
/// for each) seeds a Levenberg-Marquardt refinement in `(a, ln b)`.
pub fn fit_log_curve(points: &[(f64, f64)]) -> Result<LogFit> {
    if points.len() < 3 {
        return Err(Error::Parameter("at least three points are required".into()));
    }
    if points.iter().any(|&(x, y)| !(x.is_finite() && y.is_finite() && x >= 0.0)) {
        return Err(Error::Parameter("points must be finite with x >= 0".into()));
    }
    if points.iter().all(|&(x, _)| x == 0.0) {
        return Err(Error::Parameter("at least one point needs x > 0".into()));
    }

    let x_max = points.iter().map(|p| p.0).fold(0.0, f64::max);
    let (mut a, mut s, mut b) = (0.0, f64::INFINITY, 1.0);
    for i in 0..=240 {
        let cand = 10f64.powf(-6.0 + 12.0 * i as f64 / 240.0) / x_max;
        let (ca, cs) = best_a(points, cand);
        if cs < s {
            (a, s, b) = (ca, cs, cand);
        }
    }
    let scale: f64 = points.iter().map(|p| p.1 * p.1).sum();
    if s <= 1e-30 * scale.max(1e-300) {
        return Ok(LogFit {
            a,
            b,
            residual: s,
            iterations: 0,
        });
    }

    let mut damping = 1e-3;
    let mut t = b.ln();
    for it in 1..=MAX_ITERATIONS {
        let b = t.exp();
        // normal equations of the residual Jacobian in (a, t)
        let (mut jaa, mut jat, mut jtt, mut ga, mut gt) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &(x, y) in points {
            let g = (b * x).ln_1p();
            let r = y - a * g;
            let da = g;
            let dt = a * b * x / (1.0 + b * x);
            jaa += da * da;
            jat += da * dt;
            jtt += dt * dt;
            ga += da * r;
            gt += dt * r;
        }
        let mut improved = false;
        while damping < 1e12 {
            let (m11, m22) = (jaa * (1.0 + damping), jtt * (1.0 + damping));
            let det = m11 * m22 - jat * jat;
            if det <= 0.0 || !det.is_finite() {
                damping *= 10.0;
                continue;
            }
            let step_a = (m22 * ga - jat * gt) / det;
            let step_t = (m11 * gt - jat * ga) / det;
            let (na, nt) = (a + step_a, t + step_t);
            let ns = ssr(points, na, nt.exp());
            if ns <= s {
                let small = step_a.abs() <= 1e-12 * (1.0 + a.abs()) && step_t.abs() <= 1e-12 * (1.0 + t.abs());
                let flat = s - ns <= 1e-15 * s;
                (a, t, s) = (na, nt, ns);
                damping = (damping / 10.0).max(1e-12);
                improved = true;
                if small || flat || s <= 1e-30 * scale {
                    return Ok(LogFit {
                        a,
                        b: t.exp(),
                        residual: s,
                        iterations: it,
                    });
                }
                break;
            }
            damping *= 10.0;
        }
        if !improved {
            // no downhill step exists at any damping: a stationary point
            return Ok(LogFit {
                a,
                b: t.exp(),
                residual: s,
                iterations: it,
            });
        }
    }
    Err(Error::NonConvergence { residual: s })
}
