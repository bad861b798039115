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

//! Effective conductivity series of a two-phase composite.
//!
//! The effective conductivity of a macroscopically isotropic composite is
//! `lambda = 1 + 2 rho nu sum_q B_q nu^q` with the contrast parameter
//! `rho = (lambda_f - 1) / (lambda_f + 1)`. The coefficients satisfy
//! `B_0 = 1` and `B_q = pi^-1 beta B_{q-1}`, where `beta` rewrites every
//! structural sum as
//!
//! ```text
//! e_{p1, p2, ..., pn} -> rho e_{2, p1, ..., pn} - p2 / (p1 - 1) e_{p1+1, p2+1, p3, ..., pn}
//! ```
//!
//! (the second term is absent for `n = 1`, and `beta 1 = rho e_2`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::configuration::DiskConfiguration;
use crate::eisenstein::EisensteinEvaluator;
use crate::error::{Error, Result};
use crate::multiorder::MultiOrder;
use crate::structsum::{eval_sum, SumCache};

pub const DEFAULT_Q_MAX: u32 = 6;

/// Polynomial in `rho` with exact rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RhoPolynomial {
    coeffs: Vec<BigRational>,
}

impl RhoPolynomial {
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        let mut p = RhoPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `rho^degree`.
    pub fn coeff(&self, degree: usize) -> BigRational {
        self.coeffs.get(degree).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    fn add_assign(&mut self, other: &RhoPolynomial) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        self.trim();
    }

    fn scale(&self, c: &BigRational, shift: usize) -> RhoPolynomial {
        let mut coeffs = vec![BigRational::zero(); shift];
        coeffs.extend(self.coeffs.iter().map(|x| x * c));
        let mut p = RhoPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn eval(&self, rho: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * rho + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for RhoPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = !a.is_one() || k == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}rho", if show_coeff { " " } else { "" })?,
                _ => write!(f, "{}rho^{k}", if show_coeff { " " } else { "" })?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `B_q` as `pi^-q` times a combination of structural sums with
/// rho-polynomial coefficients. `B_0` is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicBq {
    pub q: u32,
    constant: RhoPolynomial,
    terms: BTreeMap<MultiOrder, RhoPolynomial>,
}

impl SymbolicBq {
    pub fn one() -> Self {
        SymbolicBq {
            q: 0,
            constant: RhoPolynomial::monomial(BigRational::one(), 0),
            terms: BTreeMap::new(),
        }
    }

    /// Exponent `k` of the `pi^k` prefactor.
    pub fn pi_power(&self) -> i32 {
        -(self.q as i32)
    }

    pub fn constant(&self) -> &RhoPolynomial {
        &self.constant
    }

    pub fn terms(&self) -> &BTreeMap<MultiOrder, RhoPolynomial> {
        &self.terms
    }

    pub fn coefficient(&self, order: &MultiOrder) -> Option<&RhoPolynomial> {
        self.terms.get(order)
    }

    /// `pi^-1 beta self`.
    pub fn next(&self) -> SymbolicBq {
        let mut terms: BTreeMap<MultiOrder, RhoPolynomial> = BTreeMap::new();
        let mut add = |p: Vec<u32>, poly: RhoPolynomial| {
            let key = MultiOrder::new(p).expect("the rewriting rule yields valid multi-orders");
            let slot = terms.entry(key).or_default();
            slot.add_assign(&poly);
        };
        let one = BigRational::one();
        if !self.constant.is_zero() {
            add(vec![2], self.constant.scale(&one, 1));
        }
        for (order, poly) in &self.terms {
            let p = order.entries();
            let mut prepend = Vec::with_capacity(p.len() + 1);
            prepend.push(2);
            prepend.extend_from_slice(p);
            add(prepend, poly.scale(&one, 1));
            if p.len() > 1 {
                let c = -BigRational::new(BigInt::from(p[1]), BigInt::from(p[0] - 1));
                let mut bumped = p.to_vec();
                bumped[0] += 1;
                bumped[1] += 1;
                add(bumped, poly.scale(&c, 0));
            }
        }
        terms.retain(|_, v| !v.is_zero());
        SymbolicBq {
            q: self.q + 1,
            constant: RhoPolynomial::default(),
            terms,
        }
    }

    /// Numerical value for contrast `rho`, given the sums it refers to.
    pub fn eval(&self, rho: f64, sums: &impl Fn(&MultiOrder) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(self.constant.eval(rho), 0.0);
        for (order, poly) in &self.terms {
            acc += sums(order) * poly.eval(rho);
        }
        acc * std::f64::consts::PI.powi(self.pi_power())
    }
}

impl fmt::Display for SymbolicBq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            return write!(f, "{}", self.constant);
        }
        write!(f, "pi^{} * (", self.pi_power())?;
        for (i, (order, poly)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({poly}) {}", order.name())?;
        }
        f.write_str(")")
    }
}

/// `B_q` built symbolically from `B_0 = 1`.
pub fn build_bq(q: u32) -> SymbolicBq {
    build_bq_all(q).pop().expect("at least B_0")
}

/// `B_0, ..., B_q`.
pub fn build_bq_all(q: u32) -> Vec<SymbolicBq> {
    let mut out = vec![SymbolicBq::one()];
    for _ in 0..q {
        let next = out.last().expect("non-empty").next();
        out.push(next);
    }
    out
}

/// Contrast parameter of the inclusions.
pub fn contrast(lambda_f: f64) -> Result<f64> {
    if !(lambda_f.is_finite() && lambda_f > 0.0) {
        return Err(Error::Domain(format!(
            "inclusion conductivity must be positive, got {lambda_f}"
        )));
    }
    Ok((lambda_f - 1.0) / (lambda_f + 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConductivityResult {
    pub lambda: f64,
    /// Imaginary part of the accumulated series, zero for isotropic media.
    pub imaginary: f64,
    pub rho: f64,
    pub concentration: f64,
    /// Real `B_q` for `q = 0..=q_max`.
    pub coefficients: Vec<f64>,
    /// `lambda` truncated after each order.
    pub partial_sums: Vec<f64>,
}

/// Evaluates the truncated series using the real part of the accumulated
/// sum. Each mirror pair is computed once; the second member follows from
/// the mirror relation.
pub fn effective_conductivity(
    config: &DiskConfiguration,
    lambda_f: f64,
    q_max: u32,
    ev: &EisensteinEvaluator,
    cache: &SumCache,
) -> Result<ConductivityResult> {
    let rho = contrast(lambda_f)?;
    let nu = config.concentration();
    let bs = build_bq_all(q_max);

    let mut values: HashMap<MultiOrder, Complex64> = HashMap::new();
    for b in &bs {
        for order in b.terms().keys() {
            if values.contains_key(order) {
                continue;
            }
            let canonical = order.canonical();
            let v = eval_sum(config, &canonical, ev, cache)?;
            values.insert(canonical.reversed(), canonical.mirror_value(v));
            values.insert(canonical, v);
        }
    }

    let lookup = |o: &MultiOrder| values[o];
    let mut series = Complex64::new(0.0, 0.0);
    let mut coefficients = Vec::with_capacity(bs.len());
    let mut partial_sums = Vec::with_capacity(bs.len());
    for b in &bs {
        let bq = b.eval(rho, &lookup);
        coefficients.push(bq.re);
        series += bq * nu.powi(b.q as i32);
        partial_sums.push(1.0 + 2.0 * rho * nu * series.re);
    }
    Ok(ConductivityResult {
        lambda: 1.0 + 2.0 * rho * nu * series.re,
        imaginary: 2.0 * rho * nu * series.im,
        rho,
        concentration: nu,
        coefficients,
        partial_sums,
    })
}
