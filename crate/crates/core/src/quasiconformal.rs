//! Harmonic pairs `f = h + conj(g)` and their quasiconformality data.
//!
//! `K ≥ 1` is the distortion constant and `k = (K−1)/(K+1) ∈ [0, 1]` the
//! bound on the dilatation `|g'/h'|`. `K = ∞` corresponds to `k = 1`.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::GeomClass;
use crate::power_series::{Series, C64};
use crate::tail;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PairError {
    #[error("co-analytic part must vanish at the origin, g(0) = {0}")]
    NonzeroG0(C64),
    #[error("distortion K = {0} must be >= 1")]
    DistortionBelowOne(f64),
    #[error("dilatation bound k = {0} must lie in [0, 1]")]
    KOutOfRange(f64),
    #[error("radius {0} must lie in (0, 1)")]
    RadiusOutOfRange(f64),
    #[error("h' vanishes ({modulus:e}) at z = {z}; the pair is not sense-preserving there")]
    VanishingDerivative { z: C64, modulus: f64 },
    #[error("sampled dilatation {sampled} on |z| = {radius} exceeds declared k = {declared}")]
    DilatationExceeded { sampled: f64, radius: f64, declared: f64 },
    #[error("at least one sample point is needed")]
    NoSamples,
}

/// `k = (K − 1)/(K + 1)`; `K = ∞` gives `k = 1`.
pub fn dilatation_from_distortion(big_k: f64) -> Result<f64, PairError> {
    if big_k.is_nan() || big_k < 1.0 {
        return Err(PairError::DistortionBelowOne(big_k));
    }
    if big_k.is_infinite() {
        return Ok(1.0);
    }
    Ok((big_k - 1.0) / (big_k + 1.0))
}

/// `K = (1 + k)/(1 − k)`; `k = 1` gives `K = ∞`.
pub fn distortion_from_dilatation(k: f64) -> Result<f64, PairError> {
    if !(0.0..=1.0).contains(&k) {
        return Err(PairError::KOutOfRange(k));
    }
    if k == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok((1.0 + k) / (1.0 - k))
}

/// What is known about the function `φ` that `h` is subordinate to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairContext {
    pub class: GeomClass,
    /// `|φ'(0)|`
    pub deriv0: f64,
    /// `dist(φ(0), ∂φ(𝔻))`
    pub dist0: f64,
}

/// Analytic part `h` and co-analytic part `g` at a common truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPair {
    h: Series,
    g: Series,
    k_declared: Option<f64>,
    context: Option<PairContext>,
}

/// Samples on the certification circle.
pub const CERTIFY_SAMPLES: usize = 1024;

/// Radius of the circle used to certify a declared `k`: 0.95, pulled
/// inwards for short truncations so the dropped tail stays negligible.
pub fn certify_radius(order: usize) -> f64 {
    (1.0 - 40.0 / order.max(1) as f64).clamp(0.1, 0.95)
}

impl HarmonicPair {
    pub fn new(h: Series, g: Series) -> Result<Self, PairError> {
        let g0 = g.coeff(0);
        if g0 != C64::new(0.0, 0.0) {
            return Err(PairError::NonzeroG0(g0));
        }
        let n = h.order().max(g.order());
        Ok(HarmonicPair { h: h.with_order(n), g: g.with_order(n), k_declared: None, context: None })
    }

    /// Declares `|g'/h'| ≤ k` after checking it by sampling on
    /// [`certify_radius`] with a `1e-6` allowance.
    pub fn with_declared_k(self, k: f64) -> Result<Self, PairError> {
        if !(0.0..=1.0).contains(&k) {
            return Err(PairError::KOutOfRange(k));
        }
        let radius = certify_radius(self.order());
        let sup = dilatation_sup(&self, radius, CERTIFY_SAMPLES)?;
        if sup.max > k + 1e-6 {
            return Err(PairError::DilatationExceeded { sampled: sup.max, radius, declared: k });
        }
        Ok(self.with_declared_k_unchecked(k))
    }

    /// Declares `k` for a pair whose dilatation bound holds by construction.
    pub fn with_declared_k_unchecked(mut self, k: f64) -> Self {
        self.k_declared = Some(k);
        self
    }

    pub fn with_context(mut self, context: PairContext) -> Self {
        self.context = Some(context);
        self
    }

    pub fn h(&self) -> &Series {
        &self.h
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn order(&self) -> usize {
        self.h.order()
    }

    pub fn k_declared(&self) -> Option<f64> {
        self.k_declared
    }

    pub fn context(&self) -> Option<&PairContext> {
        self.context.as_ref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DilatationSup {
    /// Largest sampled `|g'/h'|`.
    pub max: f64,
    /// Half the largest jump between neighbouring samples; a first-order
    /// estimate of how far the true maximum may exceed `max`.
    pub slack: f64,
}

/// Samples `|g'(z)/h'(z)|` at `samples` equispaced points of `|z| = r`.
pub fn dilatation_sup(pair: &HarmonicPair, r: f64, samples: usize) -> Result<DilatationSup, PairError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(PairError::RadiusOutOfRange(r));
    }
    if samples == 0 {
        return Err(PairError::NoSamples);
    }
    let dh = pair.h.derivative();
    let dg = pair.g.derivative();
    let mut values = Vec::with_capacity(samples);
    for j in 0..samples {
        let z = C64::from_polar(r, 2.0 * PI * j as f64 / samples as f64);
        let hp = dh.eval(z);
        if hp.norm() < 1e-12 {
            return Err(PairError::VanishingDerivative { z, modulus: hp.norm() });
        }
        values.push((dg.eval(z) / hp).norm());
    }
    let max = values.iter().copied().fold(0.0, f64::max);
    let slack = (0..samples)
        .map(|j| (values[(j + 1) % samples] - values[j]).abs() / 2.0)
        .fold(0.0, f64::max);
    Ok(DilatationSup { max, slack })
}

/// Absolute tolerance for the quadratic majorant comparison.
pub const QUADRATIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticMajorantReport {
    pub k: f64,
    pub r: f64,
    /// `Σ_{n=1}^N |b_n|² rⁿ`
    pub lhs: f64,
    /// `k² Σ_{n=1}^N |a_n|² rⁿ`
    pub rhs: f64,
    /// Bound on `k² Σ_{n>N} |a_n|² rⁿ` under `|a_n| ≤ C n`.
    pub rhs_tail: f64,
    /// `rhs − lhs`
    pub margin: f64,
    pub passed: bool,
}

/// Compares `Σ|b_n|² rⁿ` with `k² Σ|a_n|² rⁿ` (both from `n = 1`).
///
/// The growth constant `C` for the tail of the right side is `|φ'(0)|` when
/// the pair carries a context and `max |a_n|/n` otherwise. The check passes
/// when `rhs + rhs_tail − lhs ≥ −QUADRATIC_TOL`; the left partial sum is a
/// lower bound for its full sum, so no tail is needed there.
pub fn check_quadratic_majorant(pair: &HarmonicPair, k: f64, r: f64) -> Result<QuadraticMajorantReport, PairError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(PairError::RadiusOutOfRange(r));
    }
    if !(0.0..=1.0).contains(&k) {
        return Err(PairError::KOutOfRange(k));
    }
    let n = pair.order();
    let weighted = |s: &Series| -> f64 {
        let mut acc = 0.0;
        let mut rn = 1.0;
        for j in 1..=n {
            rn *= r;
            acc += s.coeff(j).norm_sqr() * rn;
        }
        acc
    };
    let lhs = weighted(&pair.g);
    let rhs = k * k * weighted(&pair.h);
    let growth = match pair.context {
        Some(ctx) => ctx.deriv0,
        None => (1..=n).map(|j| pair.h.coeff(j).norm() / j as f64).fold(0.0, f64::max),
    };
    let rhs_tail = k * k * growth * growth * tail::power_weighted_tail(2, r, n);
    let margin = rhs - lhs;
    Ok(QuadraticMajorantReport { k, r, lhs, rhs, rhs_tail, margin, passed: margin + rhs_tail >= -QUADRATIC_TOL })
}
