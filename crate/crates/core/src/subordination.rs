//! Schwarz functions and subordinate series `g = φ ∘ ω`.
//!
//! Random Schwarz functions are `ω(z) = z·B(z)` with `B` a finite Blaschke
//! product, so `|ω(z)| ≤ |z|` holds exactly. Multiplying a series by `B`
//! costs `O(N)` per factor, which keeps composition at `O(N²·d)` for `d`
//! factors instead of the `O(N³)` of dense nested evaluation.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::GeomClass;
use crate::power_series::{Series, SeriesError, C64};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubordinationError {
    #[error("Blaschke zero {0} must lie strictly inside the unit disk")]
    ZeroOutsideDisk(C64),
    #[error("rotation factor {0} must be unimodular")]
    NotUnimodular(C64),
    #[error("sampled max |ω| = {0} on |z| = 0.99 is not below 0.995")]
    NotSchwarz(f64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Largest modulus of a randomly drawn Blaschke zero.
pub const MAX_ZERO_MODULUS: f64 = 0.8;
/// Points on `|z| = CERT_RADIUS` used for the modulus certificate.
pub const CERT_SAMPLES: usize = 4096;
pub const CERT_RADIUS: f64 = 0.99;
const CERT_LIMIT: f64 = 0.995;

/// `B(z) = e^{iθ} Π (z − a_j)/(1 − ā_j z)`, a self-map of the disk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlaschkeProduct {
    rotation: C64,
    zeros: Vec<C64>,
}

impl BlaschkeProduct {
    pub fn new(rotation: C64, zeros: Vec<C64>) -> Result<Self, SubordinationError> {
        if (rotation.norm() - 1.0).abs() > 1e-12 {
            return Err(SubordinationError::NotUnimodular(rotation));
        }
        if let Some(&a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(SubordinationError::ZeroOutsideDisk(a));
        }
        Ok(BlaschkeProduct { rotation, zeros })
    }

    /// The constant 1.
    pub fn one() -> Self {
        BlaschkeProduct { rotation: C64::new(1.0, 0.0), zeros: Vec::new() }
    }

    /// `degree` zeros uniform in `|a| ≤ 0.8` and a uniform rotation.
    pub fn random<R: Rng>(rng: &mut R, degree: usize) -> Self {
        let rotation = C64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
        let zeros = (0..degree)
            .map(|_| {
                let rho = MAX_ZERO_MODULUS * rng.gen::<f64>().sqrt();
                C64::from_polar(rho, rng.gen_range(0.0..2.0 * PI))
            })
            .collect();
        BlaschkeProduct { rotation, zeros }
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn zeros(&self) -> &[C64] {
        &self.zeros
    }

    pub fn rotation(&self) -> C64 {
        self.rotation
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.zeros.iter().fold(self.rotation, |acc, &a| acc * (z - a) / (C64::new(1.0, 0.0) - a.conj() * z))
    }

    /// `buf ← B · buf`, truncated to the buffer length.
    pub fn apply(&self, buf: &mut [C64]) {
        for &a in &self.zeros {
            // multiply by (z − a), from the top down
            for n in (0..buf.len()).rev() {
                let prev = if n > 0 { buf[n - 1] } else { C64::new(0.0, 0.0) };
                buf[n] = prev - a * buf[n];
            }
            // divide by (1 − ā z)
            let ac = a.conj();
            for n in 1..buf.len() {
                let prev = buf[n - 1];
                buf[n] += ac * prev;
            }
        }
        for c in buf.iter_mut() {
            *c *= self.rotation;
        }
    }

    pub fn series(&self, order: usize) -> Series {
        let mut buf = vec![C64::new(0.0, 0.0); order + 1];
        buf[0] = C64::new(1.0, 0.0);
        self.apply(&mut buf);
        Series::new(buf).expect("Blaschke coefficients are bounded")
    }

    /// `B · s`.
    pub fn multiply(&self, s: &Series) -> Series {
        let mut buf = s.coeffs().to_vec();
        self.apply(&mut buf);
        Series::new(buf).expect("multiplying by a bounded function keeps coefficients finite")
    }
}

/// A Schwarz function `ω = z·B(z)` with its series and a sampled certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzFn {
    inner: BlaschkeProduct,
    series: Series,
    modulus_certificate: f64,
}

/// Max of `|f(z)|` over `CERT_SAMPLES` points of `|z| = CERT_RADIUS`.
pub fn sampled_modulus(f: impl Fn(C64) -> C64) -> f64 {
    (0..CERT_SAMPLES)
        .map(|j| f(C64::from_polar(CERT_RADIUS, 2.0 * PI * j as f64 / CERT_SAMPLES as f64)).norm())
        .fold(0.0, f64::max)
}

impl SchwarzFn {
    pub fn from_blaschke(inner: BlaschkeProduct, order: usize) -> Result<Self, SubordinationError> {
        let b = inner.series(order);
        let series = b.multiply_polynomial(&[C64::new(0.0, 0.0), C64::new(1.0, 0.0)])?;
        // Sampled through the product form, so short truncations do not
        // pollute the certificate.
        let modulus_certificate = sampled_modulus(|z| z * inner.eval(z));
        if modulus_certificate > CERT_LIMIT {
            return Err(SubordinationError::NotSchwarz(modulus_certificate));
        }
        Ok(SchwarzFn { inner, series, modulus_certificate })
    }

    /// `ω(z) = z`.
    pub fn identity(order: usize) -> Self {
        Self::from_blaschke(BlaschkeProduct::one(), order).expect("identity is Schwarz")
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn inner(&self) -> &BlaschkeProduct {
        &self.inner
    }

    pub fn modulus_certificate(&self) -> f64 {
        self.modulus_certificate
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `ω(z)` from the product form.
    pub fn eval(&self, z: C64) -> C64 {
        z * self.inner.eval(z)
    }
}

/// Deterministic random Schwarz function: `degree` Blaschke factors (none
/// gives `ω(z) = z`) expanded to `order`.
pub fn random_schwarz(seed: u64, degree: usize, order: usize) -> SchwarzFn {
    let inner = if degree == 0 {
        BlaschkeProduct::one()
    } else {
        BlaschkeProduct::random(&mut ChaCha8Rng::seed_from_u64(seed), degree)
    };
    SchwarzFn::from_blaschke(inner, order).expect("Blaschke construction is Schwarz")
}

/// `φ ∘ ω` truncated to the order of `φ`.
///
/// Uses nested evaluation with `ω·(·)` applied through the product form of
/// `ω`, so the result agrees with [`Series::compose`] on `ω.series()`.
pub fn subordinate(phi: &Series, omega: &SchwarzFn) -> Result<Series, SubordinationError> {
    let inner = omega.inner();
    Ok(phi.compose_by(|acc, out| {
        // out = z · B · acc, truncated
        let m = out.len();
        out[1..].copy_from_slice(&acc[..m - 1]);
        inner.apply(out);
    })?)
}

/// Absolute slack allowed when comparing coefficients with their bounds.
pub const COEFF_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegreeBound {
    pub n: usize,
    pub modulus: f64,
    /// `n|φ'(0)|` for univalent classes, `|φ'(0)|` for convex.
    pub bound: f64,
    /// The same bound through the distance: `4n·dist` or `2·dist`.
    pub bound_via_dist: f64,
    /// `bound − modulus`
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientBoundReport {
    pub class: GeomClass,
    pub degrees: Vec<DegreeBound>,
    pub passed: bool,
    /// Degree with the smallest margin.
    pub worst_degree: usize,
    pub worst_margin: f64,
}

/// Compares `|b_n|`, `n ≥ 1`, with the coefficient bound for `g ≺ φ`.
pub fn check_coefficient_bounds(g: &Series, class: GeomClass, phi_deriv0: C64, dist0: f64) -> CoefficientBoundReport {
    let d = phi_deriv0.norm();
    let degrees: Vec<DegreeBound> = (1..=g.order())
        .map(|n| {
            let nf = n as f64;
            let (bound, bound_via_dist) = if class.is_convex() { (d, 2.0 * dist0) } else { (nf * d, 4.0 * nf * dist0) };
            let modulus = g.coeff(n).norm();
            DegreeBound { n, modulus, bound, bound_via_dist, margin: bound - modulus }
        })
        .collect();
    let (worst_degree, worst_margin) = degrees
        .iter()
        .map(|b| (b.n, b.margin))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    CoefficientBoundReport { class, passed: worst_margin >= -COEFF_SLACK, degrees, worst_degree, worst_margin }
}
