//! Named test mappings `φ` with closed-form boundary distances.
//!
//! Each [`CatalogEntry`] knows its Taylor coefficients about the origin, the
//! value and derivative there, a geometric class tag and the distance from
//! `φ(0)` to the boundary of `φ(𝔻)`. The distance is always the closed form;
//! nothing here estimates boundaries numerically.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::power_series::{Series, SeriesError, C64};
use crate::quasiconformal::{HarmonicPair, PairContext, PairError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("entry {entry} has no parameter `{name}`")]
    UnknownParam { entry: EntryId, name: String },
    #[error("parameter `{param}` of {entry} is {value}, expected {range}")]
    OutOfRange { entry: EntryId, param: &'static str, value: C64, range: &'static str },
    #[error("dilatation bound k = {0} is outside [0, 1]")]
    InvalidK(f64),
    #[error("|lambda| = {0} exceeds 1")]
    InvalidLambda(f64),
    #[error("extremal pairs need order >= 2, got {0}")]
    OrderTooSmall(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Pair(#[from] PairError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeomClass {
    Convex,
    Starlike,
    Univalent,
    CloseToConvex,
}

impl GeomClass {
    pub fn is_convex(self) -> bool {
        self == GeomClass::Convex
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GeomClass::Convex => "convex",
            GeomClass::Starlike => "starlike",
            GeomClass::Univalent => "univalent",
            GeomClass::CloseToConvex => "close_to_convex",
        }
    }
}

impl fmt::Display for GeomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EntryId {
    ExampleA,
    ExampleB,
    ExampleC,
    ExampleD,
    ExampleE,
    ExampleF,
    ExampleG,
    ExampleH,
    HalfPlaneCayley,
    KoebeFn,
    DiskMoebius,
    ExtremalConvex,
    ExtremalKoebe,
}

impl EntryId {
    pub const ALL: [EntryId; 13] = [
        EntryId::ExampleA,
        EntryId::ExampleB,
        EntryId::ExampleC,
        EntryId::ExampleD,
        EntryId::ExampleE,
        EntryId::ExampleF,
        EntryId::ExampleG,
        EntryId::ExampleH,
        EntryId::HalfPlaneCayley,
        EntryId::KoebeFn,
        EntryId::DiskMoebius,
        EntryId::ExtremalConvex,
        EntryId::ExtremalKoebe,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EntryId::ExampleA => "ExampleA",
            EntryId::ExampleB => "ExampleB",
            EntryId::ExampleC => "ExampleC",
            EntryId::ExampleD => "ExampleD",
            EntryId::ExampleE => "ExampleE",
            EntryId::ExampleF => "ExampleF",
            EntryId::ExampleG => "ExampleG",
            EntryId::ExampleH => "ExampleH",
            EntryId::HalfPlaneCayley => "HalfPlaneCayley",
            EntryId::KoebeFn => "KoebeFn",
            EntryId::DiskMoebius => "DiskMoebius",
            EntryId::ExtremalConvex => "ExtremalConvex",
            EntryId::ExtremalKoebe => "ExtremalKoebe",
        }
    }

    /// Parameter names, their default (example) values and a human-readable
    /// validity range.
    pub fn schema(self) -> &'static [ParamSpec] {
        macro_rules! p {
            ($name:expr, $default:expr, $range:expr) => {
                ParamSpec { name: $name, default: $default, range: $range }
            };
        }
        match self {
            EntryId::ExampleA => &[p!("alpha", 1.0, "complex, nonzero"), p!("lambda", 1.0, "real in (0, 1]")],
            EntryId::ExampleB => &[p!("lambda", 0.5, "real in [0, 1)")],
            EntryId::ExampleC => &[
                p!("a", 1.0, "real, nonzero"),
                p!("c", 1.0, "real, > 0"),
                p!("n", f64::NAN, "real, > 0, replaces c (needs a > 0 or -n/2 < a < 0)"),
            ],
            EntryId::ExampleD => &[p!("lambda", 0.5, "real in [0, 1]")],
            EntryId::ExampleE => &[p!("lambda", 0.0, "complex, |lambda| < 1")],
            EntryId::ExampleF | EntryId::HalfPlaneCayley => &[p!("lambda", 1.0, "complex, Re lambda > 0")],
            EntryId::ExampleG => &[p!("alpha", 1.0, "real in [1, 2]")],
            EntryId::ExampleH => &[p!("alpha", 0.0, "real in [0, 1)")],
            EntryId::DiskMoebius => &[p!("alpha", 0.0, "complex, |alpha| < 1")],
            EntryId::KoebeFn | EntryId::ExtremalConvex | EntryId::ExtremalKoebe => &[],
        }
    }
}

impl fmt::Display for EntryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EntryId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EntryId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| CatalogError::UnknownEntry(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    /// NaN marks an optional parameter without default.
    pub default: f64,
    pub range: &'static str,
}

/// A catalog mapping with validated parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    id: EntryId,
    params: BTreeMap<&'static str, C64>,
}

fn is_real(z: C64) -> bool {
    z.im == 0.0
}

impl CatalogEntry {
    /// Builds an entry from explicit parameters; missing ones take the
    /// schema default.
    pub fn new<'a, I>(id: EntryId, params: I) -> Result<Self, CatalogError>
    where
        I: IntoIterator<Item = (&'a str, C64)>,
    {
        let schema = id.schema();
        let mut map = BTreeMap::new();
        for (name, value) in params {
            let spec = schema
                .iter()
                .find(|s| s.name == name)
                .ok_or_else(|| CatalogError::UnknownParam { entry: id, name: name.to_string() })?;
            map.insert(spec.name, value);
        }
        for spec in schema {
            if !spec.default.is_nan() && !map.contains_key(spec.name) {
                // ExampleC: `n` replaces `c`.
                if id == EntryId::ExampleC && spec.name == "c" && map.contains_key("n") {
                    continue;
                }
                map.insert(spec.name, C64::new(spec.default, 0.0));
            }
        }
        let entry = CatalogEntry { id, params: map };
        entry.validate()?;
        Ok(entry)
    }

    /// The entry at its schema defaults.
    pub fn default_for(id: EntryId) -> Self {
        Self::new(id, std::iter::empty()).expect("schema defaults are valid")
    }

    pub fn id(&self) -> EntryId {
        self.id
    }

    pub fn params(&self) -> &BTreeMap<&'static str, C64> {
        &self.params
    }

    fn param(&self, name: &str) -> C64 {
        self.params[name]
    }

    fn real(&self, name: &str) -> f64 {
        self.params[name].re
    }

    fn out_of_range(&self, param: &'static str) -> CatalogError {
        let range = self.id.schema().iter().find(|s| s.name == param).map_or("valid value", |s| s.range);
        CatalogError::OutOfRange { entry: self.id, param, value: self.params[param], range }
    }

    fn require(&self, param: &'static str, ok: impl Fn(C64) -> bool) -> Result<(), CatalogError> {
        if ok(self.param(param)) {
            Ok(())
        } else {
            Err(self.out_of_range(param))
        }
    }

    fn validate(&self) -> Result<(), CatalogError> {
        let real_in = |lo: f64, hi: f64, lo_open: bool, hi_open: bool| {
            move |z: C64| {
                is_real(z)
                    && (if lo_open { z.re > lo } else { z.re >= lo })
                    && (if hi_open { z.re < hi } else { z.re <= hi })
            }
        };
        match self.id {
            EntryId::ExampleA => {
                self.require("alpha", |z| z.norm() > 0.0)?;
                self.require("lambda", real_in(0.0, 1.0, true, false))
            }
            EntryId::ExampleB => self.require("lambda", real_in(0.0, 1.0, false, true)),
            EntryId::ExampleC => {
                self.require("a", |z| is_real(z) && z.re != 0.0)?;
                if let Some(&n) = self.params.get("n") {
                    if self.params.contains_key("c") {
                        return Err(self.out_of_range("n"));
                    }
                    self.require("n", |z| is_real(z) && z.re > 0.0)?;
                    let a = self.real("a");
                    if !(a > 0.0 || (-n.re / 2.0 < a && a < 0.0)) {
                        return Err(self.out_of_range("a"));
                    }
                    Ok(())
                } else {
                    self.require("c", |z| is_real(z) && z.re > 0.0)
                }
            }
            EntryId::ExampleD => self.require("lambda", real_in(0.0, 1.0, false, false)),
            EntryId::ExampleE => self.require("lambda", |z| z.norm() < 1.0),
            EntryId::ExampleF | EntryId::HalfPlaneCayley => self.require("lambda", |z| z.re > 0.0),
            EntryId::ExampleG => self.require("alpha", real_in(1.0, 2.0, false, false)),
            EntryId::ExampleH => self.require("alpha", real_in(0.0, 1.0, false, true)),
            EntryId::DiskMoebius => self.require("alpha", |z| z.norm() < 1.0),
            EntryId::KoebeFn | EntryId::ExtremalConvex | EntryId::ExtremalKoebe => Ok(()),
        }
    }

    /// `√(c² + a²)` for Example (c), whichever parameterisation was given.
    fn example_c_radius(&self) -> f64 {
        let a = self.real("a");
        match self.params.get("n") {
            Some(n) => n.re + a,
            None => self.real("c").hypot(a),
        }
    }

    /// `n = √(c² + a²) − a` for Example (c).
    fn example_c_n(&self) -> f64 {
        match self.params.get("n") {
            Some(n) => n.re,
            None => self.example_c_radius() - self.real("a"),
        }
    }

    pub fn geom_class(&self) -> GeomClass {
        match self.id {
            EntryId::ExampleE
            | EntryId::ExampleF
            | EntryId::HalfPlaneCayley
            | EntryId::DiskMoebius
            | EntryId::ExtremalConvex => GeomClass::Convex,
            EntryId::ExampleC | EntryId::ExampleH | EntryId::KoebeFn | EntryId::ExtremalKoebe => {
                GeomClass::Starlike
            }
            EntryId::ExampleD if self.real("lambda") == 0.5 => GeomClass::CloseToConvex,
            EntryId::ExampleA | EntryId::ExampleB | EntryId::ExampleD | EntryId::ExampleG => {
                GeomClass::Univalent
            }
        }
    }

    /// Closed-form `dist(φ(0), ∂φ(𝔻))`.
    pub fn dist0(&self) -> f64 {
        match self.id {
            EntryId::ExampleA => self.param("alpha").norm() / (2.0 * (1.0 + self.real("lambda"))),
            EntryId::ExampleB => 1.0 / (2.0 * (1.0 + self.real("lambda"))),
            EntryId::ExampleC => self.example_c_radius(),
            // The printed value carries a spurious minus sign.
            EntryId::ExampleD => (1.0 + self.real("lambda")) / 4.0,
            EntryId::ExampleE => 1.0 - self.param("lambda").im.abs(),
            EntryId::ExampleF | EntryId::HalfPlaneCayley => self.param("lambda").re,
            EntryId::ExampleG => 1.0 / (2.0 * self.real("alpha")),
            EntryId::ExampleH => 2f64.powf(-2.0 * (1.0 - self.real("alpha"))),
            EntryId::DiskMoebius => 1.0 - self.param("alpha").norm(),
            EntryId::KoebeFn | EntryId::ExtremalKoebe => 0.25,
            EntryId::ExtremalConvex => 0.5,
        }
    }

    /// `φ(0)`.
    pub fn value0(&self) -> C64 {
        match self.id {
            EntryId::ExampleC => C64::new(self.real("a"), 0.0),
            EntryId::ExampleE | EntryId::ExampleF | EntryId::HalfPlaneCayley => self.param("lambda"),
            EntryId::DiskMoebius => self.param("alpha"),
            EntryId::ExtremalConvex => C64::new(1.0, 0.0),
            _ => C64::new(0.0, 0.0),
        }
    }

    /// `φ'(0)`.
    pub fn deriv0(&self) -> C64 {
        let one = C64::new(1.0, 0.0);
        match self.id {
            EntryId::ExampleA => self.param("alpha"),
            EntryId::ExampleC => C64::new(2.0 * self.example_c_radius(), 0.0),
            EntryId::ExampleE => (one + self.xi()) * (2.0 / PI),
            EntryId::ExampleF | EntryId::HalfPlaneCayley => C64::new(2.0 * self.param("lambda").re, 0.0),
            EntryId::DiskMoebius => C64::new(self.param("alpha").norm_sqr() - 1.0, 0.0),
            _ => one,
        }
    }

    /// `ξ = exp(−iπ Im λ)` of Example (e).
    fn xi(&self) -> C64 {
        C64::from_polar(1.0, -PI * self.param("lambda").im)
    }

    pub fn context(&self) -> PairContext {
        PairContext { class: self.geom_class(), deriv0: self.deriv0().norm(), dist0: self.dist0() }
    }

    /// Taylor coefficients of `φ` about the origin through degree `order`.
    pub fn coeffs(&self, order: usize) -> Result<Series, CatalogError> {
        let n = order.max(1);
        let c = |x: f64| C64::new(x, 0.0);
        let z = Series::identity(n);
        let series = match self.id {
            EntryId::ExampleA => {
                let lambda = self.real("lambda");
                z.scale(self.param("alpha"))?.divide_polynomial(&[c(1.0), c(1.0 + lambda), c(lambda)])?
            }
            EntryId::ExampleB => {
                let lambda = self.real("lambda");
                z.divide_polynomial(&[c(1.0), c(-2.0 * lambda), c(1.0)])?
            }
            EntryId::ExampleC => {
                let a = self.real("a");
                let cayley = Series::one(n).multiply_polynomial(&[c(1.0), c(1.0)])?.divide_polynomial(&[c(1.0), c(-1.0)])?;
                let slit = z.divide_polynomial(&[c(1.0), c(0.0), c(-1.0)])?;
                Series::scale_and_add(&cayley, c(a), &slit, c(2.0 * self.example_c_n()))?
            }
            EntryId::ExampleD => {
                let lambda = self.real("lambda");
                Series::one(n)
                    .multiply_polynomial(&[c(0.0), c(1.0), c(-lambda)])?
                    .divide_polynomial(&[c(1.0), c(-2.0), c(1.0)])?
            }
            EntryId::ExampleE => {
                // λ + (2/π)(log(1 + ξz) − log(1 − z)), termwise.
                let xi = self.xi();
                let mut coeffs = vec![self.param("lambda")];
                for k in 1..=n {
                    let log_plus = -(-xi).powi(k as i32) / k as f64;
                    let log_minus = -1.0 / k as f64;
                    coeffs.push((log_plus - log_minus) * (2.0 / PI));
                }
                Series::new(coeffs)?
            }
            EntryId::ExampleF | EntryId::HalfPlaneCayley => {
                let lambda = self.param("lambda");
                Series::one(n).multiply_polynomial(&[lambda, lambda.conj()])?.divide_polynomial(&[c(1.0), c(-1.0)])?
            }
            EntryId::ExampleG => {
                // ((1+z)/(1−z))^α = (1+z)^α · (1−z)^(−α), both binomial.
                let alpha = self.real("alpha");
                let plus = binomial_series(alpha, 1.0, n);
                let minus = binomial_series(-alpha, -1.0, n);
                let power = plus.multiply(&minus)?;
                Series::scale_and_add(&power, c(1.0 / (2.0 * alpha)), &Series::one(n), c(-1.0 / (2.0 * alpha)))?
            }
            EntryId::ExampleH => {
                let beta = 2.0 * (1.0 - self.real("alpha"));
                binomial_series(-beta, -1.0, n).multiply_polynomial(&[c(0.0), c(1.0)])?
            }
            EntryId::KoebeFn | EntryId::ExtremalKoebe => koebe(n),
            EntryId::DiskMoebius => {
                let alpha = self.param("alpha");
                Series::one(n).multiply_polynomial(&[alpha, c(-1.0)])?.divide_polynomial(&[c(1.0), -alpha.conj()])?
            }
            EntryId::ExtremalConvex => Series::geometric(c(1.0), n),
        };
        Ok(series.with_order(order))
    }
}

/// `(1 + s·z)^p` for real `p` and `s = ±1`, by the binomial recurrence.
fn binomial_series(p: f64, s: f64, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = 1.0;
    coeffs.push(C64::new(1.0, 0.0));
    for k in 1..=order {
        term *= s * (p - (k as f64 - 1.0)) / k as f64;
        coeffs.push(C64::new(term, 0.0));
    }
    Series::new(coeffs).expect("binomial coefficients of real exponent are finite")
}

/// `z/(1 − z)²`, coefficients exactly `n`.
fn koebe(order: usize) -> Series {
    Series::new((0..=order).map(|k| C64::new(k as f64, 0.0)).collect()).expect("finite")
}

/// The harmonic pairs used to show that the radii cannot be enlarged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ExtremalKind {
    /// `h = 1/(1−z)`, `g = kλ·z/(1−z)`.
    ExtremalConvex,
    /// `h = 1/(1−z)`, `g' = k·z·h'`, so `b_n = k(n−1)/n`.
    ExtremalConvexB1Zero,
    /// `h = z/(1−z)²`, `g' = k·z·h'`, so `b_n = k(n + 1/n − 2)`.
    ExtremalKoebe,
}

impl ExtremalKind {
    pub const ALL: [ExtremalKind; 3] =
        [ExtremalKind::ExtremalConvex, ExtremalKind::ExtremalConvexB1Zero, ExtremalKind::ExtremalKoebe];

    pub fn as_str(self) -> &'static str {
        match self {
            ExtremalKind::ExtremalConvex => "ExtremalConvex",
            ExtremalKind::ExtremalConvexB1Zero => "ExtremalConvexB1Zero",
            ExtremalKind::ExtremalKoebe => "ExtremalKoebe",
        }
    }

    /// The catalog entry holding `φ = h`.
    pub fn entry(self) -> EntryId {
        match self {
            ExtremalKind::ExtremalConvex | ExtremalKind::ExtremalConvexB1Zero => EntryId::ExtremalConvex,
            ExtremalKind::ExtremalKoebe => EntryId::ExtremalKoebe,
        }
    }
}

impl fmt::Display for ExtremalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExtremalKind {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExtremalKind::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| CatalogError::UnknownEntry(s.to_string()))
    }
}

/// Builds an extremal pair from the closed-form coefficient rules.
///
/// `lambda` rotates/scales the co-analytic part of `ExtremalConvex` only; the
/// two `b_1 = 0` kinds ignore it.
pub fn extremal_pair(kind: ExtremalKind, k: f64, lambda: C64, order: usize) -> Result<HarmonicPair, CatalogError> {
    if !(0.0..=1.0).contains(&k) {
        return Err(CatalogError::InvalidK(k));
    }
    if lambda.norm() > 1.0 {
        return Err(CatalogError::InvalidLambda(lambda.norm()));
    }
    if order < 2 {
        return Err(CatalogError::OrderTooSmall(order));
    }
    let entry = CatalogEntry::default_for(kind.entry());
    let h = entry.coeffs(order)?;
    let b: Vec<C64> = (0..=order)
        .map(|n| {
            let nf = n as f64;
            match (kind, n) {
                (_, 0) => C64::new(0.0, 0.0),
                (ExtremalKind::ExtremalConvex, _) => lambda * k,
                (ExtremalKind::ExtremalConvexB1Zero, _) => C64::new(k * (nf - 1.0) / nf, 0.0),
                (ExtremalKind::ExtremalKoebe, _) => C64::new(k * (nf + 1.0 / nf - 2.0), 0.0),
            }
        })
        .collect();
    let g = Series::new(b)?;
    let dilatation_bound = match kind {
        ExtremalKind::ExtremalConvex => k * lambda.norm(),
        _ => k,
    };
    Ok(HarmonicPair::new(h, g)?.with_context(entry.context()).with_declared_k_unchecked(dilatation_bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn entry(id: EntryId, params: &[(&str, C64)]) -> CatalogEntry {
        CatalogEntry::new(id, params.iter().copied()).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(entry(EntryId::ExampleA, &[("alpha", c(1.0)), ("lambda", c(1.0))]).dist0(), 0.25);
        assert_eq!(entry(EntryId::ExampleE, &[("lambda", c(0.0))]).dist0(), 1.0);
        assert_eq!(entry(EntryId::ExampleH, &[("alpha", c(0.0))]).dist0(), 0.25);
        assert_eq!(entry(EntryId::ExampleF, &[("lambda", c(1.0))]).dist0(), 1.0);
        assert_eq!(entry(EntryId::ExampleG, &[("alpha", c(1.0))]).dist0(), 0.5);
        assert_eq!(entry(EntryId::ExampleD, &[("lambda", c(1.0))]).dist0(), 0.5);
        assert_eq!(entry(EntryId::ExampleB, &[("lambda", c(0.5))]).dist0(), 1.0 / 3.0);
        let e = entry(EntryId::ExampleE, &[("lambda", C64::new(0.1, -0.4))]);
        assert!((e.dist0() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn parameter_validation() {
        let bad = |id, params: &[(&str, C64)]| CatalogEntry::new(id, params.iter().copied()).unwrap_err();
        assert!(matches!(bad(EntryId::ExampleA, &[("lambda", c(0.0))]), CatalogError::OutOfRange { .. }));
        assert!(matches!(bad(EntryId::ExampleA, &[("alpha", c(0.0))]), CatalogError::OutOfRange { .. }));
        assert!(matches!(bad(EntryId::ExampleB, &[("lambda", c(1.0))]), CatalogError::OutOfRange { .. }));
        assert!(matches!(bad(EntryId::ExampleC, &[("a", c(0.0))]), CatalogError::OutOfRange { .. }));
        assert!(matches!(bad(EntryId::ExampleC, &[("c", c(-1.0))]), CatalogError::OutOfRange { .. }));
        assert!(matches!(bad(EntryId::ExampleC, &[("a", c(-2.0)), ("n", c(3.0))]), CatalogError::OutOfRange { .. }));
        assert!(matches!(bad(EntryId::ExampleD, &[("lambda", c(1.5))]), CatalogError::OutOfRange { .. }));
        assert!(matches!(bad(EntryId::ExampleE, &[("lambda", C64::new(0.0, 1.0))]), CatalogError::OutOfRange { .. }));
        assert!(matches!(bad(EntryId::ExampleF, &[("lambda", C64::new(0.0, 1.0))]), CatalogError::OutOfRange { .. }));
        assert!(matches!(bad(EntryId::ExampleG, &[("alpha", c(2.5))]), CatalogError::OutOfRange { .. }));
        assert!(matches!(bad(EntryId::ExampleH, &[("alpha", c(1.0))]), CatalogError::OutOfRange { .. }));
        assert!(matches!(bad(EntryId::ExampleB, &[("lambda", C64::new(0.5, 0.1))]), CatalogError::OutOfRange { .. }));
        assert!(matches!(bad(EntryId::KoebeFn, &[("x", c(1.0))]), CatalogError::UnknownParam { .. }));
        assert!("NoSuchThing".parse::<EntryId>().is_err());
        assert_eq!("examplea".parse::<EntryId>().unwrap(), EntryId::ExampleA);
    }

    #[test]
    fn koebe_coefficients_are_exact() {
        let s = CatalogEntry::default_for(EntryId::KoebeFn).coeffs(64).unwrap();
        for n in 0..=64 {
            assert_eq!(s.coeff(n), c(n as f64));
        }
    }

    #[test]
    fn cayley_coefficients() {
        // Oracle: (λ + λ̄z)·Σzⁿ expanded by hand.
        let lambda = C64::new(0.7, 0.3);
        let s = entry(EntryId::HalfPlaneCayley, &[("lambda", lambda)]).coeffs(12).unwrap();
        let geo = Series::geometric(c(1.0), 12);
        for n in 0..=12 {
            let want = lambda * geo.coeff(n) + if n > 0 { lambda.conj() * geo.coeff(n - 1) } else { c(0.0) };
            assert!((s.coeff(n) - want).norm() < 1e-15);
        }
        let unit = CatalogEntry::default_for(EntryId::HalfPlaneCayley).coeffs(6).unwrap();
        assert_eq!(unit.coeff(0), c(1.0));
        for n in 1..=6 {
            assert_eq!(unit.coeff(n), c(2.0));
        }
    }

    #[test]
    fn example_b_is_chebyshev_u() {
        let s = entry(EntryId::ExampleB, &[("lambda", c(0.5))]).coeffs(30).unwrap();
        let mut u = vec![1.0, 1.0];
        for k in 2..30 {
            u.push(u[k - 1] - u[k - 2]);
        }
        assert_eq!(s.coeff(0), c(0.0));
        for n in 1..=30 {
            assert!((s.coeff(n) - c(u[n - 1])).norm() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn example_c_parameterisations_agree() {
        let (a, cc) = (0.75_f64, 1.3_f64);
        let n = cc.hypot(a) - a;
        let by_c = entry(EntryId::ExampleC, &[("a", c(a)), ("c", c(cc))]);
        let by_n = entry(EntryId::ExampleC, &[("a", c(a)), ("n", c(n))]);
        assert!((by_c.dist0() - by_n.dist0()).abs() < 1e-14);
        assert!((by_n.dist0() - (n + a)).abs() < 1e-15);
        let (s1, s2) = (by_c.coeffs(20).unwrap(), by_n.coeffs(20).unwrap());
        for k in 0..=20 {
            assert!((s1.coeff(k) - s2.coeff(k)).norm() < 1e-13);
        }
        // a(1+z)/(1−z) + 2n z/(1−z²): a_0 = a, odd a_k = 2a + 2n, even a_k = 2a.
        for k in 1..=20 {
            let want = if k % 2 == 1 { 2.0 * a + 2.0 * n } else { 2.0 * a };
            assert!((s1.coeff(k) - c(want)).norm() < 1e-13);
        }
    }

    #[test]
    fn example_e_against_derivative_oracle() {
        // φ' = (2/π)(ξ/(1+ξz) + 1/(1−z)), so n a_n = (2/π)(ξ(−ξ)^{n−1} + 1).
        let lambda = C64::new(0.2, 0.35);
        let e = entry(EntryId::ExampleE, &[("lambda", lambda)]);
        let xi = C64::from_polar(1.0, -PI * 0.35);
        let s = e.coeffs(25).unwrap();
        assert_eq!(s.coeff(0), lambda);
        let deriv = Series::scale_and_add(
            &Series::geometric(-xi, 25),
            xi * (2.0 / PI),
            &Series::geometric(c(1.0), 25),
            c(2.0 / PI),
        )
        .unwrap();
        for n in 1..=25 {
            let want = deriv.coeff(n - 1) / n as f64;
            assert!((s.coeff(n) - want).norm() < 1e-14, "n={n}");
        }
        assert!((s.coeff(1) - e.deriv0()).norm() < 1e-15);
    }

    #[test]
    fn example_g_and_h_special_cases() {
        let koebe = koebe(30);
        let half_plane: Vec<C64> = (0..=30).map(|n| if n == 0 { c(0.0) } else { c(1.0) }).collect();
        let g2 = entry(EntryId::ExampleG, &[("alpha", c(2.0))]).coeffs(30).unwrap();
        let g1 = entry(EntryId::ExampleG, &[("alpha", c(1.0))]).coeffs(30).unwrap();
        let h0 = entry(EntryId::ExampleH, &[("alpha", c(0.0))]).coeffs(30).unwrap();
        let h_half = entry(EntryId::ExampleH, &[("alpha", c(0.5))]).coeffs(30).unwrap();
        for n in 0..=30 {
            assert!((g2.coeff(n) - koebe.coeff(n)).norm() < 1e-9, "g2 n={n}");
            assert!((h0.coeff(n) - koebe.coeff(n)).norm() < 1e-12, "h0 n={n}");
            assert!((g1.coeff(n) - half_plane[n]).norm() < 1e-12, "g1 n={n}");
            assert!((h_half.coeff(n) - half_plane[n]).norm() < 1e-12, "h n={n}");
        }
    }

    #[test]
    fn example_d_endpoints() {
        let d0 = entry(EntryId::ExampleD, &[("lambda", c(0.0))]).coeffs(20).unwrap();
        let d1 = entry(EntryId::ExampleD, &[("lambda", c(1.0))]).coeffs(20).unwrap();
        for n in 1..=20 {
            assert!((d0.coeff(n) - c(n as f64)).norm() < 1e-12);
            assert!((d1.coeff(n) - c(1.0)).norm() < 1e-12);
        }
        assert_eq!(entry(EntryId::ExampleD, &[("lambda", c(0.5))]).geom_class(), GeomClass::CloseToConvex);
        assert_eq!(entry(EntryId::ExampleD, &[("lambda", c(0.2))]).geom_class(), GeomClass::Univalent);
    }

    #[test]
    fn moebius_coefficients() {
        let alpha = C64::new(0.3, -0.2);
        let s = entry(EntryId::DiskMoebius, &[("alpha", alpha)]).coeffs(15).unwrap();
        assert!((s.coeff(0) - alpha).norm() < 1e-16);
        for n in 1..=15 {
            let want = -(1.0 - alpha.norm_sqr()) * alpha.conj().powi(n as i32 - 1);
            assert!((s.coeff(n) - want).norm() < 1e-15);
        }
    }

    #[test]
    fn value_and_derivative_match_coefficients() {
        let samples: Vec<CatalogEntry> = vec![
            entry(EntryId::ExampleA, &[("alpha", C64::new(-0.5, 2.0)), ("lambda", c(0.3))]),
            entry(EntryId::ExampleC, &[("a", c(-0.4)), ("c", c(2.0))]),
            entry(EntryId::ExampleE, &[("lambda", C64::new(-0.3, 0.6))]),
            entry(EntryId::ExampleF, &[("lambda", C64::new(0.4, -1.1))]),
            entry(EntryId::ExampleG, &[("alpha", c(1.37))]),
            entry(EntryId::ExampleH, &[("alpha", c(0.8))]),
            entry(EntryId::DiskMoebius, &[("alpha", C64::new(0.5, 0.5))]),
        ];
        for e in samples.iter().chain(EntryId::ALL.iter().map(|&id| CatalogEntry::default_for(id)).collect::<Vec<_>>().iter()) {
            let s = e.coeffs(8).unwrap();
            assert!((s.coeff(0) - e.value0()).norm() < 1e-14, "{}", e.id());
            assert!((s.coeff(1) - e.deriv0()).norm() < 1e-14, "{}", e.id());
        }
    }

    #[test]
    fn distances_lie_in_growth_bands() {
        for id in EntryId::ALL {
            let e = CatalogEntry::default_for(id);
            let d = e.coeffs(4).unwrap().coeff(1).norm();
            let dist = e.dist0();
            assert!(dist > 0.0);
            let lower = if e.geom_class().is_convex() { d / 2.0 } else { d / 4.0 };
            assert!(lower - 1e-15 <= dist && dist <= d + 1e-15, "{id}: {lower} <= {dist} <= {d}");
        }
    }

    #[test]
    fn extremal_pairs() {
        let p = extremal_pair(ExtremalKind::ExtremalConvex, 0.0, c(1.0), 10).unwrap();
        assert_eq!(p.g(), &Series::zero(10));
        assert_eq!(p.h(), &Series::geometric(c(1.0), 10));

        let p = extremal_pair(ExtremalKind::ExtremalConvexB1Zero, 1.0, c(1.0), 10).unwrap();
        assert!((p.g().coeff(2) - c(0.5)).norm() < 1e-16);
        assert!((p.g().coeff(3) - c(2.0 / 3.0)).norm() < 1e-16);

        let p = extremal_pair(ExtremalKind::ExtremalKoebe, 1.0, c(1.0), 10).unwrap();
        assert!((p.g().coeff(2) - c(0.5)).norm() < 1e-16);
        assert!((p.g().coeff(3) - c(4.0 / 3.0)).norm() < 1e-15);
        assert!((p.g().coeff(4) - c(9.0 / 4.0)).norm() < 1e-15);

        assert!(matches!(extremal_pair(ExtremalKind::ExtremalKoebe, 1.5, c(1.0), 10), Err(CatalogError::InvalidK(_))));
        assert!(extremal_pair(ExtremalKind::ExtremalKoebe, 0.5, c(1.0), 1).is_err());
    }

    #[test]
    fn extremal_pairs_match_antiderivative_route() {
        let order = 256;
        for kind in [ExtremalKind::ExtremalConvexB1Zero, ExtremalKind::ExtremalKoebe] {
            for k in [0.0, 0.3, 1.0] {
                let pair = extremal_pair(kind, k, c(1.0), order).unwrap();
                let via = Series::identity(order)
                    .multiply(&pair.h().derivative())
                    .unwrap()
                    .scale(c(k))
                    .unwrap()
                    .antiderivative_zero();
                for n in 0..=order {
                    assert!((pair.g().coeff(n) - via.coeff(n)).norm() <= 1e-12 * (1.0 + n as f64), "{kind} k={k} n={n}");
                }
            }
        }
        let lambda = C64::new(0.6, -0.3);
        let pair = extremal_pair(ExtremalKind::ExtremalConvex, 0.8, lambda, order).unwrap();
        let via = pair.h().derivative().scale(lambda * 0.8).unwrap().antiderivative_zero();
        for n in 0..=order {
            assert!((pair.g().coeff(n) - via.coeff(n)).norm() <= 1e-12);
        }
    }
}
