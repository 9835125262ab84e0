//! Bohr majorant sums `Σ_{n≥1} (|a_n| + |b_n|) rⁿ` with tail bounds.
//!
//! A sum is only ever compared against a closed-form boundary distance
//! supplied by the caller (normally from the catalog). A verdict of
//! [`Verdict::Holds`] requires the partial sum plus the tail bound to stay
//! below the distance *and* the tail bound itself to be negligible.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::GeomClass;
use crate::quasiconformal::HarmonicPair;
use crate::tail::power_weighted_tail;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BohrError {
    #[error("radius {0} must lie in (0, 1)")]
    RadiusOutOfRange(f64),
    #[error("the {model:?} tail model needs |φ'(0)|; the pair carries no subordination context")]
    MissingContext { model: Growth },
    #[error("the convex tail model does not apply to a {0} subordinating function")]
    InconsistentModel(GeomClass),
    #[error("boundary distance {0} must be positive")]
    BadDistance(f64),
    #[error("bisection tolerance {0} must be positive")]
    BadTolerance(f64),
}

/// How the coefficients beyond the truncation order are bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    /// `|a_n| + |b_n| ≤ 2C` with `C = |φ'(0)|`; convex `φ` only.
    ConvexBound,
    /// `|a_n| + |b_n| ≤ 2Cn` with `C = |φ'(0)|`.
    UnivalentBound,
    /// `|a_n| + |b_n| ≤ C ρⁿ` with `(C, ρ)` fitted to the stored coefficients.
    /// Heuristic: no certificate backs the fit.
    Geometric,
}

impl Growth {
    /// The certified model matching a pair's context, if any.
    pub fn for_pair(pair: &HarmonicPair) -> Growth {
        match pair.context() {
            Some(ctx) if ctx.class.is_convex() => Growth::ConvexBound,
            Some(_) => Growth::UnivalentBound,
            None => Growth::Geometric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// A tail larger than this fraction of the distance makes a verdict
/// inconclusive.
pub const TAIL_RELATIVE_LIMIT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BohrSum {
    pub partial_sum: f64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BohrReport {
    pub r: f64,
    #[serde(rename = "sum")]
    pub partial_sum: f64,
    #[serde(rename = "tail")]
    pub tail_bound: f64,
    #[serde(rename = "dist")]
    pub dist0: f64,
    pub verdict: Verdict,
}

impl BohrReport {
    pub fn new(r: f64, sum: BohrSum, dist0: f64) -> Self {
        let BohrSum { partial_sum, tail_bound } = sum;
        let verdict = if partial_sum > dist0 {
            Verdict::Fails
        } else if partial_sum + tail_bound <= dist0 && tail_bound < TAIL_RELATIVE_LIMIT * dist0 {
            Verdict::Holds
        } else {
            Verdict::Inconclusive
        };
        BohrReport { r, partial_sum, tail_bound, dist0, verdict }
    }

    /// `dist0 − partial_sum`.
    pub fn margin(&self) -> f64 {
        self.dist0 - self.partial_sum
    }
}

/// `|a_n| + |b_n|` for `n = 0..=N`, the `n = 0` slot holding `|a_0|`.
fn magnitudes(pair: &HarmonicPair) -> Vec<f64> {
    pair.h().coeffs().iter().zip(pair.g().coeffs()).map(|(a, b)| a.norm() + b.norm()).collect()
}

/// `Σ_{n=1}^{N} t_n rⁿ` by Horner.
fn majorant_at(t: &[f64], r: f64) -> f64 {
    t[1..].iter().rev().fold(0.0, |acc, &x| acc * r + x) * r
}

/// Fitted `(C, ρ)` with `t_n ≤ C ρⁿ` on the stored range.
fn geometric_fit(t: &[f64]) -> (f64, f64) {
    let n = t.len() - 1;
    let start = (n / 2).max(1);
    let rho = (start..=n)
        .filter(|&j| t[j] > 0.0)
        .map(|j| t[j].powf(1.0 / j as f64))
        .fold(0.0, f64::max);
    if rho == 0.0 {
        return (0.0, 0.0);
    }
    let c = (1..=n).map(|j| t[j] / rho.powi(j as i32)).fold(0.0, f64::max);
    (c, rho)
}

struct Majorant {
    t: Vec<f64>,
    growth: Growth,
    constant: f64,
    rho: f64,
}

impl Majorant {
    fn new(pair: &HarmonicPair, growth: Growth) -> Result<Self, BohrError> {
        let t = magnitudes(pair);
        let (constant, rho) = match growth {
            Growth::Geometric => geometric_fit(&t),
            Growth::ConvexBound | Growth::UnivalentBound => {
                let ctx = pair.context().ok_or(BohrError::MissingContext { model: growth })?;
                if growth == Growth::ConvexBound && !ctx.class.is_convex() {
                    return Err(BohrError::InconsistentModel(ctx.class));
                }
                (ctx.deriv0, 0.0)
            }
        };
        Ok(Majorant { t, growth, constant, rho })
    }

    fn order(&self) -> usize {
        self.t.len() - 1
    }

    fn tail(&self, r: f64) -> f64 {
        let n = self.order();
        match self.growth {
            Growth::ConvexBound => 2.0 * self.constant * power_weighted_tail(0, r, n),
            Growth::UnivalentBound => 2.0 * self.constant * power_weighted_tail(1, r, n),
            Growth::Geometric => {
                let q = self.rho * r;
                if self.constant == 0.0 {
                    0.0
                } else if q >= 1.0 {
                    f64::INFINITY
                } else {
                    self.constant * q.powi(n as i32 + 1) / (1.0 - q)
                }
            }
        }
    }

    fn sum(&self, r: f64) -> BohrSum {
        BohrSum { partial_sum: majorant_at(&self.t, r), tail_bound: self.tail(r) }
    }
}

fn check_radius(r: f64) -> Result<(), BohrError> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(BohrError::RadiusOutOfRange(r))
    }
}

/// `Σ_{n=1}^{N} (|a_n| + |b_n|) rⁿ` and a bound for the rest.
pub fn bohr_sum(pair: &HarmonicPair, r: f64, growth: Growth) -> Result<BohrSum, BohrError> {
    check_radius(r)?;
    Ok(Majorant::new(pair, growth)?.sum(r))
}

/// [`bohr_sum`] compared with `dist0`.
pub fn bohr_report(pair: &HarmonicPair, r: f64, growth: Growth, dist0: f64) -> Result<BohrReport, BohrError> {
    if !(dist0 > 0.0) {
        return Err(BohrError::BadDistance(dist0));
    }
    Ok(BohrReport::new(r, bohr_sum(pair, r, growth)?, dist0))
}

/// `|a_0|² + Σ_{n≥1} (|a_n| + |b_n|) rⁿ`, same tail as [`bohr_sum`].
pub fn bohr_sum_sq0(pair: &HarmonicPair, r: f64, growth: Growth) -> Result<BohrSum, BohrError> {
    let s = bohr_sum(pair, r, growth)?;
    Ok(BohrSum { partial_sum: pair.h().coeff(0).norm_sqr() + s.partial_sum, ..s })
}

/// Outcome of [`empirical_bohr_radius`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusSearch {
    /// The sum crosses `dist0` inside `bracket`; `radius` is its midpoint.
    Found { radius: f64, bracket: (f64, f64), iterations: u32 },
    /// The sum stays below `dist0` on all of `(0, value]`.
    AtLeast(f64),
}

impl RadiusSearch {
    pub fn radius(&self) -> f64 {
        match *self {
            RadiusSearch::Found { radius, .. } => radius,
            RadiusSearch::AtLeast(r) => r,
        }
    }
}

/// Upper end of the search interval is `1 − SEARCH_EPS`.
pub const SEARCH_EPS: f64 = 1e-6;
pub const MAX_BISECTIONS: u32 = 200;

/// Largest `r` with `partial + tail ≤ dist0`, by bisection to bracket width
/// `tol`. The tail model follows the pair's context (see
/// [`Growth::for_pair`]). The sum holds on `(0, bracket.0]`.
pub fn empirical_bohr_radius(pair: &HarmonicPair, dist0: f64, tol: f64) -> Result<RadiusSearch, BohrError> {
    if !(dist0 > 0.0) {
        return Err(BohrError::BadDistance(dist0));
    }
    if !(tol > 0.0) {
        return Err(BohrError::BadTolerance(tol));
    }
    let majorant = Majorant::new(pair, Growth::for_pair(pair))?;
    let below = |r: f64| {
        let s = majorant.sum(r);
        s.partial_sum + s.tail_bound <= dist0
    };
    let (mut lo, mut hi) = (0.0, 1.0 - SEARCH_EPS);
    if below(hi) {
        return Ok(RadiusSearch::AtLeast(hi));
    }
    let mut iterations = 0;
    while hi - lo > tol && iterations < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if below(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(RadiusSearch::Found { radius: 0.5 * (lo + hi), bracket: (lo, hi), iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{extremal_pair, CatalogEntry, EntryId, ExtremalKind};
    use crate::power_series::{Series, C64};
    use crate::quasiconformal::PairContext;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn analytic(id: EntryId, order: usize) -> HarmonicPair {
        let e = CatalogEntry::default_for(id);
        HarmonicPair::new(e.coeffs(order).unwrap(), Series::zero(order)).unwrap().with_context(e.context())
    }

    #[test]
    fn classical_convex_value_at_one_third() {
        let pair = analytic(EntryId::ExtremalConvex, 2048);
        let s = bohr_sum(&pair, 1.0 / 3.0, Growth::ConvexBound).unwrap();
        assert!((s.partial_sum - 0.5).abs() < 1e-15);
        assert!(s.tail_bound < 1e-300);
        let rep = bohr_report(&pair, 1.0 / 3.0, Growth::ConvexBound, 0.5).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
    }

    #[test]
    fn extremal_convex_closed_form() {
        for (k, lambda) in [(0.3, C64::from_polar(0.9, 1.0)), (1.0, c(1.0)), (0.0, c(1.0))] {
            let pair = extremal_pair(ExtremalKind::ExtremalConvex, k, lambda, 2048).unwrap();
            for r in [0.05, 0.2, 0.5, 0.9] {
                let s = bohr_sum(&pair, r, Growth::ConvexBound).unwrap();
                let want = (1.0 + k * lambda.norm()) * r / (1.0 - r);
                assert!((s.partial_sum - want).abs() < 1e-13 * want.max(1.0), "k={k} r={r}");
            }
        }
    }

    #[test]
    fn extremal_koebe_near_quarter() {
        let pair = extremal_pair(ExtremalKind::ExtremalKoebe, 1.0, c(1.0), 2048).unwrap();
        let s = bohr_sum(&pair, 0.161353, Growth::UnivalentBound).unwrap();
        assert!((s.partial_sum - 0.25).abs() < 1e-4, "{}", s.partial_sum);
    }

    #[test]
    fn sq0_variant() {
        // h = (α − z)/(1 − ᾱz); oracle: |a_n| = (1 − |α|²)|α|^{n−1}.
        for alpha in [c(0.0), C64::new(0.3, 0.4)] {
            let e = CatalogEntry::new(EntryId::DiskMoebius, [("alpha", alpha)]).unwrap();
            let pair = HarmonicPair::new(e.coeffs(512).unwrap(), Series::zero(512)).unwrap().with_context(e.context());
            let r = 1.0 / 3.0;
            let s = bohr_sum_sq0(&pair, r, Growth::ConvexBound).unwrap();
            let m = alpha.norm();
            let want = m * m + (1.0 - m * m) * r / (1.0 - m * r);
            assert!((s.partial_sum - want).abs() < 1e-15, "{alpha}");
            assert!(s.partial_sum <= 1.0);
        }
        // a_0 = 0: same as the plain sum.
        let pair = analytic(EntryId::KoebeFn, 256);
        let a = bohr_sum(&pair, 0.1, Growth::UnivalentBound).unwrap();
        let b = bohr_sum_sq0(&pair, 0.1, Growth::UnivalentBound).unwrap();
        assert_eq!(a, b);
        // ExtremalConvex with a_0 = 1, k = 1, λ = 1 at r = 1/3: 1 + 2r/(1−r) = 2.
        let pair = extremal_pair(ExtremalKind::ExtremalConvex, 1.0, c(1.0), 2048).unwrap();
        let s = bohr_sum_sq0(&pair, 1.0 / 3.0, Growth::ConvexBound).unwrap();
        assert!((s.partial_sum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn empirical_radii() {
        let pair = analytic(EntryId::ExtremalConvex, 2048);
        let r = empirical_bohr_radius(&pair, 0.5, 1e-12).unwrap().radius();
        assert!((r - 1.0 / 3.0).abs() < 1e-11, "{r}");

        let pair = extremal_pair(ExtremalKind::ExtremalConvex, 1.0, c(1.0), 2048).unwrap();
        let r = empirical_bohr_radius(&pair, 0.5, 1e-12).unwrap().radius();
        assert!((r - 0.2).abs() < 1e-11, "{r}");

        let pair = analytic(EntryId::KoebeFn, 2048);
        let r = empirical_bohr_radius(&pair, 0.25, 1e-12).unwrap().radius();
        assert!((r - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-11, "{r}");
    }

    #[test]
    fn radius_sentinel_for_tiny_pairs() {
        let h = Series::from_real(&[0.0, 1e-3]).unwrap().with_order(64);
        let ctx = PairContext { class: GeomClass::Convex, deriv0: 1e-3, dist0: 1.0 };
        let pair = HarmonicPair::new(h, Series::zero(64)).unwrap().with_context(ctx);
        // The convex tail 2C r^{N+1}/(1−r) only blows past 1 very close to r = 1.
        let res = empirical_bohr_radius(&pair, 1.0, 1e-12).unwrap();
        assert!(matches!(res, RadiusSearch::AtLeast(_)) || res.radius() > 0.9);
        let zero = HarmonicPair::new(Series::zero(8), Series::zero(8)).unwrap();
        assert_eq!(empirical_bohr_radius(&zero, 0.5, 1e-9).unwrap(), RadiusSearch::AtLeast(1.0 - SEARCH_EPS));
    }

    #[test]
    fn verdicts() {
        let sum = |p, t| BohrSum { partial_sum: p, tail_bound: t };
        assert_eq!(BohrReport::new(0.1, sum(0.4, 0.0), 0.5).verdict, Verdict::Holds);
        assert_eq!(BohrReport::new(0.1, sum(0.6, 0.0), 0.5).verdict, Verdict::Fails);
        assert_eq!(BohrReport::new(0.1, sum(0.4, 1e-3), 0.5).verdict, Verdict::Inconclusive);
        assert_eq!(BohrReport::new(0.1, sum(0.5, 1e-12), 0.5).verdict, Verdict::Inconclusive);
    }

    #[test]
    fn model_errors() {
        let pair = analytic(EntryId::KoebeFn, 64);
        assert_eq!(
            bohr_sum(&pair, 0.1, Growth::ConvexBound),
            Err(BohrError::InconsistentModel(GeomClass::Starlike))
        );
        let bare = HarmonicPair::new(Series::geometric(c(1.0), 64), Series::zero(64)).unwrap();
        assert!(matches!(bohr_sum(&bare, 0.1, Growth::UnivalentBound), Err(BohrError::MissingContext { .. })));
        assert!(bohr_sum(&bare, 0.1, Growth::Geometric).is_ok());
        assert_eq!(bohr_sum(&bare, 1.0, Growth::Geometric), Err(BohrError::RadiusOutOfRange(1.0)));
    }

    #[test]
    fn geometric_fit_on_decaying_series() {
        let h = Series::geometric(c(0.5), 128);
        let pair = HarmonicPair::new(h, Series::zero(128)).unwrap();
        let s = bohr_sum(&pair, 0.9, Growth::Geometric).unwrap();
        let exact = 0.45 / (1.0 - 0.45);
        assert!((s.partial_sum - exact).abs() < 1e-14);
        assert!(s.tail_bound < 1e-40);
    }
}
