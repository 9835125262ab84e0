//! Radius equations as functions of the dilatation bound `k`, and their roots.
//!
//! Every equation is written as `lhs(k, r) = target` with `lhs` strictly
//! increasing in `r` on `(0, 1)`. Two of them have closed-form roots; the
//! others are solved by bisection to width `1e-6` followed by a safeguarded
//! Newton polish, falling back to bisection if Newton stalls.
//!
//! The left-hand sides are generic over [`Dual`] so the Newton step uses an
//! exact derivative of the same expression.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("unknown equation `{0}`")]
    UnknownEquation(String),
    #[error("k = {0} must lie in [0, 1]")]
    KOutOfRange(f64),
    #[error("r = {0} must lie in (0, 1)")]
    RadiusOutOfRange(f64),
    #[error("tolerance {0} must be positive")]
    BadTolerance(f64),
    #[error("{id} at k = {k}: left side is not increasing near r = {r}")]
    NotMonotone { id: EquationId, k: f64, r: f64 },
    #[error("{id} at k = {k}: target is not bracketed on (0, 1)")]
    Bracket { id: EquationId, k: f64 },
}

/// Value and first derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn var(v: f64) -> Self {
        Dual { v, d: 1.0 }
    }

    pub fn cst(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        Dual { v: s, d: self.d / (2.0 * s) }
    }

    pub fn ln(self) -> Self {
        Dual { v: self.v.ln(), d: self.d / self.v }
    }

    pub fn powi(self, n: i32) -> Self {
        Dual { v: self.v.powi(n), d: n as f64 * self.v.powi(n - 1) * self.d }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual { v: self.v / o.v, d: (self.d * o.v - self.v * o.d) / (o.v * o.v) }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { v: -self.v, d: -self.d }
    }
}

impl Mul<Dual> for f64 {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self * o.v, d: self * o.d }
    }
}

impl Add<Dual> for f64 {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self + o.v, d: o.d }
    }
}

impl Sub<Dual> for f64 {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self - o.v, d: -o.d }
    }
}

/// `Σ_{n≥2} 1/n² = π²/6 − 1`.
pub fn basel_tail() -> f64 {
    PI * PI / 6.0 - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EquationId {
    /// `(1+k) r/(1−r) = 1/2`, root `1/(3+2k) = (K+1)/(5K+1)`.
    ConvexQc,
    /// `(1+k) r/(1−r) = 1`, root `1/(2+k) = (K+1)/(3K+1)`.
    ConvexQcA0Sq,
    /// Convex `φ`, `b_1 = 0`, lower radius.
    ConvexQcB1Zero,
    /// Convex `φ`, `b_1 = 0`, equality point of the extremal pair.
    ConvexQcB1ZeroUpper,
    /// `r(1 + k√(1+r))/(1−r)² = 1/4`.
    UnivalentQc,
    /// Univalent `φ`, `b_1 = 0`, lower radius.
    UnivalentQcB1Zero,
    /// Univalent `φ`, `b_1 = 0`, equality point of the extremal pair.
    UnivalentQcB1ZeroUpper,
}

impl EquationId {
    pub const ALL: [EquationId; 7] = [
        EquationId::ConvexQc,
        EquationId::ConvexQcA0Sq,
        EquationId::ConvexQcB1Zero,
        EquationId::ConvexQcB1ZeroUpper,
        EquationId::UnivalentQc,
        EquationId::UnivalentQcB1Zero,
        EquationId::UnivalentQcB1ZeroUpper,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EquationId::ConvexQc => "ConvexQC",
            EquationId::ConvexQcA0Sq => "ConvexQC_a0sq",
            EquationId::ConvexQcB1Zero => "ConvexQC_b1zero",
            EquationId::ConvexQcB1ZeroUpper => "ConvexQC_b1zero_upper",
            EquationId::UnivalentQc => "UnivalentQC",
            EquationId::UnivalentQcB1Zero => "UnivalentQC_b1zero",
            EquationId::UnivalentQcB1ZeroUpper => "UnivalentQC_b1zero_upper",
        }
    }

    pub fn target(self) -> f64 {
        match self {
            EquationId::ConvexQc | EquationId::ConvexQcB1Zero => 0.5,
            EquationId::ConvexQcA0Sq | EquationId::ConvexQcB1ZeroUpper => 1.0,
            EquationId::UnivalentQc | EquationId::UnivalentQcB1Zero | EquationId::UnivalentQcB1ZeroUpper => 0.25,
        }
    }

    pub fn has_closed_form(self) -> bool {
        matches!(self, EquationId::ConvexQc | EquationId::ConvexQcA0Sq)
    }

    /// Left-hand side at `r`, with derivative.
    pub fn lhs_dual(self, k: f64, r: Dual) -> Dual {
        let one_m = 1.0 - r;
        let r2 = r * r;
        let one_m_r2 = 1.0 - r2;
        let c = basel_tail();
        match self {
            EquationId::ConvexQc | EquationId::ConvexQcA0Sq => (1.0 + k) * (r / one_m),
            EquationId::ConvexQcB1Zero => {
                let root = ((1.0 + r2) / one_m_r2 * Dual::cst(c)).sqrt();
                r / one_m + k * (r2 / one_m_r2) * root
            }
            EquationId::ConvexQcB1ZeroUpper => 2.0 * (1.0 + k) * (r / one_m) + 2.0 * k * one_m.ln(),
            EquationId::UnivalentQc => r * (1.0 + k * (1.0 + r).sqrt()) / (one_m * one_m),
            EquationId::UnivalentQcB1Zero => {
                let poly = r2.powi(3) + 11.0 * r2.powi(2) + 11.0 * r2 + Dual::cst(1.0);
                let root = (poly / one_m_r2 * Dual::cst(c)).sqrt();
                r / (one_m * one_m) + k * (r2 / (one_m_r2 * one_m_r2)) * root
            }
            EquationId::UnivalentQcB1ZeroUpper => {
                r * (1.0 - k + 2.0 * k * r) / (one_m * one_m) - k * one_m.ln()
            }
        }
    }

    /// Exact root of the closed-form equations.
    pub fn closed_form(self, k: f64) -> Option<f64> {
        match self {
            EquationId::ConvexQc => Some(1.0 / (3.0 + 2.0 * k)),
            EquationId::ConvexQcA0Sq => Some(1.0 / (2.0 + k)),
            _ => None,
        }
    }
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EquationId {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EquationId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| SolveError::UnknownEquation(s.to_string()))
    }
}

/// `(K+1)/(3K+1)`; `K = ∞` gives `1/3`.
pub fn convex_a0sq_radius_in_distortion(big_k: f64) -> f64 {
    if big_k.is_infinite() {
        1.0 / 3.0
    } else {
        (big_k + 1.0) / (3.0 * big_k + 1.0)
    }
}

/// `(K+1)/(5K+1)`; `K = ∞` gives `1/5`.
pub fn convex_radius_in_distortion(big_k: f64) -> f64 {
    if big_k.is_infinite() {
        0.2
    } else {
        (big_k + 1.0) / (5.0 * big_k + 1.0)
    }
}

/// `(1−r)² − 4r(1 + k√(1+r))`, the univalent equation in its polynomial-like
/// form (decreasing in `r`, zero at the root).
pub fn univalent_qc_polynomial_form(k: f64, r: f64) -> f64 {
    (1.0 - r) * (1.0 - r) - 4.0 * r * (1.0 + k * (1.0 + r).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusEquation {
    pub id: EquationId,
    pub k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Solution {
    pub id: EquationId,
    pub k: f64,
    pub radius: f64,
    /// `lhs(radius) − target`
    pub residual: f64,
}

const MONOTONE_GRID: usize = 64;
const BISECT_WIDTH: f64 = 1e-6;
const MAX_NEWTON: usize = 50;
const MAX_BISECT: usize = 400;

impl RadiusEquation {
    pub fn new(id: EquationId, k: f64) -> Result<Self, SolveError> {
        if !(0.0..=1.0).contains(&k) {
            return Err(SolveError::KOutOfRange(k));
        }
        Ok(RadiusEquation { id, k })
    }

    pub fn target(&self) -> f64 {
        self.id.target()
    }

    pub fn lhs(&self, r: f64) -> Result<f64, SolveError> {
        if !(r > 0.0 && r < 1.0) {
            return Err(SolveError::RadiusOutOfRange(r));
        }
        Ok(self.lhs_unchecked(r))
    }

    fn lhs_unchecked(&self, r: f64) -> f64 {
        self.id.lhs_dual(self.k, Dual::cst(r)).v
    }

    fn excess(&self, r: f64) -> Dual {
        self.id.lhs_dual(self.k, Dual::var(r)) - Dual::cst(self.target())
    }

    /// Checks that `lhs` increases along an equispaced grid of `(0, 1)`.
    pub fn check_monotone(&self) -> Result<(), SolveError> {
        let mut prev = f64::NEG_INFINITY;
        for i in 1..MONOTONE_GRID {
            let r = i as f64 / MONOTONE_GRID as f64;
            let v = self.lhs_unchecked(r);
            if !(v > prev) {
                return Err(SolveError::NotMonotone { id: self.id, k: self.k, r });
            }
            prev = v;
        }
        Ok(())
    }

    /// Root in `(0, 1)`: the closed form when there is one, otherwise
    /// [`solve_numeric`](Self::solve_numeric).
    pub fn solve(&self, tol: f64) -> Result<Solution, SolveError> {
        match self.id.closed_form(self.k) {
            Some(radius) => {
                if !(tol > 0.0) {
                    return Err(SolveError::BadTolerance(tol));
                }
                Ok(self.solution(radius))
            }
            None => self.solve_numeric(tol),
        }
    }

    fn solution(&self, radius: f64) -> Solution {
        Solution { id: self.id, k: self.k, radius, residual: self.lhs_unchecked(radius) - self.target() }
    }

    /// Bisection to width `1e-6`, then Newton kept inside the bracket until
    /// `|residual| ≤ tol`; plain bisection finishes the job if Newton stalls.
    pub fn solve_numeric(&self, tol: f64) -> Result<Solution, SolveError> {
        if !(tol > 0.0) {
            return Err(SolveError::BadTolerance(tol));
        }
        self.check_monotone()?;
        let (mut lo, mut hi) = (f64::EPSILON, 1.0 - f64::EPSILON);
        if !(self.excess(lo).v < 0.0 && self.excess(hi).v > 0.0) {
            return Err(SolveError::Bracket { id: self.id, k: self.k });
        }
        while hi - lo > BISECT_WIDTH {
            let mid = 0.5 * (lo + hi);
            if self.excess(mid).v < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }

        let mut x = 0.5 * (lo + hi);
        for _ in 0..MAX_NEWTON {
            let e = self.excess(x);
            if e.v.abs() <= tol {
                return Ok(self.solution(x));
            }
            if e.v < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let step = x - e.v / e.d;
            x = if e.d > 0.0 && step > lo && step < hi { step } else { 0.5 * (lo + hi) };
        }

        for _ in 0..MAX_BISECT {
            let e = self.excess(x).v;
            if e.abs() <= tol || hi - lo <= f64::EPSILON * x {
                break;
            }
            if e < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            x = 0.5 * (lo + hi);
        }
        Ok(self.solution(x))
    }

    /// Pure bisection on the equation, ignoring any closed form.
    pub fn solve_by_bisection(&self, width: f64) -> Result<Solution, SolveError> {
        if !(width > 0.0) {
            return Err(SolveError::BadTolerance(width));
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while hi - lo > width {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.lhs_unchecked(mid) < self.target() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(self.solution(0.5 * (lo + hi)))
    }
}

/// Convenience wrapper: root of `id` at `k` with residual tolerance `tol`.
pub fn solve(id: EquationId, k: f64, tol: f64) -> Result<Solution, SolveError> {
    RadiusEquation::new(id, k)?.solve(tol)
}

/// Left-hand side of `id` at `(k, r)`.
pub fn lhs_eval(id: EquationId, k: f64, r: f64) -> Result<f64, SolveError> {
    RadiusEquation::new(id, k)?.lhs(r)
}

/// Brute-force partial sums behind the closed forms used in the equations:
/// `power = 1`: `Σ n xⁿ`; `2`: `Σ n² x^{n−1}`; `4`: `Σ n⁴ x^{n−1}`; summed
/// for `n = 1..=terms`.
pub fn series_identity_oracle(power: u32, x: f64, terms: usize) -> f64 {
    let mut sum = 0.0;
    for n in (1..=terms).rev() {
        let nf = n as f64;
        let term = match power {
            1 => nf * x.powi(n as i32),
            p => nf.powi(p as i32) * x.powi(n as i32 - 1),
        };
        sum += term;
    }
    sum
}

/// Number of terms after which the summand of [`series_identity_oracle`]
/// stays below `1e-15` relative to the sum.
pub fn oracle_terms(power: u32, x: f64) -> usize {
    let mut n = 1usize;
    loop {
        let nf = n as f64;
        let term = nf.powi(power as i32) * x.powi(n as i32 - 1);
        if n > 8 && term < 1e-18 {
            return n;
        }
        n += 1;
    }
}

/// Closed forms matched by [`series_identity_oracle`].
pub fn series_identity_closed_form(power: u32, x: f64) -> Option<f64> {
    let d = 1.0 - x;
    match power {
        1 => Some(x / (d * d)),
        2 => Some((1.0 + x) / d.powi(3)),
        4 => Some((x.powi(3) + 11.0 * x * x + 11.0 * x + 1.0) / d.powi(5)),
        _ => None,
    }
}
