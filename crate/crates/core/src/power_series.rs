//! Truncated power series with complex `f64` coefficients.
//!
//! A [`Series`] of order `N` stores `c_0..=c_N` and stands for the class of
//! all analytic functions agreeing with it through degree `N`. Every
//! operation returns the exact degree-`N` truncation of the result, so
//! products and compositions never see contributions from the dropped tail.
//!
//! Binary operations pad the shorter operand with zeros to the larger order.
//! Any coefficient that overflows or becomes NaN is reported as
//! [`SeriesError::NonFinite`] together with its degree.

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("coefficient of degree {degree} is not finite")]
    NonFinite { degree: usize },
    #[error("inner series must vanish at the origin, constant term is {0}")]
    NonzeroConstant(C64),
    #[error("series has a zero constant term and cannot be inverted")]
    ZeroConstant,
    #[error("a series needs at least one coefficient")]
    Empty,
}

pub type Result<T, E = SeriesError> = std::result::Result<T, E>;

/// Coefficients `c_0..=c_N` of a truncated power series.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<C64>,
}

fn check_finite(coeffs: Vec<C64>) -> Result<Series> {
    if coeffs.is_empty() {
        return Err(SeriesError::Empty);
    }
    if let Some(degree) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(SeriesError::NonFinite { degree });
    }
    Ok(Series { coeffs })
}

impl Series {
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        check_finite(coeffs)
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        check_finite(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![C64::new(0.0, 0.0); order + 1] }
    }

    pub fn constant(value: C64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C64::new(1.0, 0.0), order)
    }

    /// `c·z^degree`, zero if `degree > order`.
    pub fn monomial(c: C64, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(C64::new(1.0, 0.0), 1, order)
    }

    /// `1/(1 - q z) = Σ qⁿ zⁿ`.
    pub fn geometric(q: C64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = C64::new(1.0, 0.0);
        for _ in 0..=order {
            coeffs.push(p);
            p *= q;
        }
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    /// Coefficient of `zⁿ`; zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> C64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// Zero-pads (or truncates) to the given order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, C64::new(0.0, 0.0));
        Series { coeffs }
    }

    /// Evaluates the truncated polynomial at `z` (Horner).
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Cauchy product truncated to `max(order)`.
    pub fn multiply(&self, other: &Series) -> Result<Series> {
        let n = self.order().max(other.order());
        let mut out = vec![C64::new(0.0, 0.0); n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        check_finite(out)
    }

    /// `alpha·a + beta·b`, termwise.
    pub fn scale_and_add(a: &Series, alpha: C64, b: &Series, beta: C64) -> Result<Series> {
        let n = a.order().max(b.order());
        let out = (0..=n).map(|i| alpha * a.coeff(i) + beta * b.coeff(i)).collect();
        check_finite(out)
    }

    pub fn scale(&self, alpha: C64) -> Result<Series> {
        check_finite(self.coeffs.iter().map(|&c| alpha * c).collect())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        let one = C64::new(1.0, 0.0);
        Self::scale_and_add(self, one, other, one)
    }

    /// Termwise derivative, re-padded to the input order.
    pub fn derivative(&self) -> Series {
        let n = self.order();
        let mut out = vec![C64::new(0.0, 0.0); n + 1];
        for k in 1..=n {
            out[k - 1] = self.coeffs[k] * k as f64;
        }
        Series { coeffs: out }
    }

    /// The primitive vanishing at the origin, truncated to the input order.
    pub fn antiderivative_zero(&self) -> Series {
        let n = self.order();
        let mut out = vec![C64::new(0.0, 0.0); n + 1];
        for k in 1..=n {
            out[k] = self.coeffs[k - 1] / k as f64;
        }
        Series { coeffs: out }
    }

    /// Truncation of `1/a(z)`; needs `a(0) != 0`.
    pub fn reciprocal(&self) -> Result<Series> {
        let c0 = self.coeffs[0];
        if c0 == C64::new(0.0, 0.0) {
            return Err(SeriesError::ZeroConstant);
        }
        let n = self.order();
        let inv0 = c0.inv();
        let mut out = vec![C64::new(0.0, 0.0); n + 1];
        out[0] = inv0;
        for k in 1..=n {
            let s: C64 = (1..=k).map(|j| self.coeffs[j] * out[k - j]).sum();
            out[k] = -s * inv0;
        }
        check_finite(out)
    }

    /// `self · p(z)` for a polynomial given by its coefficients, in `O(N·deg p)`.
    pub fn multiply_polynomial(&self, poly: &[C64]) -> Result<Series> {
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len()];
        mul_poly_into(&self.coeffs, poly, &mut out);
        check_finite(out)
    }

    /// `self / p(z)` for a polynomial with `p(0) != 0`, in `O(N·deg p)`.
    pub fn divide_polynomial(&self, poly: &[C64]) -> Result<Series> {
        if poly.first().map_or(true, |c| *c == C64::new(0.0, 0.0)) {
            return Err(SeriesError::ZeroConstant);
        }
        let mut out = self.coeffs.clone();
        div_poly_in_place(&mut out, poly);
        check_finite(out)
    }

    /// `φ(ω(z))` truncated to `max(order)`, by nested evaluation.
    ///
    /// `self` plays the outer function; `inner` must vanish at the origin.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        let c0 = inner.coeffs[0];
        if c0 != C64::new(0.0, 0.0) {
            return Err(SeriesError::NonzeroConstant(c0));
        }
        let n = self.order().max(inner.order());
        let inner = inner.with_order(n);
        self.with_order(n).compose_by(|acc, out| {
            // out = inner * acc, truncated to out.len()
            let m = out.len();
            for (i, &w) in inner.coeffs.iter().enumerate().take(m).skip(1) {
                if w == C64::new(0.0, 0.0) {
                    continue;
                }
                for (j, &a) in acc.iter().take(m - i).enumerate() {
                    out[i + j] += w * a;
                }
            }
        })
    }

    /// Nested (Horner) evaluation of `self` at an inner series that is
    /// described only through `times_inner(acc, out)`, which must add
    /// `inner · acc` truncated to `out.len() - 1` into the zeroed `out`.
    ///
    /// The inner series must vanish at the origin. The accumulator for the
    /// `j`-th nesting level is only carried to degree `N - j`.
    pub fn compose_by<F>(&self, mut times_inner: F) -> Result<Series>
    where
        F: FnMut(&[C64], &mut [C64]),
    {
        let n = self.order();
        let mut acc = vec![self.coeffs[n]];
        for j in (0..n).rev() {
            let mut next = vec![C64::new(0.0, 0.0); n - j + 1];
            times_inner(&acc, &mut next);
            next[0] += self.coeffs[j];
            acc = next;
        }
        check_finite(acc)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// `out += a · p`, truncated to `out.len()`.
pub(crate) fn mul_poly_into(a: &[C64], poly: &[C64], out: &mut [C64]) {
    let m = out.len();
    for (i, &p) in poly.iter().enumerate().take(m) {
        if p == C64::new(0.0, 0.0) {
            continue;
        }
        for (j, &x) in a.iter().take(m - i).enumerate() {
            out[i + j] += p * x;
        }
    }
}

/// `a ← a / p` in place, `p(0) != 0`.
pub(crate) fn div_poly_in_place(a: &mut [C64], poly: &[C64]) {
    let inv0 = poly[0].inv();
    for k in 0..a.len() {
        let mut s = a[k];
        for (j, &p) in poly.iter().enumerate().skip(1) {
            if j > k {
                break;
            }
            s -= p * a[k - j];
        }
        a[k] = s * inv0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn assert_close(a: &Series, b: &[C64], tol: f64) {
        assert_eq!(a.order() + 1, b.len(), "order mismatch");
        for (n, (x, y)) in a.coeffs().iter().zip(b).enumerate() {
            assert!((x - y).norm() <= tol, "degree {n}: {x} vs {y}");
        }
    }

    #[test]
    fn geometric_squared_gives_n_plus_one() {
        let g = Series::geometric(c(1.0), 10);
        let sq = g.multiply(&g).unwrap();
        let want: Vec<_> = (0..=10).map(|n| c(n as f64 + 1.0)).collect();
        assert_close(&sq, &want, 0.0);
    }

    #[test]
    fn multiply_by_one_and_difference_of_squares() {
        let a = Series::from_real(&[3.0, -1.0, 0.5, 2.0, 7.0]).unwrap();
        assert_eq!(a.multiply(&Series::one(4)).unwrap(), a);
        let p = Series::from_real(&[1.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let q = Series::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]).unwrap();
        let want: Vec<_> = [1.0, 0.0, -1.0, 0.0, 0.0].iter().map(|&x| c(x)).collect();
        assert_close(&p.multiply(&q).unwrap(), &want, 0.0);
    }

    #[test]
    fn overflow_surfaces_with_degree() {
        let a = Series::from_real(&[1.0, 1e200, 0.0]).unwrap();
        let err = a.multiply(&a).unwrap_err();
        assert_eq!(err, SeriesError::NonFinite { degree: 2 });
        assert!(Series::from_real(&[0.0, f64::NAN]).is_err());
    }

    #[test]
    fn compose_identity_and_scaled_geometric() {
        let phi = Series::from_real(&[1.0, 2.0, -3.0, 0.25, 4.0, 1.5]).unwrap();
        assert_eq!(phi.compose(&Series::identity(5)).unwrap(), phi);

        let q = C64::new(0.3, -0.4);
        let g = Series::geometric(c(1.0), 12);
        let got = g.compose(&Series::monomial(q, 1, 12)).unwrap();
        let want: Vec<_> = (0..=12).map(|n| q.powi(n)).collect();
        assert_close(&got, &want, 1e-15);
    }

    #[test]
    fn compose_koebe_with_z_squared() {
        let n = 20;
        let koebe = Series::new((0..=n).map(|k| c(k as f64)).collect()).unwrap();
        let z2 = Series::monomial(c(1.0), 2, n);
        let got = koebe.compose(&z2).unwrap();

        // Oracle: z²/(1−z²)² = z² · (Σ z^{2m})², built with multiply.
        let even_geo =
            Series::new((0..=n).map(|k| if k % 2 == 0 { c(1.0) } else { c(0.0) }).collect()).unwrap();
        let oracle = z2.multiply(&even_geo.multiply(&even_geo).unwrap()).unwrap();
        assert_close(&got, oracle.coeffs(), 1e-12);
        for m in 0..=n / 2 {
            assert_eq!(got.coeff(2 * m), c(m as f64));
            if 2 * m + 1 <= n {
                assert_eq!(got.coeff(2 * m + 1), c(0.0));
            }
        }
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let phi = Series::one(3);
        let bad = Series::from_real(&[0.5, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(phi.compose(&bad), Err(SeriesError::NonzeroConstant(_))));
    }

    #[test]
    fn derivative_examples() {
        let g = Series::geometric(c(1.0), 8);
        let d = g.derivative();
        assert_eq!(d.order(), 8);
        for k in 0..8 {
            assert_eq!(d.coeff(k), c(k as f64 + 1.0));
        }
        assert_eq!(d.coeff(8), c(0.0));
        assert_eq!(Series::constant(c(4.0), 5).derivative(), Series::zero(5));

        // d/dz z/(1−z)²; oracle (1+z)/(1−z)³ = (1+z)·(Σzⁿ)³.
        let koebe = Series::new((0..=8).map(|k| c(k as f64)).collect()).unwrap();
        let geo = Series::geometric(c(1.0), 8);
        let cube = geo.multiply(&geo).unwrap().multiply(&geo).unwrap();
        let oracle = Series::from_real(&[1.0, 1.0]).unwrap().with_order(8).multiply(&cube).unwrap();
        let d = koebe.derivative();
        for k in 0..8 {
            assert_eq!(d.coeff(k), oracle.coeff(k));
        }
        assert_eq!(&[d.coeff(0), d.coeff(1), d.coeff(2)], &[c(1.0), c(4.0), c(9.0)]);
    }

    #[test]
    fn antiderivative_examples() {
        assert_eq!(Series::zero(6).antiderivative_zero(), Series::zero(6));
        let a = Series::geometric(c(1.0), 6).antiderivative_zero();
        assert_eq!(a.coeff(0), c(0.0));
        for n in 1..=6 {
            assert_eq!(a.coeff(n), c(1.0 / n as f64));
        }
        // g' = k z h', h = 1/(1−z)  ⇒  b_n = k(n−1)/n
        let k = 0.7;
        let h = Series::geometric(c(1.0), 30);
        let g = Series::identity(30).multiply(&h.derivative()).unwrap().scale(c(k)).unwrap().antiderivative_zero();
        for n in 1..=30 {
            let want = k * (n as f64 - 1.0) / n as f64;
            assert!((g.coeff(n) - c(want)).norm() < 1e-15, "n={n}");
        }
    }

    #[test]
    fn scale_and_add_examples() {
        let a = Series::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let b = Series::from_real(&[-4.0, 0.5, 9.0]).unwrap();
        assert_eq!(Series::scale_and_add(&a, c(1.0), &Series::zero(2), c(0.0)).unwrap(), a);
        assert_eq!(Series::scale_and_add(&a, c(0.0), &b, c(1.0)).unwrap(), b);
    }

    #[test]
    fn reciprocal_examples() {
        let one_minus_z = Series::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(one_minus_z.reciprocal().unwrap(), Series::geometric(c(1.0), 5));
        assert_eq!(Series::one(3).reciprocal().unwrap(), Series::one(3));
        assert_eq!(Series::zero(3).reciprocal(), Err(SeriesError::ZeroConstant));

        // 1/(1 − 2λz + z²) at λ = 1/2 against the U_n recurrence.
        let lambda = 0.5;
        let n = 40;
        let den = Series::from_real(&[1.0, -2.0 * lambda, 1.0]).unwrap().with_order(n);
        let got = den.reciprocal().unwrap();
        let mut u = vec![1.0, 2.0 * lambda];
        for k in 2..=n {
            u.push(2.0 * lambda * u[k - 1] - u[k - 2]);
        }
        for k in 0..=n {
            assert!((got.coeff(k) - c(u[k])).norm() < 1e-12, "k={k}");
        }
        assert!((got.coeff(2)).norm() < 1e-15 && (got.coeff(3) - c(-1.0)).norm() < 1e-15);
    }

    #[test]
    fn polynomial_multiply_and_divide_match_dense_ops() {
        let a = Series::from_real(&[1.0, 0.3, -0.2, 0.7, 0.1, 0.0, 2.0]).unwrap();
        let p = [C64::new(1.0, 0.5), C64::new(-0.3, 0.2), C64::new(0.1, 0.0)];
        let dense_p = Series::new(p.to_vec()).unwrap().with_order(6);
        let m1 = a.multiply_polynomial(&p).unwrap();
        let m2 = a.multiply(&dense_p).unwrap();
        assert_close(&m1, m2.coeffs(), 1e-14);
        let d1 = a.divide_polynomial(&p).unwrap();
        let d2 = a.multiply(&dense_p.reciprocal().unwrap()).unwrap();
        assert_close(&d1, d2.coeffs(), 1e-12);
    }
}
