//! Tail bounds for majorant series `Σ_{n>N} n^p rⁿ`.

/// Upper bound for `Σ_{n>N} n^p rⁿ`, `0 < r < 1`.
///
/// Exact closed forms for `p = 0, 1`. Otherwise terms are summed explicitly
/// until the ratio of consecutive terms `((m+1)/m)^p r` drops below
/// `(1 + r)/2`, and the remainder is bounded by a geometric series with that
/// ratio.
pub fn power_weighted_tail(p: u32, r: f64, n: usize) -> f64 {
    debug_assert!(r > 0.0 && r < 1.0);
    let nf = n as f64;
    let rn1 = r.powf(nf + 1.0);
    match p {
        0 => rn1 / (1.0 - r),
        1 => rn1 * ((nf + 1.0) - nf * r) / ((1.0 - r) * (1.0 - r)),
        _ => {
            let target = (1.0 + r) / 2.0;
            let ratio = |m: f64| ((m + 1.0) / m).powi(p as i32) * r;
            let mut m = nf + 1.0;
            let mut term = m.powi(p as i32) * rn1;
            let mut sum = 0.0;
            while ratio(m) > target {
                sum += term;
                term *= ratio(m);
                m += 1.0;
            }
            // term is now the (m)-th term, every later ratio is ≤ target.
            sum + term / (1.0 - target)
        }
    }
}
