//! Grids of distortion values `K` for `sweep`.
//!
//! Two spellings are accepted:
//!
//! * `MIN:MAX:STEPS`: `STEPS` points from `K = MIN` to `K = MAX`, equally
//!   spaced in `k = (K−1)/(K+1)`, so `MAX` may be `inf` and `1:inf:3` gives
//!   `K ∈ {1, 3, ∞}`;
//! * `K1,K2,...`: an explicit list.

use std::fmt;
use std::str::FromStr;

use bohr_core::quasiconformal::{dilatation_from_distortion, distortion_from_dilatation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridError(pub String);

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed K grid: {}", self.0)
    }
}

impl std::error::Error for GridError {}

/// Largest accepted number of grid points.
pub const MAX_STEPS: usize = 100_000;

/// A grid point carried in both parameterisations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub k: f64,
    pub big_k: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KGrid {
    points: Vec<GridPoint>,
}

fn parse_distortion(s: &str) -> Result<f64, GridError> {
    let t = s.trim();
    let v = match t.to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "∞" => f64::INFINITY,
        _ => t.parse::<f64>().map_err(|_| GridError(format!("'{t}' is not a number")))?,
    };
    if v.is_nan() || v < 1.0 {
        return Err(GridError(format!("K = {t} must be at least 1")));
    }
    Ok(v)
}

fn point_from_distortion(big_k: f64) -> GridPoint {
    GridPoint { k: dilatation_from_distortion(big_k).expect("validated K"), big_k }
}

impl KGrid {
    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }
}

impl FromStr for KGrid {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(GridError("empty".into()));
        }
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let [lo, hi, steps] = parts[..] else {
                return Err(GridError(format!("'{s}' is not MIN:MAX:STEPS")));
            };
            let (lo, hi) = (parse_distortion(lo)?, parse_distortion(hi)?);
            let steps: usize = steps.trim().parse().map_err(|_| GridError(format!("'{steps}' is not a step count")))?;
            if steps == 0 || steps > MAX_STEPS {
                return Err(GridError(format!("step count must be in 1..={MAX_STEPS}")));
            }
            if hi < lo {
                return Err(GridError("MAX is below MIN".into()));
            }
            if steps == 1 {
                return Ok(KGrid { points: vec![point_from_distortion(lo)] });
            }
            if lo == hi {
                return Err(GridError("MIN equals MAX with more than one step".into()));
            }
            let (k_lo, k_hi) = (dilatation_from_distortion(lo).unwrap(), dilatation_from_distortion(hi).unwrap());
            let points = (0..steps)
                .map(|i| {
                    if i == 0 {
                        return point_from_distortion(lo);
                    }
                    if i == steps - 1 {
                        return point_from_distortion(hi);
                    }
                    let k = k_lo + (k_hi - k_lo) * i as f64 / (steps - 1) as f64;
                    GridPoint { k, big_k: distortion_from_dilatation(k).expect("k in [0, 1]") }
                })
                .collect();
            Ok(KGrid { points })
        } else {
            let points: Vec<GridPoint> =
                s.split(',').map(|t| parse_distortion(t).map(point_from_distortion)).collect::<Result<_, _>>()?;
            if points.len() > MAX_STEPS {
                return Err(GridError(format!("more than {MAX_STEPS} points")));
            }
            Ok(KGrid { points })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(s: &str) -> Vec<f64> {
        s.parse::<KGrid>().unwrap().points().iter().map(|p| p.k).collect()
    }

    #[test]
    fn range_form_is_uniform_in_k() {
        assert_eq!(ks("1:inf:3"), vec![0.0, 0.5, 1.0]);
        let g: KGrid = "1:inf:3".parse().unwrap();
        assert_eq!(g.points()[1].big_k, 3.0);
        assert!(g.points()[2].big_k.is_infinite());
        assert_eq!(ks("3:3:1"), vec![0.5]);
    }

    #[test]
    fn list_form() {
        assert_eq!(ks("1, 3,inf"), vec![0.0, 0.5, 1.0]);
        assert_eq!(ks("1"), vec![0.0]);
    }

    #[test]
    fn malformed_grids() {
        for bad in ["", "0.5", "1:2", "1:2:0", "2:1:3", "1:x:3", "1:2:3:4", "nan", "1,,2", "4:4:2", "1:2:-1"] {
            assert!(bad.parse::<KGrid>().is_err(), "{bad}");
        }
    }
}
