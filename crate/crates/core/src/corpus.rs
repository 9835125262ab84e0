//! Hypothesis-exact random harmonic pairs for the theorem checks.
//!
//! A case draws a catalog mapping `φ` of the class a theorem asks for, sets
//! `h = φ∘ω₁` with `ω₁(z) = z·B₁(z)` and solves `g' = k·μ·h'`, `g(0) = 0`,
//! where the dilatation factor `μ` is a Blaschke product `B₂` (so
//! `|g'/h'| ≤ k` with `b₁` free) or `z·B₂` for the `b₁ = 0` variants.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{CatalogEntry, CatalogError, EntryId};
use crate::power_series::{Series, C64};
use crate::quasiconformal::{HarmonicPair, PairError};
use crate::radius::EquationId;
use crate::subordination::BlaschkeProduct;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorpusError {
    #[error("unknown theorem '{0}' (expected convex, convex-b1zero, univalent or univalent-b1zero)")]
    UnknownTheorem(String),
    #[error("dilatation bound {0} is outside [0, 1]")]
    InvalidK(f64),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Pair(#[from] PairError),
}

/// The four radius theorems, by hypothesis on `φ` and on `b₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremKind {
    /// `φ` convex, `r ≤ (K+1)/(5K+1)`.
    Convex,
    /// `φ` convex, `b₁ = 0`.
    ConvexB1Zero,
    /// `φ` univalent.
    Univalent,
    /// `φ` univalent, `h(0) = 0`, `b₁ = 0`.
    UnivalentB1Zero,
}

impl TheoremKind {
    pub const ALL: [TheoremKind; 4] =
        [TheoremKind::Convex, TheoremKind::ConvexB1Zero, TheoremKind::Univalent, TheoremKind::UnivalentB1Zero];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremKind::Convex => "convex",
            TheoremKind::ConvexB1Zero => "convex-b1zero",
            TheoremKind::Univalent => "univalent",
            TheoremKind::UnivalentB1Zero => "univalent-b1zero",
        }
    }

    /// The equation whose root is the theorem's radius.
    pub fn radius_equation(self) -> EquationId {
        match self {
            TheoremKind::Convex => EquationId::ConvexQc,
            TheoremKind::ConvexB1Zero => EquationId::ConvexQcB1Zero,
            TheoremKind::Univalent => EquationId::UnivalentQc,
            TheoremKind::UnivalentB1Zero => EquationId::UnivalentQcB1Zero,
        }
    }

    pub fn requires_convex(self) -> bool {
        matches!(self, TheoremKind::Convex | TheoremKind::ConvexB1Zero)
    }

    pub fn b1_zero(self) -> bool {
        matches!(self, TheoremKind::ConvexB1Zero | TheoremKind::UnivalentB1Zero)
    }

    /// Catalog entries admissible as `φ`.
    pub fn entry_pool(self) -> &'static [EntryId] {
        const CONVEX: &[EntryId] = &[
            EntryId::ExampleE,
            EntryId::ExampleF,
            EntryId::HalfPlaneCayley,
            EntryId::DiskMoebius,
            EntryId::ExtremalConvex,
        ];
        if self.requires_convex() {
            CONVEX
        } else {
            &EntryId::ALL
        }
    }
}

impl fmt::Display for TheoremKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for TheoremKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl FromStr for TheoremKind {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        TheoremKind::ALL
            .into_iter()
            .find(|t| t.as_str() == key)
            .ok_or_else(|| CorpusError::UnknownTheorem(s.to_string()))
    }
}

/// Random in-range parameters for a catalog entry.
pub fn random_entry<R: Rng>(rng: &mut R, id: EntryId) -> CatalogEntry {
    let c = |x: f64| C64::new(x, 0.0);
    let disk = |rng: &mut R, max: f64| C64::from_polar(max * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI));
    let params: Vec<(&str, C64)> = match id {
        EntryId::ExampleA => vec![
            ("alpha", C64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..2.0 * PI))),
            ("lambda", c(rng.gen_range(0.05..=1.0))),
        ],
        EntryId::ExampleB => vec![("lambda", c(rng.gen_range(0.0..0.95)))],
        EntryId::ExampleC => vec![("a", c(rng.gen_range(0.25..2.0))), ("c", c(rng.gen_range(0.25..2.0)))],
        EntryId::ExampleD => vec![("lambda", c(rng.gen_range(0.0..=1.0)))],
        EntryId::ExampleE => vec![("lambda", disk(rng, 0.9))],
        EntryId::ExampleF | EntryId::HalfPlaneCayley => {
            vec![("lambda", C64::new(rng.gen_range(0.1..2.0), rng.gen_range(-2.0..2.0)))]
        }
        EntryId::ExampleG => vec![("alpha", c(rng.gen_range(1.0..=2.0)))],
        EntryId::ExampleH => vec![("alpha", c(rng.gen_range(0.0..0.95)))],
        EntryId::DiskMoebius => vec![("alpha", disk(rng, 0.9))],
        EntryId::KoebeFn | EntryId::ExtremalConvex | EntryId::ExtremalKoebe => vec![],
    };
    CatalogEntry::new(id, params).expect("sampled parameters lie in range")
}

/// One generated pair with what produced it.
#[derive(Debug, Clone)]
pub struct Case {
    pub index: u64,
    pub theorem: TheoremKind,
    pub entry: CatalogEntry,
    pub k: f64,
    /// Blaschke degree of `ω₁`.
    pub subordination_degree: usize,
    /// Blaschke degree of the dilatation factor.
    pub dilatation_degree: usize,
    pub pair: HarmonicPair,
    pub dist0: f64,
}

/// Largest Blaschke degree drawn for either factor.
pub const MAX_DEGREE: usize = 3;

/// Case `index` of the corpus for `theorem` with the given `seed`.
///
/// Each index uses its own ChaCha stream, so cases are independent of how
/// many others are generated. `k = None` draws `k` uniformly in `[0, 1)`.
pub fn generate_case(theorem: TheoremKind, seed: u64, index: u64, k: Option<f64>, order: usize) -> Result<Case, CorpusError> {
    if let Some(k) = k {
        if !(0.0..=1.0).contains(&k) {
            return Err(CorpusError::InvalidK(k));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);

    let pool = theorem.entry_pool();
    let id = pool[rng.gen_range(0..pool.len())];
    let entry = random_entry(&mut rng, id);
    let k = k.unwrap_or_else(|| rng.gen_range(0.0..1.0));
    let subordination_degree = rng.gen_range(0..=MAX_DEGREE);
    let dilatation_degree = rng.gen_range(0..=MAX_DEGREE);
    let omega = BlaschkeProduct::random(&mut rng, subordination_degree);
    let mu = BlaschkeProduct::random(&mut rng, dilatation_degree);

    let mut phi = entry.coeffs(order)?;
    if theorem == TheoremKind::UnivalentB1Zero {
        phi = Series::scale_and_add(&phi, C64::new(1.0, 0.0), &Series::constant(-phi.coeff(0), order), C64::new(1.0, 0.0))
            .map_err(CatalogError::from)?;
    }
    let h = phi
        .compose_by(|acc, out| {
            let m = out.len();
            out[1..].copy_from_slice(&acc[..m - 1]);
            omega.apply(out);
        })
        .map_err(CatalogError::from)?;
    let mut dg = h.derivative().into_coeffs();
    mu.apply(&mut dg);
    if theorem.b1_zero() {
        dg.rotate_right(1);
        dg[0] = C64::new(0.0, 0.0);
    }
    for c in dg.iter_mut() {
        *c *= k;
    }
    let g = Series::new(dg).map_err(CatalogError::from)?.antiderivative_zero();

    let dist0 = entry.dist0();
    let pair = HarmonicPair::new(h, g)?.with_context(entry.context()).with_declared_k_unchecked(k);
    Ok(Case { index, theorem, entry, k, subordination_degree, dilatation_degree, pair, dist0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasiconformal::dilatation_sup;
    use crate::subordination::check_coefficient_bounds;

    #[test]
    fn theorem_ids_round_trip() {
        for t in TheoremKind::ALL {
            assert_eq!(t.as_str().parse::<TheoremKind>().unwrap(), t);
        }
        assert_eq!("Convex_B1Zero".parse::<TheoremKind>().unwrap(), TheoremKind::ConvexB1Zero);
        assert!("3.2".parse::<TheoremKind>().is_err());
    }

    #[test]
    fn cases_are_deterministic_and_independent_of_count() {
        let a = generate_case(TheoremKind::Univalent, 9, 17, None, 128).unwrap();
        let b = generate_case(TheoremKind::Univalent, 9, 17, None, 128).unwrap();
        assert_eq!(a.pair, b.pair);
        assert_eq!(a.k, b.k);
        let c = generate_case(TheoremKind::Univalent, 9, 18, None, 128).unwrap();
        assert_ne!(a.pair, c.pair);
    }

    #[test]
    fn cases_meet_the_hypotheses() {
        for theorem in TheoremKind::ALL {
            for index in 0..20 {
                let case = generate_case(theorem, 3, index, None, 512).unwrap();
                let ctx = case.pair.context().unwrap();
                assert_eq!(ctx.class.is_convex() || !theorem.requires_convex(), true);
                assert_eq!(case.pair.g().coeff(0), C64::new(0.0, 0.0));
                if theorem.b1_zero() {
                    assert_eq!(case.pair.g().coeff(1), C64::new(0.0, 0.0));
                }
                if theorem == TheoremKind::UnivalentB1Zero {
                    assert_eq!(case.pair.h().coeff(0), C64::new(0.0, 0.0));
                }
                // h ≺ φ: coefficient bounds.
                let rep = check_coefficient_bounds(case.pair.h(), ctx.class, C64::new(ctx.deriv0, 0.0), ctx.dist0);
                assert!(rep.passed, "{theorem} #{index}: {:?}", (rep.worst_degree, rep.worst_margin));
                // Dilatation within k, sampled away from critical points of h.
                if let Ok(sup) = dilatation_sup(&case.pair, 0.5, 256) {
                    assert!(sup.max <= case.k + 1e-9, "{theorem} #{index}: {} > {}", sup.max, case.k);
                }
            }
        }
    }

    #[test]
    fn fixed_k_is_used() {
        let case = generate_case(TheoremKind::ConvexB1Zero, 1, 0, Some(1.0), 64).unwrap();
        assert_eq!(case.k, 1.0);
        assert_eq!(case.pair.k_declared(), Some(1.0));
        assert!(generate_case(TheoremKind::Convex, 1, 0, Some(1.5), 64).is_err());
    }
}
