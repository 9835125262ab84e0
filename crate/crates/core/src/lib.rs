//! Bohr-type inequalities for quasiconformal harmonic mappings
//! `f = h + ḡ` whose analytic part is subordinate to a univalent or convex
//! mapping.
//!
//! The crate works with truncated power series throughout. Radii come from
//! [`radius`], majorant sums with certified tails from [`bohr`], and random
//! inputs satisfying the theorem hypotheses from [`corpus`].

pub mod bohr;
pub mod catalog;
pub mod corpus;
pub mod params;
pub mod power_series;
pub mod quasiconformal;
pub mod radius;
pub mod subordination;
pub mod tail;

pub use bohr::{bohr_report, bohr_sum, bohr_sum_sq0, empirical_bohr_radius, BohrReport, Growth, Verdict};
pub use catalog::{extremal_pair, CatalogEntry, EntryId, ExtremalKind, GeomClass};
pub use corpus::{generate_case, Case, TheoremKind};
pub use power_series::{Series, SeriesError, C64};
pub use quasiconformal::{dilatation_from_distortion, distortion_from_dilatation, HarmonicPair, PairContext};
pub use radius::{lhs_eval, solve, EquationId, RadiusEquation, Solution};
pub use subordination::{random_schwarz, subordinate, SchwarzFn};
