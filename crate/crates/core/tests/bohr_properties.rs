use bohr_core::bohr::{bohr_report, bohr_sum, empirical_bohr_radius, Growth, Verdict};
use bohr_core::catalog::{extremal_pair, ExtremalKind};
use bohr_core::corpus::{generate_case, TheoremKind};
use bohr_core::power_series::{Series, C64};
use bohr_core::quasiconformal::{distortion_from_dilatation, HarmonicPair};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sum_increases_with_r(seed in any::<u64>(), r in 0.01..0.9f64, dr in 1e-4..0.05f64) {
        let case = generate_case(TheoremKind::Univalent, seed, 0, None, 256).unwrap();
        let lo = bohr_sum(&case.pair, r, Growth::Geometric).unwrap().partial_sum;
        let hi = bohr_sum(&case.pair, r + dr, Growth::Geometric).unwrap().partial_sum;
        prop_assert!(hi > lo);
    }

    #[test]
    fn sum_scales_linearly(seed in any::<u64>(), t in 0.1..10.0f64, r in 0.01..0.9f64) {
        let case = generate_case(TheoremKind::Convex, seed, 1, None, 256).unwrap();
        let (h, g) = (case.pair.h(), case.pair.g());
        let shift = Series::constant(h.coeff(0), h.order());
        let h_scaled = Series::scale_and_add(h, C64::new(t, 0.0), &shift, C64::new(1.0 - t, 0.0)).unwrap();
        let scaled = HarmonicPair::new(h_scaled, g.scale(C64::new(t, 0.0)).unwrap()).unwrap();
        let a = bohr_sum(&case.pair, r, Growth::Geometric).unwrap().partial_sum;
        let b = bohr_sum(&scaled, r, Growth::Geometric).unwrap().partial_sum;
        prop_assert!((b - t * a).abs() <= 1e-12 * b.max(1.0));
    }
}

#[test]
fn extremal_convex_radius_is_sharp() {
    for k in [0.0, 0.25, 0.5, 0.75, 1.0] {
        for lambda in [0.5, 0.9, 0.999, 1.0] {
            let pair = extremal_pair(ExtremalKind::ExtremalConvex, k, C64::new(lambda, 0.0), 2048).unwrap();
            let r = empirical_bohr_radius(&pair, 0.5, 1e-12).unwrap().radius();
            assert!((r - 1.0 / (3.0 + 2.0 * k * lambda)).abs() < 1e-8, "k={k} λ={lambda}: {r}");
            let big_k = distortion_from_dilatation(k).unwrap();
            let theorem = if big_k.is_infinite() { 0.2 } else { (big_k + 1.0) / (5.0 * big_k + 1.0) };
            assert!(r >= theorem - 1e-12);
        }
    }
}

#[test]
fn convex_corpus_holds_at_the_distortion_radius() {
    for i in 0..200u64 {
        let case = generate_case(TheoremKind::Convex, 77, i, None, 2048).unwrap();
        let big_k = distortion_from_dilatation(case.k).unwrap();
        let r = (big_k + 1.0) / (5.0 * big_k + 1.0) - 1e-6;
        let rep = bohr_report(&case.pair, r, Growth::for_pair(&case.pair), case.dist0).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds, "case {i} {}: {rep:?}", case.entry.id());
    }
}
