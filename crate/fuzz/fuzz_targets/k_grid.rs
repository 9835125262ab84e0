#![no_main]

use bohr_cli::grid::KGrid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(grid) = s.parse::<KGrid>() {
        assert!(!grid.points().is_empty());
        for p in grid.points() {
            assert!((0.0..=1.0).contains(&p.k), "{s:?}: k = {}", p.k);
            assert!(p.big_k >= 1.0);
        }
    }
});
