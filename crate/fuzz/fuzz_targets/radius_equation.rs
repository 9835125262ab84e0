#![no_main]

// Input: an equation id and a value of k separated by whitespace.

use bohr_core::radius::{solve, EquationId};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let mut words = s.split_whitespace();
    let Some(Ok(id)) = words.next().map(str::parse::<EquationId>) else { return };
    let Some(Ok(k)) = words.next().map(str::parse::<f64>) else { return };
    match solve(id, k, 1e-12) {
        Ok(sol) => {
            assert!((0.0..=1.0).contains(&k));
            assert!(sol.radius > 0.0 && sol.radius < 1.0, "{id} k={k}: {}", sol.radius);
        }
        Err(_) => assert!(!(0.0..=1.0).contains(&k) || k.is_nan()),
    }
});
