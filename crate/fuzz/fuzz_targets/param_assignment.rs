#![no_main]

use bohr_core::params::parse_param;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok((name, value)) = parse_param(s) {
        assert!(!name.is_empty());
        assert!(value.re.is_finite() && value.im.is_finite());
    }
});
