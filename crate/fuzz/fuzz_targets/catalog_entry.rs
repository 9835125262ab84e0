#![no_main]

// Input: an entry id followed by whitespace-separated name=value pairs,
// as given on the command line.

use bohr_core::catalog::{CatalogEntry, EntryId};
use bohr_core::params::parse_param;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let mut words = s.split_whitespace();
    let Some(Ok(id)) = words.next().map(str::parse::<EntryId>) else { return };
    let Ok(params) = words.map(parse_param).collect::<Result<Vec<_>, _>>() else { return };
    let Ok(entry) = CatalogEntry::new(id, params.iter().map(|(n, v)| (n.as_str(), *v))) else { return };
    let _ = entry.geom_class();
    let _ = (entry.dist0(), entry.value0(), entry.deriv0());
    if let Ok(series) = entry.coeffs(32) {
        assert_eq!(series.order(), 32);
        assert!(series.coeffs().iter().all(|c| c.re.is_finite() && c.im.is_finite()));
    }
});
