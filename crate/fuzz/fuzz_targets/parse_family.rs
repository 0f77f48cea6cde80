//! `.fam` text: parsing never panics, and whatever parses round-trips.
#![no_main]

use libfuzzer_sys::fuzz_target;
use vcx_core::UniformFamily;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(fam) = UniformFamily::parse_fam(text) {
        let again = UniformFamily::parse_fam(&fam.to_fam_string()).expect("canonical text parses");
        assert_eq!(fam, again);
        assert!(fam.members().windows(2).all(|w| w[0] < w[1]));
        assert!(fam.iter().all(|m| m.len() == fam.k() as usize));
    }
});
