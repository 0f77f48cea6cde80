//! First byte picks `p`; the rest is a `.fam` file. Any sunflower returned is
//! valid, and none is missed at the threshold.
#![no_main]

use libfuzzer_sys::fuzz_target;
use vcx_core::{erdos_rado_threshold, find_sunflower, validate_sunflower, UniformFamily};

fuzz_target!(|data: &[u8]| {
    let Some((&p, rest)) = data.split_first() else { return };
    let p = (p % 6) as i64 + 1;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let Ok(fam) = UniformFamily::parse_fam(text) else { return };
    let found = find_sunflower(&fam, p).expect("p >= 1");
    if let Some(s) = &found {
        assert!(validate_sunflower(s));
        assert!(s.petals.len() >= p as usize);
        assert!(s.petals.iter().all(|m| fam.contains(*m)));
    }
    let t = erdos_rado_threshold(fam.k() as u32, p as u32);
    let enough = if fam.k() >= 2 { fam.len() as u128 >= t } else { fam.len() as u128 > t };
    if enough {
        assert!(found.is_some(), "no sunflower at or above the threshold");
    }
});
