//! The `--n`/`--d` list syntax of `vcx fuzz`.
#![no_main]

use libfuzzer_sys::fuzz_target;
use vcx_cli::cli::parse_list;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(list) = parse_list(text) {
        assert!(list.windows(2).all(|w| w[0] < w[1]));
        let joined: Vec<String> = list.iter().map(u8::to_string).collect();
        assert_eq!(parse_list(&joined.join(",")).unwrap(), list);
    }
});
