#![no_main]

use libfuzzer_sys::fuzz_target;
use polyreal::numeric::{parse_rational, rational_to_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(q) = parse_rational(text) {
        assert_eq!(parse_rational(&rational_to_string(&q)).expect("display parses"), q);
    }
});
