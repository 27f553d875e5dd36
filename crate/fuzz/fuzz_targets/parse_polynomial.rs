#![no_main]

use libfuzzer_sys::fuzz_target;
use polyreal::semialgebra::PolynomialZ;

// First byte picks the number of variables, the rest is the text.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let n = (n % 8) as usize;
    if let Ok(p) = PolynomialZ::parse(text, n) {
        assert_eq!(PolynomialZ::parse(&p.to_string(), n).expect("display parses"), p);
    }
});
