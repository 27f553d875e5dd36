#![no_main]

use libfuzzer_sys::fuzz_target;
use polyreal::format::*;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = parse_document(text) {
        // whatever parses must survive a round trip unchanged
        let again = parse_document(&write_document(&doc)).expect("written documents parse");
        assert_eq!(again, doc);
    }
    let _ = parse_points(text);
    let _ = parse_graph(text);
    let _ = parse_lattice(text);
    let _ = parse_system(text);
    let _ = parse_shor(text);
    let _ = parse_report(text);
});
