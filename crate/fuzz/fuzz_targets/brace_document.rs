#![no_main]

use hopf_brace::catalog::{parse_brace, render_brace};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Anything accepted must survive a render/parse round trip unchanged.
    if let Ok(entry) = parse_brace(text) {
        let again = parse_brace(&render_brace(&entry.descriptor.name, &entry.brace)).expect("rendered brace parses");
        assert_eq!(again.brace, entry.brace);
    }
});
