#![no_main]

use hopf_brace::catalog::{BraceSpec, GroupSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(group) = GroupSpec::parse(text) {
        assert_eq!(GroupSpec::parse(&group.to_string()).as_ref(), Ok(&group));
    }
    let Ok(spec) = BraceSpec::parse(text) else {
        return;
    };
    assert_eq!(BraceSpec::parse(&spec.to_string()).as_ref(), Ok(&spec));
    let order = spec.checked_order().expect("parsed names respect the size limit");
    if order <= 48 {
        let brace = spec.build().expect("parsed names build");
        assert_eq!(brace.order(), order);
        assert_eq!(spec.element_names().len(), order);
    }
});
