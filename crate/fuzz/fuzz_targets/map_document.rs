#![no_main]

use hopf_brace::catalog::{parse_map_document, resolve};
use hopf_brace::BraceMapSet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = parse_map_document(text) else {
        return;
    };
    // Only names are resolved; paths would touch the file system.
    let (Ok(source), Ok(target)) = (resolve_name(&doc.source), resolve_name(&doc.target)) else {
        return;
    };
    if let Ok(map) = BraceMapSet::new(source.brace, target.brace, doc.images) {
        if map.is_morphism() {
            let _ = map.kernel();
        }
    }
});

fn resolve_name(name: &str) -> Result<hopf_brace::CatalogEntry, ()> {
    let spec = hopf_brace::catalog::BraceSpec::parse(name).map_err(|_| ())?;
    if spec.checked_order().is_none_or(|n| n > 48) {
        return Err(());
    }
    resolve(name, None).map_err(|_| ())
}
