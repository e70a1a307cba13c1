#![no_main]

use latin_census::bipartite::CanonicalKey;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(key) = CanonicalKey::from_hex(s) {
        assert_eq!(key.to_hex(), s);
        let _ = key.to_graph();
    }
});
