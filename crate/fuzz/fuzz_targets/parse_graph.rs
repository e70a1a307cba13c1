#![no_main]

use latin_census::bipartite::{canonical_form, parse_graph, write_graph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph(s) {
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        // canonical labelling must accept anything the parser accepts
        let f = canonical_form(&g);
        assert_eq!(canonical_form(&f.graph()).key, f.key);
    }
});
