#![no_main]

use latin_census::bipartite::FactorizationMemo;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let memo = FactorizationMemo::new();
    if let Ok(count) = memo.load(data) {
        assert!(memo.len() <= count);
        let mut out = Vec::new();
        memo.save(&mut out).unwrap();
        let again = FactorizationMemo::new();
        again.load(&out[..]).unwrap();
        assert_eq!(again.len(), memo.len());
    }
});
