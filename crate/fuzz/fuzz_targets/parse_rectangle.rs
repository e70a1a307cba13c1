#![no_main]

use latin_census::latin::{parse_rectangle, write_rectangle};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(l) = parse_rectangle(s) {
        let text = write_rectangle(&l);
        assert_eq!(parse_rectangle(&text).unwrap(), l);
        let r = l.reduce();
        assert_eq!(r.reduce(), r);
    }
});
