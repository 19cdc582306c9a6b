#![no_main]

use libfuzzer_sys::fuzz_target;
use treealpha::io;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = io::parse_dimacs(text) {
        assert_eq!(io::parse_dimacs(&io::write_dimacs(&g)).expect("re-parses"), g);
    }
});
