#![no_main]

use libfuzzer_sys::fuzz_target;
use treealpha::io::{self, GraphFile};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = io::parse_graph(text) {
        let again = io::to_json(&GraphFile::from(&g)).expect("serializes");
        assert_eq!(io::parse_graph(&again).expect("re-parses"), g);
    }
});
