#![no_main]

use libfuzzer_sys::fuzz_target;
use treealpha::io;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(value) = io::parse_instance(text) {
        // Whatever parses must survive a write and re-read unchanged.
        let again = io::to_json(&value).expect("serializes");
        assert_eq!(io::parse_instance(&again).expect("re-parses"), value);
    }
});
