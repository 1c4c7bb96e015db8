#![no_main]

use cubic_sing::parse_config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = parse_config(text) {
        // Canonical text must parse back to the same configuration.
        let again = parse_config(&c.to_string()).expect("canonical text parses");
        assert_eq!(again, c);
        let _ = c.mu();
    }
});
