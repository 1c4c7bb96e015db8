#![no_main]

use cubic_sing::picard::parse_divisor_class;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(d) = parse_divisor_class(text) {
        let again = parse_divisor_class(&d.to_string()).expect("canonical class parses");
        assert_eq!(again, d);
        let _ = d.genus();
    }
});
