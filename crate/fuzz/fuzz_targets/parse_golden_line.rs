#![no_main]

use cubic_sing::catalog::parse_golden_line;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(row) = parse_golden_line(text) {
        let again = parse_golden_line(&row.to_string()).expect("canonical row parses");
        assert_eq!(again, row);
    }
});
