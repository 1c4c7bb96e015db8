#![no_main]

use cubic_sing::lattice::parse_lattice_expr;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(l) = parse_lattice_expr(text) {
        assert!(l.is_even());
        let _ = l.smith_form();
    }
});
