#![no_main]

use cubic_sing::lattice::parse_lattice_text;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(l) = parse_lattice_text(text) {
        let again = parse_lattice_text(&l.to_text()).expect("serialized lattice parses");
        assert_eq!(again, l);
        let (p, n) = l.signature();
        assert_eq!(p + n, l.rank());
    }
});
