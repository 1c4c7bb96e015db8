#![no_main]

use cubic_sing::graph::parse_edge_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_edge_list(text) {
        let again = parse_edge_list(&g.to_edge_list()).expect("serialized graph parses");
        assert_eq!(again.edges(), g.edges());
        if g.n() <= 16 {
            let _ = g.classify_ade();
        }
    }
});
