#![no_main]

use libfuzzer_sys::fuzz_target;
use zappa::odometer::WeightedGraph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = WeightedGraph::from_json(text) {
        WeightedGraph::from_raw(&g.to_raw()).expect("re-validating a valid graph");
        // bounded: short paths only
        let _ = g.paths(2);
    }
});
