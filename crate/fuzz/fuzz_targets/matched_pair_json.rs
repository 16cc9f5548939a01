//! Matched pair JSON, including the four axiom checks and the product.

#![no_main]

use libfuzzer_sys::fuzz_target;
use zappa::matched_pair::{MatchedPair, RawMatchedPair};

fuzz_target!(|data: &[u8]| {
    let Ok(raw) = serde_json::from_slice::<RawMatchedPair>(data) else { return };
    if let Ok(mp) = MatchedPair::from_raw(&raw) {
        MatchedPair::from_raw(&mp.to_raw()).expect("re-validating a valid pair");
        let _ = mp.zappa_szep();
    }
});
