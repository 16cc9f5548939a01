//! Chain complex and matrix JSON. Homology is only attempted on small inputs.

#![no_main]

use libfuzzer_sys::fuzz_target;
use zappa::abelian::IntMatrix;
use zappa::complexes::{ChainComplex, RawComplex};

fuzz_target!(|data: &[u8]| {
    let _ = serde_json::from_slice::<IntMatrix>(data);
    let Ok(raw) = serde_json::from_slice::<RawComplex>(data) else { return };
    if let Ok(cx) = ChainComplex::from_raw(&raw) {
        if raw.bases.iter().all(|b| b.len() <= 16) {
            for k in 0..raw.bases.len() {
                let _ = cx.homology(k);
            }
        }
    }
});
