//! Cochain JSON against fixed small inputs: a 2-cochain on ℤ/3 and a total
//! cochain on the S3 pair.

#![no_main]

use libfuzzer_sys::fuzz_target;
use zappa::catalog::{s3_pair, z3_named};
use zappa::cocycle::{cochain2_from_raw, cochain2_to_raw, validate_total_2cocycle, Convention, RawCochain2, RawTotalCochain, TotalCochain};

fuzz_target!(|data: &[u8]| {
    if let Ok(raw) = serde_json::from_slice::<RawCochain2>(data) {
        let cat = z3_named();
        if let Ok(c) = cochain2_from_raw(&cat, &raw) {
            let back = cochain2_from_raw(&cat, &cochain2_to_raw(&cat, &c)).expect("round trip");
            assert_eq!(back, c);
        }
    }
    if let Ok(raw) = serde_json::from_slice::<RawTotalCochain>(data) {
        let mp = s3_pair();
        if let Ok(phi) = TotalCochain::from_raw(&mp, &raw) {
            let _ = validate_total_2cocycle(&mp, &phi, Convention::DualTotal);
        }
    }
});
