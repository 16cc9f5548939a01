//! Category JSON: parsing and validation must not panic, and anything that
//! validates must survive a round trip.
//!
//! ```bash
//! cargo fuzz run category_json seeds/category_json
//! ```

#![no_main]

use libfuzzer_sys::fuzz_target;
use zappa::category::{FiniteCategory, RawCategory};

fuzz_target!(|data: &[u8]| {
    let Ok(raw) = serde_json::from_slice::<RawCategory>(data) else { return };
    if let Ok(cat) = FiniteCategory::from_raw(&raw) {
        let back = FiniteCategory::from_raw(&cat.to_raw()).expect("re-validating a valid category");
        assert_eq!(back.to_raw(), cat.to_raw());
    }
});
