//! The two string grammars: phases `a/b` and group names `Z^2 + Z/4`.

#![no_main]

use libfuzzer_sys::fuzz_target;
use zappa::abelian::AbelianGroup;
use zappa::cocycle::Phase;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = Phase::parse(s) {
        assert_eq!(Phase::parse(&p.to_string()).unwrap(), p);
    }
    if let Ok(g) = AbelianGroup::parse(s) {
        assert_eq!(AbelianGroup::parse(&g.to_string()).unwrap(), g);
    }
});
