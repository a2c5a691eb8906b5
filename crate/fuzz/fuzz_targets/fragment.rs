#![no_main]

use libfuzzer_sys::fuzz_target;
use qcf_core::axioms::{gen_sa, Fragment};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(frag) = Fragment::parse(text) {
        let again = Fragment::parse(&frag.to_text()).expect("printed fragment parses");
        assert_eq!(again, frag);
        if frag.orders().len() + frag.connections().len() <= 4 {
            let _ = gen_sa(&frag);
        }
    }
});
