#![no_main]

use libfuzzer_sys::fuzz_target;
use qcf_core::order::{cofinality, OrderExpr};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(e) = OrderExpr::parse(text) {
        let again = OrderExpr::parse(&e.to_string()).expect("printed expression parses");
        assert_eq!(again, e);
        let n = e.normalize();
        assert_eq!(n.cofinality(), cofinality(&e));
        if n.check_representable().is_ok() {
            let _ = n.prefix(16);
        }
    }
});
