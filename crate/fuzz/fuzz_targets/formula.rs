#![no_main]

use libfuzzer_sys::fuzz_target;
use qcf_core::formula::{alpha_eq, parse_formula, print_formula, Signature};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let sig = Signature::new()
        .with_relation("<", 2)
        .and_then(|s| s.with_relation("R", 2))
        .and_then(|s| s.with_relation("P", 1))
        .and_then(|s| s.with_function("f", 1))
        .and_then(|s| s.with_function("g", 2))
        .and_then(|s| s.with_constant("c"))
        .expect("fixed signature");
    if let Ok(f) = parse_formula(text, &sig) {
        let printed = print_formula(&f);
        let again = parse_formula(&printed, &sig).expect("printed formula parses");
        assert!(alpha_eq(&again, &f), "{printed}");
        assert_eq!(print_formula(&again), printed);
    }
});
