#![no_main]

use libfuzzer_sys::fuzz_target;
use qcf_core::weak::WeakStructure;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = WeakStructure::from_json(text) {
        m.validate().expect("parsed structures are valid");
        assert_eq!(WeakStructure::from_json(&m.to_json()), Ok(m));
    }
});
