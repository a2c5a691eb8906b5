#![no_main]

use libfuzzer_sys::fuzz_target;
use qcf_core::weak::CofinalitySpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = CofinalitySpec::parse(text) {
        assert_eq!(CofinalitySpec::parse(&spec.to_string()), Ok(spec));
    }
});
