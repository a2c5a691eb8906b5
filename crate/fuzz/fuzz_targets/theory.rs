#![no_main]

use libfuzzer_sys::fuzz_target;
use qcf_core::formula::{alpha_eq, Theory};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = Theory::parse("fuzz", text) {
        let text = t.to_text();
        let again = Theory::parse("fuzz", &text).expect("printed theory parses");
        assert_eq!(again.signature, t.signature);
        assert_eq!(again.sentences.len(), t.sentences.len());
        assert!(again.sentences.iter().zip(&t.sentences).all(|(a, b)| alpha_eq(a, b)), "{text}");
        assert_eq!(again.to_text(), text);
    }
});
