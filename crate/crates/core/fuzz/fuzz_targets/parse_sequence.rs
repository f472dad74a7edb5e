#![no_main]

use libfuzzer_sys::fuzz_target;
use nonrep::format::parse_sequence;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(seq) = parse_sequence(text) {
        // the display form parses back to the same symbols
        let again = parse_sequence(&seq.to_string()).expect("display output parses");
        assert_eq!(again.symbols(), seq.symbols());
    }
});
