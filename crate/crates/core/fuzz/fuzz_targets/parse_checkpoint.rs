#![no_main]

use libfuzzer_sys::fuzz_target;
use nonrep::checkpoint::parse_checkpoint;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_checkpoint::<serde_json::Value>(text);
    }
});
