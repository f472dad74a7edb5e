#![no_main]

use libfuzzer_sys::fuzz_target;
use nonrep::format::{coloring_to_json, coloring_to_text, parse_coloring};
use nonrep::trees::find_repetitive_path;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = parse_coloring(text) {
        assert_eq!(parse_coloring(&coloring_to_text(&c)).unwrap(), c);
        assert_eq!(parse_coloring(&coloring_to_json(&c)).unwrap(), c);
        if c.shape().vertex_count() <= 4096 {
            let _ = find_repetitive_path(&c);
        }
    }
});
