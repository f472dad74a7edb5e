#![no_main]

use libfuzzer_sys::fuzz_target;
use nonrep::kspecial::FkReport;
use nonrep::table::TableCell;
use nonrep::trees::{ChromaticReport, EdgeColoring};

fuzz_target!(|data: &[u8]| {
    // reports are read back by tooling; decoding must reject, not panic
    let _ = serde_json::from_slice::<FkReport>(data);
    let _ = serde_json::from_slice::<TableCell>(data);
    if let Ok(r) = serde_json::from_slice::<ChromaticReport>(data) {
        if let Some(w) = r.witness_coloring {
            assert_eq!(w.edge_colors().len(), w.shape().edge_count());
        }
    }
    if let Ok(c) = serde_json::from_slice::<EdgeColoring>(data) {
        assert!(c.edge_colors().iter().all(|&x| x >= 1 && x <= c.palette()));
    }
});
