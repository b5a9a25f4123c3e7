#![no_main]

use libfuzzer_sys::fuzz_target;
use nrbounds::parse::{parse_matrix, write_matrix};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_matrix(text) {
        // anything accepted must survive a write/parse cycle unchanged
        let again = parse_matrix(&write_matrix(&m)).expect("written matrix parses");
        assert_eq!(m, again);
    }
});
