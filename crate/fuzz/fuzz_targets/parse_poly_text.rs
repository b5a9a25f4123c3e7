#![no_main]

use libfuzzer_sys::fuzz_target;
use nrbounds::parse::{parse_poly_text, write_poly_text};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(coeffs) = parse_poly_text(text) {
        assert!(coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
        let again = parse_poly_text(&write_poly_text(&coeffs)).expect("written poly parses");
        assert_eq!(coeffs, again);
    }
});
