#![no_main]

use libfuzzer_sys::fuzz_target;
use nrbounds::parse::{parse_poly, parse_poly_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let direct = parse_poly_json(text);
    if let Ok(coeffs) = &direct {
        assert!(coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
    }
    // auto-detection must route bracketed input to the json reader
    if text.trim_start().starts_with('[') {
        assert_eq!(direct.ok(), parse_poly(text).ok());
    }
});
