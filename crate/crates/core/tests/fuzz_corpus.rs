//! Replays the checked-in fuzz seeds on the stable toolchain with the same
//! assertions the fuzz targets make.

use std::fs;
use std::path::Path;

use nrbounds::parse::{
    parse_matrix, parse_poly, parse_poly_json, parse_poly_text, write_matrix, write_poly_text,
};

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn matrix_seeds() {
    let mut accepted = 0;
    for text in seeds("parse_matrix") {
        if let Ok(m) = parse_matrix(&text) {
            assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
            accepted += 1;
        }
    }
    assert!(accepted >= 2);
}

#[test]
fn poly_text_seeds() {
    for text in seeds("parse_poly_text") {
        if let Ok(c) = parse_poly_text(&text) {
            assert_eq!(parse_poly_text(&write_poly_text(&c)).unwrap(), c);
        }
    }
}

#[test]
fn poly_json_seeds() {
    for text in seeds("parse_poly_json") {
        let direct = parse_poly_json(&text);
        if let Ok(c) = &direct {
            assert!(c.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        }
        assert_eq!(direct.ok(), parse_poly(&text).ok());
    }
}
