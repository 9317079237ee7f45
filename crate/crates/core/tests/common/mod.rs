#![allow(dead_code)]

use std::path::PathBuf;

use polylam::tiling::{parse_instance, TilingInstance};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("cannot read fixture {name}: {e}"))
}

pub const TILE_FIXTURES: [&str; 4] = [
    "monochrome.tile",
    "corner_clash.tile",
    "diagonal.tile",
    "no_horizontal.tile",
];

pub fn instance(name: &str) -> TilingInstance {
    parse_instance(&fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn instances() -> Vec<(&'static str, TilingInstance)> {
    TILE_FIXTURES.iter().map(|&n| (n, instance(n))).collect()
}
