//! The files under `data/` are exactly what the fixture generators produce.
//! Run with `WEIGHTLAB_BLESS=1` to rewrite them.

use std::path::PathBuf;

use weightlab::cubical::{parse_diagram, parse_hyperresolution};
use weightlab::euler::parse_cell_complex;
use weightlab::fcomplex::doc::ComplexDoc;
use weightlab::fixtures::data_files;
use weightlab::toricfan::parse_fan;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
fn shipped_files_match_generators() {
    let dir = data_dir();
    let bless = std::env::var_os("WEIGHTLAB_BLESS").is_some();
    if bless {
        std::fs::create_dir_all(&dir).unwrap();
    }
    for (name, content) in data_files() {
        let path = dir.join(name);
        if bless {
            std::fs::write(&path, &content).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, content, "{name} differs from its generator");
    }
}

#[test]
fn shipped_files_parse() {
    for (name, content) in data_files() {
        let ok = match name.rsplit('.').next().unwrap() {
            "fan" if name == "bad.fan" => parse_fan(&content).is_err(),
            "fan" => parse_fan(&content).is_ok(),
            "cx" => serde_json::from_str::<ComplexDoc>(&content).ok().and_then(|d| d.to_filtered().ok()).is_some(),
            "diagram" => parse_diagram(&content).is_ok(),
            "hyperres" => parse_hyperresolution(&content).is_ok(),
            "cells" | "sc" => parse_cell_complex(&content).is_ok(),
            _ => true,
        };
        assert!(ok, "{name} does not parse as expected");
    }
}
