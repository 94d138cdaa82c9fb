#![allow(dead_code)]

use std::path::PathBuf;

pub mod oracle;

use knotq::cohomology::{Cochain, CochainJson};
use knotq::diagram::{parse_gauss, parse_pd, Diagram};
use knotq::quandle::{FiniteQuandle, QuandleJson};

pub fn fixture_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(fixture_path(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// Diagram fixtures by file name (with extension).
pub fn diagram(file: &str) -> Diagram {
    let text = read(&format!("diagrams/{file}"));
    let parsed = if file.ends_with(".gauss") { parse_gauss(&text) } else { parse_pd(&text) };
    parsed.unwrap_or_else(|e| panic!("{file}: {e}"))
}

pub fn quandle(name: &str) -> FiniteQuandle {
    let json: QuandleJson = serde_json::from_str(&read(&format!("quandles/{name}.json"))).unwrap();
    FiniteQuandle::from_json(json).unwrap()
}

pub fn cochain(name: &str, order: usize) -> Cochain {
    let json: CochainJson = serde_json::from_str(&read(&format!("cochains/{name}.json"))).unwrap();
    Cochain::from_json(&json, order).unwrap()
}

/// Knot and link diagrams used across the suites.
pub const CORPUS: &[&str] = &[
    "unknot.json",
    "unknot_kink.pd",
    "unknot_kink_neg.pd",
    "unlink.json",
    "trefoil.pd",
    "trefoil_mirror.pd",
    "figure_eight.pd",
    "hopf.json",
    "cinquefoil.pd",
    "three_twist.pd",
    "stevedore.pd",
    "granny.pd",
    "square.pd",
    "septafoil.pd",
    "figure_eight_sum.pd",
];

pub fn corpus() -> Vec<(&'static str, Diagram)> {
    CORPUS.iter().map(|f| (*f, diagram(f))).collect()
}

/// Quandles of order at most four.
pub const SMALL_QUANDLES: &[&str] = &["trivial1", "trivial2", "trivial3", "dihedral3", "dihedral4", "tetrahedral"];
