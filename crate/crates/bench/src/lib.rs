//! Fixtures shared by the benchmarks.

use grseg_core::presets::preset;
use grseg_core::tame::{build_catalog_with, Catalog};
use grseg_core::{GrEngine, Rep};

/// Catalog of a preset at a chosen bound, built with a fresh engine.
pub fn catalog(name: &str, bound: usize) -> Catalog {
    let s = preset(name).expect("known preset");
    let engine = GrEngine::default();
    build_catalog_with(s.quiver().expect("valid"), s.field().expect("prime"), bound, &engine).expect("within budget")
}

/// The longest regular module of a catalog.
pub fn longest_regular(c: &Catalog) -> Rep {
    c.entries
        .iter()
        .filter(|e| e.tube.is_some())
        .max_by_key(|e| e.length())
        .map(|e| e.module.clone())
        .expect("catalog has regular modules")
}
