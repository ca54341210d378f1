//! Inputs shared by the benchmarks.

use polyfind_core::catalog::{self, Platonic};
use polyfind_core::IncidenceStructure;

/// Catalog models of increasing size, with their names.
pub fn canon_inputs() -> Vec<(&'static str, IncidenceStructure)> {
    vec![
        ("m8", catalog::m8()),
        ("tetrahedron", catalog::platonic(Platonic::Tetrahedron)),
        ("cube", catalog::platonic(Platonic::Cube)),
        ("pyramid-8", catalog::pyramid(8).expect("pyramid")),
        ("dodecahedron", catalog::platonic(Platonic::Dodecahedron)),
    ]
}
