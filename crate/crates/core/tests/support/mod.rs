#![allow(dead_code)]

pub mod brute_iso;
pub mod dpll;
pub mod ground;
pub mod tptp_syntax;

use polyfind_core::{IncidenceStructure, SortTriple};
use proptest::prelude::*;

/// Structures with the given sort-size bounds and independent random bits.
pub fn arb_structure(max_sort: usize) -> impl Strategy<Value = IncidenceStructure> {
    (0..=max_sort, 0..=max_sort, 0..=max_sort).prop_flat_map(|(a, b, c)| arb_with_triple(SortTriple::new(a, b, c)))
}

pub fn arb_with_triple(t: SortTriple) -> impl Strategy<Value = IncidenceStructure> {
    let SortTriple { vertices: a, edges: b, faces: c } = t;
    (
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), b), a),
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), b),
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), a),
    )
        .prop_map(move |(ve, ef, vf)| IncidenceStructure::from_matrices(t, &ve, &ef, &vf).expect("shape"))
}

/// A random relabeling of `s` within each sort.
pub fn arb_relabeling(s: IncidenceStructure) -> impl Strategy<Value = (IncidenceStructure, IncidenceStructure)> {
    let t = s.triple();
    (
        Just((0..t.vertices).collect::<Vec<_>>()).prop_shuffle(),
        Just((0..t.edges).collect::<Vec<_>>()).prop_shuffle(),
        Just((0..t.faces).collect::<Vec<_>>()).prop_shuffle(),
    )
        .prop_map(move |(pv, pe, pf)| {
            let iso = polyfind_core::SortedIsomorphism { vertices: pv, edges: pe, faces: pf };
            let image = iso.apply(&s);
            (s.clone(), image)
        })
}
