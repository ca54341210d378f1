//! Brute-force oracle: every assignment of the three incidence matrices,
//! filtered by the axiom checker. No derived reasoning about the theory is
//! used, so it serves as an independent check on the pruned search.

use std::collections::BTreeMap;

use super::{EnumerationError, IsoClass, IsoClassSet};
use crate::axioms::{satisfies, TheoryId};
use crate::canon::canonical_labeling;
use crate::structure::{BitMatrix, IncidenceStructure, Relation, SortTriple};

/// Default refusal threshold: 2^30 candidate assignments.
pub const DEFAULT_ORACLE_BOUND_LOG2: usize = 30;

fn fill(m: &mut BitMatrix, mask: u64) {
    m.clear();
    let cols = m.cols();
    for bit in 0..m.rows() * cols {
        if mask >> bit & 1 == 1 {
            m.set(bit / cols, bit % cols, true);
        }
    }
}

fn scan(
    triple: SortTriple,
    theory: TheoryId,
    bound_log2: usize,
    mut visit: impl FnMut(&IncidenceStructure),
) -> Result<(), EnumerationError> {
    let SortTriple { vertices: a, edges: b, faces: c } = triple;
    let (nve, nef, nvf) = (a * b, b * c, a * c);
    let candidates_log2 = nve + nef + nvf;
    if candidates_log2 > bound_log2 || candidates_log2 >= 64 {
        return Err(EnumerationError::OracleBoundExceeded { candidates_log2, bound_log2 });
    }
    let mut s = IncidenceStructure::empty(triple);
    for ve in 0..1u64 << nve {
        fill(s.matrix_mut(Relation::VE), ve);
        for ef in 0..1u64 << nef {
            fill(s.matrix_mut(Relation::EF), ef);
            for vf in 0..1u64 << nvf {
                fill(s.matrix_mut(Relation::VF), vf);
                if satisfies(&s, theory) {
                    visit(&s);
                }
            }
        }
    }
    Ok(())
}

/// Isomorphism classes with labeled counts taken by direct counting.
pub fn naive_enumerate(triple: SortTriple, theory: TheoryId) -> Result<IsoClassSet, EnumerationError> {
    naive_enumerate_bounded(triple, theory, DEFAULT_ORACLE_BOUND_LOG2)
}

pub fn naive_enumerate_bounded(
    triple: SortTriple,
    theory: TheoryId,
    bound_log2: usize,
) -> Result<IsoClassSet, EnumerationError> {
    let mut tally: BTreeMap<_, (IncidenceStructure, u128)> = BTreeMap::new();
    scan(triple, theory, bound_log2, |s| {
        let canon = canonical_labeling(s);
        tally.entry(canon.form).or_insert_with(|| (canon.labeling.apply(s), 0)).1 += 1;
    })?;
    let mut set = IsoClassSet::new();
    for (form, (representative, n)) in tally {
        set.insert_class(form, IsoClass { representative, labeled_count: Some(n) });
    }
    Ok(set)
}

/// Every labeled model, in scan order.
pub fn naive_labeled_models(triple: SortTriple, theory: TheoryId) -> Result<Vec<IncidenceStructure>, EnumerationError> {
    let mut out = Vec::new();
    scan(triple, theory, DEFAULT_ORACLE_BOUND_LOG2, |s| out.push(s.clone()))?;
    Ok(out)
}
