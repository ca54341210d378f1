//! Isomorphism by trying every sort-preserving bijection. Only for tiny
//! structures.

use polyfind_core::{IncidenceStructure, Relation};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

fn maps(s: &IncidenceStructure, t: &IncidenceStructure, pv: &[usize], pe: &[usize], pf: &[usize]) -> bool {
    Relation::ALL.into_iter().all(|r| {
        let (rows, cols) = match r {
            Relation::VE => (pv, pe),
            Relation::EF => (pe, pf),
            Relation::VF => (pv, pf),
        };
        let (m, n) = (s.matrix(r), t.matrix(r));
        (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.get(i, j) == n.get(rows[i], cols[j])))
    })
}

/// Number of sort-preserving isomorphisms from `s` to `t`.
pub fn count_isomorphisms(s: &IncidenceStructure, t: &IncidenceStructure) -> u64 {
    if s.triple() != t.triple() {
        return 0;
    }
    let (pvs, pes, pfs) = (permutations(s.num_vertices()), permutations(s.num_edges()), permutations(s.num_faces()));
    let mut count = 0;
    for pv in &pvs {
        for pf in &pfs {
            for pe in &pes {
                if maps(s, t, pv, pe, pf) {
                    count += 1;
                }
            }
        }
    }
    count
}

pub fn isomorphic(s: &IncidenceStructure, t: &IncidenceStructure) -> bool {
    count_isomorphisms(s, t) > 0
}
