//! Sort-preserving isomorphism and canonical forms.
//!
//! Canonical labeling is individualization-refinement: start from the sort
//! coloring, refine by neighbor-color multisets until stable, then branch on
//! every element of the smallest non-singleton cell. Each discrete leaf gives
//! a relabeling; the canonical form is the lexicographically least encoding
//! over all leaves. Elements with identical neighborhoods (twins) are
//! interchangeable by an automorphism, so only one twin per cell is branched
//! on and its subtree is weighted by the twin multiplicity. The number of
//! leaves reaching the minimum is therefore the automorphism group order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::structure::{IncidenceStructure, Relation, Sort, SortTriple};

/// Relabeling-invariant byte encoding of an incidence structure.
///
/// Layout: the three sort sizes as big-endian `u32`, followed by the `ve`,
/// `ef`, and `vf` matrices of the canonically relabeled structure,
/// row-major, packed most-significant-bit first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// One permutation per sort; `vertices[i]` is the image of vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SortedIsomorphism {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub faces: Vec<usize>,
}

impl SortedIsomorphism {
    pub fn identity(triple: SortTriple) -> Self {
        SortedIsomorphism {
            vertices: (0..triple.vertices).collect(),
            edges: (0..triple.edges).collect(),
            faces: (0..triple.faces).collect(),
        }
    }

    pub fn map(&self, sort: Sort) -> &[usize] {
        match sort {
            Sort::Vertex => &self.vertices,
            Sort::Edge => &self.edges,
            Sort::Face => &self.faces,
        }
    }

    pub fn triple(&self) -> SortTriple {
        SortTriple::new(self.vertices.len(), self.edges.len(), self.faces.len())
    }

    /// True when every component is a permutation of `0..len`.
    pub fn is_bijection(&self) -> bool {
        Sort::ALL.iter().all(|&sort| {
            let p = self.map(sort);
            let mut seen = vec![false; p.len()];
            p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
        })
    }

    pub fn inverse(&self) -> Self {
        let inv = |p: &[usize]| {
            let mut q = vec![0; p.len()];
            for (i, &j) in p.iter().enumerate() {
                q[j] = i;
            }
            q
        };
        SortedIsomorphism { vertices: inv(&self.vertices), edges: inv(&self.edges), faces: inv(&self.faces) }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SortedIsomorphism) -> Self {
        let comp = |p: &[usize], q: &[usize]| p.iter().map(|&i| q[i]).collect();
        SortedIsomorphism {
            vertices: comp(&self.vertices, &next.vertices),
            edges: comp(&self.edges, &next.edges),
            faces: comp(&self.faces, &next.faces),
        }
    }

    /// The image of `s` under this relabeling. Panics if the sort sizes
    /// differ.
    pub fn apply(&self, s: &IncidenceStructure) -> IncidenceStructure {
        assert_eq!(self.triple(), s.triple(), "relabeling does not fit the structure");
        let mut out = IncidenceStructure::empty(s.triple());
        for relation in Relation::ALL {
            let (rs, cs) = relation.sorts();
            let (pr, pc) = (self.map(rs), self.map(cs));
            let src = s.matrix(relation);
            let dst = out.matrix_mut(relation);
            for (r, c) in src.pairs() {
                dst.set(pr[r], pc[c], true);
            }
        }
        out
    }

    /// Checks that this maps the incidences of `src` exactly onto those of
    /// `dst`.
    pub fn is_isomorphism(&self, src: &IncidenceStructure, dst: &IncidenceStructure) -> bool {
        self.triple() == src.triple() && src.triple() == dst.triple() && self.is_bijection() && &self.apply(src) == dst
    }
}

/// Result of canonical labeling.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub form: CanonicalForm,
    /// Maps the input onto its canonical relabeling.
    pub labeling: SortedIsomorphism,
    /// Order of the sort-preserving automorphism group, saturating at
    /// `u128::MAX`.
    pub automorphisms: u128,
}

impl Canonical {
    pub fn structure(&self, s: &IncidenceStructure) -> IncidenceStructure {
        self.labeling.apply(s)
    }
}

pub fn canonical_form(s: &IncidenceStructure) -> CanonicalForm {
    canonical_labeling(s).form
}

pub fn canonical_labeling(s: &IncidenceStructure) -> Canonical {
    let searcher = Searcher::new(s);
    let n = searcher.adj.len();
    let mut colors: Vec<u32> = s
        .elements()
        .map(|x| match x.sort {
            Sort::Vertex => 0,
            Sort::Edge => 1,
            Sort::Face => 2,
        })
        .collect();
    normalize(&mut colors);
    let leaf = searcher.search(colors);
    debug_assert_eq!(leaf.colors.len(), n);
    let t = s.triple();
    let pos = |g: usize| leaf.colors[g] as usize;
    let labeling = SortedIsomorphism {
        vertices: (0..t.vertices).map(pos).collect(),
        edges: (0..t.edges).map(|i| pos(t.vertices + i) - t.vertices).collect(),
        faces: (0..t.faces).map(|i| pos(t.vertices + t.edges + i) - t.vertices - t.edges).collect(),
    };
    Canonical { form: CanonicalForm(leaf.encoding), labeling, automorphisms: leaf.count }
}

/// Sort-preserving isomorphism from `s1` to `s2`, if one exists.
pub fn are_isomorphic(s1: &IncidenceStructure, s2: &IncidenceStructure) -> Option<SortedIsomorphism> {
    if s1.triple() != s2.triple() {
        return None;
    }
    let c1 = canonical_labeling(s1);
    let c2 = canonical_labeling(s2);
    if c1.form != c2.form {
        return None;
    }
    let witness = c1.labeling.then(&c2.labeling.inverse());
    debug_assert!(witness.is_isomorphism(s1, s2));
    Some(witness)
}

pub fn automorphism_count(s: &IncidenceStructure) -> u128 {
    canonical_labeling(s).automorphisms
}

/// Relabels colors to dense ranks `0..k`, preserving order.
fn normalize(colors: &mut [u32]) {
    let mut distinct: Vec<u32> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for c in colors.iter_mut() {
        *c = distinct.binary_search(c).unwrap() as u32;
    }
}

struct Leaf {
    encoding: Vec<u8>,
    colors: Vec<u32>,
    count: u128,
}

struct Searcher<'a> {
    s: &'a IncidenceStructure,
    adj: Vec<Vec<usize>>,
    twin: Vec<usize>,
}

impl<'a> Searcher<'a> {
    fn new(s: &'a IncidenceStructure) -> Self {
        let elements: Vec<_> = s.elements().collect();
        let adj: Vec<Vec<usize>> = elements
            .iter()
            .map(|&x| elements.iter().enumerate().filter(|&(_, &y)| s.incident(x, y)).map(|(j, _)| j).collect())
            .collect();
        let mut first: HashMap<(Sort, &[usize]), usize> = HashMap::new();
        let twin =
            elements.iter().enumerate().map(|(i, x)| *first.entry((x.sort, adj[i].as_slice())).or_insert(i)).collect();
        Searcher { s, adj, twin }
    }

    /// Splits cells by the multiset of neighbor colors until stable.
    fn refine(&self, colors: &mut Vec<u32>) {
        let n = colors.len();
        let mut cells = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..n)
                .map(|x| {
                    let mut nb: Vec<u32> = self.adj[x].iter().map(|&y| colors[y]).collect();
                    nb.sort_unstable();
                    (colors[x], nb)
                })
                .collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&x, &y| sigs[x].cmp(&sigs[y]));
            let mut next = vec![0u32; n];
            let mut rank = 0u32;
            for (k, &x) in order.iter().enumerate() {
                if k > 0 && sigs[order[k - 1]] != sigs[x] {
                    rank += 1;
                }
                next[x] = rank;
            }
            let new_cells = if n == 0 { 0 } else { rank as usize + 1 };
            *colors = next;
            if new_cells == cells {
                return;
            }
            cells = new_cells;
        }
    }

    fn search(&self, mut colors: Vec<u32>) -> Leaf {
        self.refine(&mut colors);
        let n = colors.len();
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = (0..n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
        let Some(target) = target else {
            return Leaf { encoding: self.encode(&colors), colors, count: 1 };
        };

        // Branch once per twin class present in the target cell.
        let mut classes: Vec<(usize, u128)> = Vec::new();
        for x in (0..n).filter(|&x| colors[x] as usize == target) {
            match classes.iter_mut().find(|(rep, _)| self.twin[*rep] == self.twin[x]) {
                Some((_, mult)) => *mult += 1,
                None => classes.push((x, 1)),
            }
        }

        let mut best: Option<Leaf> = None;
        for (rep, mult) in classes {
            let child_colors = individualize(&colors, rep);
            let mut leaf = self.search(child_colors);
            leaf.count = leaf.count.saturating_mul(mult);
            best = Some(match best {
                None => leaf,
                Some(mut b) => match leaf.encoding.cmp(&b.encoding) {
                    Ordering::Less => leaf,
                    Ordering::Equal => {
                        b.count = b.count.saturating_add(leaf.count);
                        b
                    }
                    Ordering::Greater => b,
                },
            });
        }
        best.expect("non-singleton cell has members")
    }

    fn encode(&self, colors: &[u32]) -> Vec<u8> {
        let t = self.s.triple();
        let (a, b, c) = (t.vertices, t.edges, t.faces);
        // old index by new position, per sort
        let mut inv = vec![0usize; colors.len()];
        for (g, &c) in colors.iter().enumerate() {
            inv[c as usize] = g;
        }
        let vs = &inv[..a];
        let es: Vec<usize> = inv[a..a + b].iter().map(|g| g - a).collect();
        let fs: Vec<usize> = inv[a + b..].iter().map(|g| g - a - b).collect();

        let mut out = Vec::with_capacity(12 + (a * b + b * c + a * c).div_ceil(8));
        for k in [a, b, c] {
            out.extend_from_slice(&(k as u32).to_be_bytes());
        }
        let mut acc = 0u8;
        let mut nbits = 0;
        let mut push = |bit: bool| {
            acc = acc << 1 | bit as u8;
            nbits += 1;
            if nbits == 8 {
                out.push(acc);
                acc = 0;
                nbits = 0;
            }
        };
        for &v in vs {
            for &e in &es {
                push(self.s.ve(v, e));
            }
        }
        for &e in &es {
            for &f in &fs {
                push(self.s.ef(e, f));
            }
        }
        for &v in vs {
            for &f in &fs {
                push(self.s.vf(v, f));
            }
        }
        if nbits > 0 {
            out.push(acc << (8 - nbits));
        }
        out
    }
}

/// Splits `x` off into its own cell, placed before the rest of its old cell.
fn individualize(colors: &[u32], x: usize) -> Vec<u32> {
    let c = colors[x];
    colors.iter().enumerate().map(|(y, &cy)| if cy > c || (cy == c && y != x) { cy + 1 } else { cy }).collect()
}
