//! The Steinitz-Rademacher axioms and extensionality, checked directly on a
//! sorted structure.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::structure::{ElementRef, IncidenceStructure, Sort};

/// Witness lists are cut off after this many entries.
pub const WITNESS_LIMIT: usize = 16;

/// Which axiom set is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoryId {
    /// A1–A9.
    #[serde(rename = "sr")]
    Sr,
    /// A1–A9 plus extensionality.
    #[serde(rename = "sr-ext")]
    SrExt,
}

impl TheoryId {
    pub fn axioms(self) -> &'static [AxiomId] {
        match self {
            TheoryId::Sr => &AxiomId::ALL[..9],
            TheoryId::SrExt => &AxiomId::ALL,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TheoryId::Sr => "sr",
            TheoryId::SrExt => "sr-ext",
        }
    }
}

impl fmt::Display for TheoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoryId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sr" | "SR" => Ok(TheoryId::Sr),
            "sr-ext" | "sr_ext" | "SR_ext" => Ok(TheoryId::SrExt),
            other => Err(format!("unknown theory `{other}` (expected `sr` or `sr-ext`)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AxiomId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    #[serde(rename = "EXT")]
    Ext,
}

impl AxiomId {
    pub const ALL: [AxiomId; 10] = [
        AxiomId::A1,
        AxiomId::A2,
        AxiomId::A3,
        AxiomId::A4,
        AxiomId::A5,
        AxiomId::A6,
        AxiomId::A7,
        AxiomId::A8,
        AxiomId::A9,
        AxiomId::Ext,
    ];

    pub fn description(self) -> &'static str {
        match self {
            AxiomId::A1 => "there are vertices, edges, and faces",
            AxiomId::A2 => "every element is a vertex, an edge, or a face",
            AxiomId::A3 => "incidence is symmetric",
            AxiomId::A4 => "no two elements of the same sort are incident",
            AxiomId::A5 => "I(v,e) and I(e,f) imply I(v,f)",
            AxiomId::A6 => "every edge is incident with exactly two vertices",
            AxiomId::A7 => "every edge is incident with exactly two faces",
            AxiomId::A8 => "I(v,f) implies exactly two edges incident with both v and f",
            AxiomId::A9 => "every vertex and every face is incident with some element",
            AxiomId::Ext => "elements with the same neighborhood are equal",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomId::Ext => f.write_str("EXT"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// A concrete reason an axiom fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// A sort with no elements.
    EmptySort(Sort),
    /// A tuple of elements violating the axiom.
    Elements(Vec<ElementRef>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::EmptySort(sort) => write!(f, "no {sort}s"),
            Witness::Elements(xs) => {
                let names: Vec<String> = xs.iter().map(ToString::to_string).collect();
                write!(f, "({})", names.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomEntry {
    pub axiom: AxiomId,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    pub truncated: bool,
}

impl AxiomEntry {
    fn from_witnesses(axiom: AxiomId, mut witnesses: Vec<Witness>) -> Self {
        let truncated = witnesses.len() > WITNESS_LIMIT;
        witnesses.truncate(WITNESS_LIMIT);
        AxiomEntry { axiom, holds: witnesses.is_empty(), witnesses, truncated }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub theory: TheoryId,
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn is_model(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn entry(&self, axiom: AxiomId) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomEntry> {
        self.entries.iter().filter(|e| !e.holds)
    }
}

pub fn check_axiom(s: &IncidenceStructure, axiom: AxiomId) -> AxiomEntry {
    let (a, b, c) = (s.num_vertices(), s.num_edges(), s.num_faces());
    let elems = |xs: &[ElementRef]| Witness::Elements(xs.to_vec());
    let witnesses: Vec<Witness> = match axiom {
        AxiomId::A1 => {
            Sort::ALL.into_iter().filter(|&sort| s.triple().count(sort) == 0).map(Witness::EmptySort).collect()
        }
        // Sorts are disjoint and exhaustive, and incidence is stored only
        // between distinct sorts, so these hold for every value of the type.
        AxiomId::A2 | AxiomId::A3 | AxiomId::A4 => Vec::new(),
        AxiomId::A5 => {
            let mut w = Vec::new();
            for v in 0..a {
                for e in 0..b {
                    if !s.ve(v, e) {
                        continue;
                    }
                    for f in 0..c {
                        if s.ef(e, f) && !s.vf(v, f) {
                            w.push(elems(&[ElementRef::vertex(v), ElementRef::edge(e), ElementRef::face(f)]));
                        }
                    }
                }
            }
            w
        }
        AxiomId::A6 => (0..b)
            .filter(|&e| (0..a).filter(|&v| s.ve(v, e)).count() != 2)
            .map(|e| elems(&[ElementRef::edge(e)]))
            .collect(),
        AxiomId::A7 => (0..b)
            .filter(|&e| (0..c).filter(|&f| s.ef(e, f)).count() != 2)
            .map(|e| elems(&[ElementRef::edge(e)]))
            .collect(),
        AxiomId::A8 => {
            let mut w = Vec::new();
            for v in 0..a {
                for f in 0..c {
                    if s.vf(v, f) && (0..b).filter(|&e| s.ve(v, e) && s.ef(e, f)).count() != 2 {
                        w.push(elems(&[ElementRef::vertex(v), ElementRef::face(f)]));
                    }
                }
            }
            w
        }
        AxiomId::A9 => {
            let lonely_vertices =
                (0..a).filter(|&v| !(0..b).any(|e| s.ve(v, e)) && !(0..c).any(|f| s.vf(v, f))).map(ElementRef::vertex);
            let lonely_faces =
                (0..c).filter(|&f| !(0..b).any(|e| s.ef(e, f)) && !(0..a).any(|v| s.vf(v, f))).map(ElementRef::face);
            lonely_vertices.chain(lonely_faces).map(|x| elems(&[x])).collect()
        }
        AxiomId::Ext => extensionality_witnesses(s),
    };
    AxiomEntry::from_witnesses(axiom, witnesses)
}

/// Unordered pairs of distinct elements (of any sorts) with equal
/// neighborhoods.
fn extensionality_witnesses(s: &IncidenceStructure) -> Vec<Witness> {
    let elements: Vec<ElementRef> = s.elements().collect();
    let bits: Vec<Vec<u64>> = elements.iter().map(|&x| neighborhood_bits(s, x)).collect();
    let mut pairs = Vec::new();
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            if bits[i] == bits[j] {
                pairs.push(Witness::Elements(vec![elements[i], elements[j]]));
            }
        }
    }
    pairs
}

fn neighborhood_bits(s: &IncidenceStructure, x: ElementRef) -> Vec<u64> {
    let n = s.cardinality();
    let mut bits = vec![0u64; n.div_ceil(64)];
    for y in s.elements() {
        if s.incident(x, y) {
            let g = s.global_index(y);
            bits[g / 64] |= 1 << (g % 64);
        }
    }
    bits
}

pub fn check_extensionality(s: &IncidenceStructure) -> AxiomEntry {
    check_axiom(s, AxiomId::Ext)
}

pub fn check_theory(s: &IncidenceStructure, theory: TheoryId) -> AxiomReport {
    AxiomReport { theory, entries: theory.axioms().iter().map(|&ax| check_axiom(s, ax)).collect() }
}

/// Model test without witness collection. Agrees with
/// `check_theory(s, theory).is_model()`.
pub fn satisfies(s: &IncidenceStructure, theory: TheoryId) -> bool {
    let (a, b, c) = (s.num_vertices(), s.num_edges(), s.num_faces());
    if a == 0 || b == 0 || c == 0 {
        return false;
    }
    // A6, A7
    for e in 0..b {
        if s.matrix(crate::Relation::EF).row_count(e) != 2 {
            return false;
        }
        if (0..a).filter(|&v| s.ve(v, e)).count() != 2 {
            return false;
        }
    }
    let ve = s.matrix(crate::Relation::VE);
    let ef = s.matrix(crate::Relation::EF);
    let vf = s.matrix(crate::Relation::VF);
    // A5: every face of an edge at v is a face at v.
    for v in 0..a {
        let vf_row = vf.row_words(v);
        for e in ve.row_ones(v) {
            if ef.row_words(e).iter().zip(vf_row).any(|(x, y)| x & !y != 0) {
                return false;
            }
        }
    }
    // A8
    for v in 0..a {
        for f in vf.row_ones(v) {
            if ve.row_ones(v).filter(|&e| ef.get(e, f)).count() != 2 {
                return false;
            }
        }
    }
    // A9
    for v in 0..a {
        if ve.row_count(v) == 0 && vf.row_count(v) == 0 {
            return false;
        }
    }
    for f in 0..c {
        if !(0..b).any(|e| ef.get(e, f)) && !(0..a).any(|v| vf.get(v, f)) {
            return false;
        }
    }
    match theory {
        TheoryId::Sr => true,
        TheoryId::SrExt => is_extensional(s),
    }
}

fn is_extensional(s: &IncidenceStructure) -> bool {
    let mut seen = std::collections::HashSet::new();
    s.elements().all(|x| seen.insert(neighborhood_bits(s, x)))
}
