//! Three-sorted incidence structures.
//!
//! An unsorted structure over the signature `{V, E, F, I}` that satisfies the
//! sort axioms (every element has a sort, incidence is symmetric, no two
//! elements of one sort are incident) is determined by its three sort sizes
//! and the three cross-sort incidence relations. This module stores exactly
//! that, so symmetry and within-sort incidence cannot be expressed at all.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the three sorts of element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sort {
    Vertex,
    Edge,
    Face,
}

impl Sort {
    pub const ALL: [Sort; 3] = [Sort::Vertex, Sort::Edge, Sort::Face];

    pub fn letter(self) -> char {
        match self {
            Sort::Vertex => 'v',
            Sort::Edge => 'e',
            Sort::Face => 'f',
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Vertex => "vertex",
            Sort::Edge => "edge",
            Sort::Face => "face",
        })
    }
}

/// A concrete element: its sort plus a 0-based index within that sort.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementRef {
    pub sort: Sort,
    pub index: usize,
}

impl ElementRef {
    pub fn vertex(index: usize) -> Self {
        ElementRef { sort: Sort::Vertex, index }
    }

    pub fn edge(index: usize) -> Self {
        ElementRef { sort: Sort::Edge, index }
    }

    pub fn face(index: usize) -> Self {
        ElementRef { sort: Sort::Face, index }
    }
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sort.letter(), self.index)
    }
}

/// Sort sizes `(vertices, edges, faces)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SortTriple {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl SortTriple {
    pub const fn new(vertices: usize, edges: usize, faces: usize) -> Self {
        SortTriple { vertices, edges, faces }
    }

    pub fn total(&self) -> usize {
        self.vertices + self.edges + self.faces
    }

    pub fn count(&self, sort: Sort) -> usize {
        match sort {
            Sort::Vertex => self.vertices,
            Sort::Edge => self.edges,
            Sort::Face => self.faces,
        }
    }

    /// The triple with vertices and faces exchanged.
    pub fn dual(&self) -> Self {
        SortTriple::new(self.faces, self.edges, self.vertices)
    }
}

impl fmt::Display for SortTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.vertices, self.edges, self.faces)
    }
}

/// The three incidence relations between distinct sorts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    /// vertex–edge
    VE,
    /// edge–face
    EF,
    /// vertex–face
    VF,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::VE, Relation::EF, Relation::VF];

    pub fn sorts(self) -> (Sort, Sort) {
        match self {
            Relation::VE => (Sort::Vertex, Sort::Edge),
            Relation::EF => (Sort::Edge, Sort::Face),
            Relation::VF => (Sort::Vertex, Sort::Face),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::VE => "ve",
            Relation::EF => "ef",
            Relation::VF => "vf",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("{relation} matrix has shape {found_rows}x{found_cols}, expected {expected_rows}x{expected_cols}")]
    DimensionMismatch {
        relation: Relation,
        expected_rows: usize,
        expected_cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("{relation} pair [{row}, {col}] out of range for a {rows}x{cols} relation")]
    IndexOutOfRange { relation: Relation, row: usize, col: usize, rows: usize, cols: usize },
    #[error("element {0} does not exist")]
    InvalidElement(ElementRef),
}

/// Dense boolean matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.words + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn row_count(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_count(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    /// Column indices set in row `r`, ascending.
    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.cols).filter(move |&c| self.get(r, c))
    }

    /// Row indices set in column `c`, ascending.
    pub fn col_ones(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rows).filter(move |&r| self.get(r, c))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// All set positions in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.rows).flat_map(|r| self.row_ones(r).map(move |c| (r, c))).collect()
    }

    pub fn clear(&mut self) {
        self.data.iter_mut().for_each(|w| *w = 0);
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            (0..self.rows).map(|r| (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// A finite three-sorted incidence structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncidenceStructure {
    ve: BitMatrix,
    ef: BitMatrix,
    vf: BitMatrix,
}

impl IncidenceStructure {
    /// A structure with the given sort sizes and no incidences.
    pub fn empty(triple: SortTriple) -> Self {
        let SortTriple { vertices: a, edges: b, faces: c } = triple;
        IncidenceStructure { ve: BitMatrix::new(a, b), ef: BitMatrix::new(b, c), vf: BitMatrix::new(a, c) }
    }

    /// Builds a structure from explicit boolean matrices, checking every
    /// dimension against `triple`.
    pub fn from_matrices(
        triple: SortTriple,
        ve: &[Vec<bool>],
        ef: &[Vec<bool>],
        vf: &[Vec<bool>],
    ) -> Result<Self, StructureError> {
        let mut s = IncidenceStructure::empty(triple);
        for (relation, rows) in [(Relation::VE, ve), (Relation::EF, ef), (Relation::VF, vf)] {
            let (rs, cs) = relation.sorts();
            let (er, ec) = (triple.count(rs), triple.count(cs));
            let mismatch = |found_rows, found_cols| StructureError::DimensionMismatch {
                relation,
                expected_rows: er,
                expected_cols: ec,
                found_rows,
                found_cols,
            };
            if rows.len() != er {
                return Err(mismatch(rows.len(), rows.first().map_or(0, Vec::len)));
            }
            for (r, row) in rows.iter().enumerate() {
                if row.len() != ec {
                    return Err(mismatch(rows.len(), row.len()));
                }
                for (c, &bit) in row.iter().enumerate() {
                    s.matrix_mut(relation).set(r, c, bit);
                }
            }
        }
        Ok(s)
    }

    /// Builds a structure from lists of incident index pairs. Repeated pairs
    /// are harmless.
    pub fn from_pairs(
        triple: SortTriple,
        ve: &[(usize, usize)],
        ef: &[(usize, usize)],
        vf: &[(usize, usize)],
    ) -> Result<Self, StructureError> {
        let mut s = IncidenceStructure::empty(triple);
        for (relation, pairs) in [(Relation::VE, ve), (Relation::EF, ef), (Relation::VF, vf)] {
            for &(r, c) in pairs {
                s.set_checked(relation, r, c, true)?;
            }
        }
        Ok(s)
    }

    /// Returns a copy with one incidence changed.
    pub fn with_incidence(
        &self,
        relation: Relation,
        row: usize,
        col: usize,
        value: bool,
    ) -> Result<Self, StructureError> {
        let mut s = self.clone();
        s.set_checked(relation, row, col, value)?;
        Ok(s)
    }

    fn set_checked(&mut self, relation: Relation, row: usize, col: usize, value: bool) -> Result<(), StructureError> {
        let m = self.matrix_mut(relation);
        if row >= m.rows() || col >= m.cols() {
            return Err(StructureError::IndexOutOfRange { relation, row, col, rows: m.rows(), cols: m.cols() });
        }
        m.set(row, col, value);
        Ok(())
    }

    pub(crate) fn matrix_mut(&mut self, relation: Relation) -> &mut BitMatrix {
        match relation {
            Relation::VE => &mut self.ve,
            Relation::EF => &mut self.ef,
            Relation::VF => &mut self.vf,
        }
    }

    pub fn matrix(&self, relation: Relation) -> &BitMatrix {
        match relation {
            Relation::VE => &self.ve,
            Relation::EF => &self.ef,
            Relation::VF => &self.vf,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.ve.rows()
    }

    pub fn num_edges(&self) -> usize {
        self.ef.rows()
    }

    pub fn num_faces(&self) -> usize {
        self.vf.cols()
    }

    pub fn triple(&self) -> SortTriple {
        SortTriple::new(self.num_vertices(), self.num_edges(), self.num_faces())
    }

    /// Total number of elements across all sorts.
    pub fn cardinality(&self) -> usize {
        self.triple().total()
    }

    #[inline]
    pub fn ve(&self, v: usize, e: usize) -> bool {
        self.ve.get(v, e)
    }

    #[inline]
    pub fn ef(&self, e: usize, f: usize) -> bool {
        self.ef.get(e, f)
    }

    #[inline]
    pub fn vf(&self, v: usize, f: usize) -> bool {
        self.vf.get(v, f)
    }

    pub fn contains(&self, x: ElementRef) -> bool {
        x.index < self.triple().count(x.sort)
    }

    /// Every element, vertices first, then edges, then faces.
    pub fn elements(&self) -> impl Iterator<Item = ElementRef> {
        let t = self.triple();
        Sort::ALL.into_iter().flat_map(move |sort| (0..t.count(sort)).map(move |index| ElementRef { sort, index }))
    }

    /// Position of `x` in the order of [`elements`](Self::elements).
    pub fn global_index(&self, x: ElementRef) -> usize {
        match x.sort {
            Sort::Vertex => x.index,
            Sort::Edge => self.num_vertices() + x.index,
            Sort::Face => self.num_vertices() + self.num_edges() + x.index,
        }
    }

    /// `I(x, y)`. Symmetric, and false whenever the sorts coincide.
    pub fn incident(&self, x: ElementRef, y: ElementRef) -> bool {
        use Sort::*;
        match (x.sort, y.sort) {
            (Vertex, Edge) => self.ve(x.index, y.index),
            (Edge, Vertex) => self.ve(y.index, x.index),
            (Edge, Face) => self.ef(x.index, y.index),
            (Face, Edge) => self.ef(y.index, x.index),
            (Vertex, Face) => self.vf(x.index, y.index),
            (Face, Vertex) => self.vf(y.index, x.index),
            _ => false,
        }
    }

    /// All elements incident with `x`, in element order.
    pub fn neighborhood(&self, x: ElementRef) -> Result<Vec<ElementRef>, StructureError> {
        if !self.contains(x) {
            return Err(StructureError::InvalidElement(x));
        }
        Ok(self.elements().filter(|&y| self.incident(x, y)).collect())
    }

    /// Edges incident with both vertex `v` and face `f`.
    pub fn common_edges(&self, v: usize, f: usize) -> Result<Vec<usize>, StructureError> {
        if v >= self.num_vertices() {
            return Err(StructureError::InvalidElement(ElementRef::vertex(v)));
        }
        if f >= self.num_faces() {
            return Err(StructureError::InvalidElement(ElementRef::face(f)));
        }
        Ok(self.ve.row_ones(v).filter(|&e| self.ef(e, f)).collect())
    }

    /// Exchanges vertices and faces; edges keep their indices.
    pub fn dual(&self) -> IncidenceStructure {
        IncidenceStructure { ve: self.ef.transpose(), ef: self.ve.transpose(), vf: self.vf.transpose() }
    }
}

impl fmt::Display for IncidenceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "structure {} (cardinality {})", self.triple(), self.cardinality())
    }
}
