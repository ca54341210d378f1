//! Named structures: the two small curiosities with digon faces, the
//! pyramids, and the platonic solids.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::structure::{IncidenceStructure, SortTriple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("pyramid base must have at least 3 vertices, got {0}")]
    PyramidTooSmall(usize),
    #[error("face {face} has {len} vertices; faces need at least 3")]
    FaceTooShort { face: usize, len: usize },
    #[error("face {face} mentions vertex {vertex}, but there are only {num_vertices} vertices")]
    VertexOutOfRange { face: usize, vertex: usize, num_vertices: usize },
    #[error("face {face} repeats vertex {vertex}")]
    RepeatedVertex { face: usize, vertex: usize },
    #[error("edge {{{0}, {1}}} lies on {2} faces; every edge must lie on exactly 2")]
    EdgeFaceCount(usize, usize, usize),
    #[error("vertex {0} lies on no face")]
    IsolatedVertex(usize),
}

/// A polyhedron given by its faces, each a cyclic sequence of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceListDescription {
    pub num_vertices: usize,
    pub faces: Vec<Vec<usize>>,
}

impl FaceListDescription {
    pub fn new(num_vertices: usize, faces: &[&[usize]]) -> Self {
        FaceListDescription { num_vertices, faces: faces.iter().map(|f| f.to_vec()).collect() }
    }
}

/// Builds the incidence structure of a face-list polyhedron.
///
/// Edges are the unordered cyclically consecutive vertex pairs, numbered in
/// order of first appearance. A vertex is incident with every face it lies
/// on.
pub fn from_face_lists(d: &FaceListDescription) -> Result<IncidenceStructure, CatalogError> {
    let n = d.num_vertices;
    let mut edge_ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_faces: Vec<Vec<usize>> = Vec::new();
    let mut on_face = vec![false; n];

    for (fi, face) in d.faces.iter().enumerate() {
        if face.len() < 3 {
            return Err(CatalogError::FaceTooShort { face: fi, len: face.len() });
        }
        for (k, &v) in face.iter().enumerate() {
            if v >= n {
                return Err(CatalogError::VertexOutOfRange { face: fi, vertex: v, num_vertices: n });
            }
            if face[..k].contains(&v) {
                return Err(CatalogError::RepeatedVertex { face: fi, vertex: v });
            }
            on_face[v] = true;
        }
        for k in 0..face.len() {
            let (x, y) = (face[k], face[(k + 1) % face.len()]);
            let key = (x.min(y), x.max(y));
            let id = *edge_ids.entry(key).or_insert_with(|| {
                edges.push(key);
                edge_faces.push(Vec::new());
                edges.len() - 1
            });
            edge_faces[id].push(fi);
        }
    }
    for (id, faces) in edge_faces.iter().enumerate() {
        if faces.len() != 2 {
            let (x, y) = edges[id];
            return Err(CatalogError::EdgeFaceCount(x, y, faces.len()));
        }
    }
    if let Some(v) = on_face.iter().position(|&b| !b) {
        return Err(CatalogError::IsolatedVertex(v));
    }

    let triple = SortTriple::new(n, edges.len(), d.faces.len());
    let ve: Vec<(usize, usize)> = edges.iter().enumerate().flat_map(|(e, &(x, y))| [(x, e), (y, e)]).collect();
    let ef: Vec<(usize, usize)> =
        edge_faces.iter().enumerate().flat_map(|(e, fs)| fs.iter().map(move |&f| (e, f))).collect();
    let vf: Vec<(usize, usize)> =
        d.faces.iter().enumerate().flat_map(|(f, face)| face.iter().map(move |&v| (v, f))).collect();
    Ok(IncidenceStructure::from_pairs(triple, &ve, &ef, &vf).expect("indices are in range"))
}

/// Two vertices joined by two arcs, splitting the sphere into two faces.
/// Every vertex, edge, and face is incident with every element of the other
/// sorts.
pub fn m6() -> IncidenceStructure {
    let ones = vec![vec![true; 2]; 2];
    IncidenceStructure::from_matrices(SortTriple::new(2, 2, 2), &ones, &ones, &ones).expect("2x2 matrices")
}

/// Edge indices of [`m8`].
pub const M8_UPPER_ARC: usize = 0;
pub const M8_LOWER_ARC: usize = 1;
pub const M8_CHORD: usize = 2;
/// Face indices of [`m8`].
pub const M8_EXTERIOR: usize = 0;
pub const M8_UPPER_HALF: usize = 1;
pub const M8_LOWER_HALF: usize = 2;

/// A circle through two vertices plus the chord joining them: three edges
/// and three faces (the exterior and the two half-discs).
pub fn m8() -> IncidenceStructure {
    let ve: Vec<(usize, usize)> = (0..2).flat_map(|v| (0..3).map(move |e| (v, e))).collect();
    let ef = [
        (M8_UPPER_ARC, M8_EXTERIOR),
        (M8_UPPER_ARC, M8_UPPER_HALF),
        (M8_LOWER_ARC, M8_EXTERIOR),
        (M8_LOWER_ARC, M8_LOWER_HALF),
        (M8_CHORD, M8_UPPER_HALF),
        (M8_CHORD, M8_LOWER_HALF),
    ];
    let vf: Vec<(usize, usize)> = (0..2).flat_map(|v| (0..3).map(move |f| (v, f))).collect();
    IncidenceStructure::from_pairs(SortTriple::new(2, 3, 3), &ve, &ef, &vf).expect("in range")
}

/// The dual of [`m8`]: three vertices, three edges, two faces.
pub fn m8d() -> IncidenceStructure {
    m8().dual()
}

/// The pyramid over an `n`-gon.
///
/// Vertices `0..n` form the base and `n` is the apex. Edges `0..n` are the
/// base edges (`i`–`i+1`), edges `n..2n` the lateral edges (`i`–apex). Faces
/// `0..n` are the lateral triangles (`i`, `i+1`, apex) and face `n` is the
/// base.
pub fn pyramid(n: usize) -> Result<IncidenceStructure, CatalogError> {
    if n < 3 {
        return Err(CatalogError::PyramidTooSmall(n));
    }
    let apex = n;
    let base_face = n;
    let next = |i: usize| (i + 1) % n;
    let mut ve = Vec::new();
    let mut ef = Vec::new();
    let mut vf = Vec::new();
    for i in 0..n {
        ve.extend([(i, i), (next(i), i), (i, n + i), (apex, n + i)]);
        // base edge i borders lateral face i and the base
        ef.extend([(i, i), (i, base_face)]);
        // lateral edge i borders lateral faces i-1 and i
        ef.extend([(n + i, (i + n - 1) % n), (n + i, i)]);
        vf.extend([(i, i), (next(i), i), (apex, i), (i, base_face)]);
    }
    let triple = SortTriple::new(n + 1, 2 * n, n + 1);
    Ok(IncidenceStructure::from_pairs(triple, &ve, &ef, &vf).expect("in range"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Platonic {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl Platonic {
    pub const ALL: [Platonic; 5] =
        [Platonic::Tetrahedron, Platonic::Cube, Platonic::Octahedron, Platonic::Dodecahedron, Platonic::Icosahedron];

    pub fn name(self) -> &'static str {
        match self {
            Platonic::Tetrahedron => "tetrahedron",
            Platonic::Cube => "cube",
            Platonic::Octahedron => "octahedron",
            Platonic::Dodecahedron => "dodecahedron",
            Platonic::Icosahedron => "icosahedron",
        }
    }

    pub fn dual(self) -> Platonic {
        match self {
            Platonic::Tetrahedron => Platonic::Tetrahedron,
            Platonic::Cube => Platonic::Octahedron,
            Platonic::Octahedron => Platonic::Cube,
            Platonic::Dodecahedron => Platonic::Icosahedron,
            Platonic::Icosahedron => Platonic::Dodecahedron,
        }
    }

    pub fn face_lists(self) -> FaceListDescription {
        match self {
            Platonic::Tetrahedron => FaceListDescription::new(4, TETRAHEDRON),
            Platonic::Cube => FaceListDescription::new(8, CUBE),
            Platonic::Octahedron => FaceListDescription::new(6, OCTAHEDRON),
            Platonic::Dodecahedron => FaceListDescription::new(20, DODECAHEDRON),
            Platonic::Icosahedron => FaceListDescription::new(12, ICOSAHEDRON),
        }
    }
}

impl fmt::Display for Platonic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Platonic {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Platonic::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| CatalogError::UnknownName(s.to_string()))
    }
}

const TETRAHEDRON: &[&[usize]] = &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]];

// Vertex i has coordinates (i & 1, i >> 1 & 1, i >> 2 & 1).
const CUBE: &[&[usize]] = &[&[0, 2, 6, 4], &[1, 3, 7, 5], &[0, 1, 5, 4], &[2, 3, 7, 6], &[0, 1, 3, 2], &[4, 5, 7, 6]];

// Vertices +x, -x, +y, -y, +z, -z; one face per octant.
const OCTAHEDRON: &[&[usize]] =
    &[&[0, 2, 4], &[0, 2, 5], &[0, 3, 4], &[0, 3, 5], &[1, 2, 4], &[1, 2, 5], &[1, 3, 4], &[1, 3, 5]];

// Vertex 0 on top, 1..=5 the upper ring, 6..=10 the lower ring (lower
// vertex 6+i sits between upper 1+i and 1+(i+1)%5), 11 at the bottom.
const ICOSAHEDRON: &[&[usize]] = &[
    &[0, 1, 2],
    &[0, 2, 3],
    &[0, 3, 4],
    &[0, 4, 5],
    &[0, 5, 1],
    &[1, 6, 2],
    &[2, 7, 3],
    &[3, 8, 4],
    &[4, 9, 5],
    &[5, 10, 1],
    &[6, 7, 2],
    &[7, 8, 3],
    &[8, 9, 4],
    &[9, 10, 5],
    &[10, 6, 1],
    &[11, 7, 6],
    &[11, 8, 7],
    &[11, 9, 8],
    &[11, 10, 9],
    &[11, 6, 10],
];

// Dual of ICOSAHEDRON: vertex k is icosahedron face k, and face j is the
// ring of icosahedron faces around icosahedron vertex j.
const DODECAHEDRON: &[&[usize]] = &[
    &[0, 1, 2, 3, 4],
    &[0, 4, 9, 14, 5],
    &[0, 1, 6, 10, 5],
    &[1, 2, 7, 11, 6],
    &[2, 3, 8, 12, 7],
    &[3, 8, 13, 9, 4],
    &[5, 10, 15, 19, 14],
    &[6, 10, 15, 16, 11],
    &[7, 11, 16, 17, 12],
    &[8, 12, 17, 18, 13],
    &[9, 13, 18, 19, 14],
    &[15, 16, 17, 18, 19],
];

pub fn platonic(solid: Platonic) -> IncidenceStructure {
    from_face_lists(&solid.face_lists()).expect("built-in face lists are valid")
}

/// Looks up a catalog entry by its CLI name: `m6`, `m8`, `m8d`,
/// `pyramid-N`, or a platonic solid.
pub fn by_name(name: &str) -> Result<IncidenceStructure, CatalogError> {
    match name {
        "m6" => Ok(m6()),
        "m8" => Ok(m8()),
        "m8d" => Ok(m8d()),
        _ => {
            if let Some(n) = name.strip_prefix("pyramid-") {
                let n: usize = n.parse().map_err(|_| CatalogError::UnknownName(name.to_string()))?;
                return pyramid(n);
            }
            name.parse::<Platonic>().map(platonic)
        }
    }
}

/// Every named catalog entry of the given cardinality, in a fixed order.
pub fn entries_of_cardinality(n: usize) -> Vec<(String, IncidenceStructure)> {
    let mut out: Vec<(String, IncidenceStructure)> =
        [("m6", m6()), ("m8", m8()), ("m8d", m8d())].into_iter().map(|(k, s)| (k.to_string(), s)).collect();
    out.extend(Platonic::ALL.into_iter().map(|p| (p.name().to_string(), platonic(p))));
    if n >= 14 && (n - 2).is_multiple_of(4) {
        let k = (n - 2) / 4;
        out.push((format!("pyramid-{k}"), pyramid(k).expect("k >= 3")));
    }
    out.retain(|(_, s)| s.cardinality() == n);
    out
}
