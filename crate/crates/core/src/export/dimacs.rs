//! Propositional grounding of the theory at fixed sort sizes, in DIMACS CNF.
//!
//! Variables, numbered from 1 in this order: `ve(v,e)` row-major, `ef(e,f)`,
//! `vf(v,f)`, then the auxiliaries `z(v,e,f) ↔ ve(v,e) ∧ ef(e,f)`, then (for
//! extensionality only) one-sided difference witnesses `d(x,y,w)` implying
//! `I(x,w) ≠ I(y,w)`. The header records the numbering as
//! `c varmap <var> <atom>` comment lines.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::axioms::TheoryId;
use crate::structure::{ElementRef, IncidenceStructure, Relation, Sort, SortTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Ve(usize, usize),
    Ef(usize, usize),
    Vf(usize, usize),
    /// `ve(v,e) ∧ ef(e,f)`
    Z(usize, usize, usize),
    /// elements `x` and `y` disagree on incidence with `w`
    Diff(ElementRef, ElementRef, ElementRef),
}

impl Atom {
    pub fn is_auxiliary(&self) -> bool {
        matches!(self, Atom::Z(..) | Atom::Diff(..))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Ve(a, b) => write!(f, "ve {a} {b}"),
            Atom::Ef(a, b) => write!(f, "ef {a} {b}"),
            Atom::Vf(a, b) => write!(f, "vf {a} {b}"),
            Atom::Z(a, b, c) => write!(f, "z {a} {b} {c}"),
            Atom::Diff(x, y, w) => write!(f, "d {x} {y} {w}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("variable {0} is assigned both true and false")]
    Contradictory(u32),
    #[error("literal {0} refers to an unknown variable")]
    UnknownVariable(i64),
    #[error("no value given for variable {var} ({atom})")]
    Incomplete { var: u32, atom: Atom },
    #[error("solver output has neither a verdict nor an assignment")]
    NoVerdict,
    #[error("no varmap header found")]
    MissingVarMap,
}

/// Bijection between CNF variables and atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarMap {
    triple: SortTriple,
    atoms: Vec<Atom>,
    index: HashMap<Atom, u32>,
}

impl VarMap {
    fn new(triple: SortTriple) -> Self {
        VarMap { triple, atoms: Vec::new(), index: HashMap::new() }
    }

    fn add(&mut self, atom: Atom) -> u32 {
        debug_assert!(!self.index.contains_key(&atom));
        self.atoms.push(atom);
        let var = self.atoms.len() as u32;
        self.index.insert(atom, var);
        var
    }

    pub fn triple(&self) -> SortTriple {
        self.triple
    }

    pub fn num_vars(&self) -> usize {
        self.atoms.len()
    }

    pub fn var(&self, atom: Atom) -> Option<u32> {
        self.index.get(&atom).copied()
    }

    pub fn atom(&self, var: u32) -> Option<Atom> {
        self.atoms.get((var as usize).checked_sub(1)?).copied()
    }

    /// `(var, atom)` in variable order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, Atom)> + '_ {
        self.atoms.iter().enumerate().map(|(k, &a)| (k as u32 + 1, a))
    }

    /// Recovers the map from the `c varmap` lines of a CNF file.
    pub fn from_dimacs_header(text: &str) -> Result<VarMap, DimacsError> {
        let mut triple = None;
        let mut map: Option<VarMap> = None;
        for (k, line) in text.lines().enumerate() {
            let line_no = k + 1;
            let bad = |msg: &str| DimacsError::Malformed { line: line_no, msg: msg.to_string() };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["c", "sorts", a, b, c] => {
                    let p = |s: &str| s.parse::<usize>().map_err(|_| bad("bad sort size"));
                    let t = SortTriple::new(p(a)?, p(b)?, p(c)?);
                    triple = Some(t);
                    map = Some(VarMap::new(t));
                }
                ["c", "varmap", var, rest @ ..] => {
                    let m = map.as_mut().ok_or_else(|| bad("varmap before sorts line"))?;
                    let var: u32 = var.parse().map_err(|_| bad("bad variable number"))?;
                    let atom = parse_atom(rest).ok_or_else(|| bad("bad atom"))?;
                    if var as usize != m.atoms.len() + 1 {
                        return Err(bad("variables must be numbered contiguously from 1"));
                    }
                    m.add(atom);
                }
                _ => {}
            }
        }
        let _ = triple;
        map.ok_or(DimacsError::MissingVarMap)
    }
}

fn parse_element(s: &str) -> Option<ElementRef> {
    let (sort, idx) = s.split_at(1);
    let sort = match sort {
        "v" => Sort::Vertex,
        "e" => Sort::Edge,
        "f" => Sort::Face,
        _ => return None,
    };
    Some(ElementRef { sort, index: idx.parse().ok()? })
}

fn parse_atom(words: &[&str]) -> Option<Atom> {
    let n = |s: &str| s.parse::<usize>().ok();
    Some(match words {
        ["ve", a, b] => Atom::Ve(n(a)?, n(b)?),
        ["ef", a, b] => Atom::Ef(n(a)?, n(b)?),
        ["vf", a, b] => Atom::Vf(n(a)?, n(b)?),
        ["z", a, b, c] => Atom::Z(n(a)?, n(b)?, n(c)?),
        ["d", x, y, w] => Atom::Diff(parse_element(x)?, parse_element(y)?, parse_element(w)?),
        _ => return None,
    })
}

/// A CNF formula; literals are signed variable numbers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Clauses for "at least two and at most two of `lits`", each weakened by
/// the optional literal `unless` (the constraint applies when `unless` is
/// false).
fn exactly_two(clauses: &mut Vec<Vec<i32>>, lits: &[i32], unless: Option<i32>) {
    let base: Vec<i32> = unless.into_iter().collect();
    let k = lits.len();
    if k < 2 {
        clauses.push(base.clone());
    } else {
        // every (k-1)-subset contains a true literal
        for skip in 0..k {
            let mut c = base.clone();
            c.extend(lits.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &l)| l));
            clauses.push(c);
        }
    }
    for_each_subset(k, 3, |s| {
        let mut c = base.clone();
        c.extend(s.iter().map(|&i| -lits[i]));
        clauses.push(c);
    });
}

pub fn ground(triple: SortTriple, theory: TheoryId) -> (Cnf, VarMap) {
    let SortTriple { vertices: a, edges: b, faces: c } = triple;
    let mut map = VarMap::new(triple);
    let ve: Vec<Vec<i32>> = (0..a).map(|v| (0..b).map(|e| map.add(Atom::Ve(v, e)) as i32).collect()).collect();
    let ef: Vec<Vec<i32>> = (0..b).map(|e| (0..c).map(|f| map.add(Atom::Ef(e, f)) as i32).collect()).collect();
    let vf: Vec<Vec<i32>> = (0..a).map(|v| (0..c).map(|f| map.add(Atom::Vf(v, f)) as i32).collect()).collect();
    let mut z = vec![vec![vec![0i32; c]; b]; a];
    for (v, zv) in z.iter_mut().enumerate() {
        for (e, zve) in zv.iter_mut().enumerate() {
            for (f, slot) in zve.iter_mut().enumerate() {
                *slot = map.add(Atom::Z(v, e, f)) as i32;
            }
        }
    }

    let mut clauses: Vec<Vec<i32>> = Vec::new();
    // A1
    if a == 0 || b == 0 || c == 0 {
        clauses.push(Vec::new());
    }
    // z definitions and A5
    for v in 0..a {
        for e in 0..b {
            for f in 0..c {
                let (x, y, zz) = (ve[v][e], ef[e][f], z[v][e][f]);
                clauses.push(vec![-zz, x]);
                clauses.push(vec![-zz, y]);
                clauses.push(vec![zz, -x, -y]);
                clauses.push(vec![-x, -y, vf[v][f]]);
            }
        }
    }
    // A6, A7
    for e in 0..b {
        let col: Vec<i32> = (0..a).map(|v| ve[v][e]).collect();
        exactly_two(&mut clauses, &col, None);
        exactly_two(&mut clauses, &ef[e], None);
    }
    // A8
    for v in 0..a {
        for f in 0..c {
            let common: Vec<i32> = (0..b).map(|e| z[v][e][f]).collect();
            exactly_two(&mut clauses, &common, Some(-vf[v][f]));
        }
    }
    // A9
    for v in 0..a {
        clauses.push(ve[v].iter().chain(&vf[v]).copied().collect());
    }
    for f in 0..c {
        clauses.push((0..b).map(|e| ef[e][f]).chain((0..a).map(|v| vf[v][f])).collect());
    }
    if theory == TheoryId::SrExt {
        ground_extensionality(&mut map, &mut clauses, &ve, &ef, &vf);
    }
    (Cnf { num_vars: map.num_vars(), clauses }, map)
}

fn ground_extensionality(
    map: &mut VarMap,
    clauses: &mut Vec<Vec<i32>>,
    ve: &[Vec<i32>],
    ef: &[Vec<i32>],
    vf: &[Vec<i32>],
) {
    let t = map.triple;
    let elements: Vec<ElementRef> = IncidenceStructure::empty(t).elements().collect();
    let lit = |x: ElementRef, y: ElementRef| -> Option<i32> {
        use Sort::*;
        match (x.sort, y.sort) {
            (Vertex, Edge) => Some(ve[x.index][y.index]),
            (Edge, Vertex) => Some(ve[y.index][x.index]),
            (Edge, Face) => Some(ef[x.index][y.index]),
            (Face, Edge) => Some(ef[y.index][x.index]),
            (Vertex, Face) => Some(vf[x.index][y.index]),
            (Face, Vertex) => Some(vf[y.index][x.index]),
            _ => None,
        }
    };
    for (i, &x) in elements.iter().enumerate() {
        for &y in &elements[i + 1..] {
            let mut differs = Vec::new();
            for &w in &elements {
                match (lit(x, w), lit(y, w)) {
                    (None, None) => {}
                    (Some(l), None) | (None, Some(l)) => differs.push(l),
                    (Some(p), Some(q)) => {
                        let d = map.add(Atom::Diff(x, y, w)) as i32;
                        clauses.push(vec![-d, p, q]);
                        clauses.push(vec![-d, -p, -q]);
                        differs.push(d);
                    }
                }
            }
            clauses.push(differs);
        }
    }
}

pub fn render_cnf(cnf: &Cnf, map: &VarMap, theory: TheoryId) -> String {
    let t = map.triple();
    let mut out = String::new();
    let _ = writeln!(out, "c polyfind grounding, theory {theory}");
    let _ = writeln!(out, "c sorts {} {} {}", t.vertices, t.edges, t.faces);
    for (var, atom) in map.iter() {
        let _ = writeln!(out, "c varmap {var} {atom}");
    }
    let _ = writeln!(out, "p cnf {} {}", cnf.num_vars, cnf.clauses.len());
    for clause in &cnf.clauses {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

pub fn to_dimacs(triple: SortTriple, theory: TheoryId) -> (String, VarMap) {
    let (cnf, map) = ground(triple, theory);
    (render_cnf(&cnf, &map, theory), map)
}

/// Builds the structure described by a truth assignment (indexed by
/// variable; entry 0 unused).
pub fn decode_assignment(values: &[bool], map: &VarMap) -> IncidenceStructure {
    let mut s = IncidenceStructure::empty(map.triple());
    for (var, atom) in map.iter() {
        if !values[var as usize] {
            continue;
        }
        match atom {
            Atom::Ve(v, e) => s.matrix_mut(Relation::VE).set(v, e, true),
            Atom::Ef(e, f) => s.matrix_mut(Relation::EF).set(e, f, true),
            Atom::Vf(v, f) => s.matrix_mut(Relation::VF).set(v, f, true),
            Atom::Z(..) | Atom::Diff(..) => {}
        }
    }
    s
}

/// The assignment (entry 0 unused) encoding `s`, with auxiliaries set to
/// their defined values. Difference witnesses are set true exactly when
/// the two elements disagree.
pub fn encode_assignment(s: &IncidenceStructure, map: &VarMap) -> Vec<bool> {
    let mut values = vec![false; map.num_vars() + 1];
    for (var, atom) in map.iter() {
        values[var as usize] = match atom {
            Atom::Ve(v, e) => s.ve(v, e),
            Atom::Ef(e, f) => s.ef(e, f),
            Atom::Vf(v, f) => s.vf(v, f),
            Atom::Z(v, e, f) => s.ve(v, e) && s.ef(e, f),
            Atom::Diff(x, y, w) => s.incident(x, w) != s.incident(y, w),
        };
    }
    values
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimacsSolution {
    Satisfiable(IncidenceStructure),
    Unsatisfiable,
}

/// Reads solver output: SAT-competition style (`s SATISFIABLE` plus `v`
/// lines) or MiniSat style (`SAT` followed by a literal line).
pub fn parse_dimacs_solution(text: &str, map: &VarMap) -> Result<DimacsSolution, DimacsError> {
    let mut verdict: Option<bool> = None;
    let mut values: Vec<Option<bool>> = vec![None; map.num_vars() + 1];
    let mut saw_literals = false;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let literals = match line {
            "s SATISFIABLE" | "SAT" | "SATISFIABLE" => {
                verdict = Some(true);
                continue;
            }
            "s UNSATISFIABLE" | "UNSAT" | "UNSATISFIABLE" => {
                verdict = Some(false);
                continue;
            }
            _ if line.starts_with("s ") => {
                return Err(DimacsError::Malformed { line: k + 1, msg: format!("unsupported status `{line}`") })
            }
            _ => line.strip_prefix("v ").unwrap_or(line),
        };
        for word in literals.split_whitespace() {
            let lit: i64 = word
                .parse()
                .map_err(|_| DimacsError::Malformed { line: k + 1, msg: format!("`{word}` is not a literal") })?;
            saw_literals = true;
            if lit == 0 {
                continue;
            }
            let var = lit.unsigned_abs();
            if var as usize > map.num_vars() {
                return Err(DimacsError::UnknownVariable(lit));
            }
            let slot = &mut values[var as usize];
            let value = lit > 0;
            if slot.is_some_and(|old| old != value) {
                return Err(DimacsError::Contradictory(var as u32));
            }
            *slot = Some(value);
        }
    }
    match verdict {
        Some(false) => return Ok(DimacsSolution::Unsatisfiable),
        None if !saw_literals => return Err(DimacsError::NoVerdict),
        _ => {}
    }
    let mut full = vec![false; values.len()];
    for (var, atom) in map.iter() {
        match values[var as usize] {
            Some(b) => full[var as usize] = b,
            None if atom.is_auxiliary() => {}
            None => return Err(DimacsError::Incomplete { var, atom }),
        }
    }
    Ok(DimacsSolution::Satisfiable(decode_assignment(&full, map)))
}
