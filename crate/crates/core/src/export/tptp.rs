//! First-order problems in TPTP `fof` syntax over the unsorted signature:
//! unary `v`, `e`, `f` and binary `i`.
//!
//! Problems are first built as [`Formula`] trees so that tests can evaluate
//! or ground them directly, then rendered as text.

use std::fmt::Write as _;

use thiserror::Error;

use crate::axioms::TheoryId;
use crate::structure::{IncidenceStructure, Sort, SortTriple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TptpError {
    #[error("sort triple {requested} does not match the diagram structure's {actual}")]
    TripleMismatch { requested: SortTriple, actual: SortTriple },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pred {
    V,
    E,
    F,
    I,
}

impl Pred {
    pub fn of_sort(sort: Sort) -> Pred {
        match sort {
            Sort::Vertex => Pred::V,
            Sort::Edge => Pred::E,
            Sort::Face => Pred::F,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Pred::V => "v",
            Pred::E => "e",
            Pred::F => "f",
            Pred::I => "i",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Atom(Pred, Vec<String>),
    Eq(String, String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
}

fn unary(p: Pred, x: &str) -> Formula {
    Formula::Atom(p, vec![x.to_string()])
}

fn inc(x: &str, y: &str) -> Formula {
    Formula::Atom(Pred::I, vec![x.to_string(), y.to_string()])
}

fn eq(x: &str, y: &str) -> Formula {
    Formula::Eq(x.to_string(), y.to_string())
}

fn neq(x: &str, y: &str) -> Formula {
    not(eq(x, y))
}

fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

fn forall(vars: &[&str], body: Formula) -> Formula {
    Formula::Forall(vars.iter().map(|s| s.to_string()).collect(), Box::new(body))
}

fn exists(vars: &[&str], body: Formula) -> Formula {
    Formula::Exists(vars.iter().map(|s| s.to_string()).collect(), Box::new(body))
}

fn and(parts: impl IntoIterator<Item = Formula>) -> Formula {
    Formula::And(parts.into_iter().collect())
}

fn or(parts: impl IntoIterator<Item = Formula>) -> Formula {
    Formula::Or(parts.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedFormula {
    pub name: String,
    pub formula: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub comments: Vec<String>,
    pub formulas: Vec<NamedFormula>,
}

impl Problem {
    pub fn formula(&self, name: &str) -> Option<&Formula> {
        self.formulas.iter().find(|f| f.name == name).map(|f| &f.formula)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "% {c}");
        }
        for nf in &self.formulas {
            let _ = writeln!(out, "fof({}, axiom, {}).", nf.name, render(&nf.formula));
        }
        out
    }
}

/// TPTP text of a formula. Every compound subformula is parenthesized.
pub fn render(f: &Formula) -> String {
    match f {
        Formula::True => "$true".into(),
        Formula::False => "$false".into(),
        Formula::Atom(p, args) => format!("{}({})", p.symbol(), args.join(",")),
        Formula::Eq(x, y) => format!("{x} = {y}"),
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Eq(x, y) => format!("{x} != {y}"),
            Formula::Atom(..) | Formula::True | Formula::False => format!("~ {}", render(inner)),
            other => format!("~ {}", render_unit(other)),
        },
        Formula::And(parts) => render_assoc(parts, " & ", "$true"),
        Formula::Or(parts) => render_assoc(parts, " | ", "$false"),
        Formula::Implies(a, b) => format!("({} => {})", render_unit(a), render_unit(b)),
        Formula::Iff(a, b) => format!("({} <=> {})", render_unit(a), render_unit(b)),
        Formula::Forall(vars, body) => format!("(! [{}] : {})", vars.join(","), render_unit(body)),
        Formula::Exists(vars, body) => format!("(? [{}] : {})", vars.join(","), render_unit(body)),
    }
}

fn render_unit(f: &Formula) -> String {
    match f {
        Formula::Eq(..) => format!("({})", render(f)),
        Formula::Not(inner) if matches!(inner.as_ref(), Formula::Eq(..)) => format!("({})", render(f)),
        _ => render(f),
    }
}

fn render_assoc(parts: &[Formula], op: &str, empty: &str) -> String {
    match parts {
        [] => empty.to_string(),
        [one] => render(one),
        _ => format!("({})", parts.iter().map(render_unit).collect::<Vec<_>>().join(op)),
    }
}

/// The axiom named `sr_a1` .. `sr_a9`.
pub fn sr_axioms() -> Vec<NamedFormula> {
    use Pred::{E, F, V};
    let a1 = and([exists(&["X"], unary(V, "X")), exists(&["X"], unary(E, "X")), exists(&["X"], unary(F, "X"))]);
    let a2 = forall(&["X"], or([unary(V, "X"), unary(E, "X"), unary(F, "X")]));
    let a3 = forall(&["X", "Y"], implies(inc("X", "Y"), inc("Y", "X")));
    let a4 =
        and([V, E, F].map(|p| forall(&["X", "Y"], implies(and([unary(p, "X"), unary(p, "Y")]), not(inc("X", "Y"))))));
    let a5 = forall(
        &["V1", "E1", "F1"],
        implies(
            and([unary(V, "V1"), unary(E, "E1"), unary(F, "F1"), inc("V1", "E1"), inc("E1", "F1")]),
            inc("V1", "F1"),
        ),
    );
    // every edge has exactly two incident elements of sort `p`
    let exactly_two_around_edge = |p: Pred, orient: fn(&str, &str) -> Formula| {
        forall(
            &["E1"],
            implies(
                unary(E, "E1"),
                exists(
                    &["X1", "X2"],
                    and([
                        neq("X1", "X2"),
                        unary(p, "X1"),
                        unary(p, "X2"),
                        orient("X1", "E1"),
                        orient("X2", "E1"),
                        forall(
                            &["X3"],
                            implies(and([unary(p, "X3"), orient("X3", "E1")]), or([eq("X3", "X1"), eq("X3", "X2")])),
                        ),
                    ]),
                ),
            ),
        )
    };
    let a6 = exactly_two_around_edge(V, inc);
    let a7 = exactly_two_around_edge(F, |x, e| inc(e, x));
    let a8 = forall(
        &["V1", "F1"],
        implies(
            and([unary(V, "V1"), unary(F, "F1"), inc("V1", "F1")]),
            exists(
                &["E1", "E2"],
                and([
                    neq("E1", "E2"),
                    unary(E, "E1"),
                    unary(E, "E2"),
                    inc("V1", "E1"),
                    inc("E1", "F1"),
                    inc("V1", "E2"),
                    inc("E2", "F1"),
                    forall(
                        &["E3"],
                        implies(
                            and([unary(E, "E3"), inc("V1", "E3"), inc("E3", "F1")]),
                            or([eq("E3", "E1"), eq("E3", "E2")]),
                        ),
                    ),
                ]),
            ),
        ),
    );
    let a9 = forall(
        &["X"],
        implies(or([unary(V, "X"), unary(F, "X")]), exists(&["Y"], and([neq("Y", "X"), inc("X", "Y")]))),
    );
    [a1, a2, a3, a4, a5, a6, a7, a8, a9]
        .into_iter()
        .enumerate()
        .map(|(k, formula)| NamedFormula { name: format!("sr_a{}", k + 1), formula })
        .collect()
}

pub fn extensionality_axiom() -> NamedFormula {
    NamedFormula {
        name: "sr_ext".into(),
        formula: forall(
            &["X", "Y"],
            implies(forall(&["Z"], Formula::Iff(Box::new(inc("X", "Z")), Box::new(inc("Y", "Z")))), eq("X", "Y")),
        ),
    }
}

/// `p(x_0) ∧ … ∧ x_i ≠ x_j ∧ ∀Y (p(Y) → Y = x_0 ∨ …)`: the elements of sort
/// `p` are exactly the distinct `names`.
fn exactly_bundle(p: Pred, names: &[String]) -> Vec<Formula> {
    let mut parts: Vec<Formula> = names.iter().map(|x| unary(p, x)).collect();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            parts.push(neq(&names[i], &names[j]));
        }
    }
    parts.push(forall(&["Y"], implies(unary(p, "Y"), or(names.iter().map(|x| eq("Y", x))))));
    parts
}

/// "There are exactly `n` elements of sort `sort`."
pub fn cardinality_axiom(sort: Sort, n: usize) -> NamedFormula {
    let names: Vec<String> = (0..n).map(|k| format!("X{k}")).collect();
    let body = and(exactly_bundle(Pred::of_sort(sort), &names));
    let formula = if names.is_empty() { body } else { Formula::Exists(names, Box::new(body)) };
    NamedFormula { name: format!("sr_card_{}", sort.letter()), formula }
}

/// Names the elements of `s` as `X0, X1, …` (vertices, then edges, then
/// faces), fixes the sort sizes, and negates the conjunction of its
/// vertex–edge and edge–face incidences. A model of the theory plus this
/// formula is a structure with the same sort sizes that differs from `s`
/// under every naming.
pub fn diagram_negation(s: &IncidenceStructure) -> NamedFormula {
    let names: Vec<String> = (0..s.cardinality()).map(|k| format!("X{k}")).collect();
    let name_of = |x| names[s.global_index(x)].as_str();
    let mut parts = Vec::new();
    for sort in Sort::ALL {
        let of_sort: Vec<String> = s.elements().filter(|x| x.sort == sort).map(|x| name_of(x).to_string()).collect();
        parts.extend(exactly_bundle(Pred::of_sort(sort), &of_sort));
    }
    use crate::structure::ElementRef as El;
    let mut incidences = Vec::new();
    for e in 0..s.num_edges() {
        for v in 0..s.num_vertices() {
            if s.ve(v, e) {
                incidences.push(inc(name_of(El::vertex(v)), name_of(El::edge(e))));
            }
        }
    }
    for f in 0..s.num_faces() {
        for e in 0..s.num_edges() {
            if s.ef(e, f) {
                incidences.push(inc(name_of(El::edge(e)), name_of(El::face(f))));
            }
        }
    }
    parts.push(not(and(incidences)));
    let body = and(parts);
    let formula = if names.is_empty() { body } else { Formula::Exists(names, Box::new(body)) };
    NamedFormula { name: "sr_diagram_negation".into(), formula }
}

pub fn build_problem(
    theory: TheoryId,
    triple: Option<SortTriple>,
    negated_diagram_of: Option<&IncidenceStructure>,
) -> Result<Problem, TptpError> {
    if let (Some(t), Some(s)) = (triple, negated_diagram_of) {
        if t != s.triple() {
            return Err(TptpError::TripleMismatch { requested: t, actual: s.triple() });
        }
    }
    let mut comments = vec![format!("theory: {theory}")];
    let mut formulas = sr_axioms();
    if theory == TheoryId::SrExt {
        formulas.push(extensionality_axiom());
    }
    if let Some(t) = triple {
        comments.push(format!("sorts (vertices, edges, faces): {t}"));
        formulas.extend(Sort::ALL.map(|sort| cardinality_axiom(sort, t.count(sort))));
    }
    if let Some(s) = negated_diagram_of {
        comments.push(format!("negated diagram of a structure with sorts {}", s.triple()));
        formulas.push(diagram_negation(s));
    }
    Ok(Problem { comments, formulas })
}

pub fn to_tptp(
    theory: TheoryId,
    triple: Option<SortTriple>,
    negated_diagram_of: Option<&IncidenceStructure>,
) -> Result<String, TptpError> {
    build_problem(theory, triple, negated_diagram_of).map(|p| p.render())
}
