//! Evaluation and propositional grounding of first-order problems over a
//! finite domain `{0, …, n-1}`.
//!
//! Ground atoms are numbered `v(x)`, `e(x)`, `f(x)` for each `x`, then
//! `i(x,y)` row-major; equality is interpreted as identity and folded away.
//! Quantifiers expand to finite conjunctions/disjunctions, negation is
//! pushed to the atoms, and the resulting tree is clausified with one
//! definition variable per inner connective (implication direction only).

use std::collections::HashMap;

use polyfind_core::export::tptp::{Formula, Pred};
use polyfind_core::{IncidenceStructure, Sort};

type Env = HashMap<String, usize>;

pub fn evaluate(f: &Formula, s: &IncidenceStructure) -> bool {
    let elements: Vec<_> = s.elements().collect();
    eval(f, s, &elements, &mut Env::new())
}

fn eval(f: &Formula, s: &IncidenceStructure, dom: &[polyfind_core::ElementRef], env: &mut Env) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(p, args) => {
            let x = dom[env[&args[0]]];
            match p {
                Pred::V => x.sort == Sort::Vertex,
                Pred::E => x.sort == Sort::Edge,
                Pred::F => x.sort == Sort::Face,
                Pred::I => s.incident(x, dom[env[&args[1]]]),
            }
        }
        Formula::Eq(a, b) => env[a] == env[b],
        Formula::Not(g) => !eval(g, s, dom, env),
        Formula::And(gs) => gs.iter().all(|g| eval(g, s, dom, env)),
        Formula::Or(gs) => gs.iter().any(|g| eval(g, s, dom, env)),
        Formula::Implies(a, b) => !eval(a, s, dom, env) || eval(b, s, dom, env),
        Formula::Iff(a, b) => eval(a, s, dom, env) == eval(b, s, dom, env),
        Formula::Forall(vars, body) => quantify(vars, body, s, dom, env, true),
        Formula::Exists(vars, body) => quantify(vars, body, s, dom, env, false),
    }
}

fn quantify(
    vars: &[String],
    body: &Formula,
    s: &IncidenceStructure,
    dom: &[polyfind_core::ElementRef],
    env: &mut Env,
    universal: bool,
) -> bool {
    let Some((x, rest)) = vars.split_first() else {
        return eval(body, s, dom, env);
    };
    let saved = env.get(x).copied();
    let mut result = universal;
    for d in 0..dom.len() {
        env.insert(x.clone(), d);
        if quantify(rest, body, s, dom, env, universal) != universal {
            result = !universal;
            break;
        }
    }
    match saved {
        Some(d) => env.insert(x.clone(), d),
        None => env.remove(x),
    };
    result
}

#[derive(Clone, Debug)]
enum Prop {
    Const(bool),
    Lit(i32),
    And(Vec<Prop>),
    Or(Vec<Prop>),
}

fn conj(parts: Vec<Prop>) -> Prop {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Prop::Const(true) => {}
            Prop::Const(false) => return Prop::Const(false),
            Prop::And(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => Prop::Const(true),
        1 => out.pop().expect("one"),
        _ => Prop::And(out),
    }
}

fn disj(parts: Vec<Prop>) -> Prop {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Prop::Const(false) => {}
            Prop::Const(true) => return Prop::Const(true),
            Prop::Or(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => Prop::Const(false),
        1 => out.pop().expect("one"),
        _ => Prop::Or(out),
    }
}

/// A grounded problem in CNF.
pub struct Grounding {
    pub domain: usize,
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Grounding {
    pub fn unary(&self, p: Pred, x: usize) -> i32 {
        let k = match p {
            Pred::V => 0,
            Pred::E => 1,
            Pred::F => 2,
            Pred::I => panic!("binary predicate"),
        };
        (k * self.domain + x + 1) as i32
    }

    pub fn incidence(&self, x: usize, y: usize) -> i32 {
        (3 * self.domain + x * self.domain + y + 1) as i32
    }

    /// Number of variables standing for ground atoms.
    pub fn atom_vars(&self) -> usize {
        3 * self.domain + self.domain * self.domain
    }
}

struct Grounder {
    n: usize,
}

impl Grounder {
    fn atom(&self, p: Pred, args: &[usize]) -> i32 {
        let n = self.n;
        match p {
            Pred::V => (args[0] + 1) as i32,
            Pred::E => (n + args[0] + 1) as i32,
            Pred::F => (2 * n + args[0] + 1) as i32,
            Pred::I => (3 * n + args[0] * n + args[1] + 1) as i32,
        }
    }

    fn ground(&self, f: &Formula, env: &mut Env, positive: bool) -> Prop {
        match f {
            Formula::True => Prop::Const(positive),
            Formula::False => Prop::Const(!positive),
            Formula::Atom(p, args) => {
                let vals: Vec<usize> = args.iter().map(|a| env[a]).collect();
                let lit = self.atom(*p, &vals);
                Prop::Lit(if positive { lit } else { -lit })
            }
            Formula::Eq(a, b) => Prop::Const((env[a] == env[b]) == positive),
            Formula::Not(g) => self.ground(g, env, !positive),
            Formula::And(gs) => {
                let parts = gs.iter().map(|g| self.ground(g, env, positive)).collect();
                if positive {
                    conj(parts)
                } else {
                    disj(parts)
                }
            }
            Formula::Or(gs) => {
                let parts = gs.iter().map(|g| self.ground(g, env, positive)).collect();
                if positive {
                    disj(parts)
                } else {
                    conj(parts)
                }
            }
            Formula::Implies(a, b) => {
                if positive {
                    disj(vec![self.ground(a, env, false), self.ground(b, env, true)])
                } else {
                    conj(vec![self.ground(a, env, true), self.ground(b, env, false)])
                }
            }
            Formula::Iff(a, b) => {
                let (pa, na) = (self.ground(a, env, true), self.ground(a, env, false));
                let (pb, nb) = (self.ground(b, env, true), self.ground(b, env, false));
                if positive {
                    conj(vec![disj(vec![na, pb.clone()]), disj(vec![pa, nb])])
                } else {
                    disj(vec![conj(vec![pa, nb]), conj(vec![na, pb])])
                }
            }
            Formula::Forall(vars, body) => self.expand(vars, body, env, positive, positive),
            Formula::Exists(vars, body) => self.expand(vars, body, env, positive, !positive),
        }
    }

    fn expand(&self, vars: &[String], body: &Formula, env: &mut Env, positive: bool, as_and: bool) -> Prop {
        let Some((x, rest)) = vars.split_first() else {
            return self.ground(body, env, positive);
        };
        let saved = env.get(x).copied();
        let mut parts = Vec::with_capacity(self.n);
        for d in 0..self.n {
            env.insert(x.clone(), d);
            parts.push(self.expand(rest, body, env, positive, as_and));
        }
        match saved {
            Some(d) => env.insert(x.clone(), d),
            None => env.remove(x),
        };
        if as_and {
            conj(parts)
        } else {
            disj(parts)
        }
    }
}

struct Clausifier {
    next_var: usize,
    clauses: Vec<Vec<i32>>,
}

impl Clausifier {
    fn fresh(&mut self) -> i32 {
        self.next_var += 1;
        self.next_var as i32
    }

    /// A literal that implies `p`.
    fn literal(&mut self, p: Prop) -> i32 {
        match p {
            Prop::Lit(l) => l,
            Prop::Const(b) => {
                let t = self.fresh();
                if !b {
                    self.clauses.push(vec![-t]);
                }
                t
            }
            Prop::And(parts) => {
                let t = self.fresh();
                for q in parts {
                    let l = self.literal(q);
                    self.clauses.push(vec![-t, l]);
                }
                t
            }
            Prop::Or(parts) => {
                let t = self.fresh();
                let mut clause = vec![-t];
                for q in parts {
                    clause.push(self.literal(q));
                }
                self.clauses.push(clause);
                t
            }
        }
    }

    fn assert(&mut self, p: Prop) {
        match p {
            Prop::Const(true) => {}
            Prop::Const(false) => self.clauses.push(Vec::new()),
            Prop::Lit(l) => self.clauses.push(vec![l]),
            Prop::And(parts) => {
                for q in parts {
                    self.assert(q);
                }
            }
            Prop::Or(parts) => {
                let clause = parts.into_iter().map(|q| self.literal(q)).collect();
                self.clauses.push(clause);
            }
        }
    }
}

/// Grounds the conjunction of `formulas` (all closed) over a domain of
/// `n` elements.
pub fn ground<'a>(formulas: impl IntoIterator<Item = &'a Formula>, n: usize) -> Grounding {
    let g = Grounder { n };
    let mut c = Clausifier { next_var: 3 * n + n * n, clauses: Vec::new() };
    for f in formulas {
        let p = g.ground(f, &mut Env::new(), true);
        c.assert(p);
    }
    Grounding { domain: n, num_vars: c.next_var, clauses: c.clauses }
}

/// Reads an incidence structure off a model of a grounding in which every
/// element has exactly one sort; `None` otherwise.
pub fn decode_model(g: &Grounding, model: &[bool]) -> Option<IncidenceStructure> {
    let n = g.domain;
    let mut sorted: [Vec<usize>; 3] = Default::default();
    for x in 0..n {
        let sorts: Vec<usize> =
            (0..3).filter(|&k| model[g.unary([Pred::V, Pred::E, Pred::F][k], x) as usize]).collect();
        let [k] = sorts.as_slice() else { return None };
        sorted[*k].push(x);
    }
    let [vs, es, fs] = &sorted;
    let triple = polyfind_core::SortTriple::new(vs.len(), es.len(), fs.len());
    let at = |x: usize, y: usize| model[g.incidence(x, y) as usize];
    let ve: Vec<Vec<bool>> = vs.iter().map(|&v| es.iter().map(|&e| at(v, e)).collect()).collect();
    let ef: Vec<Vec<bool>> = es.iter().map(|&e| fs.iter().map(|&f| at(e, f)).collect()).collect();
    let vf: Vec<Vec<bool>> = vs.iter().map(|&v| fs.iter().map(|&f| at(v, f)).collect()).collect();
    IncidenceStructure::from_matrices(triple, &ve, &ef, &vf).ok()
}
