//! Recognizer for the `fof` fragment of TPTP used by the exporter: comment
//! lines, annotated formulas `fof(name, role, formula).`, the connectives
//! `~ & | => <=> = !=`, quantifiers `! [X,…] :` / `? [X,…] :`, and the
//! constants `$true` / `$false`. Parsed formulas are returned as AST so
//! that tests can compare them with what was rendered. Free variables are
//! rejected.

use std::collections::HashSet;

use polyfind_core::export::tptp::{Formula, Pred};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LowerWord(String),
    UpperWord(String),
    Dollar(String),
    Punct(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<Tok>, String> {
    const PUNCT: [&str; 14] = ["<=>", "=>", "!=", "(", ")", "[", "]", ",", ":", ".", "~", "&", "|", "!"];
    let mut out = Vec::new();
    let mut rest = text;
    'outer: while !rest.is_empty() {
        let c = rest.chars().next().expect("nonempty");
        if c.is_whitespace() {
            rest = &rest[c.len_utf8()..];
            continue;
        }
        if c == '%' {
            rest = rest.find('\n').map_or("", |k| &rest[k..]);
            continue;
        }
        for p in PUNCT.into_iter().chain(["?", "="]) {
            if let Some(r) = rest.strip_prefix(p) {
                out.push(Tok::Punct(p));
                rest = r;
                continue 'outer;
            }
        }
        let word_len = rest
            .char_indices()
            .skip(1)
            .find(|&(_, ch)| !(ch.is_ascii_alphanumeric() || ch == '_'))
            .map_or(rest.len(), |(k, _)| k);
        let word = &rest[..word_len];
        let tok = if c == '$' {
            Tok::Dollar(word[1..].to_string())
        } else if c.is_ascii_lowercase() {
            Tok::LowerWord(word.to_string())
        } else if c.is_ascii_uppercase() {
            Tok::UpperWord(word.to_string())
        } else {
            return Err(format!("unexpected character {c:?}"));
        };
        out.push(tok);
        rest = &rest[word_len..];
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    bound: Vec<String>,
}

type R<T> = Result<T, String>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> R<Tok> {
        let t = self.toks.get(self.pos).cloned().ok_or("unexpected end of input")?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, p: &'static str) -> R<()> {
        match self.next()? {
            Tok::Punct(q) if q == p => Ok(()),
            other => Err(format!("expected `{p}`, found {other:?}")),
        }
    }

    fn is(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    fn lower(&mut self) -> R<String> {
        match self.next()? {
            Tok::LowerWord(w) => Ok(w),
            other => Err(format!("expected a lower word, found {other:?}")),
        }
    }

    fn variable(&mut self) -> R<String> {
        match self.next()? {
            Tok::UpperWord(w) => Ok(w),
            other => Err(format!("expected a variable, found {other:?}")),
        }
    }

    fn bound_variable(&mut self) -> R<String> {
        let v = self.variable()?;
        if !self.bound.contains(&v) {
            return Err(format!("free variable {v}"));
        }
        Ok(v)
    }

    fn annotated(&mut self) -> R<(String, String, Formula)> {
        match self.lower()?.as_str() {
            "fof" => {}
            other => return Err(format!("unsupported language `{other}`")),
        }
        self.expect("(")?;
        let name = self.lower()?;
        self.expect(",")?;
        let role = self.lower()?;
        const ROLES: [&str; 6] =
            ["axiom", "hypothesis", "definition", "assumption", "conjecture", "negated_conjecture"];
        if !ROLES.contains(&role.as_str()) {
            return Err(format!("unknown role `{role}`"));
        }
        self.expect(",")?;
        let f = self.formula()?;
        self.expect(")")?;
        self.expect(".")?;
        Ok((name, role, f))
    }

    fn formula(&mut self) -> R<Formula> {
        let first = self.unit()?;
        if self.is("&") || self.is("|") {
            let op = if self.is("&") { "&" } else { "|" };
            let mut parts = vec![first];
            while self.is(op) {
                self.pos += 1;
                parts.push(self.unit()?);
            }
            if self.is("&") || self.is("|") || self.is("=>") || self.is("<=>") {
                return Err("mixed connectives need parentheses".into());
            }
            return Ok(if op == "&" { Formula::And(parts) } else { Formula::Or(parts) });
        }
        if self.is("=>") || self.is("<=>") {
            let iff = self.is("<=>");
            self.pos += 1;
            let second = self.unit()?;
            if self.is("&") || self.is("|") || self.is("=>") || self.is("<=>") {
                return Err("non-associative connective chained".into());
            }
            let (a, b) = (Box::new(first), Box::new(second));
            return Ok(if iff { Formula::Iff(a, b) } else { Formula::Implies(a, b) });
        }
        Ok(first)
    }

    fn unit(&mut self) -> R<Formula> {
        match self.peek().cloned() {
            Some(Tok::Punct("~")) => {
                self.pos += 1;
                Ok(Formula::Not(Box::new(self.unit()?)))
            }
            Some(Tok::Punct("(")) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(")")?;
                Ok(f)
            }
            Some(Tok::Punct(q @ ("!" | "?"))) => {
                self.pos += 1;
                self.expect("[")?;
                let mut vars = vec![self.variable()?];
                while self.is(",") {
                    self.pos += 1;
                    vars.push(self.variable()?);
                }
                self.expect("]")?;
                self.expect(":")?;
                let depth = self.bound.len();
                self.bound.extend(vars.iter().cloned());
                let body = self.unit();
                self.bound.truncate(depth);
                let body = Box::new(body?);
                Ok(if q == "!" { Formula::Forall(vars, body) } else { Formula::Exists(vars, body) })
            }
            Some(Tok::Dollar(w)) => {
                self.pos += 1;
                match w.as_str() {
                    "true" => Ok(Formula::True),
                    "false" => Ok(Formula::False),
                    _ => Err(format!("unknown defined word ${w}")),
                }
            }
            Some(Tok::UpperWord(_)) => {
                let x = self.bound_variable()?;
                let neg = match self.next()? {
                    Tok::Punct("=") => false,
                    Tok::Punct("!=") => true,
                    other => return Err(format!("expected `=` or `!=`, found {other:?}")),
                };
                let y = self.bound_variable()?;
                let eq = Formula::Eq(x, y);
                Ok(if neg { Formula::Not(Box::new(eq)) } else { eq })
            }
            Some(Tok::LowerWord(_)) => {
                let name = self.lower()?;
                let (pred, arity) = match name.as_str() {
                    "v" => (Pred::V, 1),
                    "e" => (Pred::E, 1),
                    "f" => (Pred::F, 1),
                    "i" => (Pred::I, 2),
                    _ => return Err(format!("unknown predicate `{name}`")),
                };
                self.expect("(")?;
                let mut args = vec![self.bound_variable()?];
                while self.is(",") {
                    self.pos += 1;
                    args.push(self.bound_variable()?);
                }
                self.expect(")")?;
                if args.len() != arity {
                    return Err(format!("`{name}` applied to {} arguments", args.len()));
                }
                Ok(Formula::Atom(pred, args))
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// Parses a whole problem file into `(name, role, formula)` triples.
pub fn parse_problem(text: &str) -> Result<Vec<(String, String, Formula)>, String> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, bound: Vec::new() };
    let mut out = Vec::new();
    let mut names = HashSet::new();
    while p.peek().is_some() {
        let (name, role, f) = p.annotated()?;
        if !names.insert(name.clone()) {
            return Err(format!("duplicate formula name {name}"));
        }
        out.push((name, role, f));
    }
    Ok(out)
}

/// Flattens nested and singleton conjunctions/disjunctions so that
/// rendered-then-parsed formulas compare equal to their source.
pub fn normalize(f: &Formula) -> Formula {
    fn flatten(parts: &[Formula], is_and: bool) -> Vec<Formula> {
        let mut out = Vec::new();
        for p in parts.iter().map(normalize) {
            match p {
                Formula::And(inner) if is_and => out.extend(inner),
                Formula::Or(inner) if !is_and => out.extend(inner),
                other => out.push(other),
            }
        }
        out
    }
    let assoc = |parts: Vec<Formula>, is_and: bool| match parts.len() {
        0 => {
            if is_and {
                Formula::True
            } else {
                Formula::False
            }
        }
        1 => parts.into_iter().next().expect("one"),
        _ => {
            if is_and {
                Formula::And(parts)
            } else {
                Formula::Or(parts)
            }
        }
    };
    match f {
        Formula::And(ps) => assoc(flatten(ps, true), true),
        Formula::Or(ps) => assoc(flatten(ps, false), false),
        Formula::Not(g) => Formula::Not(Box::new(normalize(g))),
        Formula::Implies(a, b) => Formula::Implies(Box::new(normalize(a)), Box::new(normalize(b))),
        Formula::Iff(a, b) => Formula::Iff(Box::new(normalize(a)), Box::new(normalize(b))),
        Formula::Forall(v, b) => Formula::Forall(v.clone(), Box::new(normalize(b))),
        Formula::Exists(v, b) => Formula::Exists(v.clone(), Box::new(normalize(b))),
        other => other.clone(),
    }
}
