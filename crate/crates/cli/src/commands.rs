//! One function per subcommand. Each returns the structured results and
//! their text rendering; `main` decides which to print.

use std::fmt::Write as _;
use std::path::Path;

use polyfind_core::catalog::{self, Platonic};
use polyfind_core::export::{parse_dimacs_solution, serialize_model, to_dimacs, to_tptp, DimacsSolution, VarMap};
use polyfind_core::{
    are_isomorphic, categoricity_from_witnesses, categoricity_report, check_theory, enumerate_models, smallest_model,
    Budget, CategoricityVerdict, EnumerationError, EnumerationTask, IncidenceStructure, Mode, SortTriple,
    SortedIsomorphism, Target, TheoryId,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::io::{self, STDIO};
use crate::report::{millis, CliError, Outcome, Status};

fn precondition(e: EnumerationError) -> CliError {
    CliError::Precondition(e.to_string())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

/// Large counts stay exact: numbers when they fit in 64 bits, strings otherwise.
fn big(n: u128) -> Value {
    u64::try_from(n).map(Value::from).unwrap_or_else(|_| Value::String(n.to_string()))
}

fn model_value(s: &IncidenceStructure) -> Value {
    serde_json::from_str(&serialize_model(s)).expect("model files are JSON")
}

fn triple_key(t: SortTriple) -> String {
    format!("{}-{}-{}", t.vertices, t.edges, t.faces)
}

/// Catalog entries isomorphic to `s`.
fn catalog_matches(s: &IncidenceStructure) -> Vec<String> {
    catalog::entries_of_cardinality(s.cardinality())
        .into_iter()
        .filter(|(_, c)| are_isomorphic(s, c).is_some())
        .map(|(name, _)| name)
        .collect()
}

fn classes(n: usize) -> String {
    if n == 1 {
        "1 class".into()
    } else {
        format!("{n} classes")
    }
}

pub fn check(path: &str, theory: TheoryId) -> Result<Outcome, CliError> {
    let s = io::load_model(path)?;
    let report = check_theory(&s, theory);
    let model = report.is_model();
    let mut text = format!(
        "{}: sorts {}, theory {theory}: {}\n",
        if path == STDIO { "stdin" } else { path },
        s.triple(),
        if model { "model" } else { "not a model" }
    );
    for entry in &report.entries {
        let verdict = if entry.holds { "holds" } else { "FAILS" };
        let _ = writeln!(text, "  {:<4} {verdict:<6} {}", entry.axiom.to_string(), entry.axiom.description());
        for w in &entry.witnesses {
            let _ = writeln!(text, "       witness {w}");
        }
        if entry.truncated {
            let _ = writeln!(text, "       (more witnesses omitted)");
        }
    }
    let results = json!({ "path": path, "triple": to_value(&s.triple()), "model": model, "report": to_value(&report) });
    Ok(Outcome::new(if model { Status::Ok } else { Status::Negative }, results, text))
}

pub fn enumerate(
    target: Target,
    theory: TheoryId,
    labeled: bool,
    limit: Option<usize>,
    out: Option<&Path>,
    budget: Budget,
) -> Result<Outcome, CliError> {
    let mode = if labeled { Mode::AllLabeled } else { Mode::UpToIso };
    let task = EnumerationTask::new(theory, target, mode).with_budget(budget);
    let e = enumerate_models(&task).map_err(precondition)?;
    if let Some(dir) = out {
        io::create_dir(dir)?;
    }

    let heading = match target {
        Target::Triple(t) => format!("sorts {t}"),
        Target::Cardinality(n) => format!("cardinality {n}"),
    };
    let mut text =
        format!("{theory} at {heading}, {}\n", if labeled { "all labeled models" } else { "up to isomorphism" });
    let mut files = Vec::new();
    let mut remaining = limit.unwrap_or(usize::MAX);
    let mut rows = Vec::new();
    let mut item_timings = std::collections::BTreeMap::new();
    for o in &e.outcomes {
        let key = triple_key(o.triple);
        item_timings.insert(key.clone(), millis(o.elapsed));
        let names: Vec<Vec<String>> = o.classes.representatives().map(catalog_matches).collect();
        let mut triple_files = Vec::new();
        if let Some(dir) = out {
            let models: Vec<&IncidenceStructure> =
                if labeled { o.labeled.iter().collect() } else { o.classes.representatives().collect() };
            for (k, s) in models.into_iter().enumerate() {
                if remaining == 0 {
                    break;
                }
                remaining -= 1;
                let tag = if labeled { "labeled" } else { "class" };
                let path = dir.join(format!("{theory}-{key}-{tag}-{k}.json"));
                io::write_file(&path, &serialize_model(s))?;
                triple_files.push(path.display().to_string());
            }
        }
        let _ = write!(text, "  {:<10} {}", o.triple.to_string(), classes(o.classes.len()));
        if let Some(n) = o.classes.labeled_total().filter(|_| !o.classes.is_empty()) {
            let _ = write!(text, ", {n} labeled");
        }
        let known: Vec<&str> = names.iter().flatten().map(String::as_str).collect();
        if !known.is_empty() {
            let _ = write!(text, " ({})", known.join(", "));
        }
        if !o.exhausted {
            let _ = write!(text, " [budget hit after {} nodes]", o.nodes);
        }
        text.push('\n');
        rows.push(json!({
            "triple": to_value(&o.triple),
            "classes": o.classes.len(),
            "labeled_models": o.classes.labeled_total().map(big),
            "catalog_matches": names,
            "canonical_forms": o.classes.forms().map(|f| f.to_hex()).collect::<Vec<_>>(),
            "exhausted": o.exhausted,
            "files": triple_files,
        }));
        files.extend(triple_files);
    }
    let exhausted = e.exhausted();
    let total = e.total_classes();
    let _ = writeln!(
        text,
        "{} scanned, {} total, {}",
        if e.outcomes.len() == 1 { "1 triple".to_string() } else { format!("{} triples", e.outcomes.len()) },
        classes(total),
        if exhausted { "exhaustive" } else { "INCOMPLETE (budget hit)" }
    );
    if !files.is_empty() {
        let _ = writeln!(text, "wrote {} model files", files.len());
    }
    let results = json!({
        "theory": theory,
        "mode": mode,
        "target": to_value(&target),
        "triples_scanned": e.outcomes.len(),
        "total_classes": total,
        "triples": rows,
    });
    let status = if exhausted { Status::Ok } else { Status::Incomplete };
    let mut outcome = Outcome::new(status, results, text).exhausted(exhausted);
    outcome.files_written = files;
    outcome.item_timings = item_timings;
    Ok(outcome)
}

pub fn catalog(name: &str, out: &str, json: bool) -> Result<Outcome, CliError> {
    let s = catalog::by_name(name).map_err(|e| CliError::Parse(e.to_string()))?;
    emit_model(&s, name, out, json)
}

fn emit_model(s: &IncidenceStructure, label: &str, out: &str, json: bool) -> Result<Outcome, CliError> {
    let (text, written) = io::emit(out, &serialize_model(s), json)?;
    let mut results = json!({ "name": label, "triple": to_value(&s.triple()), "cardinality": s.cardinality() });
    if written.is_none() {
        results["model"] = model_value(s);
    }
    let mut outcome = Outcome::new(Status::Ok, results, text);
    outcome.files_written = written.into_iter().collect();
    Ok(outcome)
}

pub fn catalog_list() -> Outcome {
    let mut entries: Vec<(String, IncidenceStructure)> =
        ["m6", "m8", "m8d"].iter().map(|n| (n.to_string(), catalog::by_name(n).expect("built in"))).collect();
    entries.extend(Platonic::ALL.iter().map(|p| (p.name().to_string(), catalog::platonic(*p))));
    let mut text = String::new();
    let mut rows = Vec::new();
    for (name, s) in &entries {
        let _ = writeln!(text, "{name:<13} {:<11} {}", s.triple().to_string(), s.cardinality());
        rows.push(json!({ "name": name, "triple": to_value(&s.triple()), "cardinality": s.cardinality() }));
    }
    text.push_str("pyramid-N     (N+1,2N,N+1) 4N+2, for N >= 3\n");
    Outcome::new(Status::Ok, json!({ "entries": rows }), text)
}

pub fn dual(path: &str, out: &str, json: bool) -> Result<Outcome, CliError> {
    let s = io::load_model(path)?;
    emit_model(&s.dual(), path, out, json)
}

fn mapping_value(m: &SortedIsomorphism) -> Value {
    json!({ "vertices": m.vertices, "edges": m.edges, "faces": m.faces })
}

pub fn iso(first: &str, second: &str) -> Result<Outcome, CliError> {
    if first == STDIO && second == STDIO {
        return Err(CliError::Precondition("only one of the two inputs can be stdin".into()));
    }
    let s = io::load_model(first)?;
    let t = io::load_model(second)?;
    let found = are_isomorphic(&s, &t);
    let mut text = String::new();
    match &found {
        Some(m) => {
            text.push_str("isomorphic\n");
            for (letter, map) in [('v', &m.vertices), ('e', &m.edges), ('f', &m.faces)] {
                let pairs: Vec<String> =
                    map.iter().enumerate().map(|(i, j)| format!("{letter}{i}->{letter}{j}")).collect();
                if !pairs.is_empty() {
                    let _ = writeln!(text, "  {}", pairs.join(" "));
                }
            }
        }
        None if s.triple() != t.triple() => {
            let _ = writeln!(text, "not isomorphic: sorts {} vs {}", s.triple(), t.triple());
        }
        None => text.push_str("not isomorphic\n"),
    }
    let results = json!({
        "isomorphic": found.is_some(),
        "mapping": found.as_ref().map(mapping_value),
    });
    Ok(Outcome::new(if found.is_some() { Status::Ok } else { Status::Negative }, results, text))
}

pub fn smallest(theory: TheoryId, max_n: usize, out: Option<&Path>, budget: Budget) -> Result<Outcome, CliError> {
    let r = smallest_model(theory, max_n, budget).map_err(precondition)?;
    let mut text = format!("smallest model of {theory}, scanning cardinalities 0..={max_n}\n");
    let mut item_timings = std::collections::BTreeMap::new();
    let mut scans = Vec::new();
    for scan in &r.scans {
        item_timings.insert(scan.cardinality.to_string(), millis(scan.elapsed));
        let _ = writeln!(
            text,
            "  n={:<3} {}{}",
            scan.cardinality,
            classes(scan.classes),
            if scan.exhausted { "" } else { " [budget hit]" }
        );
        scans.push(json!({ "cardinality": scan.cardinality, "classes": scan.classes, "exhausted": scan.exhausted }));
    }
    let mut files = Vec::new();
    let mut classes_json = Vec::new();
    if let Some((n, found)) = &r.found {
        if let Some(dir) = out {
            io::create_dir(dir)?;
        }
        for (k, s) in found.representatives().enumerate() {
            let names = catalog_matches(s);
            let _ = write!(text, "  class {k}: sorts {}", s.triple());
            if !names.is_empty() {
                let _ = write!(text, " ({})", names.join(", "));
            }
            text.push('\n');
            if let Some(dir) = out {
                let path = dir.join(format!("{theory}-{}-class-{k}.json", triple_key(s.triple())));
                io::write_file(&path, &serialize_model(s))?;
                files.push(path.display().to_string());
            }
            classes_json
                .push(json!({ "triple": to_value(&s.triple()), "catalog_matches": names, "model": model_value(s) }));
        }
        let _ = writeln!(text, "smallest cardinality: {n} ({})", classes(found.len()));
    } else {
        let _ = writeln!(text, "no model up to cardinality {max_n}");
    }
    let gaps = r.gaps();
    if !gaps.is_empty() {
        let list: Vec<String> = gaps.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "INCOMPLETE: budget hit at cardinalities {}", list.join(", "));
    }
    let exhausted = r.exhausted();
    let status = match (&r.found, exhausted) {
        (_, false) => Status::Incomplete,
        (Some(_), true) => Status::Ok,
        (None, true) => Status::Negative,
    };
    let results = json!({
        "theory": theory,
        "max_n": max_n,
        "smallest": r.found.as_ref().map(|(n, _)| *n),
        "classes": classes_json,
        "scans": scans,
        "gaps": gaps,
    });
    let mut outcome = Outcome::new(status, results, text).exhausted(exhausted);
    outcome.files_written = files;
    outcome.item_timings = item_timings;
    Ok(outcome)
}

pub fn categoricity(n: usize, theory: TheoryId, witnesses: &[String], budget: Budget) -> Result<Outcome, CliError> {
    let report = if witnesses.is_empty() {
        categoricity_report(n, theory, budget).map_err(precondition)?
    } else {
        let loaded =
            witnesses.iter().map(|w| io::load_named(w).map(|s| (w.clone(), s))).collect::<Result<Vec<_>, _>>()?;
        categoricity_from_witnesses(n, theory, &loaded).map_err(precondition)?
    };
    let mut text = format!("{theory} at cardinality {n}");
    if report.witnesses.is_empty() && !witnesses.is_empty() {
        text.push_str(", no witness is a model");
    } else if !witnesses.is_empty() {
        let _ = write!(text, ", from witnesses {}", report.witnesses.join(", "));
    }
    text.push('\n');
    for t in report.triples.iter().filter(|t| t.consistent || !t.exhausted) {
        let _ = writeln!(
            text,
            "  {:<10} {}{}",
            t.triple.to_string(),
            classes(t.classes),
            if t.exhausted || !witnesses.is_empty() { "" } else { " [budget hit]" }
        );
    }
    let _ = writeln!(text, "verdict: {}", report.verdict);
    let status = if report.verdict == CategoricityVerdict::Undetermined { Status::Incomplete } else { Status::Ok };
    let exhausted = report.exhausted;
    Ok(Outcome::new(status, to_value(&report), text).exhausted(exhausted))
}

fn emit_document(out: &str, document: &str, json: bool, mut results: Value) -> Result<Outcome, CliError> {
    let (text, written) = io::emit(out, document, json)?;
    if written.is_none() {
        results["document"] = Value::String(document.to_string());
    }
    let mut outcome = Outcome::new(Status::Ok, results, text);
    outcome.files_written = written.into_iter().collect();
    Ok(outcome)
}

pub fn export_tptp(
    theory: TheoryId,
    triple: Option<SortTriple>,
    negate: Option<&str>,
    out: &str,
    json: bool,
) -> Result<Outcome, CliError> {
    let diagram = negate.map(io::load_named).transpose()?;
    let triple = triple.or(diagram.as_ref().map(IncidenceStructure::triple));
    let document = to_tptp(theory, triple, diagram.as_ref()).map_err(|e| CliError::Precondition(e.to_string()))?;
    let results = json!({
        "format": "tptp",
        "theory": theory,
        "triple": triple.map(|t| to_value(&t)),
        "negated_diagram": negate,
        "formulas": document.lines().filter(|l| l.starts_with("fof(")).count(),
    });
    emit_document(out, &document, json, results)
}

pub fn export_dimacs(theory: TheoryId, triple: SortTriple, out: &str, json: bool) -> Result<Outcome, CliError> {
    let (document, map) = to_dimacs(triple, theory);
    let clauses = document.lines().filter(|l| !l.starts_with('c') && !l.starts_with('p')).count();
    let results = json!({
        "format": "dimacs",
        "theory": theory,
        "triple": to_value(&triple),
        "variables": map.num_vars(),
        "clauses": clauses,
    });
    emit_document(out, &document, json, results)
}

pub fn decode(cnf: &str, solution: &str, out: &str, json: bool) -> Result<Outcome, CliError> {
    if cnf == STDIO {
        return Err(CliError::Precondition("the DIMACS file must be a path; stdin is for the solver output".into()));
    }
    let map = VarMap::from_dimacs_header(&io::read_text(cnf)?).map_err(|e| CliError::Parse(format!("{cnf}: {e}")))?;
    let answer = parse_dimacs_solution(&io::read_text(solution)?, &map).map_err(|e| CliError::Parse(e.to_string()))?;
    match answer {
        DimacsSolution::Satisfiable(s) => {
            let mut outcome = emit_model(&s, solution, out, json)?;
            outcome.results["satisfiable"] = Value::Bool(true);
            Ok(outcome)
        }
        DimacsSolution::Unsatisfiable => Ok(Outcome::new(
            Status::Negative,
            json!({ "name": solution, "triple": to_value(&map.triple()), "satisfiable": false }),
            format!("unsatisfiable: no model with sorts {}\n", map.triple()),
        )),
    }
}
