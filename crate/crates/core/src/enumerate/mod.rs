//! Exhaustive enumeration of models at fixed sort sizes.

mod naive;
mod search;

use std::collections::btree_map::{self, BTreeMap};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::axioms::TheoryId;
use crate::canon::{canonical_labeling, CanonicalForm};
use crate::structure::{IncidenceStructure, SortTriple};

pub use naive::{naive_enumerate, naive_enumerate_bounded, naive_labeled_models, DEFAULT_ORACLE_BOUND_LOG2};

/// Environment variable overriding the default per-triple wall-clock budget.
pub const BUDGET_ENV: &str = "POLYFIND_BUDGET_SECS";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("budgets must be positive")]
    InvalidBudget,
    #[error("oracle would scan 2^{candidates_log2} matrix assignments, above the 2^{bound_log2} bound")]
    OracleBoundExceeded { candidates_log2: usize, bound_log2: usize },
    #[error("witness {name} has cardinality {found}, expected {expected}")]
    WitnessCardinality { name: String, found: usize, expected: usize },
}

/// Resource limits for one triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
    pub wall: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { nodes: 100_000_000, wall: Duration::from_secs(600) }
    }
}

impl Budget {
    /// The default budget, with the wall-clock limit taken from
    /// [`BUDGET_ENV`] when it is set to a positive number of seconds.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(secs) = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse::<f64>().ok()) {
            if secs > 0.0 {
                b.wall = Duration::from_secs_f64(secs);
            }
        }
        b
    }

    fn validate(&self) -> Result<(), EnumerationError> {
        if self.nodes == 0 || self.wall.is_zero() {
            return Err(EnumerationError::InvalidBudget);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Target {
    Triple(SortTriple),
    Cardinality(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every labeled model, no symmetry reduction.
    AllLabeled,
    /// One representative per isomorphism class.
    UpToIso,
    /// Stop at the first model found.
    FirstModelOnly,
    /// Like `UpToIso`; callers only look at the class count.
    CountOnly,
}

#[derive(Clone, Debug)]
pub struct EnumerationTask {
    pub theory: TheoryId,
    pub target: Target,
    pub mode: Mode,
    pub budget: Budget,
}

impl EnumerationTask {
    pub fn new(theory: TheoryId, target: Target, mode: Mode) -> Self {
        EnumerationTask { theory, target, mode, budget: Budget::from_env() }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn triples(&self) -> Vec<SortTriple> {
        match self.target {
            Target::Triple(t) => vec![t],
            Target::Cardinality(n) => triples_for_cardinality(n),
        }
    }
}

/// One isomorphism class: its canonical representative and the number of
/// labeled models in it (`None` when too large to represent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: IncidenceStructure,
    pub labeled_count: Option<u128>,
}

/// Models deduplicated by canonical form, iterated in canonical-form order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsoClassSet {
    classes: BTreeMap<CanonicalForm, IsoClass>,
}

impl IsoClassSet {
    pub fn new() -> Self {
        IsoClassSet::default()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, CanonicalForm, IsoClass> {
        self.classes.iter()
    }

    pub fn forms(&self) -> impl Iterator<Item = &CanonicalForm> {
        self.classes.keys()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &IncidenceStructure> {
        self.classes.values().map(|c| &c.representative)
    }

    pub fn get(&self, form: &CanonicalForm) -> Option<&IsoClass> {
        self.classes.get(form)
    }

    /// The class of `s`, if present.
    pub fn class_of(&self, s: &IncidenceStructure) -> Option<&IsoClass> {
        self.classes.get(&canonical_labeling(s).form)
    }

    pub fn contains_isomorphic(&self, s: &IncidenceStructure) -> bool {
        self.class_of(s).is_some()
    }

    /// Adds a model's class, computing its labeled count from the
    /// automorphism group order. Returns true if the class is new.
    pub fn insert_model(&mut self, s: &IncidenceStructure) -> bool {
        let canon = canonical_labeling(s);
        match self.classes.entry(canon.form) {
            btree_map::Entry::Occupied(_) => false,
            btree_map::Entry::Vacant(slot) => {
                let labeled_count = orbit_size(s.triple(), canon.automorphisms);
                slot.insert(IsoClass { representative: canon.labeling.apply(s), labeled_count });
                true
            }
        }
    }

    pub(crate) fn insert_class(&mut self, form: CanonicalForm, class: IsoClass) {
        self.classes.entry(form).or_insert(class);
    }

    /// Union; classes already present keep their entry.
    pub fn merge(&mut self, other: IsoClassSet) {
        for (form, class) in other.classes {
            self.classes.entry(form).or_insert(class);
        }
    }

    /// Total labeled models, if every class count is known.
    pub fn labeled_total(&self) -> Option<u128> {
        self.classes.values().try_fold(0u128, |acc, c| acc.checked_add(c.labeled_count?))
    }
}

impl<'a> IntoIterator for &'a IsoClassSet {
    type Item = (&'a CanonicalForm, &'a IsoClass);
    type IntoIter = btree_map::Iter<'a, CanonicalForm, IsoClass>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// `a! b! c! / |Aut|`: the number of distinct labelings of a structure.
fn orbit_size(t: SortTriple, automorphisms: u128) -> Option<u128> {
    let fact = |n: usize| (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k));
    let total = fact(t.vertices)?.checked_mul(fact(t.edges)?)?.checked_mul(fact(t.faces)?)?;
    if automorphisms == u128::MAX || automorphisms == 0 {
        return None;
    }
    Some(total / automorphisms)
}

/// Search result for one sort triple.
#[derive(Clone, Debug)]
pub struct TripleOutcome {
    pub triple: SortTriple,
    pub classes: IsoClassSet,
    /// Filled only in [`Mode::AllLabeled`], sorted.
    pub labeled: Vec<IncidenceStructure>,
    pub nodes: u64,
    /// False when a budget stopped the search early.
    pub exhausted: bool,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub theory: TheoryId,
    pub mode: Mode,
    pub outcomes: Vec<TripleOutcome>,
}

impl Enumeration {
    pub fn exhausted(&self) -> bool {
        self.outcomes.iter().all(|o| o.exhausted)
    }

    pub fn classes(&self) -> IsoClassSet {
        let mut all = IsoClassSet::new();
        for o in &self.outcomes {
            all.merge(o.classes.clone());
        }
        all
    }

    pub fn total_classes(&self) -> usize {
        self.outcomes.iter().map(|o| o.classes.len()).sum()
    }
}

/// All `(a, b, c)` with `a + b + c = n`, lexicographically.
pub fn triples_for_cardinality(n: usize) -> Vec<SortTriple> {
    let mut out = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for a in 0..=n {
        for b in 0..=n - a {
            out.push(SortTriple::new(a, b, n - a - b));
        }
    }
    out
}

pub fn enumerate_models(task: &EnumerationTask) -> Result<Enumeration, EnumerationError> {
    task.budget.validate()?;
    let outcomes =
        task.triples().into_iter().map(|t| search::search_triple(t, task.theory, task.mode, &task.budget)).collect();
    Ok(Enumeration { theory: task.theory, mode: task.mode, outcomes })
}

/// Number of isomorphism classes at `triple` and whether the search was
/// exhaustive.
pub fn count_iso_classes(
    triple: SortTriple,
    theory: TheoryId,
    budget: Budget,
) -> Result<(usize, bool), EnumerationError> {
    let task = EnumerationTask { theory, target: Target::Triple(triple), mode: Mode::CountOnly, budget };
    let e = enumerate_models(&task)?;
    Ok((e.total_classes(), e.exhausted()))
}

#[derive(Clone, Debug)]
pub struct CardinalityScan {
    pub cardinality: usize,
    pub exhausted: bool,
    pub classes: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SmallestModel {
    pub theory: TheoryId,
    pub max_n: usize,
    /// The first cardinality with a model, and its classes.
    pub found: Option<(usize, IsoClassSet)>,
    /// Every cardinality scanned, in order.
    pub scans: Vec<CardinalityScan>,
}

impl SmallestModel {
    /// True when every scanned cardinality was searched to completion, so
    /// that `found` really is the least (or there is none up to `max_n`).
    pub fn exhausted(&self) -> bool {
        self.scans.iter().all(|s| s.exhausted)
    }

    /// Cardinalities below the answer whose search hit a budget.
    pub fn gaps(&self) -> Vec<usize> {
        self.scans.iter().filter(|s| !s.exhausted).map(|s| s.cardinality).collect()
    }
}

/// Scans `n = 0, 1, ..., max_n` and stops at the first cardinality with a
/// model.
pub fn smallest_model(theory: TheoryId, max_n: usize, budget: Budget) -> Result<SmallestModel, EnumerationError> {
    budget.validate()?;
    let mut scans = Vec::new();
    for n in 0..=max_n {
        let start = Instant::now();
        let task = EnumerationTask { theory, target: Target::Cardinality(n), mode: Mode::UpToIso, budget };
        let e = enumerate_models(&task)?;
        let classes = e.classes();
        scans.push(CardinalityScan {
            cardinality: n,
            exhausted: e.exhausted(),
            classes: classes.len(),
            elapsed: start.elapsed(),
        });
        if !classes.is_empty() {
            return Ok(SmallestModel { theory, max_n, found: Some((n, classes)), scans });
        }
    }
    Ok(SmallestModel { theory, max_n, found: None, scans })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CategoricityVerdict {
    NoModels,
    KCategorical,
    NotKCategorical,
    /// A budget was hit before a verdict could be established.
    Undetermined,
}

impl std::fmt::Display for CategoricityVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CategoricityVerdict::NoModels => "no-models",
            CategoricityVerdict::KCategorical => "k-categorical",
            CategoricityVerdict::NotKCategorical => "not-k-categorical",
            CategoricityVerdict::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleVerdict {
    pub triple: SortTriple,
    pub consistent: bool,
    pub classes: usize,
    pub exhausted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CategoricityReport {
    pub cardinality: usize,
    pub theory: TheoryId,
    pub triples: Vec<TripleVerdict>,
    /// Names of the witnesses used instead of a search, if any.
    pub witnesses: Vec<String>,
    pub verdict: CategoricityVerdict,
    pub exhausted: bool,
}

impl CategoricityReport {
    pub fn total_classes(&self) -> usize {
        self.triples.iter().map(|t| t.classes).sum()
    }
}

fn verdict_for(total: usize, exhausted: bool) -> CategoricityVerdict {
    match (total, exhausted) {
        (n, _) if n >= 2 => CategoricityVerdict::NotKCategorical,
        (1, true) => CategoricityVerdict::KCategorical,
        (0, true) => CategoricityVerdict::NoModels,
        _ => CategoricityVerdict::Undetermined,
    }
}

/// Counts classes over every triple of cardinality `n`.
pub fn categoricity_report(n: usize, theory: TheoryId, budget: Budget) -> Result<CategoricityReport, EnumerationError> {
    let task = EnumerationTask { theory, target: Target::Cardinality(n), mode: Mode::CountOnly, budget };
    let e = enumerate_models(&task)?;
    let triples: Vec<TripleVerdict> = e
        .outcomes
        .iter()
        .map(|o| TripleVerdict {
            triple: o.triple,
            consistent: !o.classes.is_empty(),
            classes: o.classes.len(),
            exhausted: o.exhausted,
        })
        .collect();
    let exhausted = e.exhausted();
    Ok(CategoricityReport {
        cardinality: n,
        theory,
        verdict: verdict_for(e.total_classes(), exhausted),
        triples,
        witnesses: Vec::new(),
        exhausted,
    })
}

/// Categoricity from known models instead of a search.
///
/// Witnesses that fail the theory are ignored; witnesses of the wrong
/// cardinality are an error. Two non-isomorphic witnesses refute
/// categoricity; fewer leave the question undetermined, since nothing was
/// searched exhaustively.
pub fn categoricity_from_witnesses(
    n: usize,
    theory: TheoryId,
    witnesses: &[(String, IncidenceStructure)],
) -> Result<CategoricityReport, EnumerationError> {
    let mut by_triple: BTreeMap<SortTriple, IsoClassSet> = BTreeMap::new();
    let mut used = Vec::new();
    for (name, s) in witnesses {
        if s.cardinality() != n {
            return Err(EnumerationError::WitnessCardinality {
                name: name.clone(),
                found: s.cardinality(),
                expected: n,
            });
        }
        if crate::axioms::satisfies(s, theory) {
            by_triple.entry(s.triple()).or_default().insert_model(s);
            used.push(name.clone());
        }
    }
    let triples: Vec<TripleVerdict> = by_triple
        .iter()
        .map(|(&triple, set)| TripleVerdict { triple, consistent: true, classes: set.len(), exhausted: false })
        .collect();
    let total = triples.iter().map(|t| t.classes).sum();
    Ok(CategoricityReport {
        cardinality: n,
        theory,
        triples,
        witnesses: used,
        verdict: verdict_for(total, false),
        exhausted: false,
    })
}
