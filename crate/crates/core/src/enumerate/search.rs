//! Pruned backtracking search over edge placements.
//!
//! Every edge of a model has exactly two vertices and two faces, so an edge
//! is a choice of one vertex pair and one face pair (its "code"). Given all
//! edge codes, `vf` is forced: `I(v,f)` must hold when some edge joins them
//! (closure) and then exactly two such edges must exist; conversely `I(v,f)`
//! with no common edge breaks the exactly-two requirement. So a model is an
//! assignment of codes in which every vertex–face common-edge count ends in
//! {0, 2}, every vertex and face is covered, and `vf` is read off as
//! `count == 2`. Edges are interchangeable, so up to isomorphism the codes
//! can be taken as a nondecreasing sequence; remaining vertex and face
//! symmetry is removed by canonical-form deduplication.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{IsoClassSet, Mode, TripleOutcome};
use crate::axioms::{satisfies, TheoryId};
use crate::structure::{IncidenceStructure, Relation, SortTriple};
use crate::Budget;

const FLUSH_EVERY: u64 = 1024;

struct Limits {
    start: Instant,
    node_limit: u64,
    wall: Duration,
    nodes: AtomicU64,
    /// A budget ran out.
    exceeded: AtomicBool,
    /// Stop requested (budget or first-model mode).
    stop: AtomicBool,
}

impl Limits {
    fn flush(&self, local: &mut u64) {
        let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        if total >= self.node_limit || self.start.elapsed() >= self.wall {
            self.exceeded.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
        }
    }
}

struct Ctx<'a> {
    triple: SortTriple,
    vpairs: Vec<(usize, usize)>,
    fpairs: Vec<(usize, usize)>,
    theory: TheoryId,
    mode: Mode,
    limits: &'a Limits,
}

impl Ctx<'_> {
    fn num_codes(&self) -> usize {
        self.vpairs.len() * self.fpairs.len()
    }

    fn decode(&self, code: usize) -> ((usize, usize), (usize, usize)) {
        let nf = self.fpairs.len();
        (self.vpairs[code / nf], self.fpairs[code % nf])
    }

    fn sorted_edges(&self) -> bool {
        self.mode != Mode::AllLabeled
    }
}

#[derive(Default)]
struct Found {
    classes: IsoClassSet,
    labeled: Vec<IncidenceStructure>,
}

struct State<'c, 'l> {
    ctx: &'c Ctx<'l>,
    /// common-edge count per (v, f), row-major by vertex
    counts: Vec<u8>,
    vcover: Vec<u32>,
    fcover: Vec<u32>,
    uncovered_v: usize,
    uncovered_f: usize,
    /// number of (v, f) with count exactly 1
    ones: usize,
    codes: Vec<usize>,
    local_nodes: u64,
    found: Found,
}

impl<'c, 'l> State<'c, 'l> {
    fn new(ctx: &'c Ctx<'l>) -> Self {
        let t = ctx.triple;
        State {
            ctx,
            counts: vec![0; t.vertices * t.faces],
            vcover: vec![0; t.vertices],
            fcover: vec![0; t.faces],
            uncovered_v: t.vertices,
            uncovered_f: t.faces,
            ones: 0,
            codes: Vec::with_capacity(t.edges),
            local_nodes: 0,
            found: Found::default(),
        }
    }

    fn place(&mut self, code: usize) -> bool {
        let ((v1, v2), (f1, f2)) = self.ctx.decode(code);
        let c = self.ctx.triple.faces;
        let cells = [v1 * c + f1, v1 * c + f2, v2 * c + f1, v2 * c + f2];
        if cells.iter().any(|&k| self.counts[k] >= 2) {
            return false;
        }
        for k in cells {
            self.counts[k] += 1;
            if self.counts[k] == 1 {
                self.ones += 1;
            } else {
                self.ones -= 1;
            }
        }
        for v in [v1, v2] {
            self.vcover[v] += 1;
            if self.vcover[v] == 1 {
                self.uncovered_v -= 1;
            }
        }
        for f in [f1, f2] {
            self.fcover[f] += 1;
            if self.fcover[f] == 1 {
                self.uncovered_f -= 1;
            }
        }
        self.codes.push(code);
        true
    }

    fn unplace(&mut self) {
        let code = self.codes.pop().expect("placed");
        let ((v1, v2), (f1, f2)) = self.ctx.decode(code);
        let c = self.ctx.triple.faces;
        for k in [v1 * c + f1, v1 * c + f2, v2 * c + f1, v2 * c + f2] {
            if self.counts[k] == 1 {
                self.ones -= 1;
            } else {
                self.ones += 1;
            }
            self.counts[k] -= 1;
        }
        for v in [v1, v2] {
            self.vcover[v] -= 1;
            if self.vcover[v] == 0 {
                self.uncovered_v += 1;
            }
        }
        for f in [f1, f2] {
            self.fcover[f] -= 1;
            if self.fcover[f] == 0 {
                self.uncovered_f += 1;
            }
        }
    }

    /// Whether the remaining `r` edges could still complete the coverage
    /// and bring every count of 1 up to 2.
    fn feasible(&self, r: usize) -> bool {
        self.uncovered_v <= 2 * r && self.uncovered_f <= 2 * r && self.ones <= 4 * r
    }

    fn stopped(&self) -> bool {
        self.ctx.limits.stop.load(Ordering::Relaxed)
    }

    fn dfs(&mut self, min_code: usize) {
        let b = self.ctx.triple.edges;
        if self.codes.len() == b {
            self.finish();
            return;
        }
        let r = b - self.codes.len() - 1;
        for code in min_code..self.ctx.num_codes() {
            self.local_nodes += 1;
            if self.local_nodes >= FLUSH_EVERY {
                self.ctx.limits.flush(&mut self.local_nodes);
            }
            if self.stopped() {
                return;
            }
            if !self.place(code) {
                continue;
            }
            if self.feasible(r) {
                self.dfs(if self.ctx.sorted_edges() { code } else { 0 });
            }
            self.unplace();
        }
    }

    fn finish(&mut self) {
        if self.ones != 0 || self.uncovered_v != 0 || self.uncovered_f != 0 {
            return;
        }
        let s = self.build();
        if !satisfies(&s, self.ctx.theory) {
            return;
        }
        match self.ctx.mode {
            Mode::AllLabeled => self.found.labeled.push(s),
            Mode::UpToIso | Mode::CountOnly => {
                self.found.classes.insert_model(&s);
            }
            Mode::FirstModelOnly => {
                self.found.classes.insert_model(&s);
                self.ctx.limits.stop.store(true, Ordering::Relaxed);
            }
        }
    }

    fn build(&self) -> IncidenceStructure {
        let t = self.ctx.triple;
        let mut s = IncidenceStructure::empty(t);
        for (e, &code) in self.codes.iter().enumerate() {
            let ((v1, v2), (f1, f2)) = self.ctx.decode(code);
            let ve = s.matrix_mut(Relation::VE);
            ve.set(v1, e, true);
            ve.set(v2, e, true);
            let ef = s.matrix_mut(Relation::EF);
            ef.set(e, f1, true);
            ef.set(e, f2, true);
        }
        let vf = s.matrix_mut(Relation::VF);
        for v in 0..t.vertices {
            for f in 0..t.faces {
                if self.counts[v * t.faces + f] == 2 {
                    vf.set(v, f, true);
                }
            }
        }
        s
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub(super) fn search_triple(triple: SortTriple, theory: TheoryId, mode: Mode, budget: &Budget) -> TripleOutcome {
    let limits = Limits {
        start: Instant::now(),
        node_limit: budget.nodes,
        wall: budget.wall,
        nodes: AtomicU64::new(0),
        exceeded: AtomicBool::new(false),
        stop: AtomicBool::new(false),
    };
    let ctx =
        Ctx { triple, vpairs: pairs(triple.vertices), fpairs: pairs(triple.faces), theory, mode, limits: &limits };

    let run_branch = |first: usize| -> (Found, u64) {
        let mut st = State::new(&ctx);
        st.local_nodes = 1;
        if st.place(first) && st.feasible(triple.edges - 1) {
            st.dfs(if ctx.sorted_edges() { first } else { 0 });
        }
        let n = st.local_nodes;
        ctx.limits.flush(&mut st.local_nodes);
        (st.found, n)
    };

    let branches: Vec<Found> = if triple.edges == 0 {
        let mut st = State::new(&ctx);
        st.dfs(0);
        vec![st.found]
    } else if mode == Mode::FirstModelOnly {
        let mut out = Vec::new();
        for first in 0..ctx.num_codes() {
            if limits.stop.load(Ordering::Relaxed) {
                break;
            }
            out.push(run_branch(first).0);
        }
        out
    } else {
        (0..ctx.num_codes()).into_par_iter().map(|first| run_branch(first).0).collect()
    };

    let mut classes = IsoClassSet::new();
    let mut labeled = Vec::new();
    for f in branches {
        classes.merge(f.classes);
        labeled.extend(f.labeled);
    }
    if mode == Mode::AllLabeled {
        for s in &labeled {
            classes.insert_model(s);
        }
        labeled.sort_by_cached_key(|s| Relation::ALL.map(|r| s.matrix(r).pairs()));
    }
    if mode == Mode::FirstModelOnly {
        // keep a single class, the first in canonical order
        if let Some((form, class)) = classes.iter().next().map(|(f, c)| (f.clone(), c.clone())) {
            classes = IsoClassSet::new();
            classes.insert_class(form, class);
        }
    }

    TripleOutcome {
        triple,
        classes,
        labeled,
        nodes: limits.nodes.load(Ordering::Relaxed),
        exhausted: !limits.exceeded.load(Ordering::Relaxed),
        elapsed: limits.start.elapsed(),
    }
}
