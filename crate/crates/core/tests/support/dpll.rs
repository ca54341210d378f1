//! A small DPLL solver with clause learning (two watched literals, 1UIP
//! conflict analysis, activity-ordered decisions, restarts), used to decide
//! and exhaust groundings in tests.

use std::collections::BinaryHeap;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    Unset,
    True,
    False,
}

fn lit_index(lit: i32) -> usize {
    let v = lit.unsigned_abs() as usize;
    2 * v + usize::from(lit < 0)
}

/// Heap entry: activity, then variable.
struct Scored(f64, u32);

impl PartialEq for Scored {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for Scored {}

impl PartialOrd for Scored {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scored {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

pub struct Solver {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
    watches: Vec<Vec<usize>>,
    value: Vec<Value>,
    level: Vec<usize>,
    reason: Vec<Option<usize>>,
    trail: Vec<i32>,
    trail_lim: Vec<usize>,
    head: usize,
    activity: Vec<f64>,
    bump: f64,
    heap: BinaryHeap<Scored>,
    phase: Vec<bool>,
    seen: Vec<bool>,
    /// variables `1..=priority` are decided before any other
    priority: usize,
    /// an empty clause was derived at level 0
    broken: bool,
}

impl Solver {
    pub fn new(num_vars: usize) -> Self {
        let mut s = Solver {
            num_vars,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars + 2],
            value: vec![Value::Unset; num_vars + 1],
            level: vec![0; num_vars + 1],
            reason: vec![None; num_vars + 1],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            head: 0,
            activity: vec![0.0; num_vars + 1],
            bump: 1.0,
            heap: BinaryHeap::new(),
            phase: vec![false; num_vars + 1],
            seen: vec![false; num_vars + 1],
            priority: 0,
            broken: false,
        };
        for v in 1..=num_vars as u32 {
            s.heap.push(Scored(0.0, v));
        }
        s
    }

    pub fn with_clauses(num_vars: usize, clauses: &[Vec<i32>]) -> Self {
        let mut s = Solver::new(num_vars);
        for c in clauses {
            s.add_clause(c);
        }
        s
    }

    pub fn prioritize(&mut self, first: usize) {
        self.priority = first.min(self.num_vars);
    }

    fn lit_value(&self, lit: i32) -> Value {
        match (self.value[lit.unsigned_abs() as usize], lit > 0) {
            (Value::Unset, _) => Value::Unset,
            (Value::True, true) | (Value::False, false) => Value::True,
            _ => Value::False,
        }
    }

    fn assign(&mut self, lit: i32, reason: Option<usize>) {
        let v = lit.unsigned_abs() as usize;
        self.value[v] = if lit > 0 { Value::True } else { Value::False };
        self.level[v] = self.trail_lim.len();
        self.reason[v] = reason;
        self.trail.push(lit);
    }

    fn backtrack(&mut self, to: usize) {
        if self.trail_lim.len() <= to {
            return;
        }
        let keep = self.trail_lim[to];
        for &lit in &self.trail[keep..] {
            let v = lit.unsigned_abs() as usize;
            self.phase[v] = lit > 0;
            self.value[v] = Value::Unset;
            self.reason[v] = None;
            self.heap.push(Scored(self.activity[v], v as u32));
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(to);
        self.head = self.trail.len();
    }

    /// Adds a clause; only valid between solves (the solver is at level 0).
    pub fn add_clause(&mut self, clause: &[i32]) {
        self.backtrack(0);
        if self.broken {
            return;
        }
        let mut c: Vec<i32> = clause.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] == -w[1]) || c.iter().any(|&l| self.lit_value(l) == Value::True) {
            return;
        }
        c.retain(|&l| self.lit_value(l) != Value::False);
        match c.len() {
            0 => self.broken = true,
            1 => {
                self.assign(c[0], None);
                if self.propagate().is_some() {
                    self.broken = true;
                }
            }
            _ => {
                self.attach(c);
            }
        }
    }

    fn attach(&mut self, c: Vec<i32>) -> usize {
        let idx = self.clauses.len();
        self.watches[lit_index(-c[0])].push(idx);
        self.watches[lit_index(-c[1])].push(idx);
        self.clauses.push(c);
        idx
    }

    /// Unit propagation; returns a conflicting clause.
    fn propagate(&mut self) -> Option<usize> {
        while self.head < self.trail.len() {
            let lit = self.trail[self.head];
            self.head += 1;
            // clauses watching a literal that just became false
            let mut watchers = std::mem::take(&mut self.watches[lit_index(lit)]);
            let mut k = 0;
            let mut conflict = None;
            while k < watchers.len() {
                let ci = watchers[k];
                let false_lit = -lit;
                let c = &mut self.clauses[ci];
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                if self.lit_value(first) == Value::True {
                    k += 1;
                    continue;
                }
                let c = &self.clauses[ci];
                if let Some(j) = (2..c.len()).find(|&j| self.lit_value(c[j]) != Value::False) {
                    let c = &mut self.clauses[ci];
                    c.swap(1, j);
                    let new_watch = c[1];
                    self.watches[lit_index(-new_watch)].push(ci);
                    watchers.swap_remove(k);
                    continue;
                }
                if self.lit_value(first) == Value::False {
                    conflict = Some(ci);
                    break;
                }
                self.assign(first, Some(ci));
                k += 1;
            }
            let slot = &mut self.watches[lit_index(lit)];
            watchers.append(slot);
            *slot = watchers;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.bump;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.bump *= 1e-100;
        }
        if self.value[v] == Value::Unset {
            self.heap.push(Scored(self.activity[v], v as u32));
        }
    }

    /// First-UIP learnt clause (asserting literal first) and backjump level.
    fn analyze(&mut self, mut ci: usize) -> (Vec<i32>, usize) {
        let current = self.trail_lim.len();
        let mut seen = std::mem::take(&mut self.seen);
        let mut touched = Vec::new();
        let mut learnt = vec![0i32];
        let mut pending = 0;
        let mut idx = self.trail.len();
        let mut pivot: Option<i32> = None;
        loop {
            for k in 0..self.clauses[ci].len() {
                let l = self.clauses[ci][k];
                if Some(l) == pivot {
                    continue;
                }
                let v = l.unsigned_abs() as usize;
                if seen[v] || self.level[v] == 0 {
                    continue;
                }
                seen[v] = true;
                touched.push(v);
                self.bump_var(v);
                if self.level[v] == current {
                    pending += 1;
                } else {
                    learnt.push(l);
                }
            }
            loop {
                idx -= 1;
                if seen[self.trail[idx].unsigned_abs() as usize] {
                    break;
                }
            }
            let p = self.trail[idx];
            pending -= 1;
            if pending == 0 {
                learnt[0] = -p;
                break;
            }
            pivot = Some(p);
            ci = self.reason[p.unsigned_abs() as usize].expect("implied literal has a reason");
        }
        for v in touched {
            seen[v] = false;
        }
        self.seen = seen;
        self.bump *= 1.05;
        let back = learnt[1..].iter().map(|l| self.level[l.unsigned_abs() as usize]).max().unwrap_or(0);
        if learnt.len() > 1 {
            let j = (1..learnt.len()).max_by_key(|&j| self.level[learnt[j].unsigned_abs() as usize]).expect("nonempty");
            learnt.swap(1, j);
        }
        (learnt, back)
    }

    fn decide(&mut self) -> Option<i32> {
        let preferred = (1..=self.priority)
            .filter(|&v| self.value[v] == Value::Unset)
            .max_by(|&x, &y| self.activity[x].total_cmp(&self.activity[y]));
        if let Some(v) = preferred {
            return Some(if self.phase[v] { v as i32 } else { -(v as i32) });
        }
        while let Some(Scored(a, v)) = self.heap.pop() {
            let v = v as usize;
            if self.value[v] == Value::Unset && a == self.activity[v] {
                return Some(if self.phase[v] { v as i32 } else { -(v as i32) });
            }
        }
        (1..=self.num_vars).find(|&v| self.value[v] == Value::Unset).map(|v| -(v as i32))
    }

    /// A satisfying assignment (entry 0 unused), or `None`.
    pub fn solve(&mut self) -> Option<Vec<bool>> {
        if self.broken {
            return None;
        }
        self.backtrack(0);
        if self.propagate().is_some() {
            self.broken = true;
            return None;
        }
        let mut conflicts = 0u64;
        let mut restart_at = 100u64;
        loop {
            if let Some(ci) = self.propagate() {
                if self.trail_lim.is_empty() {
                    self.broken = true;
                    return None;
                }
                conflicts += 1;
                let (learnt, back) = self.analyze(ci);
                self.backtrack(back);
                if learnt.len() == 1 {
                    self.assign(learnt[0], None);
                } else {
                    let first = learnt[0];
                    let idx = self.attach(learnt);
                    self.assign(first, Some(idx));
                }
                continue;
            }
            if conflicts >= restart_at {
                restart_at += restart_at / 2;
                self.backtrack(0);
                continue;
            }
            match self.decide() {
                Some(lit) => {
                    self.trail_lim.push(self.trail.len());
                    self.assign(lit, None);
                }
                None => {
                    let model = (0..=self.num_vars).map(|v| self.value[v] == Value::True).collect();
                    self.backtrack(0);
                    return Some(model);
                }
            }
        }
    }
}

pub fn solve(num_vars: usize, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    Solver::with_clauses(num_vars, clauses).solve()
}

/// As [`solve`], deciding variables `1..=first` before the rest.
pub fn solve_prioritized(num_vars: usize, clauses: &[Vec<i32>], first: usize) -> Option<Vec<bool>> {
    let mut solver = Solver::with_clauses(num_vars, clauses);
    solver.prioritize(first);
    solver.solve()
}

/// Every satisfying assignment, projected onto variables `1..=project`
/// (each projection reported once; entry 0 unused).
pub fn all_solutions(num_vars: usize, clauses: &[Vec<i32>], project: usize) -> Vec<Vec<bool>> {
    let mut solver = Solver::with_clauses(num_vars, clauses);
    solver.prioritize(project);
    let mut out = Vec::new();
    while let Some(model) = solver.solve() {
        let blocking: Vec<i32> = (1..=project as i32).map(|v| if model[v as usize] { -v } else { v }).collect();
        out.push(model[..=project].to_vec());
        if blocking.is_empty() {
            break;
        }
        solver.add_clause(&blocking);
    }
    out
}

/// Exhaustive check over all `2^num_vars` assignments, for tiny formulas.
pub fn brute_force_count(num_vars: usize, clauses: &[Vec<i32>]) -> usize {
    assert!(num_vars < 24);
    (0u32..1 << num_vars)
        .filter(|&m| clauses.iter().all(|c| c.iter().any(|&l| (m >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0))))
        .count()
}
