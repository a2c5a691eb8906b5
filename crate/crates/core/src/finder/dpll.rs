//! DPLL with two watched literals and chronological backtracking.
//!
//! Decisions follow variable index order with a fixed preferred value per
//! variable, and no clause learning or restarts are used, so the first model
//! reached is the least one in the lexicographic order where each variable's
//! preferred value comes first.

use super::ground::{neg, var_of, Lit};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Sat(Vec<bool>),
    Unsat,
    Budget,
}

pub struct Solver {
    clauses: Vec<Vec<Lit>>,
    /// Clause indices watching each literal; a clause watches its first two.
    watches: Vec<Vec<usize>>,
    value: Vec<Option<bool>>,
    preferred: Vec<bool>,
    trail: Vec<Lit>,
    /// Per decision level: trail length before the decision, the decided
    /// literal and whether it is already the flipped branch.
    levels: Vec<(usize, Lit, bool)>,
    units: Vec<Lit>,
    head: usize,
    next_var: usize,
    empty_clause: bool,
    pub decisions: u64,
}

impl Solver {
    pub fn new(vars: usize, clauses: Vec<Vec<Lit>>, preferred: Vec<bool>) -> Solver {
        let mut s = Solver {
            clauses: Vec::with_capacity(clauses.len()),
            watches: vec![Vec::new(); 2 * vars],
            value: vec![None; vars],
            preferred,
            trail: Vec::new(),
            levels: Vec::new(),
            units: Vec::new(),
            head: 0,
            next_var: 0,
            empty_clause: false,
            decisions: 0,
        };
        s.preferred.resize(vars, false);
        for c in clauses {
            match c.len() {
                0 => s.empty_clause = true,
                1 => s.units.push(c[0]),
                _ => {
                    let i = s.clauses.len();
                    s.watches[c[0] as usize].push(i);
                    s.watches[c[1] as usize].push(i);
                    s.clauses.push(c);
                }
            }
        }
        s
    }

    fn lit_value(&self, l: Lit) -> Option<bool> {
        self.value[var_of(l)].map(|v| v == (l & 1 == 0))
    }

    fn assign(&mut self, l: Lit) {
        self.value[var_of(l)] = Some(l & 1 == 0);
        self.trail.push(l);
    }

    /// Unit propagation from the trail head; `false` on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = neg(self.trail[self.head]);
            self.head += 1;
            let mut watching = std::mem::take(&mut self.watches[falsified as usize]);
            let mut i = 0;
            let mut ok = true;
            while i < watching.len() {
                let ci = watching[i];
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                let other_val = self.value[var_of(other)].map(|v| v == (other & 1 == 0));
                if other_val == Some(true) {
                    i += 1;
                    continue;
                }
                let replacement = (2..clause.len()).find(|&k| {
                    let l = clause[k];
                    self.value[var_of(l)].map(|v| v == (l & 1 == 0)) != Some(false)
                });
                if let Some(k) = replacement {
                    clause.swap(1, k);
                    let new_watch = clause[1];
                    self.watches[new_watch as usize].push(ci);
                    watching.swap_remove(i);
                    continue;
                }
                i += 1;
                if other_val == Some(false) {
                    ok = false;
                    break;
                }
                self.assign(other);
            }
            self.watches[falsified as usize].append(&mut watching);
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let l = self.trail.pop().expect("non-empty trail");
            let v = var_of(l);
            self.value[v] = None;
            self.next_var = self.next_var.min(v);
        }
        self.head = self.head.min(len);
    }

    /// Searches for a model, counting each decision against `budget`.
    pub fn solve(&mut self, budget: u64) -> Outcome {
        if self.empty_clause {
            return Outcome::Unsat;
        }
        for l in std::mem::take(&mut self.units) {
            match self.lit_value(l) {
                Some(true) => {}
                Some(false) => return Outcome::Unsat,
                None => self.assign(l),
            }
        }
        loop {
            if !self.propagate() {
                loop {
                    let Some((len, decided, flipped)) = self.levels.pop() else {
                        return Outcome::Unsat;
                    };
                    self.undo_to(len);
                    if !flipped {
                        self.levels.push((len, neg(decided), true));
                        self.assign(neg(decided));
                        break;
                    }
                }
                continue;
            }
            while self.next_var < self.value.len() && self.value[self.next_var].is_some() {
                self.next_var += 1;
            }
            if self.next_var == self.value.len() {
                return Outcome::Sat(self.value.iter().map(|v| v.expect("total")).collect());
            }
            if self.decisions >= budget {
                return Outcome::Budget;
            }
            self.decisions += 1;
            let v = self.next_var;
            let l = super::ground::lit(v, self.preferred[v]);
            self.levels.push((self.trail.len(), l, false));
            self.assign(l);
        }
    }
}
