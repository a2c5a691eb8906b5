//! Bounded search for finite weak models of `T ∪ SA(frag)`.
//!
//! Sentences are translated into L*, grounded over `0..n` for increasing `n`
//! and handed to a DPLL solver. Bits are ordered constants, function entries,
//! relations in signature order, then `Qcf` tables in template key order.
//! One-hot bits prefer `true` (so smaller values come first) and all other
//! bits prefer `false`; the first model reached is therefore the least one in
//! that order, and [`brute_force_oracle`] enumerates the same order.

mod dpll;
mod ground;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::axioms::{reduce_to_weak, Fragment};
use crate::formula::{print_formula, translate_to_fo, QcfTemplate, Signature, SignatureError, Theory};
use crate::weak::{
    verify_finite_c_coherence, Assignment, CofinalitySpec, CoherenceReport, EvalError, PreparedFormula, WeakStructure,
};

use dpll::{Outcome, Solver};
use ground::{is_canonical, Grounder, Layout, Vocabulary};

/// Structures per domain size beyond which the oracle refuses to enumerate.
pub const ORACLE_CEILING: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_size: usize,
    /// Decisions allowed over the whole search.
    pub node_budget: u64,
    pub symmetry_breaking: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_size: 4, node_budget: 1_000_000, symmetry_breaking: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    Found { model: WeakStructure, size: usize },
    /// No model of any size `1..=max`.
    ExhaustedUpTo(usize),
    BudgetExceeded { size: usize, decisions: u64 },
}

impl SearchResult {
    pub fn model(&self) -> Option<&WeakStructure> {
        match self {
            SearchResult::Found { model, .. } => Some(model),
            _ => None,
        }
    }
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchResult::Found { size, .. } => write!(f, "FOUND size={size}"),
            SearchResult::ExhaustedUpTo(n) => write!(f, "EXHAUSTED max={n}"),
            SearchResult::BudgetExceeded { size, decisions } => write!(f, "BUDGET size={size} decisions={decisions}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinderError {
    #[error("theory and fragment signatures disagree: {0}")]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("model of size {size} fails `{sentence}` on re-evaluation")]
    Unverified { size: usize, sentence: String },
    #[error("size {size} has {count} candidate structures, over the oracle ceiling")]
    OracleTooLarge { size: usize, count: u128 },
}

/// The translated problem shared by the solver and the oracle.
struct Problem {
    vocab: Vocabulary,
    sentences: Vec<PreparedFormula>,
    printed: Vec<String>,
    translated: Vec<crate::formula::Formula>,
}

impl Problem {
    fn new(t: &Theory, frag: &Fragment) -> Result<Problem, FinderError> {
        let mut sig: Signature = t.signature.clone();
        sig.merge(&frag.signature)?;
        let reduced = reduce_to_weak(t, frag);
        let sentences: Vec<PreparedFormula> = reduced.sentences.iter().map(PreparedFormula::new).collect();
        let templates: BTreeSet<Arc<QcfTemplate>> =
            sentences.iter().flat_map(|p| p.templates().iter().cloned()).collect();
        Ok(Problem {
            vocab: Vocabulary::new(&sig, templates.into_iter().collect()),
            printed: reduced.sentences.iter().map(print_formula).collect(),
            translated: reduced.sentences.iter().map(translate_to_fo).collect(),
            sentences,
        })
    }

    /// Index of the first sentence false in `m`.
    fn first_failure(&self, m: &WeakStructure) -> Result<Option<usize>, EvalError> {
        for (i, s) in self.sentences.iter().enumerate() {
            if !s.eval_weak(m, &Assignment::new())? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// Searches sizes `1..=cfg.max_size` for a finite weak model of
/// `T ∪ SA(frag)`. A returned model has been re-checked with the weak
/// evaluator.
pub fn find_weak_model(t: &Theory, frag: &Fragment, cfg: &SearchConfig) -> Result<SearchResult, FinderError> {
    let problem = Problem::new(t, frag)?;
    let mut used = 0u64;
    for size in 1..=cfg.max_size {
        let layout = Layout::new(&problem.vocab, size);
        let mut g = Grounder::new(&problem.vocab, &layout);
        g.add_one_hot();
        if cfg.symmetry_breaking {
            g.add_symmetry_breaking();
        }
        for s in &problem.translated {
            g.assert_sentence(s);
        }
        let cnf = g.finish();
        if !cnf.satisfiable {
            continue;
        }
        let one_hot = layout.one_hot_bits();
        let preferred = (0..cnf.vars).map(|v| v < one_hot).collect();
        let mut solver = Solver::new(cnf.vars, cnf.clauses, preferred);
        let outcome = solver.solve(cfg.node_budget - used);
        used += solver.decisions;
        match outcome {
            Outcome::Unsat => {}
            Outcome::Budget => return Ok(SearchResult::BudgetExceeded { size, decisions: used }),
            Outcome::Sat(bits) => {
                let model = layout.decode(&problem.vocab, &bits[..layout.primary]);
                if let Some(i) = problem.first_failure(&model)? {
                    return Err(FinderError::Unverified { size, sentence: problem.printed[i].clone() });
                }
                return Ok(SearchResult::Found { model, size });
            }
        }
    }
    Ok(SearchResult::ExhaustedUpTo(cfg.max_size))
}

/// Exhaustive enumeration in the solver's order, evaluating every candidate
/// with the weak evaluator. Applies the same symmetry filter when
/// `cfg.symmetry_breaking` is set; `cfg.node_budget` is ignored.
pub fn brute_force_oracle(t: &Theory, frag: &Fragment, cfg: &SearchConfig) -> Result<SearchResult, FinderError> {
    let problem = Problem::new(t, frag)?;
    let v = &problem.vocab;
    for size in 1..=cfg.max_size {
        let layout = Layout::new(v, size);
        // One digit per constant and function entry (value), then one per bit.
        let mut radices: Vec<usize> = Vec::new();
        radices.extend(v.constants.iter().map(|_| size));
        for (_, arity) in &v.functions {
            radices.extend(std::iter::repeat_n(size, size.pow(*arity as u32)));
        }
        let one_hot_digits = radices.len();
        radices.extend(std::iter::repeat_n(2, layout.primary - layout.one_hot_bits()));
        let count = radices.iter().try_fold(1u128, |acc, &r| acc.checked_mul(r as u128)).unwrap_or(u128::MAX);
        if count > ORACLE_CEILING {
            return Err(FinderError::OracleTooLarge { size, count });
        }
        let mut digits = vec![0usize; radices.len()];
        loop {
            let mut bits = Vec::with_capacity(layout.primary);
            for &d in &digits[..one_hot_digits] {
                bits.extend((0..size).map(|e| e == d));
            }
            bits.extend(digits[one_hot_digits..].iter().map(|&d| d == 1));
            let m = layout.decode(v, &bits);
            if (!cfg.symmetry_breaking || is_canonical(v, &m)) && problem.first_failure(&m)?.is_none() {
                return Ok(SearchResult::Found { model: m, size });
            }
            // Odometer: the last digit moves fastest.
            let mut k = digits.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < radices[k] {
                    break;
                }
                digits[k] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(SearchResult::ExhaustedUpTo(cfg.max_size))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactnessEntry {
    /// Indices into the theory's sentences.
    pub subset: Vec<usize>,
    pub result: SearchResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompactnessReport {
    pub entries: Vec<CompactnessEntry>,
}

impl CompactnessReport {
    pub fn all_found(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.result, SearchResult::Found { .. }))
    }

    /// Subsets shown to have no model within the size bound.
    pub fn exhausted(&self) -> impl Iterator<Item = &CompactnessEntry> {
        self.entries.iter().filter(|e| matches!(e.result, SearchResult::ExhaustedUpTo(_)))
    }
}

impl fmt::Display for CompactnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let ids: Vec<String> = e.subset.iter().map(|i| (i + 1).to_string()).collect();
            writeln!(f, "{{{}}} {}", ids.join(","), e.result)?;
        }
        Ok(())
    }
}

/// Runs the finder on every non-empty subset of at most `k` sentences of
/// `t`, smaller subsets first and lexicographically within a size.
pub fn compactness_harness(
    t: &Theory,
    frag: &Fragment,
    k: usize,
    cfg: &SearchConfig,
) -> Result<CompactnessReport, FinderError> {
    let mut report = CompactnessReport::default();
    for size in 1..=k.min(t.len()) {
        for subset in combinations(t.len(), size) {
            let sub = Theory::new(
                t.name.clone(),
                t.signature.clone(),
                subset.iter().map(|&i| t.sentences[i].clone()).collect(),
            );
            let result = find_weak_model(&sub, frag, cfg)?;
            report.entries.push(CompactnessEntry { subset, result });
        }
    }
    Ok(report)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelReport {
    /// Printed sentences of `T ∪ SA(frag)` false in the structure.
    pub failing: Vec<String>,
    pub coherence: CoherenceReport,
}

impl ModelReport {
    pub fn is_model(&self) -> bool {
        self.failing.is_empty()
    }
}

/// Re-checks a structure against `T ∪ SA(frag)` under weak semantics and
/// against the cofinality semantics given by `c`.
pub fn verify_found_model(
    m: &WeakStructure,
    t: &Theory,
    frag: &Fragment,
    c: &CofinalitySpec,
) -> Result<ModelReport, EvalError> {
    let reduced = reduce_to_weak(t, frag);
    let mut failing = Vec::new();
    for s in &reduced.sentences {
        if !PreparedFormula::new(s).eval_weak(m, &Assignment::new())? {
            failing.push(print_formula(s));
        }
    }
    Ok(ModelReport { failing, coherence: verify_finite_c_coherence(m, frag, c)? })
}
