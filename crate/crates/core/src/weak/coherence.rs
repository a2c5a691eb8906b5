//! Finite instance of the coherence between a weak structure and the
//! cofinality semantics over a fragment.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::cof::CofinalitySpec;
use super::eval::{c_semantics_of, EvalError, PreparedFormula};
use super::structure::{tuples, WeakStructure};
use super::Assignment;
use crate::axioms::{gen_sa, Fragment};
use crate::formula::{print_formula, qcf_templates, QcfTemplate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceViolation {
    pub key: String,
    pub tuple: Vec<usize>,
    pub table: bool,
    pub c_semantics: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoherenceReport {
    pub violations: Vec<CoherenceViolation>,
    /// Printed SA sentences that fail in the structure.
    pub sa_failures: Vec<String>,
    pub checked_entries: usize,
}

impl CoherenceReport {
    pub fn is_coherent(&self) -> bool {
        self.violations.is_empty() && self.sa_failures.is_empty()
    }
}

/// For every template of the fragment (and every template nested in its
/// SA instances) and every parameter tuple, compares the table entry with
/// the cofinality semantics. Also re-evaluates SA(frag) weakly. A template
/// without a table counts as the empty table.
pub fn verify_finite_c_coherence(
    m: &WeakStructure,
    frag: &Fragment,
    c: &CofinalitySpec,
) -> Result<CoherenceReport, EvalError> {
    let sa = gen_sa(frag);
    let mut templates: BTreeSet<Arc<QcfTemplate>> = frag.orders().iter().cloned().collect();
    for s in sa.sentences() {
        templates.extend(qcf_templates(s));
    }
    let mut completed = m.clone();
    for t in &templates {
        if completed.qcf_table(t.key()).is_none() {
            completed.set_qcf(t.key(), []).expect("empty table is in range");
        }
    }
    let mut report = CoherenceReport::default();
    for t in &templates {
        let table = completed.qcf_table(t.key()).expect("completed above");
        for tuple in tuples(m.size(), t.arity()) {
            let entry = table.contains(&tuple);
            let cs = c_semantics_of(&completed, t, &tuple, c)?;
            report.checked_entries += 1;
            if entry != cs {
                report.violations.push(CoherenceViolation {
                    key: t.key().to_string(),
                    tuple,
                    table: entry,
                    c_semantics: cs,
                });
            }
        }
    }
    for s in sa.sentences() {
        if !PreparedFormula::new(s).eval_weak(&completed, &Assignment::new())? {
            report.sa_failures.push(print_formula(s));
        }
    }
    Ok(report)
}
