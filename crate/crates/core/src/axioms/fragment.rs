use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::formula::{
    parse_formula, parse_signature_header, template_of, Formula, ParseError, QcfTemplate, Signature, Term,
    TheoryError,
};

/// Name of the first order variable in fragment files.
pub const ORDER_X: &str = "x";
/// Name of the second order variable in fragment files.
pub const ORDER_Y: &str = "y";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FragmentError {
    #[error(transparent)]
    Header(#[from] TheoryError),
    #[error("line {line}: expected `order: FORMULA` or `conn: FORMULA`, found `{text}`")]
    Line { line: usize, text: String },
    #[error("line {line}: {error}")]
    Parse { line: usize, error: ParseError },
}

/// The finite set of templates over which the axiom schemas are
/// instantiated. Both lists are sorted by key and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub signature: Signature,
    orders: Vec<Arc<QcfTemplate>>,
    connections: Vec<Arc<QcfTemplate>>,
}

fn sorted(ts: impl IntoIterator<Item = Arc<QcfTemplate>>) -> Vec<Arc<QcfTemplate>> {
    let by_key: BTreeMap<String, Arc<QcfTemplate>> = ts.into_iter().map(|t| (t.key().to_string(), t)).collect();
    by_key.into_values().collect()
}

/// Template of a binary formula in `x`, `y`; every other free variable
/// becomes a parameter.
pub fn binary_template(f: &Formula) -> Arc<QcfTemplate> {
    template_of(ORDER_X, ORDER_Y, f).0
}

impl Fragment {
    pub fn empty(signature: Signature) -> Fragment {
        Fragment { signature, orders: Vec::new(), connections: Vec::new() }
    }

    pub fn new(
        signature: Signature,
        orders: impl IntoIterator<Item = Arc<QcfTemplate>>,
        connections: impl IntoIterator<Item = Arc<QcfTemplate>>,
    ) -> Fragment {
        Fragment { signature, orders: sorted(orders), connections: sorted(connections) }
    }

    /// Builds a fragment from formulas in the order variables `x`, `y`.
    pub fn from_formulas(signature: Signature, orders: &[Formula], connections: &[Formula]) -> Fragment {
        Fragment::new(
            signature,
            orders.iter().map(binary_template),
            connections.iter().map(binary_template),
        )
    }

    /// The fragment with the single order candidate `x < y`.
    pub fn less_than(signature: Signature) -> Fragment {
        let f = Formula::less(Term::var(ORDER_X), Term::var(ORDER_Y));
        Fragment::from_formulas(signature, &[f], &[])
    }

    pub fn orders(&self) -> &[Arc<QcfTemplate>] {
        &self.orders
    }

    pub fn connections(&self) -> &[Arc<QcfTemplate>] {
        &self.connections
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty() && self.connections.is_empty()
    }

    /// Whether every candidate of `self` is a candidate of `other`.
    pub fn is_subfragment_of(&self, other: &Fragment) -> bool {
        let has = |list: &[Arc<QcfTemplate>], t: &Arc<QcfTemplate>| list.iter().any(|u| u.key() == t.key());
        self.orders.iter().all(|t| has(&other.orders, t))
            && self.connections.iter().all(|t| has(&other.connections, t))
    }

    /// Parses a fragment file: a signature header, then `order:` and
    /// `conn:` lines.
    pub fn parse(text: &str) -> Result<Fragment, FragmentError> {
        let (signature, lines) = parse_signature_header(text)?;
        let mut orders = Vec::new();
        let mut conns = Vec::new();
        for (line, l) in lines {
            let (target, rest) = if let Some(rest) = l.strip_prefix("order:") {
                (&mut orders, rest)
            } else if let Some(rest) = l.strip_prefix("conn:") {
                (&mut conns, rest)
            } else {
                return Err(FragmentError::Line { line, text: l });
            };
            let f = parse_formula(rest, &signature).map_err(|error| FragmentError::Parse { line, error })?;
            target.push(f);
        }
        Ok(Fragment::from_formulas(signature, &orders, &conns))
    }

    pub fn to_text(&self) -> String {
        let mut out = self.signature.header();
        for t in &self.orders {
            out.push_str(&format!("order: {}\n", t.source()));
        }
        for t in &self.connections {
            out.push_str(&format!("conn: {}\n", t.source()));
        }
        out
    }

    /// All binary formulas in `x`, `y` built from atoms over `x`, `y` and the
    /// constants by negation and conjunction, up to the given depth. Used to
    /// grow fragments systematically.
    pub fn enumerate_binary(signature: &Signature, depth: usize) -> Vec<Arc<QcfTemplate>> {
        let mut terms: Vec<Term> = vec![Term::var(ORDER_X), Term::var(ORDER_Y)];
        terms.extend(signature.constants().iter().map(Term::constant));
        let mut level: Vec<Formula> = Vec::new();
        for (r, arity) in signature.relations() {
            for idx in crate::weak::tuples(terms.len(), *arity) {
                level.push(Formula::atom(r.clone(), idx.iter().map(|&i| terms[i].clone()).collect()));
            }
        }
        for a in &terms {
            for b in &terms {
                level.push(Formula::eq(a.clone(), b.clone()));
            }
        }
        let mut all = level.clone();
        for _ in 0..depth {
            let mut next = Vec::new();
            for a in &all {
                next.push(Formula::not(a.clone()));
                for b in &all {
                    next.push(Formula::and(a.clone(), b.clone()));
                }
            }
            all.extend(next);
            all = sorted(all.iter().map(binary_template))
                .into_iter()
                .map(|t| t.source().clone())
                .collect();
        }
        sorted(all.iter().map(binary_template))
    }
}
