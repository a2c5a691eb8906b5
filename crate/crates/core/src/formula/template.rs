//! Canonical keys for `Qcf` bodies and the translation into the expanded
//! language L*, where each template `phi(x, y, z1..zn)` owns an n-ary
//! relation symbol.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{print_formula, substitute_many, Formula, Term};

/// Canonical name of the first order variable of a template.
pub const TEMPLATE_X: &str = "x";
/// Canonical name of the second order variable of a template.
pub const TEMPLATE_Y: &str = "y";

pub fn template_param(i: usize) -> String {
    format!("z{}", i + 1)
}

fn bound_name(depth: usize) -> String {
    format!("v{depth}")
}

/// The body of a `Qcf` subformula with the bound pair renamed to `x`, `y`,
/// parameters renamed `z1..zn` in order of first occurrence, and inner
/// binders named by depth (`v1`, `v2`, ...). Alpha-equivalent bodies give
/// identical templates; identity is the printed key.
#[derive(Debug, Clone)]
pub struct QcfTemplate {
    key: String,
    lowered: Formula,
    source: Formula,
    arity: usize,
}

impl QcfTemplate {
    /// Printed canonical form of the lowered body; used as the relation key
    /// in structure files.
    pub fn key(&self) -> &str {
        &self.key
    }

    /// Number of parameters `z1..zn`.
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The canonical body with inner `Qcf` nodes replaced by L* atoms.
    pub fn lowered(&self) -> &Formula {
        &self.lowered
    }

    /// The canonical body with inner `Qcf` nodes kept.
    pub fn source(&self) -> &Formula {
        &self.source
    }

    fn substitution(x: &Term, y: &Term, params: &[Term], arity: usize) -> Vec<(String, Term)> {
        assert_eq!(params.len(), arity, "template parameter count");
        let mut map = vec![(TEMPLATE_X.to_string(), x.clone()), (TEMPLATE_Y.to_string(), y.clone())];
        map.extend(params.iter().enumerate().map(|(i, t)| (template_param(i), t.clone())));
        map
    }

    /// `phi(x, y, params)` in L(Qcf) syntax.
    pub fn instantiate(&self, x: &Term, y: &Term, params: &[Term]) -> Formula {
        substitute_many(&self.source, &Self::substitution(x, y, params, self.arity))
    }

    /// `phi(x, y, params)` over L*.
    pub fn instantiate_lowered(&self, x: &Term, y: &Term, params: &[Term]) -> Formula {
        substitute_many(&self.lowered, &Self::substitution(x, y, params, self.arity))
    }

    /// `Qcf x y. phi(x, y, params)` with the given names for the bound pair.
    pub fn qcf(&self, x: &str, y: &str, params: &[Term]) -> Formula {
        let body = self.instantiate(&Term::var(x), &Term::var(y), params);
        Formula::qcf(x, y, body)
    }
}

impl PartialEq for QcfTemplate {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for QcfTemplate {}

impl Hash for QcfTemplate {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl PartialOrd for QcfTemplate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QcfTemplate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Display for QcfTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

struct Canon {
    free: BTreeMap<String, String>,
    env: Vec<(String, String)>,
}

impl Canon {
    fn term(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => {
                let renamed = self
                    .env
                    .iter()
                    .rev()
                    .find(|(src, _)| src == v)
                    .map(|(_, n)| n)
                    .or_else(|| self.free.get(v))
                    .cloned()
                    .unwrap_or_else(|| v.clone());
                Term::Var(renamed)
            }
            Term::Const(_) => t.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.term(a)).collect()),
        }
    }

    fn formula(&mut self, f: &Formula) -> Formula {
        let terms = |c: &Canon, ts: &[Term]| ts.iter().map(|t| c.term(t)).collect::<Vec<_>>();
        match f {
            Formula::Atom(r, args) => Formula::Atom(r.clone(), terms(self, args)),
            Formula::Weak(tpl, args) => Formula::Weak(tpl.clone(), terms(self, args)),
            Formula::Eq(a, b) => Formula::Eq(self.term(a), self.term(b)),
            Formula::Not(a) => Formula::not(self.formula(a)),
            Formula::And(a, b) => Formula::and(self.formula(a), self.formula(b)),
            Formula::Or(a, b) => Formula::or(self.formula(a), self.formula(b)),
            Formula::Implies(a, b) => Formula::implies(self.formula(a), self.formula(b)),
            Formula::Iff(a, b) => Formula::iff(self.formula(a), self.formula(b)),
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let name = bound_name(self.env.len() + 1);
                self.env.push((v.clone(), name.clone()));
                let body = self.formula(body);
                self.env.pop();
                if matches!(f, Formula::Exists(..)) {
                    Formula::exists(name, body)
                } else {
                    Formula::forall(name, body)
                }
            }
            Formula::Qcf(x, y, body) => {
                let xn = bound_name(self.env.len() + 1);
                let yn = bound_name(self.env.len() + 2);
                self.env.push((x.clone(), xn.clone()));
                self.env.push((y.clone(), yn.clone()));
                let body = self.formula(body);
                self.env.truncate(self.env.len() - 2);
                Formula::Qcf(xn, yn, Box::new(body))
            }
        }
    }
}

/// Computes the template of `Qcf x y. body` together with the actual
/// parameter variables, in the template's parameter order.
pub fn template_of(x: &str, y: &str, body: &Formula) -> (Arc<QcfTemplate>, Vec<String>) {
    let lowered = translate_to_fo(body);
    let params: Vec<String> = lowered
        .free_vars()
        .into_iter()
        .filter(|v| v != x && v != y)
        .collect();
    let mut free = BTreeMap::new();
    free.insert(x.to_string(), TEMPLATE_X.to_string());
    free.insert(y.to_string(), TEMPLATE_Y.to_string());
    for (i, p) in params.iter().enumerate() {
        free.insert(p.clone(), template_param(i));
    }
    let lowered = Canon { free: free.clone(), env: Vec::new() }.formula(&lowered);
    let source = Canon { free, env: Vec::new() }.formula(body);
    let key = print_formula(&lowered);
    let tpl = QcfTemplate { key, lowered, source, arity: params.len() };
    (Arc::new(tpl), params)
}

/// Replaces every `Qcf` node, innermost first, by the L* atom of its
/// template applied to the parameter variables. The result has no `Qcf`.
pub fn translate_to_fo(f: &Formula) -> Formula {
    match f {
        Formula::Atom(..) | Formula::Eq(..) | Formula::Weak(..) => f.clone(),
        Formula::Not(a) => Formula::not(translate_to_fo(a)),
        Formula::And(a, b) => Formula::and(translate_to_fo(a), translate_to_fo(b)),
        Formula::Or(a, b) => Formula::or(translate_to_fo(a), translate_to_fo(b)),
        Formula::Implies(a, b) => Formula::implies(translate_to_fo(a), translate_to_fo(b)),
        Formula::Iff(a, b) => Formula::iff(translate_to_fo(a), translate_to_fo(b)),
        Formula::Exists(v, a) => Formula::exists(v.clone(), translate_to_fo(a)),
        Formula::Forall(v, a) => Formula::forall(v.clone(), translate_to_fo(a)),
        Formula::Qcf(x, y, body) => {
            let (tpl, params) = template_of(x, y, body);
            Formula::Weak(tpl, params.into_iter().map(Term::Var).collect())
        }
    }
}

fn collect_weak(f: &Formula, out: &mut BTreeSet<Arc<QcfTemplate>>) {
    f.visit(&mut |g| {
        if let Formula::Weak(tpl, _) = g {
            if out.insert(tpl.clone()) {
                collect_weak(&tpl.lowered, out);
            }
        }
    });
}

/// Templates of all `Qcf` subformulas, including those nested inside other
/// `Qcf` bodies, ordered by key.
pub fn qcf_templates(f: &Formula) -> BTreeSet<Arc<QcfTemplate>> {
    let mut out = BTreeSet::new();
    collect_weak(&translate_to_fo(f), &mut out);
    out
}
