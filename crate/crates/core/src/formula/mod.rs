//! Syntax of first-order logic extended by the two-place cofinality
//! quantifier `Qcf x y. phi`.

mod alpha;
mod macros;
mod parse;
mod print;
mod signature;
mod subst;
mod template;
mod theory;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use alpha::alpha_eq;
pub use macros::{expand_cofinal_macro, expand_cofinal_macro_within, CofinalKind, LeqTemplate};
pub use parse::{parse_formula, ParseError, ParseErrorKind};
pub use print::print_formula;
pub use signature::{Signature, SignatureError};
pub use subst::{fresh_name, substitute, substitute_many};
pub use template::{qcf_templates, template_of, template_param, translate_to_fo, QcfTemplate, TEMPLATE_X, TEMPLATE_Y};
pub use theory::{parse_signature_header, Theory, TheoryError};

/// Name of the binary relation that is written infix.
pub const LESS: &str = "<";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn has_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.has_var(name)),
        }
    }

    pub(crate) fn collect_consts(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(_) => {}
            Term::Const(c) => {
                out.insert(c.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_consts(out)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A formula of L(Qcf). `Weak` atoms belong to the expanded language L*:
/// they stand for the relation symbol attached to a `Qcf` template and only
/// arise from [`translate_to_fo`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    Qcf(String, String, Box<Formula>),
    Weak(Arc<QcfTemplate>, Vec<Term>),
}

impl Formula {
    pub fn atom(rel: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(rel.into(), args)
    }

    pub fn less(a: Term, b: Term) -> Formula {
        Formula::Atom(LESS.to_string(), vec![a, b])
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(body))
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(body))
    }

    /// Panics if `x == y`; use the parser for untrusted input.
    pub fn qcf(x: impl Into<String>, y: impl Into<String>, body: Formula) -> Formula {
        let (x, y) = (x.into(), y.into());
        assert_ne!(x, y, "Qcf binds two distinct variables");
        Formula::Qcf(x, y, Box::new(body))
    }

    /// Conjunction of a non-empty list, associated to the left.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn forall_many(vars: &[String], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v.clone(), acc))
    }

    /// Free variables in order of first occurrence (left to right).
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        let push_term = |t: &Term, bound: &Vec<String>, out: &mut Vec<String>| {
            let mut vs = Vec::new();
            t.collect_vars(&mut vs);
            for v in vs {
                if !bound.contains(&v) && !out.contains(&v) {
                    out.push(v);
                }
            }
        };
        match self {
            Formula::Atom(_, args) | Formula::Weak(_, args) => {
                args.iter().for_each(|t| push_term(t, bound, out))
            }
            Formula::Eq(a, b) => {
                push_term(a, bound, out);
                push_term(b, bound, out);
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Formula::Qcf(x, y, body) => {
                bound.push(x.clone());
                bound.push(y.clone());
                body.collect_free(bound, out);
                bound.pop();
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, name: &str) -> bool {
        self.free_vars().iter().any(|v| v == name)
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_var_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(_, args) | Formula::Weak(_, args) => {
                for t in args {
                    let mut vs = Vec::new();
                    t.collect_vars(&mut vs);
                    out.extend(vs);
                }
            }
            Formula::Eq(a, b) => {
                let mut vs = Vec::new();
                a.collect_vars(&mut vs);
                b.collect_vars(&mut vs);
                out.extend(vs);
            }
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(v.clone());
            }
            Formula::Qcf(x, y, _) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            _ => {}
        });
        out
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(_, args) | Formula::Weak(_, args) => {
                args.iter().for_each(|t| t.collect_consts(&mut out))
            }
            Formula::Eq(a, b) => {
                a.collect_consts(&mut out);
                b.collect_consts(&mut out);
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Weak(..) => {}
            Formula::Not(a)
            | Formula::Exists(_, a)
            | Formula::Forall(_, a)
            | Formula::Qcf(_, _, a) => a.visit(f),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    pub fn contains_qcf(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::Qcf(..)));
        found
    }

    /// Number of nested constructors above the atoms; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Weak(..) => 0,
            Formula::Not(a)
            | Formula::Exists(_, a)
            | Formula::Forall(_, a)
            | Formula::Qcf(_, _, a) => 1 + a.depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}
