//! Satisfaction for finite structures.
//!
//! Formulas are compiled once into a slot-addressed tree ([`PreparedFormula`])
//! whose `Qcf` nodes already know their template; evaluation against a
//! structure then resolves symbol names to dense tables and walks the tree.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use super::cof::CofinalitySpec;
use super::structure::WeakStructure;
use crate::formula::{template_of, Formula, QcfTemplate, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is not assigned")]
    UnboundVariable(String),
    #[error("structure has no relation `{0}`")]
    MissingRelation(String),
    #[error("structure has no function `{0}`")]
    MissingFunction(String),
    #[error("structure has no constant `{0}`")]
    MissingConstant(String),
    #[error("structure has no Qcf table for template `{0}`")]
    MissingQcfTable(String),
    #[error("`{name}` used with arity {expected} but the structure stores arity {found}")]
    ArityMismatch { name: String, expected: usize, found: usize },
    #[error("element {element} assigned to `{name}` is outside the domain")]
    OutOfDomain { name: String, element: usize },
}

/// Values for the free variables of a formula.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, usize>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn with(mut self, var: impl Into<String>, e: usize) -> Assignment {
        self.0.insert(var.into(), e);
        self
    }

    pub fn set(&mut self, var: impl Into<String>, e: usize) {
        self.0.insert(var.into(), e);
    }

    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.get(var).copied()
    }
}

#[derive(Debug, Clone)]
enum TermCode {
    Slot(usize),
    Const(usize),
    App(usize, Vec<TermCode>),
}

#[derive(Debug, Clone)]
enum Node {
    Rel(usize, Vec<TermCode>),
    Weak(usize, Vec<TermCode>),
    Eq(TermCode, TermCode),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Exists(usize, Box<Node>),
    Forall(usize, Box<Node>),
    Qcf { sym: usize, x: usize, y: usize, params: Vec<usize>, body: Box<Node> },
}

/// A formula compiled for repeated evaluation.
#[derive(Debug, Clone)]
pub struct PreparedFormula {
    root: Node,
    free: Vec<String>,
    slots: usize,
    rels: Vec<(String, usize)>,
    funs: Vec<(String, usize)>,
    consts: Vec<String>,
    templates: Vec<Arc<QcfTemplate>>,
    /// Lowered template bodies with free variables `x, y, z1..zn`, used to
    /// evaluate L* atoms under the cofinality semantics.
    bodies: Vec<Option<Box<PreparedFormula>>>,
}

struct Compiler {
    env: Vec<(String, usize)>,
    free: Vec<String>,
    slots: usize,
    rels: Vec<(String, usize)>,
    funs: Vec<(String, usize)>,
    consts: Vec<String>,
    templates: Vec<Arc<QcfTemplate>>,
}

fn intern<T: PartialEq + Clone>(table: &mut Vec<T>, item: T) -> usize {
    match table.iter().position(|t| *t == item) {
        Some(i) => i,
        None => {
            table.push(item);
            table.len() - 1
        }
    }
}

impl Compiler {
    fn slot_of(&mut self, v: &str) -> usize {
        if let Some((_, s)) = self.env.iter().rev().find(|(n, _)| n == v) {
            return *s;
        }
        // Free variables occupy the first slots, in order of appearance.
        let i = self.free.iter().position(|f| f == v).expect("free variables are pre-registered");
        i
    }

    fn fresh_slot(&mut self) -> usize {
        self.slots += 1;
        self.slots - 1
    }

    fn term(&mut self, t: &Term) -> TermCode {
        match t {
            Term::Var(v) => TermCode::Slot(self.slot_of(v)),
            Term::Const(c) => TermCode::Const(intern(&mut self.consts, c.clone())),
            Term::App(f, args) => {
                let sym = intern(&mut self.funs, (f.clone(), args.len()));
                TermCode::App(sym, args.iter().map(|a| self.term(a)).collect())
            }
        }
    }

    fn binder(&mut self, v: &str, body: &Formula) -> (usize, Box<Node>) {
        let s = self.fresh_slot();
        self.env.push((v.to_string(), s));
        let b = self.node(body);
        self.env.pop();
        (s, Box::new(b))
    }

    fn node(&mut self, f: &Formula) -> Node {
        match f {
            Formula::Atom(r, args) => {
                let sym = intern(&mut self.rels, (r.clone(), args.len()));
                Node::Rel(sym, args.iter().map(|a| self.term(a)).collect())
            }
            Formula::Weak(tpl, args) => {
                let sym = intern(&mut self.templates, tpl.clone());
                Node::Weak(sym, args.iter().map(|a| self.term(a)).collect())
            }
            Formula::Eq(a, b) => Node::Eq(self.term(a), self.term(b)),
            Formula::Not(a) => Node::Not(Box::new(self.node(a))),
            Formula::And(a, b) => Node::And(Box::new(self.node(a)), Box::new(self.node(b))),
            Formula::Or(a, b) => Node::Or(Box::new(self.node(a)), Box::new(self.node(b))),
            Formula::Implies(a, b) => Node::Implies(Box::new(self.node(a)), Box::new(self.node(b))),
            Formula::Iff(a, b) => Node::Iff(Box::new(self.node(a)), Box::new(self.node(b))),
            Formula::Exists(v, body) => {
                let (s, b) = self.binder(v, body);
                Node::Exists(s, b)
            }
            Formula::Forall(v, body) => {
                let (s, b) = self.binder(v, body);
                Node::Forall(s, b)
            }
            Formula::Qcf(x, y, body) => {
                let (tpl, params) = template_of(x, y, body);
                let sym = intern(&mut self.templates, tpl);
                let params = params.iter().map(|p| self.slot_of(p)).collect();
                let xs = self.fresh_slot();
                let ys = self.fresh_slot();
                self.env.push((x.clone(), xs));
                self.env.push((y.clone(), ys));
                let b = self.node(body);
                self.env.truncate(self.env.len() - 2);
                Node::Qcf { sym, x: xs, y: ys, params, body: Box::new(b) }
            }
        }
    }
}

impl PreparedFormula {
    pub fn new(f: &Formula) -> PreparedFormula {
        Self::with_free_order(f, f.free_vars())
    }

    /// Compiles `f` with its free variables in the given slot order; `free`
    /// must contain every free variable of `f`.
    fn with_free_order(f: &Formula, free: Vec<String>) -> PreparedFormula {
        let slots = free.len();
        let mut c = Compiler {
            env: Vec::new(),
            free,
            slots,
            rels: Vec::new(),
            funs: Vec::new(),
            consts: Vec::new(),
            templates: Vec::new(),
        };
        let root = c.node(f);
        let mut bodies = Vec::with_capacity(c.templates.len());
        for tpl in &c.templates {
            let mut order = vec!["x".to_string(), "y".to_string()];
            order.extend((0..tpl.arity()).map(crate::formula::template_param));
            bodies.push(Some(Box::new(Self::with_free_order(tpl.lowered(), order))));
        }
        PreparedFormula {
            root,
            free: c.free,
            slots: c.slots,
            rels: c.rels,
            funs: c.funs,
            consts: c.consts,
            templates: c.templates,
            bodies,
        }
    }

    pub fn free_vars(&self) -> &[String] {
        &self.free
    }

    /// Templates of the `Qcf` nodes and L* atoms occurring at top level.
    pub fn templates(&self) -> &[Arc<QcfTemplate>] {
        &self.templates
    }

    fn initial_env(&self, m: &WeakStructure, a: &Assignment) -> Result<Vec<usize>, EvalError> {
        let mut env = vec![0; self.slots];
        for (i, v) in self.free.iter().enumerate() {
            let e = a.get(v).ok_or_else(|| EvalError::UnboundVariable(v.clone()))?;
            if e >= m.size() {
                return Err(EvalError::OutOfDomain { name: v.clone(), element: e });
            }
            env[i] = e;
        }
        Ok(env)
    }

    /// Weak semantics: `Qcf` nodes and L* atoms are read off the structure's
    /// Qcf tables.
    pub fn eval_weak(&self, m: &WeakStructure, a: &Assignment) -> Result<bool, EvalError> {
        let mut env = self.initial_env(m, a)?;
        let r = Resolved::new(self, m, true)?;
        Ok(Eval { p: self, r: &r, m, cof: None }.node(&self.root, &mut env))
    }

    /// Cofinality semantics on a finite structure; Qcf tables are ignored.
    pub fn eval_c(&self, m: &WeakStructure, a: &Assignment, c: &CofinalitySpec) -> Result<bool, EvalError> {
        let mut env = self.initial_env(m, a)?;
        self.eval_c_env(m, &mut env, c)
    }

    fn eval_c_env(&self, m: &WeakStructure, env: &mut [usize], c: &CofinalitySpec) -> Result<bool, EvalError> {
        let r = Resolved::new(self, m, false)?;
        let mut e = Eval { p: self, r: &r, m, cof: Some(c) };
        let v = e.node(&self.root, env);
        Ok(v)
    }
}

struct Dense {
    size: usize,
    bits: Vec<bool>,
}

impl Dense {
    fn from_set(name: &str, size: usize, arity: usize, set: &BTreeSet<Vec<usize>>) -> Result<Dense, EvalError> {
        let mut bits = vec![false; size.pow(arity as u32)];
        for t in set {
            if t.len() != arity {
                return Err(EvalError::ArityMismatch { name: name.into(), expected: arity, found: t.len() });
            }
            bits[index(size, t)] = true;
        }
        Ok(Dense { size, bits })
    }

    fn get(&self, t: &[usize]) -> bool {
        self.bits[index(self.size, t)]
    }
}

fn index(size: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &e| acc * size + e)
}

struct Resolved {
    rels: Vec<Dense>,
    funs: Vec<Vec<usize>>,
    consts: Vec<usize>,
    qcf: Vec<Option<Dense>>,
}

impl Resolved {
    fn new(p: &PreparedFormula, m: &WeakStructure, weak: bool) -> Result<Resolved, EvalError> {
        let n = m.size();
        let rels = p
            .rels
            .iter()
            .map(|(name, arity)| {
                let set = m.relation(name).ok_or_else(|| EvalError::MissingRelation(name.clone()))?;
                Dense::from_set(name, n, *arity, set)
            })
            .collect::<Result<_, _>>()?;
        let funs = p
            .funs
            .iter()
            .map(|(name, arity)| {
                let rows = m.function_rows(name).ok_or_else(|| EvalError::MissingFunction(name.clone()))?;
                let mut table = vec![0; n.pow(*arity as u32)];
                let mut seen = 0;
                for row in rows {
                    if row.len() != arity + 1 {
                        return Err(EvalError::ArityMismatch {
                            name: name.clone(),
                            expected: *arity,
                            found: row.len().saturating_sub(1),
                        });
                    }
                    table[index(n, &row[..*arity])] = row[*arity];
                    seen += 1;
                }
                if seen != table.len() {
                    return Err(EvalError::MissingFunction(name.clone()));
                }
                Ok(table)
            })
            .collect::<Result<_, _>>()?;
        let consts = p
            .consts
            .iter()
            .map(|c| m.constant(c).ok_or_else(|| EvalError::MissingConstant(c.clone())))
            .collect::<Result<_, _>>()?;
        let qcf = p
            .templates
            .iter()
            .map(|t| match m.qcf_table(t.key()) {
                Some(set) => Dense::from_set(t.key(), n, t.arity(), set).map(Some),
                None if weak => Err(EvalError::MissingQcfTable(t.key().to_string())),
                None => Ok(None),
            })
            .collect::<Result<_, _>>()?;
        Ok(Resolved { rels, funs, consts, qcf })
    }
}

struct Eval<'a> {
    p: &'a PreparedFormula,
    r: &'a Resolved,
    m: &'a WeakStructure,
    cof: Option<&'a CofinalitySpec>,
}

impl Eval<'_> {
    fn term(&self, t: &TermCode, env: &[usize]) -> usize {
        match t {
            TermCode::Slot(s) => env[*s],
            TermCode::Const(c) => self.r.consts[*c],
            TermCode::App(f, args) => {
                let n = self.m.size();
                let i = args.iter().fold(0, |acc, a| acc * n + self.term(a, env));
                self.r.funs[*f][i]
            }
        }
    }

    fn args(&self, ts: &[TermCode], env: &[usize]) -> Vec<usize> {
        ts.iter().map(|t| self.term(t, env)).collect()
    }

    fn node(&mut self, n: &Node, env: &mut [usize]) -> bool {
        let size = self.m.size();
        match n {
            Node::Rel(sym, args) => {
                let t = self.args(args, env);
                self.r.rels[*sym].get(&t)
            }
            Node::Weak(sym, args) => {
                let t = self.args(args, env);
                match self.cof {
                    None => self.r.qcf[*sym].as_ref().expect("resolved in weak mode").get(&t),
                    Some(c) => {
                        let body = self.p.bodies[*sym].as_ref().expect("template body compiled");
                        c_semantics(size, c, |a, b| {
                            let mut inner = vec![0; body.slots];
                            inner[0] = a;
                            inner[1] = b;
                            inner[2..2 + t.len()].copy_from_slice(&t);
                            // Symbols were resolved against this structure already once; a
                            // failure here means the template uses a symbol M lacks.
                            body.eval_c_env(self.m, &mut inner, c).unwrap_or(false)
                        })
                    }
                }
            }
            Node::Eq(a, b) => self.term(a, env) == self.term(b, env),
            Node::Not(a) => !self.node(a, env),
            Node::And(a, b) => self.node(a, env) && self.node(b, env),
            Node::Or(a, b) => self.node(a, env) || self.node(b, env),
            Node::Implies(a, b) => !self.node(a, env) || self.node(b, env),
            Node::Iff(a, b) => self.node(a, env) == self.node(b, env),
            Node::Exists(s, body) => (0..size).any(|e| {
                env[*s] = e;
                self.node(body, env)
            }),
            Node::Forall(s, body) => (0..size).all(|e| {
                env[*s] = e;
                self.node(body, env)
            }),
            Node::Qcf { sym, x, y, params, body } => match self.cof {
                None => {
                    let t: Vec<usize> = params.iter().map(|s| env[*s]).collect();
                    self.r.qcf[*sym].as_ref().expect("resolved in weak mode").get(&t)
                }
                Some(c) => {
                    let mut rel = vec![false; size * size];
                    for a in 0..size {
                        for b in 0..size {
                            env[*x] = a;
                            env[*y] = b;
                            rel[a * size + b] = self.node(body, env);
                        }
                    }
                    c_semantics(size, c, |a, b| rel[a * size + b])
                }
            },
        }
    }
}

/// `cf R ∈ C` for a binary relation on `0..size`: R must be a strict linear
/// order of the whole universe without a last element whose cofinality is
/// in C.
fn c_semantics(size: usize, _c: &CofinalitySpec, mut rel: impl FnMut(usize, usize) -> bool) -> bool {
    let mut m = vec![false; size * size];
    for a in 0..size {
        for b in 0..size {
            m[a * size + b] = rel(a, b);
        }
    }
    let r = |a: usize, b: usize| m[a * size + b];
    if !is_strict_linear_order(size, r) {
        return false;
    }
    // A non-empty finite linear order always has a last element, so the
    // cofinality clause is never reached on finite structures.
    let has_last = (0..size).any(|a| (0..size).all(|b| !r(a, b)));
    debug_assert!(has_last || size == 0);
    false
}

/// Irreflexive, transitive and total on distinct elements.
pub fn is_strict_linear_order(size: usize, r: impl Fn(usize, usize) -> bool) -> bool {
    for a in 0..size {
        if r(a, a) {
            return false;
        }
        for b in 0..size {
            if a != b && !r(a, b) && !r(b, a) {
                return false;
            }
            for c in 0..size {
                if r(a, b) && r(b, c) && !r(a, c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Weak satisfaction `M* |= f[a]`.
pub fn eval_weak(m: &WeakStructure, f: &Formula, a: &Assignment) -> Result<bool, EvalError> {
    PreparedFormula::new(f).eval_weak(m, a)
}

/// C-satisfaction on a finite structure. Every `Qcf` node is false there,
/// since finite linear orders have a last element.
pub fn eval_c_finite(m: &WeakStructure, f: &Formula, a: &Assignment, c: &CofinalitySpec) -> Result<bool, EvalError> {
    PreparedFormula::new(f).eval_c(m, a, c)
}

/// Whether `Qcf x y. tpl(x, y, params)` holds in `m` under C-semantics.
pub fn c_semantics_of(m: &WeakStructure, tpl: &QcfTemplate, params: &[usize], c: &CofinalitySpec) -> Result<bool, EvalError> {
    let body = tpl.lowered();
    let mut order = vec!["x".to_string(), "y".to_string()];
    order.extend((0..tpl.arity()).map(crate::formula::template_param));
    let p = PreparedFormula::with_free_order(body, order);
    let size = m.size();
    let mut failure = None;
    let verdict = c_semantics(size, c, |a, b| {
        let mut env = vec![0; p.slots];
        env[0] = a;
        env[1] = b;
        env[2..2 + params.len()].copy_from_slice(params);
        match p.eval_c_env(m, &mut env, c) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                false
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(verdict),
    }
}
