//! Grounding of first-order L* sentences over a domain `0..n` into CNF over
//! interpretation bits.

use std::collections::HashMap;
use std::sync::Arc;

use crate::formula::{Formula, QcfTemplate, Signature, Term};
use crate::weak::{tuples, WeakStructure};

/// Symbols whose interpretation is searched, in search order.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    pub constants: Vec<String>,
    pub functions: Vec<(String, usize)>,
    pub relations: Vec<(String, usize)>,
    pub templates: Vec<Arc<QcfTemplate>>,
}

impl Vocabulary {
    pub fn new(sig: &Signature, templates: Vec<Arc<QcfTemplate>>) -> Vocabulary {
        Vocabulary {
            constants: sig.constants().to_vec(),
            functions: sig.functions().to_vec(),
            relations: sig.relations().to_vec(),
            templates,
        }
    }
}

/// Bit layout for one domain size. Constants and function entries are
/// one-hot groups; relation and template tuples are single bits.
#[derive(Debug, Clone)]
pub struct Layout {
    pub size: usize,
    const_base: Vec<usize>,
    fun_base: Vec<usize>,
    rel_base: Vec<usize>,
    tpl_base: Vec<usize>,
    pub primary: usize,
}

impl Layout {
    pub fn new(v: &Vocabulary, size: usize) -> Layout {
        let mut next = 0;
        let mut alloc = |count: usize| {
            let b = next;
            next += count;
            b
        };
        let const_base = v.constants.iter().map(|_| alloc(size)).collect();
        let fun_base = v.functions.iter().map(|(_, a)| alloc(size.pow(*a as u32) * size)).collect();
        let rel_base = v.relations.iter().map(|(_, a)| alloc(size.pow(*a as u32))).collect();
        let tpl_base = v.templates.iter().map(|t| alloc(size.pow(t.arity() as u32))).collect();
        Layout { size, const_base, fun_base, rel_base, tpl_base, primary: next }
    }

    fn index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &e| acc * self.size + e)
    }

    pub fn constant(&self, c: usize, e: usize) -> usize {
        self.const_base[c] + e
    }

    pub fn function(&self, f: usize, args: &[usize], e: usize) -> usize {
        self.fun_base[f] + self.index(args) * self.size + e
    }

    pub fn relation(&self, r: usize, t: &[usize]) -> usize {
        self.rel_base[r] + self.index(t)
    }

    pub fn template(&self, q: usize, t: &[usize]) -> usize {
        self.tpl_base[q] + self.index(t)
    }

    /// Number of leading one-hot bits (constants, then function entries).
    pub fn one_hot_bits(&self) -> usize {
        self.rel_base.first().or(self.tpl_base.first()).copied().unwrap_or(self.primary)
    }

    /// Reads an assignment of the primary bits back into a structure.
    pub fn decode(&self, v: &Vocabulary, bits: &[bool]) -> WeakStructure {
        let n = self.size;
        let mut m = WeakStructure::new(n).expect("size >= 1");
        for (c, name) in v.constants.iter().enumerate() {
            let e = (0..n).find(|&e| bits[self.constant(c, e)]).expect("one-hot constant");
            m.set_constant(name, e).expect("in range");
        }
        for (f, (name, arity)) in v.functions.iter().enumerate() {
            m.set_function(name, *arity, |args| {
                (0..n).find(|&e| bits[self.function(f, args, e)]).expect("one-hot function entry")
            })
            .expect("in range");
        }
        for (r, (name, arity)) in v.relations.iter().enumerate() {
            let set: Vec<Vec<usize>> = tuples(n, *arity).filter(|t| bits[self.relation(r, t)]).collect();
            m.set_relation(name, set).expect("in range");
        }
        for (q, t) in v.templates.iter().enumerate() {
            let set: Vec<Vec<usize>> = tuples(n, t.arity()).filter(|tu| bits[self.template(q, tu)]).collect();
            m.set_qcf(t.key(), set).expect("in range");
        }
        m
    }
}

/// Literal: variable index shifted left once, low bit set for negation.
pub type Lit = u32;

pub fn lit(var: usize, positive: bool) -> Lit {
    ((var as u32) << 1) | u32::from(!positive)
}

pub fn neg(l: Lit) -> Lit {
    l ^ 1
}

pub fn var_of(l: Lit) -> usize {
    (l >> 1) as usize
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Gate {
    And(Vec<Lit>),
    Or(Vec<Lit>),
}

/// Clauses over primary bits `0..primary` followed by Tseitin and
/// symmetry-breaking auxiliaries, each a function of the primary bits.
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<Lit>>,
    /// `false` once an empty clause has been derived.
    pub satisfiable: bool,
}

/// Grounded value of a subformula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum G {
    Const(bool),
    Lit(Lit),
}

impl G {
    fn not(self) -> G {
        match self {
            G::Const(b) => G::Const(!b),
            G::Lit(l) => G::Lit(neg(l)),
        }
    }
}

pub struct Grounder<'a> {
    vocab: &'a Vocabulary,
    layout: &'a Layout,
    rel_ids: HashMap<&'a str, usize>,
    fun_ids: HashMap<&'a str, usize>,
    const_ids: HashMap<&'a str, usize>,
    tpl_ids: HashMap<&'a str, usize>,
    gates: HashMap<Gate, Lit>,
    cnf: Cnf,
}

impl<'a> Grounder<'a> {
    pub fn new(vocab: &'a Vocabulary, layout: &'a Layout) -> Grounder<'a> {
        Grounder {
            vocab,
            layout,
            rel_ids: vocab.relations.iter().enumerate().map(|(i, (n, _))| (n.as_str(), i)).collect(),
            fun_ids: vocab.functions.iter().enumerate().map(|(i, (n, _))| (n.as_str(), i)).collect(),
            const_ids: vocab.constants.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect(),
            tpl_ids: vocab.templates.iter().enumerate().map(|(i, t)| (t.key(), i)).collect(),
            gates: HashMap::new(),
            cnf: Cnf { vars: layout.primary, clauses: Vec::new(), satisfiable: true },
        }
    }

    fn fresh(&mut self) -> usize {
        self.cnf.vars += 1;
        self.cnf.vars - 1
    }

    pub fn add_clause(&mut self, mut c: Vec<Lit>) {
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] == neg(w[1])) {
            return;
        }
        if c.is_empty() {
            self.cnf.satisfiable = false;
        }
        self.cnf.clauses.push(c);
    }

    /// Conjunction (`and = true`) or disjunction of grounded parts.
    fn gate(&mut self, and: bool, parts: Vec<G>) -> G {
        let mut lits = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                G::Const(b) if b == and => {}
                G::Const(_) => return G::Const(!and),
                G::Lit(l) => lits.push(l),
            }
        }
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] == neg(w[1])) {
            return G::Const(!and);
        }
        match lits.len() {
            0 => return G::Const(and),
            1 => return G::Lit(lits[0]),
            _ => {}
        }
        let key = if and { Gate::And(lits.clone()) } else { Gate::Or(lits.clone()) };
        if let Some(&g) = self.gates.get(&key) {
            return G::Lit(g);
        }
        let g = lit(self.fresh(), true);
        // g <-> and(lits), or ~g <-> and(~lits).
        let (out, ins): (Lit, Vec<Lit>) = if and { (g, lits) } else { (neg(g), lits.into_iter().map(neg).collect()) };
        for &l in &ins {
            self.add_clause(vec![neg(out), l]);
        }
        let mut back: Vec<Lit> = ins.iter().map(|&l| neg(l)).collect();
        back.push(out);
        self.add_clause(back);
        self.gates.insert(key, g);
        G::Lit(g)
    }

    fn and(&mut self, parts: Vec<G>) -> G {
        self.gate(true, parts)
    }

    fn or(&mut self, parts: Vec<G>) -> G {
        self.gate(false, parts)
    }

    /// `t = e` as a grounded formula.
    fn term_is(&mut self, t: &Term, e: usize, env: &[(String, usize)]) -> G {
        match t {
            Term::Var(v) => {
                let val = env.iter().rev().find(|(n, _)| n == v).map(|(_, x)| *x).expect("sentences are closed");
                G::Const(val == e)
            }
            Term::Const(c) => G::Lit(lit(self.layout.constant(self.const_ids[c.as_str()], e), true)),
            Term::App(f, args) => {
                let fi = self.fun_ids[f.as_str()];
                let n = self.layout.size;
                let mut options = Vec::new();
                for tu in tuples(n, args.len()) {
                    let mut parts: Vec<G> = args.iter().zip(&tu).map(|(a, &x)| self.term_is(a, x, env)).collect();
                    parts.push(G::Lit(lit(self.layout.function(fi, &tu, e), true)));
                    options.push(self.and(parts));
                }
                self.or(options)
            }
        }
    }

    /// Atom over ground tuples; non-variable arguments are split by value.
    fn atom(&mut self, args: &[Term], env: &[(String, usize)], bit: impl Fn(&Layout, &[usize]) -> usize) -> G {
        let n = self.layout.size;
        if let Some(fixed) = args.iter().map(|a| var_value(a, env)).collect::<Option<Vec<usize>>>() {
            return G::Lit(lit(bit(self.layout, &fixed), true));
        }
        let mut options = Vec::new();
        for tu in tuples(n, args.len()) {
            let mut parts: Vec<G> = args.iter().zip(&tu).map(|(a, &x)| self.term_is(a, x, env)).collect();
            if parts.contains(&G::Const(false)) {
                continue;
            }
            parts.push(G::Lit(lit(bit(self.layout, &tu), true)));
            options.push(self.and(parts));
        }
        self.or(options)
    }

    fn formula(&mut self, f: &Formula, env: &mut Vec<(String, usize)>) -> G {
        let n = self.layout.size;
        match f {
            Formula::Atom(r, args) => {
                let ri = self.rel_ids[r.as_str()];
                self.atom(args, env, |l, t| l.relation(ri, t))
            }
            Formula::Weak(tpl, args) => {
                let qi = self.tpl_ids[tpl.key()];
                self.atom(args, env, |l, t| l.template(qi, t))
            }
            Formula::Eq(a, b) => {
                if let (Some(x), Some(y)) = (var_value(a, env), var_value(b, env)) {
                    return G::Const(x == y);
                }
                let mut options = Vec::new();
                for e in 0..n {
                    let pa = self.term_is(a, e, env);
                    let pb = self.term_is(b, e, env);
                    options.push(self.and(vec![pa, pb]));
                }
                self.or(options)
            }
            Formula::Not(a) => self.formula(a, env).not(),
            Formula::And(a, b) => {
                let ga = self.formula(a, env);
                if ga == G::Const(false) {
                    return ga;
                }
                let gb = self.formula(b, env);
                self.and(vec![ga, gb])
            }
            Formula::Or(a, b) => {
                let ga = self.formula(a, env);
                if ga == G::Const(true) {
                    return ga;
                }
                let gb = self.formula(b, env);
                self.or(vec![ga, gb])
            }
            Formula::Implies(a, b) => {
                let ga = self.formula(a, env).not();
                if ga == G::Const(true) {
                    return ga;
                }
                let gb = self.formula(b, env);
                self.or(vec![ga, gb])
            }
            Formula::Iff(a, b) => {
                let ga = self.formula(a, env);
                let gb = self.formula(b, env);
                let both = self.and(vec![ga, gb]);
                let neither = self.and(vec![ga.not(), gb.not()]);
                self.or(vec![both, neither])
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let is_all = matches!(f, Formula::Forall(..));
                let mut parts = Vec::with_capacity(n);
                for e in 0..n {
                    env.push((v.clone(), e));
                    let g = self.formula(body, env);
                    env.pop();
                    if g == G::Const(!is_all) {
                        return g;
                    }
                    parts.push(g);
                }
                self.gate(is_all, parts)
            }
            Formula::Qcf(..) => unreachable!("sentences are translated before grounding"),
        }
    }

    /// Asserts a closed first-order L* sentence.
    pub fn assert_sentence(&mut self, f: &Formula) {
        self.assert_under(f, &mut Vec::new());
    }

    // Top-level conjunctions and universals are asserted piecewise.
    fn assert_under(&mut self, f: &Formula, env: &mut Vec<(String, usize)>) {
        match f {
            Formula::And(a, b) => {
                self.assert_under(a, env);
                self.assert_under(b, env);
            }
            Formula::Forall(v, body) => {
                for e in 0..self.layout.size {
                    env.push((v.clone(), e));
                    self.assert_under(body, env);
                    env.pop();
                }
            }
            _ => match self.formula(f, env) {
                G::Const(true) => {}
                G::Const(false) => self.add_clause(Vec::new()),
                G::Lit(l) => self.add_clause(vec![l]),
            },
        }
    }

    /// Exactly one value for every constant and function entry.
    pub fn add_one_hot(&mut self) {
        let n = self.layout.size;
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for c in 0..self.vocab.constants.len() {
            groups.push((0..n).map(|e| self.layout.constant(c, e)).collect());
        }
        for (f, (_, arity)) in self.vocab.functions.iter().enumerate() {
            for tu in tuples(n, *arity) {
                groups.push((0..n).map(|e| self.layout.function(f, &tu, e)).collect());
            }
        }
        for g in groups {
            self.add_clause(g.iter().map(|&v| lit(v, true)).collect());
            for i in 0..g.len() {
                for j in i + 1..g.len() {
                    self.add_clause(vec![lit(g[i], false), lit(g[j], false)]);
                }
            }
        }
    }

    /// Pins the first constant to element 0 and asks the first relation's
    /// table to be lexicographically no larger than its image under each
    /// adjacent transposition of elements (those fixing 0 when a constant
    /// is pinned).
    pub fn add_symmetry_breaking(&mut self) {
        let n = self.layout.size;
        let pinned = !self.vocab.constants.is_empty();
        if pinned {
            self.add_clause(vec![lit(self.layout.constant(0, 0), true)]);
        }
        let Some((_, arity)) = self.vocab.relations.first() else {
            return;
        };
        let start = usize::from(pinned);
        for i in start..n.saturating_sub(1) {
            let swap = |e: usize| if e == i { i + 1 } else if e == i + 1 { i } else { e };
            let pairs: Vec<(usize, usize)> = tuples(n, *arity)
                .map(|t| {
                    let s: Vec<usize> = t.iter().map(|&e| swap(e)).collect();
                    (self.layout.relation(0, &t), self.layout.relation(0, &s))
                })
                .filter(|(a, b)| a != b)
                .collect();
            self.lex_leq(&pairs);
        }
    }

    /// `A <= B` lexicographically with `false < true`, where the vectors are
    /// given as pairs of bits `(a_k, b_k)`.
    fn lex_leq(&mut self, pairs: &[(usize, usize)]) {
        // eq: all earlier positions agree.
        let mut eq: Option<Lit> = None;
        for (k, &(a, b)) in pairs.iter().enumerate() {
            let (la, lb) = (lit(a, true), lit(b, true));
            let guard: Vec<Lit> = eq.map(neg).into_iter().collect();
            let mut c = guard.clone();
            c.extend([neg(la), lb]);
            self.add_clause(c);
            if k + 1 == pairs.len() {
                break;
            }
            let next = lit(self.fresh(), true);
            for (x, y) in [(la, lb), (neg(la), neg(lb))] {
                let mut c = guard.clone();
                c.extend([neg(x), neg(y), next]);
                self.add_clause(c);
            }
            // next implies eq and agreement, so the fresh bit is determined.
            if let Some(e) = eq {
                self.add_clause(vec![neg(next), e]);
            }
            self.add_clause(vec![neg(next), neg(la), lb]);
            self.add_clause(vec![neg(next), la, neg(lb)]);
            eq = Some(next);
        }
    }

    pub fn finish(self) -> Cnf {
        self.cnf
    }
}

fn var_value(t: &Term, env: &[(String, usize)]) -> Option<usize> {
    match t {
        Term::Var(v) => env.iter().rev().find(|(n, _)| n == v).map(|(_, x)| *x),
        _ => None,
    }
}

/// Symmetry filter evaluated directly on a structure; mirrors
/// [`Grounder::add_symmetry_breaking`].
pub fn is_canonical(v: &Vocabulary, m: &WeakStructure) -> bool {
    let n = m.size();
    let pinned = !v.constants.is_empty();
    if pinned && m.constant(&v.constants[0]) != Some(0) {
        return false;
    }
    let Some((name, arity)) = v.relations.first() else {
        return true;
    };
    let table = m.relation(name).cloned().unwrap_or_default();
    let bits: Vec<bool> = tuples(n, *arity).map(|t| table.contains(&t)).collect();
    for i in usize::from(pinned)..n.saturating_sub(1) {
        let swapped: Vec<bool> = tuples(n, *arity)
            .map(|t| {
                let s: Vec<usize> = t.iter().map(|&e| if e == i { i + 1 } else if e == i + 1 { i } else { e }).collect();
                table.contains(&s)
            })
            .collect();
        if bits > swapped {
            return false;
        }
    }
    true
}
