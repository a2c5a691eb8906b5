use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::fragment::{Fragment, ORDER_X, ORDER_Y};
use crate::formula::{
    expand_cofinal_macro, fresh_name, CofinalKind, Formula, LeqTemplate, QcfTemplate, Signature, SignatureError,
    Term, Theory,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomKind {
    SaOrder,
    SaNoConnection,
    Sk,
    Adapter,
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomKind::SaOrder => "SA-order",
            AxiomKind::SaNoConnection => "SA-no-connection",
            AxiomKind::Sk => "SK",
            AxiomKind::Adapter => "adapter",
        })
    }
}

/// Which schema produced a sentence and from which templates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AxiomTag {
    pub kind: AxiomKind,
    /// `(role, template key)` pairs, e.g. `("phi", "x < y")`.
    pub roles: Vec<(String, String)>,
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for (role, key) in &self.roles {
            write!(f, " {role}=[{key}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Axiom {
    pub tag: AxiomTag,
    pub sentence: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomSet {
    pub axioms: Vec<Axiom>,
}

impl AxiomSet {
    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn sentences(&self) -> impl Iterator<Item = &Formula> {
        self.axioms.iter().map(|a| &a.sentence)
    }

    /// Adds the axiom unless the same sentence is already present.
    fn push(&mut self, tag: AxiomTag, sentence: Formula) {
        let axiom = Axiom { tag, sentence };
        if !self.axioms.contains(&axiom) {
            self.axioms.push(axiom);
        }
    }

    pub fn extend(&mut self, other: AxiomSet) {
        for a in other.axioms {
            self.push(a.tag, a.sentence);
        }
    }

    /// Theory-file text with a `# tag:` line before every sentence.
    pub fn to_text(&self, signature: &Signature) -> String {
        let mut out = signature.header();
        for a in &self.axioms {
            out.push_str(&format!("# tag: {}\n{}\n", a.tag, a.sentence));
        }
        out
    }

    pub fn into_theory(self, name: impl Into<String>, signature: Signature) -> Theory {
        Theory::new(name, signature, self.axioms.into_iter().map(|a| a.sentence).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("symbol `{0}` is already declared")]
    NameClash(String),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

fn var(name: &str) -> Term {
    Term::var(name)
}

/// Parameter variables `prefix1..prefixn`.
pub fn param_vars(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn terms(vars: &[String]) -> Vec<Term> {
    vars.iter().map(Term::var).collect()
}

fn vars_of(ts: &[Term]) -> BTreeSet<String> {
    let mut out = Vec::new();
    for t in ts {
        t.collect_vars(&mut out);
    }
    out.into_iter().collect()
}

/// A strict binary relation `rel(a, b)` together with an optional domain it
/// is meant to order.
struct OrderShape<'a> {
    rel: &'a dyn Fn(&Term, &Term) -> Formula,
    domain: Option<&'a dyn Fn(&Term) -> Formula>,
    avoid: BTreeSet<String>,
}

impl OrderShape<'_> {
    fn guard(&self, ts: &[&Term], body: Formula) -> Formula {
        match self.domain {
            None => body,
            Some(d) => {
                let g = Formula::and_all(ts.iter().map(|t| d(t))).expect("nonempty guard");
                Formula::implies(g, body)
            }
        }
    }

    /// Irreflexive, transitive, total on distinct elements, no last element.
    fn axioms(&self) -> Formula {
        let mut avoid = self.avoid.clone();
        let mut pick = |base: &str| {
            let n = fresh_name(base, &avoid);
            avoid.insert(n.clone());
            n
        };
        let (a, b, c) = (pick(ORDER_X), pick(ORDER_Y), pick("u"));
        let (ta, tb, tc) = (var(&a), var(&b), var(&c));
        let r = self.rel;
        let irrefl = Formula::forall(&a, self.guard(&[&ta], Formula::not(r(&ta, &ta))));
        let trans = Formula::forall_many(
            &[a.clone(), b.clone(), c.clone()],
            self.guard(
                &[&ta, &tb, &tc],
                Formula::implies(Formula::and(r(&ta, &tb), r(&tb, &tc)), r(&ta, &tc)),
            ),
        );
        let total = Formula::forall_many(
            &[a.clone(), b.clone()],
            self.guard(
                &[&ta, &tb],
                Formula::implies(
                    Formula::not(Formula::eq(ta.clone(), tb.clone())),
                    Formula::or(r(&ta, &tb), r(&tb, &ta)),
                ),
            ),
        );
        let step = match self.domain {
            None => r(&ta, &tb),
            Some(d) => Formula::and(d(&tb), r(&ta, &tb)),
        };
        let no_last = Formula::forall(&a, self.guard(&[&ta], Formula::exists(&b, step)));
        Formula::and_all([irrefl, trans, total, no_last]).expect("four conjuncts")
    }
}

/// `phi(x, y, params)` is a strict linear order without last element; open
/// in the variables of `params`.
pub fn lin_order_no_last(phi: &QcfTemplate, params: &[Term]) -> Formula {
    let rel = |a: &Term, b: &Term| phi.instantiate(a, b, params);
    OrderShape { rel: &rel, domain: None, avoid: vars_of(params) }.axioms()
}

/// Same as [`lin_order_no_last`] for a relation symbol `name(x, y, params)`.
pub fn lin_order_no_last_symbol(name: &str, params: &[Term]) -> Formula {
    let rel = |a: &Term, b: &Term| symbol_atom(name, a, b, params);
    OrderShape { rel: &rel, domain: None, avoid: vars_of(params) }.axioms()
}

/// The order axioms for `phi` relativized to its domain `{a | exists b. phi(a, b)}`.
pub fn lin_order_no_last_on_domain(phi: &QcfTemplate, params: &[Term]) -> Formula {
    let rel = |a: &Term, b: &Term| phi.instantiate(a, b, params);
    let dom = |a: &Term| domain_of(phi, a, params);
    OrderShape { rel: &rel, domain: Some(&dom), avoid: vars_of(params) }.axioms()
}

fn domain_of(phi: &QcfTemplate, a: &Term, params: &[Term]) -> Formula {
    let mut avoid = vars_of(params);
    avoid.extend(vars_of(std::slice::from_ref(a)));
    let b = fresh_name(ORDER_Y, &avoid);
    Formula::exists(&b, phi.instantiate(a, &var(&b), params))
}

fn symbol_atom(name: &str, a: &Term, b: &Term, params: &[Term]) -> Formula {
    let mut args = vec![a.clone(), b.clone()];
    args.extend(params.iter().cloned());
    Formula::atom(name, args)
}

/// `x <=_phi y` as a macro template over fresh variables `u`, `v`.
fn leq_of(rel: impl Fn(&Term, &Term) -> Formula, avoid: &BTreeSet<String>) -> LeqTemplate {
    let u = fresh_name("u", avoid);
    let v = fresh_name("v", avoid);
    LeqTemplate::reflexive_closure(&u, &v, rel(&var(&u), &var(&v)))
}

/// Properties (1) and (2) of a connection `g(x, y)` between the orders
/// `leq_x` (on `x`) and `leq_y` (on `y`).
pub fn connection_sentence_with(g: &dyn Fn(&Term, &Term) -> Formula, leq_x: &LeqTemplate, leq_y: &LeqTemplate) -> Formula {
    let (x, y) = (var(ORDER_X), var(ORDER_Y));
    let gxy = g(&x, &y);
    let p1 = expand_cofinal_macro(
        CofinalKind::ExistsCofinal,
        ORDER_X,
        &expand_cofinal_macro(CofinalKind::ForallCofinal, ORDER_Y, &gxy, leq_y),
        leq_x,
    );
    let p2 = expand_cofinal_macro(
        CofinalKind::ExistsCofinal,
        ORDER_Y,
        &expand_cofinal_macro(CofinalKind::ForallCofinal, ORDER_X, &Formula::not(gxy), leq_x),
        leq_y,
    );
    Formula::and(p1, p2)
}

/// `gamma(x, y, w)` connects `phi(., ., p)` on `x` with `psi(., ., q)` on `y`.
pub fn connection_sentence(
    gamma: &QcfTemplate,
    phi: &QcfTemplate,
    psi: &QcfTemplate,
    w: &[Term],
    p: &[Term],
    q: &[Term],
) -> Formula {
    let avoid = avoid_all(&[w, p, q]);
    let g = |a: &Term, b: &Term| gamma.instantiate(a, b, w);
    let lx = leq_of(|a, b| phi.instantiate(a, b, p), &avoid);
    let ly = leq_of(|a, b| psi.instantiate(a, b, q), &avoid);
    connection_sentence_with(&g, &lx, &ly)
}

fn avoid_all(groups: &[&[Term]]) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = [ORDER_X, ORDER_Y].iter().map(|s| s.to_string()).collect();
    for g in groups {
        out.extend(vars_of(g));
    }
    out
}

fn key_role(role: &str, t: &QcfTemplate) -> (String, String) {
    (role.to_string(), t.key().to_string())
}

/// Instances of the SA axioms over the fragment: one order axiom per
/// order candidate, and a no-connection axiom for each ordered pair of order
/// candidates and each connection candidate in both orientations.
pub fn gen_sa(frag: &Fragment) -> AxiomSet {
    let mut out = AxiomSet::default();
    for phi in frag.orders() {
        let p = param_vars("p", phi.arity());
        let pt = terms(&p);
        let s = Formula::forall_many(
            &p,
            Formula::implies(phi.qcf(ORDER_X, ORDER_Y, &pt), lin_order_no_last(phi, &pt)),
        );
        out.push(AxiomTag { kind: AxiomKind::SaOrder, roles: vec![key_role("phi", phi)] }, s);
    }
    for phi in frag.orders() {
        for psi in frag.orders() {
            for gamma in frag.connections() {
                let straight = no_connection(phi, psi, gamma, false);
                let flipped_sentence = no_connection(phi, psi, gamma, true);
                // A gamma symmetric under swapping x and y yields one sentence.
                let both = if flipped_sentence == straight { 1 } else { 2 };
                for (flipped, sentence) in [(false, straight), (true, flipped_sentence)].into_iter().take(both) {
                    out.push(
                        AxiomTag {
                            kind: AxiomKind::SaNoConnection,
                            roles: vec![
                                key_role("phi", phi),
                                key_role("psi", psi),
                                key_role("gamma", gamma),
                                ("orientation".into(), if flipped { "yx" } else { "xy" }.into()),
                            ],
                        },
                        sentence,
                    );
                }
            }
        }
    }
    out
}

fn no_connection(phi: &QcfTemplate, psi: &QcfTemplate, gamma: &QcfTemplate, flipped: bool) -> Formula {
    let (p, q, w) = (param_vars("p", phi.arity()), param_vars("q", psi.arity()), param_vars("w", gamma.arity()));
    let (pt, qt, wt) = (terms(&p), terms(&q), terms(&w));
    let avoid = avoid_all(&[&pt, &qt, &wt]);
    let g = |a: &Term, b: &Term| {
        if flipped {
            gamma.instantiate(b, a, &wt)
        } else {
            gamma.instantiate(a, b, &wt)
        }
    };
    let lx = leq_of(|a, b| phi.instantiate(a, b, &pt), &avoid);
    let ly = leq_of(|a, b| psi.instantiate(a, b, &qt), &avoid);
    let hyp = Formula::and_all([
        phi.qcf(ORDER_X, ORDER_Y, &pt),
        lin_order_no_last(psi, &qt),
        Formula::not(psi.qcf(ORDER_X, ORDER_Y, &qt)),
    ])
    .expect("three conjuncts");
    let body = Formula::implies(hyp, Formula::not(connection_sentence_with(&g, &lx, &ly)));
    let all: Vec<String> = p.into_iter().chain(q).chain(w).collect();
    Formula::forall_many(&all, body)
}

fn fresh_symbol(sig: &Signature, ext: &mut Signature, name: String, arity: usize) -> Result<String, AxiomError> {
    if sig.contains(&name) || ext.contains(&name) {
        return Err(AxiomError::NameClash(name));
    }
    ext.add_relation(&name, arity)?;
    Ok(name)
}

/// Skolem-style connection axioms: for the i-th order candidate (1-based, key
/// order) a symbol `V_i` of arity `2 + 2n` connecting any two instances of
/// the template with the same `Qcf` status.
pub fn gen_sk(frag: &Fragment, sig: &Signature) -> Result<(Signature, AxiomSet), AxiomError> {
    let mut ext = Signature::new();
    let mut out = AxiomSet::default();
    for (i, phi) in frag.orders().iter().enumerate() {
        let n = phi.arity();
        let v = fresh_symbol(sig, &mut ext, format!("V_{}", i + 1), 2 + 2 * n)?;
        let (p, q) = (param_vars("p", n), param_vars("q", n));
        let (pt, qt) = (terms(&p), terms(&q));
        let hyp = Formula::and_all([
            lin_order_no_last(phi, &pt),
            lin_order_no_last(phi, &qt),
            Formula::iff(phi.qcf(ORDER_X, ORDER_Y, &pt), phi.qcf(ORDER_X, ORDER_Y, &qt)),
        ])
        .expect("three conjuncts");
        let both: Vec<Term> = pt.iter().chain(&qt).cloned().collect();
        let g = |a: &Term, b: &Term| symbol_atom(&v, a, b, &both);
        let avoid = avoid_all(&[&both]);
        let lx = leq_of(|a, b| phi.instantiate(a, b, &pt), &avoid);
        let ly = leq_of(|a, b| phi.instantiate(a, b, &qt), &avoid);
        let s = Formula::implies(hyp, connection_sentence_with(&g, &lx, &ly));
        let all: Vec<String> = p.into_iter().chain(q).collect();
        out.push(
            AxiomTag { kind: AxiomKind::Sk, roles: vec![key_role("phi", phi), ("symbol".into(), v.clone())] },
            Formula::forall_many(&all, s),
        );
    }
    Ok((ext, out))
}

/// For the i-th order candidate, symbols `O_i` (a total order of the
/// universe) and `H_i` (a connection between `phi` on its domain and `O_i`),
/// both of arity `2 + n`.
pub fn gen_domain_adapter(frag: &Fragment, sig: &Signature) -> Result<(Signature, AxiomSet), AxiomError> {
    let mut ext = Signature::new();
    let mut out = AxiomSet::default();
    for (i, phi) in frag.orders().iter().enumerate() {
        let n = phi.arity();
        let o = fresh_symbol(sig, &mut ext, format!("O_{}", i + 1), 2 + n)?;
        let h = fresh_symbol(sig, &mut ext, format!("H_{}", i + 1), 2 + n)?;
        let p = param_vars("p", n);
        let pt = terms(&p);
        let avoid = avoid_all(&[&pt]);
        let w = fresh_name("w", &avoid);
        let lx = leq_of(|a, b| phi.instantiate(a, b, &pt), &avoid).with_domain(&w, domain_of(phi, &var(&w), &pt));
        let ly = leq_of(|a, b| symbol_atom(&o, a, b, &pt), &avoid);
        let g = |a: &Term, b: &Term| symbol_atom(&h, a, b, &pt);
        let concl = Formula::and(lin_order_no_last_symbol(&o, &pt), connection_sentence_with(&g, &lx, &ly));
        let s = Formula::implies(lin_order_no_last_on_domain(phi, &pt), concl);
        out.push(
            AxiomTag {
                kind: AxiomKind::Adapter,
                roles: vec![key_role("phi", phi), ("order".into(), o.clone()), ("connection".into(), h.clone())],
            },
            Formula::forall_many(&p, s),
        );
    }
    Ok((ext, out))
}

/// `T ∪ SA(frag)`, to be read with weak semantics.
pub fn reduce_to_weak(t: &Theory, frag: &Fragment) -> Theory {
    let mut sentences = t.sentences.clone();
    for s in gen_sa(frag).sentences() {
        if !sentences.contains(s) {
            sentences.push(s.clone());
        }
    }
    Theory::new(format!("{}+SA", t.name), t.signature.clone(), sentences)
}
