//! "For cofinally many" and "for all sufficiently large" relative to a
//! definable ordering. These are generator macros, not surface syntax.

use std::collections::BTreeSet;

use super::{fresh_name, substitute_many, Formula, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CofinalKind {
    /// `forall x' exists x (x' <= x & A)`
    ExistsCofinal,
    /// `exists x' forall x (x' <= x -> A)`
    ForallCofinal,
}

/// A binary formula `leq(u, v)` with two designated free variables, plus an
/// optional domain `D(w)` the ordering lives on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeqTemplate {
    u: String,
    v: String,
    body: Formula,
    domain: Option<(String, Formula)>,
}

impl LeqTemplate {
    pub fn new(u: impl Into<String>, v: impl Into<String>, body: Formula) -> LeqTemplate {
        let (u, v) = (u.into(), v.into());
        assert_ne!(u, v);
        LeqTemplate { u, v, body, domain: None }
    }

    /// The non-strict companion `strict(u, v) | u = v` of a strict order.
    pub fn reflexive_closure(u: impl Into<String>, v: impl Into<String>, strict: Formula) -> LeqTemplate {
        let (u, v) = (u.into(), v.into());
        let body = Formula::or(strict, Formula::eq(Term::var(&u), Term::var(&v)));
        LeqTemplate::new(u, v, body)
    }

    /// Restricts the ordering to `{w | domain(w)}`.
    pub fn with_domain(mut self, w: impl Into<String>, domain: Formula) -> LeqTemplate {
        self.domain = Some((w.into(), domain));
        self
    }

    pub fn apply(&self, a: &Term, b: &Term) -> Formula {
        substitute_many(&self.body, &[(self.u.clone(), a.clone()), (self.v.clone(), b.clone())])
    }

    pub fn in_domain(&self, a: &Term) -> Option<Formula> {
        self.domain
            .as_ref()
            .map(|(w, d)| substitute_many(d, &[(w.clone(), a.clone())]))
    }

    fn parameters(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = self
            .body
            .free_vars()
            .into_iter()
            .filter(|x| *x != self.u && *x != self.v)
            .collect();
        if let Some((w, d)) = &self.domain {
            out.extend(d.free_vars().into_iter().filter(|x| x != w));
        }
        out
    }
}

/// Expands `Ecf var. body` or `Acf var. body` relative to `leq`.
pub fn expand_cofinal_macro(kind: CofinalKind, var: &str, body: &Formula, leq: &LeqTemplate) -> Formula {
    let mut avoid: BTreeSet<String> = body.free_vars().into_iter().collect();
    avoid.extend(leq.parameters());
    avoid.insert(var.to_string());
    let bound = fresh_name(&format!("{var}'"), &avoid);
    let (lo, x) = (Term::var(&bound), Term::var(var));
    let step = leq.apply(&lo, &x);
    let lo_in = leq.in_domain(&lo);
    let x_in = leq.in_domain(&x);
    match kind {
        CofinalKind::ExistsCofinal => {
            let guard = match x_in {
                Some(d) => Formula::and(d, step),
                None => step,
            };
            let inner = Formula::exists(var, Formula::and(guard, body.clone()));
            let inner = match lo_in {
                Some(d) => Formula::implies(d, inner),
                None => inner,
            };
            Formula::forall(bound, inner)
        }
        CofinalKind::ForallCofinal => {
            let guard = match x_in {
                Some(d) => Formula::and(d, step),
                None => step,
            };
            let inner = Formula::forall(var, Formula::implies(guard, body.clone()));
            let inner = match lo_in {
                Some(d) => Formula::and(d, inner),
                None => inner,
            };
            Formula::exists(bound, inner)
        }
    }
}

/// Same as [`expand_cofinal_macro`] with `leq` restricted to `domain`.
pub fn expand_cofinal_macro_within(
    kind: CofinalKind,
    var: &str,
    body: &Formula,
    leq: &LeqTemplate,
    w: &str,
    domain: &Formula,
) -> Formula {
    expand_cofinal_macro(kind, var, body, &leq.clone().with_domain(w, domain.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, print_formula, Signature};

    fn less_leq() -> LeqTemplate {
        LeqTemplate::reflexive_closure("u", "v", Formula::less(Term::var("u"), Term::var("v")))
    }

    #[test]
    fn exists_cofinal_expansion() {
        let sig = Signature::order().with_relation("A", 1).unwrap();
        let a = parse_formula("A(x)", &sig).unwrap();
        let f = expand_cofinal_macro(CofinalKind::ExistsCofinal, "x", &a, &less_leq());
        assert_eq!(print_formula(&f), "forall x'. exists x. (x' < x | x' = x) & A(x)");
    }

    #[test]
    fn forall_cofinal_expansion() {
        let sig = Signature::order();
        let a = parse_formula("x = x", &sig).unwrap();
        let f = expand_cofinal_macro(CofinalKind::ForallCofinal, "x", &a, &less_leq());
        assert_eq!(print_formula(&f), "exists x'. forall x. x' < x | x' = x -> x = x");
    }

    #[test]
    fn fresh_variable_avoids_body() {
        let sig = Signature::order();
        let a = parse_formula("x < x'", &sig).unwrap();
        let f = expand_cofinal_macro(CofinalKind::ForallCofinal, "x", &a, &less_leq());
        assert_eq!(print_formula(&f), "exists x''. forall x. x'' < x | x'' = x -> x < x'");
    }

    #[test]
    fn relativized_expansion() {
        let sig = Signature::order().with_relation("D", 1).unwrap();
        let a = parse_formula("x = x", &sig).unwrap();
        let d = parse_formula("D(w)", &sig).unwrap();
        let f = expand_cofinal_macro_within(CofinalKind::ExistsCofinal, "x", &a, &less_leq(), "w", &d);
        assert_eq!(
            print_formula(&f),
            "forall x'. D(x') -> exists x. D(x) & (x' < x | x' = x) & x = x"
        );
    }
}
