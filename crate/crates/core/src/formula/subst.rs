use std::collections::BTreeSet;

use super::{Formula, Term};

/// `base` with primes appended until it avoids every name in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = base.to_string();
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

fn subst_term(t: &Term, map: &[(String, Term)]) -> Term {
    match t {
        Term::Var(v) => map
            .iter()
            .rev()
            .find(|(u, _)| u == v)
            .map(|(_, t)| t.clone())
            .unwrap_or_else(|| t.clone()),
        Term::Const(_) => t.clone(),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| subst_term(a, map)).collect()),
    }
}

/// Capture-avoiding substitution of `t` for the free occurrences of `var`.
pub fn substitute(f: &Formula, var: &str, t: &Term) -> Formula {
    substitute_many(f, &[(var.to_string(), t.clone())])
}

/// Simultaneous capture-avoiding substitution. Bound variables that would
/// capture a variable of a substituted term are renamed with primes.
pub fn substitute_many(f: &Formula, map: &[(String, Term)]) -> Formula {
    let map: Vec<(String, Term)> = map
        .iter()
        .filter(|(u, t)| !matches!(t, Term::Var(w) if w == u))
        .cloned()
        .collect();
    if map.is_empty() {
        return f.clone();
    }
    go(f, &map)
}

/// Renames the binders in `vars` as needed. Returns the new binder names and
/// the substitution to apply to the body.
fn enter_binders(vars: &[&String], body: &Formula, map: &[(String, Term)]) -> (Vec<String>, Vec<(String, Term)>) {
    let mut inner: Vec<(String, Term)> = map
        .iter()
        .filter(|(u, _)| !vars.contains(&u))
        .filter(|(u, _)| body.has_free(u))
        .cloned()
        .collect();
    let mut avoid: BTreeSet<String> = body.free_vars().into_iter().collect();
    for (_, t) in &inner {
        let mut vs = Vec::new();
        t.collect_vars(&mut vs);
        avoid.extend(vs);
    }
    avoid.extend(vars.iter().map(|v| (*v).clone()));
    let mut names = Vec::new();
    let mut renames = Vec::new();
    for v in vars {
        let captured = inner.iter().any(|(_, t)| t.has_var(v));
        if captured {
            let fresh = fresh_name(v, &avoid);
            avoid.insert(fresh.clone());
            renames.push(((*v).clone(), Term::Var(fresh.clone())));
            names.push(fresh);
        } else {
            names.push((*v).clone());
        }
    }
    inner.extend(renames);
    (names, inner)
}

fn go(f: &Formula, map: &[(String, Term)]) -> Formula {
    let terms = |ts: &[Term]| ts.iter().map(|t| subst_term(t, map)).collect::<Vec<_>>();
    match f {
        Formula::Atom(r, args) => Formula::Atom(r.clone(), terms(args)),
        Formula::Weak(tpl, args) => Formula::Weak(tpl.clone(), terms(args)),
        Formula::Eq(a, b) => Formula::Eq(subst_term(a, map), subst_term(b, map)),
        Formula::Not(a) => Formula::not(go(a, map)),
        Formula::And(a, b) => Formula::and(go(a, map), go(b, map)),
        Formula::Or(a, b) => Formula::or(go(a, map), go(b, map)),
        Formula::Implies(a, b) => Formula::implies(go(a, map), go(b, map)),
        Formula::Iff(a, b) => Formula::iff(go(a, map), go(b, map)),
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let (names, inner) = enter_binders(&[v], body, map);
            let body = if inner.is_empty() { (**body).clone() } else { go(body, &inner) };
            let name = names.into_iter().next().expect("one binder");
            if matches!(f, Formula::Exists(..)) {
                Formula::exists(name, body)
            } else {
                Formula::forall(name, body)
            }
        }
        Formula::Qcf(x, y, body) => {
            let (names, inner) = enter_binders(&[x, y], body, map);
            let body = if inner.is_empty() { (**body).clone() } else { go(body, &inner) };
            Formula::Qcf(names[0].clone(), names[1].clone(), Box::new(body))
        }
    }
}
