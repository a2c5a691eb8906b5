#![allow(dead_code)]

use std::collections::HashMap;

use proptest::prelude::*;
use qcf_core::formula::{Formula, Signature, Term};
use qcf_core::weak::{tuples, WeakStructure};
use rand::Rng;

pub const VARS: [&str; 5] = ["x", "y", "z", "u", "v"];

/// `<` and `R` binary, `P` unary, `f` unary, `g` binary, constants `c`, `d`.
pub fn mixed_signature() -> Signature {
    Signature::new()
        .with_relation("<", 2)
        .and_then(|s| s.with_relation("R", 2))
        .and_then(|s| s.with_relation("P", 1))
        .and_then(|s| s.with_function("f", 1))
        .and_then(|s| s.with_function("g", 2))
        .and_then(|s| s.with_constant("c"))
        .and_then(|s| s.with_constant("d"))
        .unwrap()
}

pub fn order_signature() -> Signature {
    Signature::order()
}

fn var(v: &str) -> Term {
    Term::var(v)
}

pub fn random_term(rng: &mut impl Rng, depth: usize) -> Term {
    match rng.gen_range(0..if depth == 0 { 2 } else { 4 }) {
        0 => var(VARS[rng.gen_range(0..VARS.len())]),
        1 => Term::constant(if rng.gen() { "c" } else { "d" }),
        2 => Term::app("f", vec![random_term(rng, depth - 1)]),
        _ => Term::app("g", vec![random_term(rng, depth - 1), random_term(rng, depth - 1)]),
    }
}

fn random_atom(rng: &mut impl Rng) -> Formula {
    match rng.gen_range(0..4) {
        0 => Formula::less(random_term(rng, 1), random_term(rng, 1)),
        1 => Formula::atom("R", vec![random_term(rng, 1), random_term(rng, 1)]),
        2 => Formula::atom("P", vec![random_term(rng, 2)]),
        _ => Formula::eq(random_term(rng, 1), random_term(rng, 1)),
    }
}

/// Random formula over [`mixed_signature`] with depth at most `depth`.
pub fn random_formula(rng: &mut impl Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_range(0..5) == 0 {
        return random_atom(rng);
    }
    let sub = |rng: &mut _| random_formula(rng, depth - 1);
    match rng.gen_range(0..9) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        4 => Formula::iff(sub(rng), sub(rng)),
        5 => Formula::exists(VARS[rng.gen_range(0..VARS.len())], sub(rng)),
        6 => Formula::forall(VARS[rng.gen_range(0..VARS.len())], sub(rng)),
        _ => {
            let i = rng.gen_range(0..VARS.len());
            let j = (i + rng.gen_range(1..VARS.len())) % VARS.len();
            Formula::qcf(VARS[i], VARS[j], sub(rng))
        }
    }
}

/// Random formula over the single relation `<` with variables `x, y, z`.
pub fn random_order_formula(rng: &mut impl Rng, depth: usize) -> Formula {
    let v = |rng: &mut dyn rand::RngCore| ["x", "y", "z"][rng.gen_range(0..3)];
    if depth == 0 || rng.gen_range(0..4) == 0 {
        let (a, b) = (v(rng), v(rng));
        return if rng.gen_range(0..4) == 0 { Formula::eq(var(a), var(b)) } else { Formula::less(var(a), var(b)) };
    }
    let sub = |rng: &mut _| random_order_formula(rng, depth - 1);
    match rng.gen_range(0..8) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        4 => Formula::exists(v(rng), sub(rng)),
        5 => Formula::forall(v(rng), sub(rng)),
        _ => {
            let a = v(rng);
            let b = loop {
                let b = v(rng);
                if b != a {
                    break b;
                }
            };
            Formula::qcf(a, b, sub(rng))
        }
    }
}

/// Every formula of depth at most `depth` in the grammar
///
/// ```text
/// A ::= x < y | y < x | x = y
/// F ::= A | ~F | Ex F | Ey F | Ax F | Ay F | Qcf x y. F | Qcf y x. F
///     | A op F | F op A            (op in &, |, ->, <->)
/// ```
///
/// Binary nodes keep one atomic side so the family stays enumerable.
pub fn linear_grammar(depth: usize) -> Vec<Formula> {
    let atoms = vec![
        Formula::less(var("x"), var("y")),
        Formula::less(var("y"), var("x")),
        Formula::eq(var("x"), var("y")),
    ];
    let mut all = atoms.clone();
    for _ in 0..depth {
        let prev = all.clone();
        let mut next = atoms.clone();
        for f in &prev {
            next.push(Formula::not(f.clone()));
            for v in ["x", "y"] {
                next.push(Formula::exists(v, f.clone()));
                next.push(Formula::forall(v, f.clone()));
            }
            next.push(Formula::qcf("x", "y", f.clone()));
            next.push(Formula::qcf("y", "x", f.clone()));
        }
        let ops: [fn(Formula, Formula) -> Formula; 4] = [Formula::and, Formula::or, Formula::implies, Formula::iff];
        for op in ops {
            for a in &atoms {
                for f in &prev {
                    next.push(op(a.clone(), f.clone()));
                    if !atoms.contains(f) {
                        next.push(op(f.clone(), a.clone()));
                    }
                }
            }
        }
        all = next;
    }
    all
}

/// All structures of the given size for one binary relation named `rel`.
pub fn binary_structures(rel: &str, size: usize) -> Vec<WeakStructure> {
    let pairs: Vec<Vec<usize>> = tuples(size, 2).collect();
    (0u64..1 << pairs.len())
        .map(|code| {
            let mut m = WeakStructure::new(size).unwrap();
            let set = pairs.iter().enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, t)| t.clone());
            m.set_relation(rel, set).unwrap();
            m
        })
        .collect()
}

fn term_value(m: &WeakStructure, t: &Term, env: &HashMap<String, usize>) -> usize {
    match t {
        Term::Var(v) => env[v],
        Term::Const(c) => m.constant(c).unwrap(),
        Term::App(f, args) => {
            let vals: Vec<usize> = args.iter().map(|a| term_value(m, a, env)).collect();
            let row = m.function_rows(f).unwrap().iter().find(|r| r[..r.len() - 1] == vals[..]).unwrap();
            *row.last().unwrap()
        }
    }
}

/// Textbook first-order evaluator over L*, written without any of the
/// library's compilation. Panics on `Qcf`.
pub fn naive_eval(m: &WeakStructure, f: &Formula, env: &mut HashMap<String, usize>) -> bool {
    match f {
        Formula::Atom(r, args) => {
            let t: Vec<usize> = args.iter().map(|a| term_value(m, a, env)).collect();
            m.relation(r).is_some_and(|s| s.contains(&t))
        }
        Formula::Weak(tpl, args) => {
            let t: Vec<usize> = args.iter().map(|a| term_value(m, a, env)).collect();
            m.qcf_table(tpl.key()).expect("table present").contains(&t)
        }
        Formula::Eq(a, b) => term_value(m, a, env) == term_value(m, b, env),
        Formula::Not(a) => !naive_eval(m, a, env),
        Formula::And(a, b) => naive_eval(m, a, env) && naive_eval(m, b, env),
        Formula::Or(a, b) => naive_eval(m, a, env) || naive_eval(m, b, env),
        Formula::Implies(a, b) => !naive_eval(m, a, env) || naive_eval(m, b, env),
        Formula::Iff(a, b) => naive_eval(m, a, env) == naive_eval(m, b, env),
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let saved = env.get(v).copied();
            let want = matches!(f, Formula::Exists(..));
            let mut result = !want;
            for e in 0..m.size() {
                env.insert(v.clone(), e);
                if naive_eval(m, body, env) == want {
                    result = want;
                    break;
                }
            }
            match saved {
                Some(e) => env.insert(v.clone(), e),
                None => env.remove(v),
            };
            result
        }
        Formula::Qcf(..) => panic!("naive evaluator is first-order only"),
    }
}

pub fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        proptest::sample::select(VARS.to_vec()).prop_map(Term::var),
        proptest::sample::select(vec!["c", "d"]).prop_map(Term::constant),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(a, b)| Term::app("g", vec![a, b])),
        ]
    })
}

/// Formulas over [`mixed_signature`] of depth at most 6.
pub fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        (arb_term(), arb_term()).prop_map(|(a, b)| Formula::less(a, b)),
        (arb_term(), arb_term()).prop_map(|(a, b)| Formula::atom("R", vec![a, b])),
        arb_term().prop_map(|a| Formula::atom("P", vec![a])),
        (arb_term(), arb_term()).prop_map(|(a, b)| Formula::eq(a, b)),
    ];
    let name = || proptest::sample::select(VARS.to_vec());
    leaf.prop_recursive(6, 48, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (name(), inner.clone()).prop_map(|(v, a)| Formula::exists(v, a)),
            (name(), inner.clone()).prop_map(|(v, a)| Formula::forall(v, a)),
            (name(), name(), inner)
                .prop_filter("distinct pair", |(x, y, _)| x != y)
                .prop_map(|(x, y, a)| Formula::qcf(x, y, a)),
        ]
    })
}
