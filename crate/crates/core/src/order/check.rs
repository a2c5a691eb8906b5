//! Bounded checking of the connection properties and of the two
//! conditions that make `monotone_lower` a connection.
//!
//! Quantifiers over an infinite order range over an enumeration prefix of
//! length `bound`: an outer universal over the first half of it, the
//! threshold of "all sufficiently large" over the first three quarters, and
//! an existential partner over all of it. When an order has a last element, "cofinally many" and
//! "all sufficiently large" reduce exactly to that element.

use std::fmt;
use std::ops::Not;

use super::expr::{NormalOrder, OrderElement, OrderError};
use super::relation::{forall_tri, LazyRelation, Tri};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// A checkable counterexample: the listed elements falsify the
    /// property outright.
    RefutedAt(Vec<OrderElement>),
    SatisfiedUpTo(usize),
    ExactTrue,
    ExactFalse,
    Unknown(usize),
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::RefutedAt(_) | Verdict::ExactFalse)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::RefutedAt(w) => {
                let parts: Vec<String> = w.iter().map(|e| e.to_string()).collect();
                write!(f, "REFUTED({})", parts.join(","))
            }
            Verdict::SatisfiedUpTo(b) => write!(f, "SAT_UPTO({b})"),
            Verdict::ExactTrue => f.write_str("EXACT_TRUE"),
            Verdict::ExactFalse => f.write_str("EXACT_FALSE"),
            Verdict::Unknown(b) => write!(f, "UNKNOWN({b})"),
        }
    }
}

/// Value of an inner formula at one element.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Inner {
    /// Decided; a false value carries a witness element when one exists.
    Exact(bool, Option<OrderElement>),
    /// Holds on the searched prefix.
    Bounded,
    Unknown,
}

impl Inner {
    fn holds(&self) -> bool {
        matches!(self, Inner::Exact(true, _) | Inner::Bounded)
    }
}

fn half(v: &[OrderElement]) -> &[OrderElement] {
    &v[..v.len().div_ceil(2)]
}

fn three_quarters(v: &[OrderElement]) -> &[OrderElement] {
    &v[..(3 * v.len()).div_ceil(4)]
}

/// `forall sufficiently large t, pred(t)` over the order `o`.
fn eventually(o: &NormalOrder, bound: usize, pred: impl Fn(&OrderElement) -> Tri) -> Result<Inner, OrderError> {
    if o.is_empty() {
        return Ok(Inner::Exact(false, None));
    }
    if let Some(last) = o.last() {
        return Ok(match pred(&last) {
            Tri::True => Inner::Exact(true, None),
            Tri::False => Inner::Exact(false, Some(last)),
            Tri::Unknown => Inner::Unknown,
        });
    }
    let prefix = o.prefix(bound)?;
    let mut sorted = prefix.clone();
    sorted.sort();
    // all_from[i]: pred holds at every sorted element from position i on.
    let mut all_from = vec![true; sorted.len() + 1];
    for i in (0..sorted.len()).rev() {
        all_from[i] = all_from[i + 1] && pred(&sorted[i]) == Tri::True;
    }
    let found = three_quarters(&prefix).iter().any(|s| {
        let i = sorted.binary_search(s).expect("element of the prefix");
        all_from[i]
    });
    Ok(if found { Inner::Bounded } else { Inner::Unknown })
}

/// `exists cofinally many s, inner(s)` over `o`, with an optional exact
/// answer from metadata. Witnesses of a refutation are `[s, inner witness]`.
fn cofinally(
    o: &NormalOrder,
    bound: usize,
    fact: Option<bool>,
    inner: impl Fn(&OrderElement) -> Result<Inner, OrderError>,
) -> Result<Verdict, OrderError> {
    if o.is_empty() {
        return Ok(Verdict::ExactTrue);
    }
    if let Some(last) = o.last() {
        return Ok(match inner(&last)? {
            Inner::Exact(true, _) => Verdict::ExactTrue,
            Inner::Exact(false, w) => Verdict::RefutedAt(std::iter::once(last).chain(w).collect()),
            Inner::Bounded => Verdict::SatisfiedUpTo(bound),
            Inner::Unknown => Verdict::Unknown(bound),
        });
    }
    if let Some(b) = fact {
        return Ok(if b { Verdict::ExactTrue } else { Verdict::ExactFalse });
    }
    let prefix = o.prefix(bound)?;
    let values: Vec<Inner> = prefix.iter().map(&inner).collect::<Result<_, _>>()?;
    let all_partnered = half(&prefix)
        .iter()
        .all(|s0| prefix.iter().zip(&values).any(|(s, v)| s >= s0 && v.holds()));
    Ok(if all_partnered && !prefix.is_empty() {
        Verdict::SatisfiedUpTo(bound)
    } else {
        Verdict::Unknown(bound)
    })
}

/// Property (1) of `g` between its own orders.
fn property_one(g: &LazyRelation, bound: usize) -> Result<Verdict, OrderError> {
    let (xo, yo) = (g.x_order(), g.y_order());
    cofinally(xo, bound, g.rows_cofinal(), |x| {
        if yo.last().is_none() && !yo.is_empty() {
            if let Some(r) = g.row(x) {
                return Ok(Inner::Exact(r.is_some(), yo.first()));
            }
        }
        eventually(yo, bound, |y| g.contains(x, y))
    })
}

fn same_orders(g: &LazyRelation, x: &NormalOrder, y: &NormalOrder) -> Result<(), OrderError> {
    if g.x_order() != x || g.y_order() != y {
        return Err(OrderError::OrderMismatch);
    }
    x.check_representable()?;
    y.check_representable()
}

fn swap_witness(v: Verdict) -> Verdict {
    match v {
        Verdict::RefutedAt(mut w) => {
            w.reverse();
            Verdict::RefutedAt(w)
        }
        v => v,
    }
}

/// Verdicts for `(1) Ecf x Acf y G(x, y)` and `(2) Ecf y Acf x ~G(x, y)`.
/// Refutation witnesses are listed as `(x, y)`.
pub fn check_connection(
    g: &LazyRelation,
    x: &NormalOrder,
    y: &NormalOrder,
    bound: usize,
) -> Result<(Verdict, Verdict), OrderError> {
    same_orders(g, x, y)?;
    let one = property_one(g, bound)?;
    // (2) for G is (1) for {(y, x) | ~G(x, y)}.
    let two = swap_witness(property_one(&g.inverse_neg(), bound)?);
    Ok((one, two))
}

/// Verdicts for `(3) Ecf x Ey G(x, y)` and
/// `(4) Ay' Ex' Ax Ay ((x' <= x & y <= y') -> ~G(x, y))`.
pub fn check_conditions34(
    g: &LazyRelation,
    x: &NormalOrder,
    y: &NormalOrder,
    bound: usize,
) -> Result<(Verdict, Verdict), OrderError> {
    same_orders(g, x, y)?;
    let fact3 = if g.flags().monotone_y { g.rows_cofinal() } else { None };
    let three = cofinally(x, bound, fact3, |a| {
        if let Some(r) = g.row(a) {
            return Ok(Inner::Exact(r.is_some(), None));
        }
        let ys = y.prefix(bound)?;
        let complete = y.len().is_some_and(|n| n <= ys.len());
        let t = super::relation::exists_tri(ys.iter().map(|b| g.contains(a, b)), complete);
        Ok(match t {
            Tri::True => Inner::Exact(true, None),
            Tri::False => Inner::Exact(false, None),
            Tri::Unknown => Inner::Unknown,
        })
    })?;
    let four = condition_four(g, x, y, bound)?;
    Ok((three, four))
}

fn condition_four(g: &LazyRelation, x: &NormalOrder, y: &NormalOrder, bound: usize) -> Result<Verdict, OrderError> {
    if y.is_empty() {
        return Ok(Verdict::ExactTrue);
    }
    if let Some(b) = g.rows_escape() {
        return Ok(if b { Verdict::ExactTrue } else { Verdict::ExactFalse });
    }
    let ys = y.prefix(bound)?;
    let complete = y.len().is_some_and(|n| n <= ys.len());
    let targets: &[OrderElement] = if complete { &ys } else { half(&ys) };
    let mut verdict = if complete { Verdict::ExactTrue } else { Verdict::SatisfiedUpTo(bound) };
    for top in targets {
        // Every y <= top fails at x.
        let clear = |a: &OrderElement| -> Tri {
            if let Some(r) = g.row(a) {
                return Tri::from_bool(r.is_none_or(|t| t > *top));
            }
            match y.downset_within(top, bound) {
                Ok((down, c)) => forall_tri(down.iter().map(|b| g.contains(a, b).not()), c),
                Err(_) => Tri::Unknown,
            }
        };
        match eventually(x, bound, clear)? {
            Inner::Exact(true, _) => {}
            Inner::Exact(false, w) => {
                return Ok(Verdict::RefutedAt(std::iter::once(*top).chain(w).collect()));
            }
            Inner::Bounded => verdict = Verdict::SatisfiedUpTo(bound),
            Inner::Unknown => {
                if verdict != Verdict::Unknown(bound) {
                    verdict = Verdict::Unknown(bound);
                }
            }
        }
    }
    Ok(verdict)
}

/// The defining formula `exists n <= max_n (x <= x_n & y_n <= y)` searched
/// directly; `Unknown` when no witness index is found.
pub fn connection_oracle(
    xo: &NormalOrder,
    yo: &NormalOrder,
    x: &OrderElement,
    y: &OrderElement,
    max_n: usize,
) -> Result<Tri, OrderError> {
    for n in 0..=max_n {
        if *x <= xo.fundamental(n)? && yo.fundamental(n)? <= *y {
            return Ok(Tri::True);
        }
    }
    Ok(Tri::Unknown)
}

/// `exists n <= max_n (x = x_n & y_n <= y)` searched directly.
pub fn sparse_oracle(
    xo: &NormalOrder,
    yo: &NormalOrder,
    x: &OrderElement,
    y: &OrderElement,
    max_n: usize,
) -> Result<Tri, OrderError> {
    for n in 0..=max_n {
        if *x == xo.fundamental(n)? && yo.fundamental(n)? <= *y {
            return Ok(Tri::True);
        }
    }
    Ok(Tri::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{Monotonicity, OrderExpr};

    fn ord(s: &str) -> NormalOrder {
        OrderExpr::parse(s).unwrap().normalize()
    }

    #[test]
    fn lemma_constructions_are_exact() {
        let (x, y) = (ord("omega"), ord("omega + omega"));
        let g = LazyRelation::connection(&x, &y).unwrap();
        assert_eq!(check_connection(&g, &x, &y, 200).unwrap(), (Verdict::ExactTrue, Verdict::ExactTrue));
        let s = LazyRelation::sparse(&x, &y).unwrap();
        assert_eq!(check_connection(&s, &x, &y, 200).unwrap(), (Verdict::ExactTrue, Verdict::ExactTrue));
    }

    #[test]
    fn full_relation_fails_two() {
        let w = ord("omega");
        let g = LazyRelation::full(&w, &w).unwrap();
        let (one, two) = check_connection(&g, &w, &w, 50).unwrap();
        assert_eq!(one, Verdict::ExactTrue);
        assert!(!matches!(two, Verdict::SatisfiedUpTo(_) | Verdict::ExactTrue));
    }

    #[test]
    fn bounded_without_metadata() {
        let w = ord("omega");
        let leq = LazyRelation::custom("leq", &w, &w, Monotonicity::default(), |a, b| a <= b).unwrap();
        let (one, two) = check_connection(&leq, &w, &w, 60).unwrap();
        assert_eq!(one, Verdict::SatisfiedUpTo(60));
        assert_eq!(two, Verdict::SatisfiedUpTo(60));
        let never = LazyRelation::custom("never", &w, &w, Monotonicity::default(), |_, _| false).unwrap();
        let (one, _) = check_connection(&never, &w, &w, 60).unwrap();
        assert_eq!(one, Verdict::Unknown(60));
    }

    #[test]
    fn last_elements_decide_exactly() {
        let (x, y) = (ord("fin(3)"), ord("omega"));
        let g = LazyRelation::custom("row-two", &x, &y, Monotonicity::default(), |a, _| a.index == 2).unwrap();
        let (one, two) = check_connection(&g, &x, &y, 20).unwrap();
        assert_eq!(one, Verdict::SatisfiedUpTo(20));
        // (2) is false, but refuting it needs every y of an infinite order.
        assert_eq!(two, Verdict::Unknown(20));
        let h = LazyRelation::empty(&x, &y).unwrap();
        let (one, _) = check_connection(&h, &x, &y, 20).unwrap();
        assert_eq!(one, Verdict::RefutedAt(vec![OrderElement::new(0, 2), OrderElement::new(0, 0)]));
    }

    #[test]
    fn conditions_three_and_four() {
        let w = ord("omega");
        let s = LazyRelation::sparse(&w, &w).unwrap();
        assert_eq!(check_conditions34(&s, &w, &w, 100).unwrap(), (Verdict::ExactTrue, Verdict::ExactTrue));
        let full = LazyRelation::full(&w, &w).unwrap();
        assert_eq!(check_conditions34(&full, &w, &w, 100).unwrap().1, Verdict::ExactFalse);
        let diag = LazyRelation::custom("diag", &w, &w, Monotonicity::default(), |a, b| a == b).unwrap();
        let (three, four) = check_conditions34(&diag, &w, &w, 100).unwrap();
        assert_eq!(three, Verdict::SatisfiedUpTo(100));
        assert_eq!(four, Verdict::SatisfiedUpTo(100));
        let lower = diag.monotone_lower(100);
        assert_eq!(check_connection(&lower, &w, &w, 100).unwrap().0, Verdict::SatisfiedUpTo(100));
    }

    #[test]
    fn oracles_match_constructions() {
        let (x, y) = (ord("omega"), ord("omega + omega"));
        let g = LazyRelation::connection(&x, &y).unwrap();
        let a = OrderElement::new(0, 3);
        assert_eq!(connection_oracle(&x, &y, &a, &OrderElement::new(1, 5), 200).unwrap(), Tri::True);
        assert_eq!(connection_oracle(&x, &y, &a, &OrderElement::new(0, 7), 200).unwrap(), Tri::Unknown);
        assert_eq!(g.contains(&a, &OrderElement::new(1, 5)), Tri::True);
        assert_eq!(sparse_oracle(&x, &y, &a, &OrderElement::new(1, 3), 200).unwrap(), Tri::True);
        assert!(check_connection(&g, &y, &x, 10).is_err());
    }

    #[test]
    fn verdict_tokens() {
        assert_eq!(Verdict::SatisfiedUpTo(200).to_string(), "SAT_UPTO(200)");
        assert_eq!(Verdict::Unknown(5).to_string(), "UNKNOWN(5)");
        assert_eq!(
            Verdict::RefutedAt(vec![OrderElement::new(0, 1), OrderElement::new(1, 2)]).to_string(),
            "REFUTED(0:1,1:2)"
        );
    }
}
