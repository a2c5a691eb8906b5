//! Toolkit for first-order logic with the cofinality quantifier `Qcf`.
//!
//! * [`formula`]: signatures, formulas, parsing, printing, substitution and
//!   canonical `Qcf` templates.
//! * [`weak`]: finite weak structures and their two satisfaction relations.
//! * [`axioms`]: instances of the order axiom schema (SA), the connection (SK)
//!   schema and the domain adapter over finite fragments.
//! * [`order`]: symbolic linear orders, cofinality, and relation combinators
//!   for connections between orders.
//! * [`finder`]: finite weak-model search with a brute-force oracle.

pub mod axioms;
pub mod finder;
pub mod formula;
pub mod order;
pub mod weak;
