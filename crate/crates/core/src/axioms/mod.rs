//! Finite instances of the order axiom schema (SA), the connection (SK) schema
//! and the domain adapter.

mod fragment;
mod schema;

pub use fragment::{binary_template, Fragment, FragmentError, ORDER_X, ORDER_Y};
pub use schema::{
    connection_sentence, connection_sentence_with, gen_domain_adapter, gen_sa, gen_sk, lin_order_no_last,
    lin_order_no_last_on_domain, lin_order_no_last_symbol, param_vars, reduce_to_weak, Axiom, AxiomError,
    AxiomKind, AxiomSet, AxiomTag,
};
