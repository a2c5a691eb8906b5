//! Symbolic linear orders (finite, omega, declared regulars and sums), their
//! cofinalities, and relations between them.

mod check;
mod expr;
mod relation;

pub use check::{check_conditions34, check_connection, connection_oracle, sparse_oracle, Verdict};
pub use expr::{
    cofinality, connected_decision, Block, Cardinal, CofinalityResult, Enumeration, NormalOrder, OrderElement,
    OrderError, OrderExpr, Regulars,
};
pub use relation::{exists_tri, forall_tri, LazyRelation, Monotonicity, Tri};
