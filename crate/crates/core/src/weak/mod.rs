//! Finite weak structures and the two satisfaction relations over them.

mod cof;
mod coherence;
mod eval;
mod structure;

pub use cof::{CofinalitySpec, CofinalitySpecError, OMEGA};
pub use coherence::{verify_finite_c_coherence, CoherenceReport, CoherenceViolation};
pub use eval::{c_semantics_of, eval_c_finite, eval_weak, is_strict_linear_order, Assignment, EvalError, PreparedFormula};
pub use structure::{tuples, StructureError, WeakStructure};
