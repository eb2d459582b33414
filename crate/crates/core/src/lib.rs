//! Quantum (τ, σ)-calculus: tension spaces, partition functions, the generic
//! differential/derivative with its right inverses and initial operators,
//! closed-form h- and q-calculus, and a small expression language.

pub mod calculus;
pub mod classic;
pub mod error;
pub mod expr;
pub mod function;
pub mod numeric;
pub mod partition;
pub mod sampling;
pub mod selfcheck;
pub mod tension;

pub use calculus::{initial_operator_for, mixing_map, QCtx};
pub use error::{CalcError, Result};
pub use expr::{parse, to_realfn, EvalError, Expr, ParseError};
pub use function::{LinearMap, Point, RealFn};
pub use partition::{PartitionReport, PartitionScheme, PartitionViolation};
pub use tension::{Bijection, Directedness, TensionSpace};
