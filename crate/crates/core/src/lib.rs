//! State complexity of reversal for deterministic finite automata with output.
//!
//! For a trim DFAO with transition monoid `M` and output map `τ`, the minimal
//! DFAO for the reversed function has `|τM|` states. This crate computes that
//! quantity, builds the monoid families that give large values, evaluates the
//! closed-form lower bounds, and searches small degrees exhaustively.

mod codec;
pub mod complexity;
pub mod dfao;
pub mod error;
pub mod monoid;
pub mod search;
pub mod transforms;

pub use dfao::{ComplexityReport, Dfao, ReversedDfao};
pub use error::{Error, Result};
pub use monoid::{MonoidClosure, OutputMap};
pub use search::{SearchConfig, SearchMode, SearchResult};
pub use transforms::{Permutation, Transformation};
