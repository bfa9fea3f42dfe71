//! Decides homotopy normality of finite group homomorphisms through
//! crossed-module search, and builds the combinatorial machinery around
//! that decision: bar constructions and nerves with reduced-Segal checks,
//! Cech power complexes with integral homology, the simplicial group
//! realizing a crossed module together with its equivariant comparison to
//! the bar side, Moore-complex homotopy groups, and discrete homotopy
//! actions with rigidification.
//!
//! Everything operates on finite, fully materialized data: groups are
//! multiplication tables, simplicial objects are truncated at a chosen
//! level, and "homotopy equivalence" between discrete levels means
//! bijection. All values are immutable after construction.

pub mod actions;
pub mod bar;
pub mod catalog;
pub mod chains;
pub mod crossed;
pub mod files;
pub mod groups;
mod report;
pub mod simplicial;

pub use chains::ChainInt;
