//! ZX-calculus diagrams for stabilizer quantum mechanics.
//!
//! The library represents open ZX diagrams, rewrites them into a
//! graph-state-with-local-Cliffords normal form, and decides whether
//! two diagrams denote the same state or linear map. An exact
//! tensor-contraction oracle over the ring Z[e^{iπ/4}] cross-checks
//! every step.
//!
//! Module map:
//! - [`diagram`]: the open-graph syntax, JSON/DOT serialization,
//!   composition, tensoring, Choi bending and gate builders.
//! - [`clifford`]: the 24-element single-qubit Clifford group with its
//!   phase-word normal forms.
//! - [`gslc`]: graph states with vertex operators and the three
//!   equivalence transformations (local complementation, fixpoint,
//!   complementation along an edge).
//! - [`rules`]: the individual rewrite rules with matchers.
//! - [`normalize`]: decomposition into primitive steps and the fold
//!   into (reduced) GS-LC form.
//! - [`equality`]: pair simplification and the equality decision.
//! - [`semantics`]: the exact matrix oracle and test-data generator.

pub mod clifford;
pub mod diagram;
pub mod equality;
pub mod gslc;
pub mod normalize;
pub mod phase;
pub mod rules;
pub mod semantics;

pub use diagram::{Diagram, DiagramError, NodeId, NodeKind};
pub use phase::Phase;
