//! Combinatorics of the representations `π_ω` of `C(SU_q(ℓ+1))`: reduced
//! words and their interval decomposition, the diagram/move calculus, lazy
//! operator semantics on truncated `ℓ²(Γ)`, growth graphs with
//! vertex-disjoint path counting, the sweepout constructions, and the
//! sign-triviality witnesses.

pub mod diagram;
pub mod error;
pub mod expr;
pub mod flow;
pub mod growth;
pub mod lattice;
pub mod moves;
pub mod repr;
pub mod sweep;
pub mod weyl;
pub mod witness;

pub use diagram::{build_diagram, Diagram, EdgeKind, EdgeLabel};
pub use error::{Error, Result};
pub use expr::DiracCandidate;
pub use growth::{GrowthGraph, Ladder, Partition};
pub use lattice::{Coord, CoordSystem, LatticePoint};
pub use moves::{enumerate_all_moves, enumerate_moves, Move};
pub use repr::{entry_operator, MonomialOperator, OperatorSum, Representation, StateVector, TruncationSpec};
pub use sweep::{AxisFunctionals, FreePlaneCoset, SweepPath};
pub use weyl::{axis_constants, decompose, parse_word, AxisConstants, WeylDecomposition, WeylElement};
pub use witness::{SignCandidate, Verdict};
