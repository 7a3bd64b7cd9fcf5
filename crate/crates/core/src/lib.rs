//! Tournament combinatorics around transitive-subtournament avoidance.
//!
//! The crate is organized as a kernel of immutable [`Tournament`] values
//! (`tournament`), CNF encodings that forbid transitive subtournaments
//! (`encode`), a subprocess harness for external DIMACS solvers (`solver`),
//! a block-decomposition catalog search (`catalog`), and the embedded
//! certificate tournaments with their checkable claims (`artifacts`).

pub mod artifacts;
pub mod canon;
pub mod catalog;
pub mod encode;
pub mod partial;
pub mod solver;
pub mod tournament;

pub use canon::CanonicalForm;
pub use encode::{CnfFormula, Encoding, VarMap};
pub use partial::{EdgeState, PartialTournament, Propagation};
pub use solver::{SolverConfig, SolverOutcome, SolverStatus};
pub use tournament::{
    BlockDecomposition, DegreeProfile, Ratio, Tournament, TournamentError, VertexSet,
};
