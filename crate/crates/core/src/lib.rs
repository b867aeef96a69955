//! Exact toric GIT combinatorics: secondary fans, marked subdivisions,
//! stacky volumes and semi-orthogonal decomposition multiplicities.

pub mod error;
pub mod git_problem;
pub mod gkz_fan;
pub mod json;
pub mod lattice;
pub mod lp;
pub mod multiplicity;
pub mod polyhedral;
pub mod subdivision;
pub mod volumes;

pub use error::{Error, Result};
pub use git_problem::{Face, GitProblem, RelevantSubspace, Subquotient};
pub use gkz_fan::{build_fan, Chamber, ChamberLocation, ChamberRef, GkzFan, Run, Wall};
pub use lattice::{FgAbelianGroup, Int, IntMatrix, Rat, SnfResult};
pub use multiplicity::{DecoratedComplex, MultiplicityTable, TheoremReport};
pub use subdivision::MarkedSubdivision;
pub use volumes::StackyFan;
