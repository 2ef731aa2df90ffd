//! Exact computation of graded decomposition numbers for the Iwahori-Hecke
//! algebra of the symmetric group over characteristic zero at a primitive
//! e-th root of unity.
//!
//! Everything is exact symbolic combinatorics: integer Laurent polynomials
//! carry the graded multiplicities, standard-tableau degrees produce graded
//! Specht characters, and the solver fills the decomposition matrix by
//! induction on the distance between partitions, reading off one ladder
//! weight per column. A verification layer re-derives the same quantities
//! along independent routes and reports any disagreement.
//!
//! Data-parallel by default: each distance stratum of the solver is an
//! independent batch, evaluated with rayon under the `parallel` feature
//! (on by default) and sequentially otherwise, with bit-identical results.

pub mod error;
pub mod fock;
pub mod ladders;
pub mod laurent;
pub mod partitions;
pub mod solver;
pub mod tableaux;

pub use error::{Error, Result};
pub use fock::FockVector;
pub use ladders::{LadderProfile, ResidueSeq};
pub use laurent::LaurentPoly;
pub use partitions::{Node, Partition, QuantumChar};
pub use solver::{BasicSolution, DecompMatrix, SolveOutput, SolverOptions, VerifyReport};
pub use tableaux::{GradedCharacter, StandardTableau};
