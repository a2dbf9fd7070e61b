//! Exact solving: internal LP engine, branch-and-bound, model exporters,
//! solution extraction and validation, and the brute-force oracle.

mod lu;
pub mod lp;

pub use lp::{solve_lp, LinearProgram, LpError, LpRow, LpSolution, LpStatus, Sense};
