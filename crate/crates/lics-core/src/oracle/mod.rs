//! Independent brute-force validators for the closed-form solutions: a
//! direct complex linear-system solver for the ladder coherence equations
//! and a discretized-continuum master-equation integrator for the folded
//! scheme.

pub mod folded;
pub mod ladder;
pub mod linalg;
pub mod ode;

pub use folded::{
    integrate_folded_master, AuxLevel, ContinuumGrid, DiscretizedContinuum, FoldedOracleRun,
};
pub use ladder::{
    oracle_chi3_s, oracle_f1, oracle_fs, solve_ladder_linear_system, LadderBranch,
    LadderOracleSolution,
};
