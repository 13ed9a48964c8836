//! Linear algebra over Q(eps) that keeps track of the parameter values where
//! the generic answer breaks down.

mod eigen;
pub mod interpolate;
mod minors;
mod parametric;

pub use eigen::{
    characteristic_polynomial, eigen_analyze, EigenDecomposition, EigenPair, MuPoly, DEFAULT_DEGREE_BOUND,
};
pub use minors::rank_one_conditions;
pub use parametric::{
    kernel, kernel_parametric, solve_field, solve_parametric, BranchKind, ExceptionalBranch, ParametricLinearSystem,
    ParametricSolution, Solution, SolutionStatus,
};
