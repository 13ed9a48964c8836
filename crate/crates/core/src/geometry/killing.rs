//! Left-invariant Killing fields: invariant `X` with `L_X g = 0`.

use num_traits::Zero;

use super::Subspace;
use crate::algebra::{lie_derivative_metric, InvariantVector, MetricLieAlgebra};
use crate::scalarfield::{Indeterminates, Matrix, Rational};
use crate::solvers::{solve_parametric, BranchKind, ParametricLinearSystem, ParametricSolution};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KillingBranch {
    /// The system has a pole at this parameter.
    Undefined {
        eps: Rational,
    },
    /// The metric degenerates at this parameter.
    Degenerate {
        eps: Rational,
        space: Subspace,
    },
    Regular {
        eps: Rational,
        space: Subspace,
    },
}

impl KillingBranch {
    pub fn eps(&self) -> &Rational {
        match self {
            KillingBranch::Undefined { eps }
            | KillingBranch::Degenerate { eps, .. }
            | KillingBranch::Regular { eps, .. } => eps,
        }
    }

    pub fn space(&self) -> Option<&Subspace> {
        match self {
            KillingBranch::Undefined { .. } => None,
            KillingBranch::Degenerate { space, .. } | KillingBranch::Regular { space, .. } => Some(space),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingReport {
    pub system: ParametricLinearSystem,
    pub solution: ParametricSolution,
    pub generic: Subspace,
    pub exceptional: Vec<KillingBranch>,
}

/// Solves `sum_k x_k (L_{X_k} g)_ij = 0` for `i <= j`.
pub fn killing_solve(alg: &MetricLieAlgebra) -> Result<KillingReport, Error> {
    let n = alg.dim();
    let lie: Vec<Matrix> = (0..n)
        .map(|k| lie_derivative_metric(alg, &InvariantVector::basis(n, k)).map(|b| b.matrix))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            rows.push(lie.iter().map(|m| m[(i, j)].clone()).collect());
        }
    }
    let unknowns = Indeterminates::components(n).names().to_vec();
    let system = ParametricLinearSystem::homogeneous(Matrix::from_rows(rows), unknowns)?;
    let solution = solve_parametric(&system);
    let span =
        |kernel: &[Vec<_>]| Subspace::span(n, &kernel.iter().cloned().map(InvariantVector::new).collect::<Vec<_>>());
    let generic = span(&solution.generic.kernel);
    let det = alg.determinant();
    let exceptional = solution
        .exceptional
        .iter()
        .map(|b| match &b.kind {
            BranchKind::Pole => KillingBranch::Undefined { eps: b.eps.clone() },
            BranchKind::Solved(s) => {
                let space = span(&s.kernel);
                if det.eval(&b.eps).map_or(true, |d| d.is_zero()) {
                    KillingBranch::Degenerate {
                        eps: b.eps.clone(),
                        space,
                    }
                } else {
                    KillingBranch::Regular {
                        eps: b.eps.clone(),
                        space,
                    }
                }
            }
        })
        .collect();
    Ok(KillingReport {
        system,
        solution,
        generic,
        exceptional,
    })
}
