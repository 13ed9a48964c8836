//! Homogeneous Ricci solitons `L_X g = lambda g - rho` with invariant `X`.

use num_traits::{Signed, Zero};

use super::einstein_check;
use crate::algebra::{lie_derivative_metric, ricci, InvariantVector, MetricLieAlgebra};
use crate::scalarfield::{Indeterminates, Matrix, RatFunc, Rational};
use crate::solvers::{solve_parametric, BranchKind, ParametricLinearSystem, ParametricSolution, Solution};
use crate::Error;

/// Normalization of the soliton equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SolitonConvention {
    /// `L_X g = lambda g - rho`
    #[default]
    Plain,
    /// `L_X g = 2 (lambda g - rho)`
    Doubled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolitonKind {
    Shrinking,
    Steady,
    Expanding,
    /// `lambda` is not a fixed constant, so its sign is not determined.
    SignVaries,
}

impl SolitonKind {
    pub fn label(self) -> &'static str {
        match self {
            SolitonKind::Shrinking => "shrinking",
            SolitonKind::Steady => "steady",
            SolitonKind::Expanding => "expanding",
            SolitonKind::SignVaries => "sign of lambda varies",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonWitness {
    pub field: InvariantVector,
    pub lambda: RatFunc,
    pub kind: SolitonKind,
    /// Directions `(X, lambda)` that may be added to the witness.
    pub free_directions: Vec<(InvariantVector, RatFunc)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolitonBranchStatus {
    /// The metric degenerates; the system's solution there is kept for reference.
    DegenerateMetric(Solution),
    /// A coefficient of the system has a pole.
    Undefined,
    NoSoliton,
    Soliton(SolitonWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonBranch {
    pub eps: Rational,
    pub status: SolitonBranchStatus,
    /// `lambda` with `rho = lambda g` at this value, if Einstein.
    pub einstein: Option<RatFunc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonVerdict {
    pub convention: SolitonConvention,
    pub system: ParametricLinearSystem,
    pub solution: ParametricSolution,
    pub einstein: Option<RatFunc>,
    pub generic: Option<SolitonWitness>,
    pub exceptional: Vec<SolitonBranch>,
}

/// Rows `(i, j)`, `i <= j`, of `sum_k x_k (L_{X_k} g)_ij - c lambda g_ij = -c rho_ij`
/// with `c = 1` (plain) or `c = 2` (doubled), in unknowns `x_1..x_n, lambda`.
pub fn soliton_system(alg: &MetricLieAlgebra, convention: SolitonConvention) -> Result<ParametricLinearSystem, Error> {
    let n = alg.dim();
    let c = match convention {
        SolitonConvention::Plain => RatFunc::one(),
        SolitonConvention::Doubled => RatFunc::int(2),
    };
    let rho = ricci(alg)?.matrix;
    let lie: Vec<Matrix> = (0..n)
        .map(|k| lie_derivative_metric(alg, &InvariantVector::basis(n, k)).map(|b| b.matrix))
        .collect::<Result<_, _>>()?;
    let g = alg.metric();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut row: Vec<RatFunc> = lie.iter().map(|m| m[(i, j)].clone()).collect();
            row.push(-(&c * &g[(i, j)]));
            rows.push(row);
            rhs.push(-(&c * &rho[(i, j)]));
        }
    }
    let mut unknowns: Vec<String> = Indeterminates::components(n).names().to_vec();
    unknowns.push("lambda".into());
    ParametricLinearSystem::new(Matrix::from_rows(rows), rhs, unknowns)
}

fn kind_of(lambda: &RatFunc, lambda_free: bool) -> SolitonKind {
    if lambda_free {
        return SolitonKind::SignVaries;
    }
    match lambda.as_constant() {
        Some(v) if v.is_positive() => SolitonKind::Shrinking,
        Some(v) if v.is_zero() => SolitonKind::Steady,
        Some(_) => SolitonKind::Expanding,
        None => SolitonKind::SignVaries,
    }
}

fn witness(sol: &Solution, n: usize) -> Option<SolitonWitness> {
    let p = sol.particular.as_ref()?;
    let free_directions: Vec<(InvariantVector, RatFunc)> = sol
        .kernel
        .iter()
        .map(|k| (InvariantVector::new(k[..n].to_vec()), k[n].clone()))
        .collect();
    let lambda_free = free_directions.iter().any(|(_, l)| !l.is_zero());
    let lambda = p[n].clone();
    Some(SolitonWitness {
        field: InvariantVector::new(p[..n].to_vec()),
        kind: kind_of(&lambda, lambda_free),
        lambda,
        free_directions,
    })
}

/// Solves the soliton system generically and at each exceptional parameter.
pub fn ricci_soliton_solve(alg: &MetricLieAlgebra, convention: SolitonConvention) -> Result<SolitonVerdict, Error> {
    let n = alg.dim();
    let system = soliton_system(alg, convention)?;
    let solution = solve_parametric(&system);
    let generic = witness(&solution.generic, n);
    let det = alg.determinant();
    let mut exceptional = Vec::new();
    for b in &solution.exceptional {
        let (status, einstein) = match &b.kind {
            BranchKind::Pole => (SolitonBranchStatus::Undefined, None),
            BranchKind::Solved(s) => {
                if det.eval(&b.eps).map_or(true, |d| d.is_zero()) {
                    (SolitonBranchStatus::DegenerateMetric(s.clone()), None)
                } else {
                    let special = alg.specialize(&b.eps)?;
                    let einstein = einstein_check(&special)?;
                    let status = match witness(s, n) {
                        Some(w) => SolitonBranchStatus::Soliton(w),
                        None => SolitonBranchStatus::NoSoliton,
                    };
                    (status, einstein)
                }
            }
        };
        exceptional.push(SolitonBranch {
            eps: b.eps.clone(),
            status,
            einstein,
        });
    }
    Ok(SolitonVerdict {
        convention,
        einstein: einstein_check(alg)?,
        system,
        solution,
        generic,
        exceptional,
    })
}
