//! Levi-Civita connection of a left-invariant metric.

use super::{bracket, InvariantBilinear, InvariantOperator, InvariantVector, MetricLieAlgebra};
use crate::scalarfield::{Matrix, RatFunc, Rational};
use crate::Error;

/// Connection operators `Lambda_i = nabla_{X_i}` together with the inverse
/// metric used to build them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviCivita {
    pub metric_inv: Matrix,
    pub operators: Vec<Matrix>,
}

impl LeviCivita {
    pub fn new(alg: &MetricLieAlgebra) -> Result<Self, Error> {
        let n = alg.dim();
        let metric_inv = alg.metric_inverse()?;
        let operators = (0..n)
            .map(|i| {
                let cols: Vec<Vec<RatFunc>> = (0..n)
                    .map(|j| {
                        nabla_with(
                            alg,
                            &metric_inv,
                            &InvariantVector::basis(n, i),
                            &InvariantVector::basis(n, j),
                        )
                        .coords
                    })
                    .collect();
                Matrix::from_columns(&cols)
            })
            .collect();
        Ok(LeviCivita { metric_inv, operators })
    }

    pub fn dim(&self) -> usize {
        self.operators.len()
    }

    /// `nabla_x` as a matrix: `sum_i x_i Lambda_i`.
    pub fn along(&self, x: &[RatFunc]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = &m + &self.operators[i].scale(xi);
            }
        }
        m
    }

    /// `nabla_x y`
    pub fn apply(&self, x: &[RatFunc], y: &[RatFunc]) -> Vec<RatFunc> {
        self.along(x).mul_vec(y)
    }

    pub fn specialize(&self, eps0: &Rational) -> Result<LeviCivita, Error> {
        Ok(LeviCivita {
            metric_inv: self.metric_inv.specialize(eps0)?,
            operators: self
                .operators
                .iter()
                .map(|m| m.specialize(eps0))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// `nabla_x y = 1/2 [x, y] + U(x, y)` with the symmetric part `U` fixed by
/// `2 g(U(x, y), z) = g(x, [z, y]) + g(y, [z, x])` for every `z`.
fn nabla_with(
    alg: &MetricLieAlgebra,
    metric_inv: &Matrix,
    x: &InvariantVector,
    y: &InvariantVector,
) -> InvariantVector {
    let n = alg.dim();
    let half = RatFunc::constant(Rational::new(1.into(), 2.into()));
    // Covector z -> g(U(x, y), z).
    let cov: Vec<RatFunc> = (0..n)
        .map(|k| {
            let z = InvariantVector::basis(n, k);
            let t = &alg.inner(x, &bracket(alg, &z, y)) + &alg.inner(y, &bracket(alg, &z, x));
            &t * &half
        })
        .collect();
    let u = metric_inv.mul_vec(&cov);
    let b = bracket(alg, x, y);
    InvariantVector::new(b.coords.iter().zip(&u).map(|(bk, uk)| &(bk * &half) + uk).collect())
}

/// Levi-Civita covariant derivative `nabla_x y` of invariant fields.
pub fn nabla(alg: &MetricLieAlgebra, x: &InvariantVector, y: &InvariantVector) -> Result<InvariantVector, Error> {
    let metric_inv = alg.metric_inverse()?;
    Ok(nabla_with(alg, &metric_inv, x, y))
}

/// `Lambda_i = nabla_{X_i}`; column `j` of `Lambda_i` holds `nabla_{X_i} X_j`.
pub fn connection_operators(alg: &MetricLieAlgebra) -> Result<Vec<InvariantOperator>, Error> {
    Ok(LeviCivita::new(alg)?
        .operators
        .into_iter()
        .map(|matrix| InvariantOperator { matrix })
        .collect())
}

pub(crate) fn lie_derivative_with(alg: &MetricLieAlgebra, lc: &LeviCivita, x: &[RatFunc]) -> Matrix {
    let n = alg.dim();
    let g = alg.metric();
    // Column j: nabla_{X_j} x, then covector G * (nabla_{X_j} x).
    let cov: Vec<Vec<RatFunc>> = (0..n).map(|j| g.mul_vec(&lc.operators[j].mul_vec(x))).collect();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            m[(j, k)] = &cov[j][k] + &cov[k][j];
        }
    }
    m
}

/// `(L_x g)(Y, Z) = g(nabla_Y x, Z) + g(Y, nabla_Z x)`.
pub fn lie_derivative_metric(alg: &MetricLieAlgebra, x: &InvariantVector) -> Result<InvariantBilinear, Error> {
    let lc = LeviCivita::new(alg)?;
    Ok(InvariantBilinear::symmetric(lie_derivative_with(alg, &lc, &x.coords)))
}
