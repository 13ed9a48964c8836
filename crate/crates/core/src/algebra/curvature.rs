//! Curvature, Ricci tensor and their covariant derivatives.
//!
//! Sign convention: `R(x, y) = nabla_[x,y] - [nabla_x, nabla_y]`. With it the
//! round sphere has `g(R(X, Y)X, Y) > 0`, and the Ricci tensor is the
//! contraction `rho(Y, Z) = sum g^{kl} g(R(X_k, Y)X_l, Z)`, positive on spheres.

use super::connection::LeviCivita;
use super::{bracket, InvariantBilinear, InvariantOperator, InvariantVector, MetricLieAlgebra};
use crate::scalarfield::{Matrix, RatFunc};
use crate::Error;

/// Components `R[i][j][k][l] = g(R(X_i, X_j) X_k, X_l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTensor {
    dim: usize,
    components: Vec<RatFunc>,
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &RatFunc {
        let n = self.dim;
        &self.components[((i * n + j) * n + k) * n + l]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RatFunc::is_zero)
    }

    /// `R(x, y, z, w)` for arbitrary coordinate vectors.
    pub fn eval(&self, x: &[RatFunc], y: &[RatFunc], z: &[RatFunc], w: &[RatFunc]) -> RatFunc {
        let n = self.dim;
        let mut acc = RatFunc::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..n {
                    if z[k].is_zero() {
                        continue;
                    }
                    let xyz = &xy * &z[k];
                    for l in 0..n {
                        let c = self.get(i, j, k, l);
                        if !c.is_zero() && !w[l].is_zero() {
                            acc = &acc + &(&xyz * &(c * &w[l]));
                        }
                    }
                }
            }
        }
        acc
    }

    /// Indices (0-based) of every nonzero component.
    pub fn nonzero(&self) -> Vec<([usize; 4], RatFunc)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let c = self.get(i, j, k, l);
                        if !c.is_zero() {
                            out.push(([i, j, k, l], c.clone()));
                        }
                    }
                }
            }
        }
        out
    }
}

/// `(nabla_{X_i} rho)(X_j, X_k)` stored as `[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovRicci {
    dim: usize,
    components: Vec<RatFunc>,
}

impl CovRicci {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &RatFunc {
        let n = self.dim;
        &self.components[(i * n + j) * n + k]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RatFunc::is_zero)
    }
}

/// `(nabla_{X_i} R)(X_a, X_b, X_c, X_d)` stored as `[i][a][b][c][d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovCurvature {
    dim: usize,
    components: Vec<RatFunc>,
}

impl CovCurvature {
    pub fn get(&self, i: usize, a: usize, b: usize, c: usize, d: usize) -> &RatFunc {
        let n = self.dim;
        &self.components[(((i * n + a) * n + b) * n + c) * n + d]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RatFunc::is_zero)
    }
}

pub(crate) fn curvature_operator_with(lc: &LeviCivita, alg: &MetricLieAlgebra, x: &[RatFunc], y: &[RatFunc]) -> Matrix {
    let lx = lc.along(x);
    let ly = lc.along(y);
    let xy = bracket(
        alg,
        &InvariantVector::new(x.to_vec()),
        &InvariantVector::new(y.to_vec()),
    );
    &lc.along(&xy.coords) - &lx.commutator(&ly)
}

/// Curvature operator `R(x, y)`.
pub fn curvature(alg: &MetricLieAlgebra, x: &InvariantVector, y: &InvariantVector) -> Result<InvariantOperator, Error> {
    let lc = LeviCivita::new(alg)?;
    Ok(InvariantOperator {
        matrix: curvature_operator_with(&lc, alg, &x.coords, &y.coords),
    })
}

pub(crate) fn curvature_tensor_with(lc: &LeviCivita, alg: &MetricLieAlgebra) -> CurvatureTensor {
    let n = alg.dim();
    let g = alg.metric();
    let mut components = vec![RatFunc::zero(); n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let ei = InvariantVector::basis(n, i).coords;
            let ej = InvariantVector::basis(n, j).coords;
            // g(R(X_i,X_j)X_k, X_l) = (G * R)[l][k]
            let gr = g * &curvature_operator_with(lc, alg, &ei, &ej);
            for k in 0..n {
                for l in 0..n {
                    components[((i * n + j) * n + k) * n + l] = gr[(l, k)].clone();
                }
            }
        }
    }
    CurvatureTensor { dim: n, components }
}

pub fn curvature_tensor(alg: &MetricLieAlgebra) -> Result<CurvatureTensor, Error> {
    let lc = LeviCivita::new(alg)?;
    Ok(curvature_tensor_with(&lc, alg))
}

pub(crate) fn ricci_with(lc: &LeviCivita, r: &CurvatureTensor) -> Matrix {
    let n = r.dim();
    let gi = &lc.metric_inv;
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut acc = RatFunc::zero();
            for k in 0..n {
                for l in 0..n {
                    if gi[(k, l)].is_zero() {
                        continue;
                    }
                    let c = r.get(k, i, l, j);
                    if !c.is_zero() {
                        acc = &acc + &(&gi[(k, l)] * c);
                    }
                }
            }
            m[(i, j)] = acc.clone();
            m[(j, i)] = acc;
        }
    }
    m
}

/// Ricci tensor `rho(X_i, X_j) = sum_{k,l} g^{kl} R(X_k, X_i, X_l, X_j)`.
pub fn ricci(alg: &MetricLieAlgebra) -> Result<InvariantBilinear, Error> {
    let lc = LeviCivita::new(alg)?;
    let r = curvature_tensor_with(&lc, alg);
    Ok(InvariantBilinear::symmetric(ricci_with(&lc, &r)))
}

pub(crate) fn cov_ricci_with(lc: &LeviCivita, rho: &Matrix) -> CovRicci {
    let n = lc.dim();
    let mut components = vec![RatFunc::zero(); n * n * n];
    for i in 0..n {
        let li = &lc.operators[i];
        for j in 0..n {
            for k in 0..n {
                let mut acc = RatFunc::zero();
                for m in 0..n {
                    if !li[(m, j)].is_zero() {
                        acc = &acc - &(&li[(m, j)] * &rho[(m, k)]);
                    }
                    if !li[(m, k)].is_zero() {
                        acc = &acc - &(&li[(m, k)] * &rho[(j, m)]);
                    }
                }
                components[(i * n + j) * n + k] = acc;
            }
        }
    }
    CovRicci { dim: n, components }
}

/// `(nabla_{X_i} rho)(X_j, X_k) = -rho(nabla_{X_i} X_j, X_k) - rho(X_j, nabla_{X_i} X_k)`.
pub fn cov_ricci(alg: &MetricLieAlgebra) -> Result<CovRicci, Error> {
    let lc = LeviCivita::new(alg)?;
    let r = curvature_tensor_with(&lc, alg);
    let rho = ricci_with(&lc, &r);
    Ok(cov_ricci_with(&lc, &rho))
}

pub(crate) fn cov_curvature_with(lc: &LeviCivita, r: &CurvatureTensor) -> CovCurvature {
    let n = r.dim();
    let mut components = vec![RatFunc::zero(); n.pow(5)];
    for i in 0..n {
        let li = &lc.operators[i];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut acc = RatFunc::zero();
                        for m in 0..n {
                            let terms = [
                                (&li[(m, a)], r.get(m, b, c, d)),
                                (&li[(m, b)], r.get(a, m, c, d)),
                                (&li[(m, c)], r.get(a, b, m, d)),
                                (&li[(m, d)], r.get(a, b, c, m)),
                            ];
                            for (l, rv) in terms {
                                if !l.is_zero() && !rv.is_zero() {
                                    acc = &acc - &(l * rv);
                                }
                            }
                        }
                        components[(((i * n + a) * n + b) * n + c) * n + d] = acc;
                    }
                }
            }
        }
    }
    CovCurvature { dim: n, components }
}

/// `nabla R` by the Leibniz rule over all four slots.
pub fn cov_curvature(alg: &MetricLieAlgebra) -> Result<CovCurvature, Error> {
    let lc = LeviCivita::new(alg)?;
    let r = curvature_tensor_with(&lc, alg);
    Ok(cov_curvature_with(&lc, &r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalarfield::{parse_ratfunc, rat};

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn berger_curvature_operators() {
        let alg = catalog::berger().algebra;
        let x = |i| InvariantVector::basis(3, i);
        let r12 = curvature(&alg, &x(0), &x(1)).unwrap();
        assert_eq!(
            r12.apply(&x(1)).coords,
            vec![rf("-eps"), RatFunc::zero(), RatFunc::zero()]
        );
        let r23 = curvature(&alg, &x(1), &x(2)).unwrap();
        assert_eq!(
            r23.apply(&x(2)).coords,
            vec![RatFunc::zero(), rf("3*eps-4"), RatFunc::zero()]
        );
        assert!(curvature(&alg, &x(2), &x(2)).unwrap().matrix.is_zero());
    }

    #[test]
    fn berger_sectional_components() {
        let r = curvature_tensor(&catalog::berger().algebra).unwrap();
        assert_eq!(r.get(0, 1, 0, 1), &rf("eps^2"));
        assert_eq!(r.get(0, 2, 0, 2), &rf("eps^2"));
        assert_eq!(r.get(1, 2, 1, 2), &rf("4-3*eps"));
    }

    #[test]
    fn berger_ricci() {
        let rho = ricci(&catalog::berger().algebra).unwrap().matrix;
        assert_eq!(rho, Matrix::diagonal(&[rf("2*eps^2"), rf("4-2*eps"), rf("4-2*eps")]));
        assert_eq!(
            rho.specialize(&rat(2)).unwrap(),
            Matrix::diagonal(&[RatFunc::int(8), RatFunc::zero(), RatFunc::zero()])
        );
    }

    #[test]
    fn berger_cov_ricci() {
        let c = cov_ricci(&catalog::berger().algebra).unwrap();
        assert!(c.get(0, 0, 0).is_zero());
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let s = &(c.get(i, j, k) + c.get(j, k, i)) + c.get(k, i, j);
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn round_sphere_is_locally_symmetric() {
        let alg = catalog::berger().algebra.specialize(&rat(1)).unwrap();
        assert!(cov_curvature(&alg).unwrap().is_zero());
        assert!(!cov_curvature(&catalog::berger().algebra).unwrap().is_zero());
    }

    #[test]
    fn abelian_is_flat() {
        let alg = catalog::abelian_control().algebra;
        assert!(curvature_tensor(&alg).unwrap().is_zero());
        assert!(ricci(&alg).unwrap().matrix.is_zero());
        assert!(cov_ricci(&alg).unwrap().is_zero());
        assert!(cov_curvature(&alg).unwrap().is_zero());
    }
}
