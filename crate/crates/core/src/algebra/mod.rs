//! Metric Lie algebras and the invariant tensor calculus on them.
//!
//! A left-invariant metric on a Lie group is determined by its value on the
//! Lie algebra, so every tensor here is a constant array in the chosen basis
//! `X_1..X_n` with entries in Q(eps).

mod connection;
mod curvature;
pub mod format;
pub mod symbolic;

use std::fmt;

use num_traits::Zero;

use crate::scalarfield::{Matrix, RatFunc, Rational};
use crate::{Error, Violation};

pub use connection::{connection_operators, lie_derivative_metric, nabla, LeviCivita};
pub use curvature::{
    cov_curvature, cov_ricci, curvature, curvature_tensor, ricci, CovCurvature, CovRicci, CurvatureTensor,
};
pub(crate) use curvature::{
    cov_curvature_with, cov_ricci_with, curvature_operator_with, curvature_tensor_with, ricci_with,
};

/// Largest supported dimension.
pub const MAX_DIM: usize = 4;

/// Coordinates of a left-invariant vector field in the basis `X_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantVector {
    pub coords: Vec<RatFunc>,
}

impl InvariantVector {
    pub fn new(coords: Vec<RatFunc>) -> Self {
        InvariantVector { coords }
    }

    pub fn zero(n: usize) -> Self {
        InvariantVector {
            coords: vec![RatFunc::zero(); n],
        }
    }

    /// The basis vector `X_{i+1}`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = InvariantVector::zero(n);
        v.coords[i] = RatFunc::one();
        v
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        InvariantVector {
            coords: coords.iter().map(|&c| RatFunc::int(c)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RatFunc::is_zero)
    }

    pub fn add(&self, other: &InvariantVector) -> InvariantVector {
        InvariantVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &InvariantVector) -> InvariantVector {
        InvariantVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> InvariantVector {
        InvariantVector {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Endomorphism of the Lie algebra; column `j` is the image of `X_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantOperator {
    pub matrix: Matrix,
}

impl InvariantOperator {
    pub fn apply(&self, v: &InvariantVector) -> InvariantVector {
        InvariantVector::new(self.matrix.mul_vec(&v.coords))
    }
}

/// Bilinear form `B(X_i, X_j) = matrix[(i, j)]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantBilinear {
    pub matrix: Matrix,
    pub symmetric: bool,
}

impl InvariantBilinear {
    pub fn symmetric(matrix: Matrix) -> Self {
        debug_assert!(matrix.is_symmetric());
        InvariantBilinear {
            matrix,
            symmetric: true,
        }
    }

    pub fn eval(&self, x: &InvariantVector, y: &InvariantVector) -> RatFunc {
        self.matrix.bilinear(&x.coords, &y.coords)
    }
}

/// Lie algebra with structure constants `[X_i, X_j] = sum_k C[i][j][k] X_k`
/// and a (pseudo-)metric, both depending rationally on `eps`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetricLieAlgebra {
    name: String,
    basis_names: Vec<String>,
    structure: Vec<RatFunc>,
    metric: Matrix,
}

impl MetricLieAlgebra {
    /// Assembles an algebra without checking it; see [`MetricLieAlgebra::new`].
    pub fn from_parts(
        name: impl Into<String>,
        basis_names: Vec<String>,
        structure: Vec<Vec<Vec<RatFunc>>>,
        metric: Matrix,
    ) -> Self {
        let n = basis_names.len();
        let mut flat = vec![RatFunc::zero(); n * n * n];
        for (i, plane) in structure.iter().enumerate().take(n) {
            for (j, row) in plane.iter().enumerate().take(n) {
                for (k, c) in row.iter().enumerate().take(n) {
                    flat[(i * n + j) * n + k] = c.clone();
                }
            }
        }
        MetricLieAlgebra {
            name: name.into(),
            basis_names,
            structure: flat,
            metric,
        }
    }

    /// Builds an algebra from brackets listed for `i < j` only, filling in
    /// antisymmetry. Each entry is `(i, j, k, coeff)`, 0-based.
    pub fn from_brackets(
        name: impl Into<String>,
        basis_names: Vec<String>,
        brackets: &[(usize, usize, usize, RatFunc)],
        metric: Matrix,
    ) -> Result<Self, Error> {
        let n = basis_names.len();
        let mut s = vec![vec![vec![RatFunc::zero(); n]; n]; n];
        for (i, j, k, c) in brackets {
            s[*i][*j][*k] = &s[*i][*j][*k] + c;
            s[*j][*i][*k] = &s[*j][*i][*k] - c;
        }
        MetricLieAlgebra::from_parts(name, basis_names, s, metric).validated()
    }

    /// Checked constructor.
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        structure: Vec<Vec<Vec<RatFunc>>>,
        metric: Matrix,
    ) -> Result<Self, Error> {
        MetricLieAlgebra::from_parts(name, basis_names, structure, metric).validated()
    }

    pub fn validated(self) -> Result<Self, Error> {
        let v = validate(&self);
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::ValidationFailed(v))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn metric(&self) -> &Matrix {
        &self.metric
    }

    /// `C[i][j][k]`, 0-based.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &RatFunc {
        let n = self.dim();
        &self.structure[(i * n + j) * n + k]
    }

    pub fn structure(&self) -> Vec<Vec<Vec<RatFunc>>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.structure_constant(i, j, k).clone()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn metric_inverse(&self) -> Result<Matrix, Error> {
        self.metric.inverse()
    }

    /// `g(x, y)`
    pub fn inner(&self, x: &InvariantVector, y: &InvariantVector) -> RatFunc {
        self.metric.bilinear(&x.coords, &y.coords)
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(RatFunc::is_zero)
    }

    /// Metric determinant; its rational roots are where the metric degenerates.
    pub fn determinant(&self) -> RatFunc {
        self.metric.det()
    }

    /// Substitutes `eps = eps0`; the result has constant entries.
    pub fn specialize(&self, eps0: &Rational) -> Result<MetricLieAlgebra, Error> {
        let structure = self
            .structure
            .iter()
            .map(|c| c.eval(eps0).map(RatFunc::constant))
            .collect::<Result<Vec<_>, _>>()?;
        let metric = self.metric.specialize(eps0)?;
        if metric.det().is_zero() {
            return Err(Error::SingularMetricAtPoint(eps0.clone()));
        }
        Ok(MetricLieAlgebra {
            name: format!(
                "{} @ eps={}",
                self.name,
                crate::scalarfield::rational::format_rational(eps0)
            ),
            basis_names: self.basis_names.clone(),
            structure,
            metric,
        })
    }

    /// Re-expresses the algebra in the basis `Y_a = sum_i P[i][a] X_i`.
    pub fn change_basis(&self, p: &Matrix) -> Result<MetricLieAlgebra, Error> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.rows(),
            });
        }
        let p_inv = p.inverse()?;
        let mut s = vec![vec![vec![RatFunc::zero(); n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                let ya = InvariantVector::new(p.column(a));
                let yb = InvariantVector::new(p.column(b));
                let br = bracket(self, &ya, &yb);
                s[a][b] = p_inv.mul_vec(&br.coords);
            }
        }
        let metric = &(&p.transpose() * &self.metric) * p;
        let names = (1..=n).map(|i| format!("Y{i}")).collect();
        MetricLieAlgebra::new(format!("{} (new basis)", self.name), names, s, metric)
    }
}

/// All violated structural identities, empty for a valid algebra.
pub fn validate(alg: &MetricLieAlgebra) -> Vec<Violation> {
    let n = alg.dim();
    let mut out = Vec::new();
    if n == 0 || n > MAX_DIM {
        out.push(Violation::DimensionOutOfRange { dim: n });
        return out;
    }
    if alg.structure.len() != n * n * n {
        out.push(Violation::ShapeMismatch {
            what: "structure constants",
        });
        return out;
    }
    if alg.metric.rows() != n || alg.metric.cols() != n {
        out.push(Violation::ShapeMismatch { what: "metric" });
        return out;
    }
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let a = alg.structure_constant(i, j, k);
                let b = alg.structure_constant(j, i, k);
                if !(a + b).is_zero() {
                    out.push(Violation::Antisymmetry { i, j, k });
                }
            }
        }
    }
    // Jacobi: [X_i,[X_j,X_k]] + [X_j,[X_k,X_i]] + [X_k,[X_i,X_j]] = 0
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for m in 0..n {
                    let mut sum = RatFunc::zero();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for l in 0..n {
                            let inner = alg.structure_constant(b, c, l);
                            if inner.is_zero() {
                                continue;
                            }
                            sum = &sum + &(inner * alg.structure_constant(a, l, m));
                        }
                    }
                    if !sum.is_zero() {
                        out.push(Violation::Jacobi { i, j, k, component: m });
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if alg.metric[(i, j)] != alg.metric[(j, i)] {
                out.push(Violation::MetricNotSymmetric { i, j });
            }
        }
    }
    if alg.metric.det().is_zero() {
        out.push(Violation::DegenerateMetric);
    }
    out
}

/// `[x, y]`, expanded through the structure constants.
pub fn bracket(alg: &MetricLieAlgebra, x: &InvariantVector, y: &InvariantVector) -> InvariantVector {
    let n = alg.dim();
    assert_eq!(x.dim(), n, "vector dimension mismatch");
    assert_eq!(y.dim(), n, "vector dimension mismatch");
    let mut out = vec![RatFunc::zero(); n];
    for i in 0..n {
        if x.coords[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y.coords[j].is_zero() || i == j {
                continue;
            }
            let xy = &x.coords[i] * &y.coords[j];
            for (k, o) in out.iter_mut().enumerate() {
                let c = alg.structure_constant(i, j, k);
                if !c.is_zero() {
                    *o = &*o + &(&xy * c);
                }
            }
        }
    }
    InvariantVector::new(out)
}

/// Sign of the metric at a rational point: counts of positive and negative
/// eigenvalues, from an exact LDL^T-style elimination.
pub fn signature_at(alg: &MetricLieAlgebra, eps0: &Rational) -> Result<(usize, usize), Error> {
    let g = alg.metric.eval(eps0)?;
    exact_signature(g).ok_or_else(|| Error::SingularMetricAtPoint(eps0.clone()))
}

fn exact_signature(mut a: Vec<Vec<Rational>>) -> Option<(usize, usize)> {
    // Symmetric Gaussian elimination with 2x2 handling for zero diagonals.
    let n = a.len();
    let mut pos = 0;
    let mut neg = 0;
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        if let Some(&p) = active.iter().find(|&&i| !a[i][i].is_zero()) {
            let d = a[p][p].clone();
            if d > Rational::zero() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != p);
            for &i in &active {
                for &j in &active {
                    let t = &a[i][p] * &a[p][j] / &d;
                    a[i][j] -= t;
                }
            }
            continue;
        }
        // All remaining diagonals vanish: find an off-diagonal pair.
        let pair = active
            .iter()
            .flat_map(|&i| active.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i != j && !a[i][j].is_zero());
        let (i, j) = pair?;
        // Replace basis vector i by e_i + e_j, making the diagonal nonzero.
        for &k in &active {
            let v = a[k][j].clone();
            a[k][i] += v;
        }
        for &k in &active {
            let v = a[j][k].clone();
            a[i][k] += v;
        }
    }
    Some((pos, neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalarfield::rat;

    #[test]
    fn berger_brackets() {
        let alg = catalog::berger().algebra;
        let x1 = InvariantVector::basis(3, 0);
        let x2 = InvariantVector::basis(3, 1);
        let x3 = InvariantVector::basis(3, 2);
        assert_eq!(bracket(&alg, &x1, &x2), InvariantVector::from_i64(&[0, 0, 2]));
        assert_eq!(bracket(&alg, &x2, &x3), InvariantVector::from_i64(&[2, 0, 0]));
        let v = InvariantVector::from_i64(&[1, -3, 5]);
        assert!(bracket(&alg, &v, &v).is_zero());
    }

    #[test]
    fn berger_validates() {
        assert!(validate(&catalog::berger().algebra).is_empty());
    }

    #[test]
    fn antisymmetry_violation_is_reported() {
        let mut s = catalog::berger().algebra.structure();
        s[1][0][2] = RatFunc::int(2); // C[2][1][3] = +2 alongside C[1][2][3] = 2
        let alg = MetricLieAlgebra::from_parts(
            "bad",
            catalog::berger().algebra.basis_names().to_vec(),
            s,
            catalog::berger().algebra.metric().clone(),
        );
        let v = validate(&alg);
        assert!(v.contains(&Violation::Antisymmetry { i: 0, j: 1, k: 2 }), "{v:?}");
    }

    #[test]
    fn rescaled_su2_bracket_is_still_a_lie_algebra() {
        // [X2,X3] = 3X1: every cyclic double bracket is [X_i, c X_i] = 0.
        let base = catalog::berger().algebra;
        let mut s = base.structure();
        s[1][2][0] = RatFunc::int(3);
        s[2][1][0] = RatFunc::int(-3);
        let alg = MetricLieAlgebra::from_parts("scaled", base.basis_names().to_vec(), s, base.metric().clone());
        assert!(validate(&alg).is_empty());
    }

    #[test]
    fn jacobi_violation_is_reported() {
        // [X1,X2] = X1 + 2X3: the cyclic sum is 2 X2 (hand expansion:
        // [X1,[X2,X3]] = 2[X1,X1] = 0, [X2,[X3,X1]] = 2[X2,X2] = 0,
        // [X3,[X1,X2]] = [X3,X1] + 2[X3,X3] = 2 X2).
        let base = catalog::berger().algebra;
        let mut s = base.structure();
        s[0][1][0] = RatFunc::int(1);
        s[1][0][0] = RatFunc::int(-1);
        let alg = MetricLieAlgebra::from_parts("bad", base.basis_names().to_vec(), s, base.metric().clone());
        assert_eq!(
            validate(&alg),
            vec![Violation::Jacobi {
                i: 0,
                j: 1,
                k: 2,
                component: 1
            }]
        );
    }

    #[test]
    fn degenerate_metric_is_rejected() {
        let base = catalog::berger().algebra;
        let metric = Matrix::diagonal(&[RatFunc::zero(), RatFunc::one(), RatFunc::one()]);
        let alg = MetricLieAlgebra::from_parts("deg", base.basis_names().to_vec(), base.structure(), metric);
        assert_eq!(validate(&alg), vec![Violation::DegenerateMetric]);
    }

    #[test]
    fn signatures() {
        let alg = catalog::berger().algebra;
        assert_eq!(signature_at(&alg, &rat(2)).unwrap(), (3, 0));
        assert_eq!(signature_at(&alg, &rat(-1)).unwrap(), (2, 1));
        assert!(signature_at(&alg, &rat(0)).is_err());
        let hyperbolic = vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]];
        assert_eq!(exact_signature(hyperbolic), Some((1, 1)));
    }
}
