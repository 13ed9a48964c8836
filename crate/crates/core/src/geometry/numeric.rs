//! Floating-point evaluation at a rational parameter.
//!
//! Two independent paths are kept side by side: the exact X-basis results
//! evaluated at `eps0`, and a direct computation in a pseudo-orthonormal
//! frame `e_a` with `g(e_a, e_b) = eta_a delta_ab`, starting again from the
//! structure constants. Frame-invariant quantities must agree.

use nalgebra::{Complex, DMatrix, DVector};

use super::harmonic::rough_laplacian;
use crate::algebra::{connection_operators, ricci, signature_at, MetricLieAlgebra};
use crate::scalarfield::rational::rational_to_f64;
use crate::scalarfield::{Matrix, Rational};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignatureKind {
    Riemannian,
    Lorentzian,
    NegativeDefinite,
    Neutral { positive: usize, negative: usize },
}

impl SignatureKind {
    pub fn from_counts(positive: usize, negative: usize) -> Self {
        match (positive, negative) {
            (_, 0) => SignatureKind::Riemannian,
            (0, _) => SignatureKind::NegativeDefinite,
            (p, q) if p == 1 || q == 1 => SignatureKind::Lorentzian,
            (positive, negative) => SignatureKind::Neutral { positive, negative },
        }
    }

    pub fn label(self) -> String {
        match self {
            SignatureKind::Riemannian => "Riemannian".into(),
            SignatureKind::Lorentzian => "Lorentzian".into(),
            SignatureKind::NegativeDefinite => "negative definite".into(),
            SignatureKind::Neutral { positive, negative } => format!("signature ({positive}, {negative})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericModel {
    pub eps: Rational,
    pub signature: SignatureKind,
    pub positive: usize,
    pub negative: usize,
    pub metric: DMatrix<f64>,
    /// Column `a` holds the X-coordinates of `e_a`.
    pub frame: DMatrix<f64>,
    /// `eta_a = g(e_a, e_a)`
    pub frame_signs: Vec<f64>,
    pub x_connection: Vec<DMatrix<f64>>,
    pub x_ricci: DMatrix<f64>,
    pub x_laplacian: DMatrix<f64>,
    pub frame_connection: Vec<DMatrix<f64>>,
    pub frame_ricci: DMatrix<f64>,
    pub frame_laplacian: DMatrix<f64>,
}

fn to_f64(m: &Matrix, eps0: &Rational) -> Result<DMatrix<f64>, Error> {
    let rows = m.eval(eps0)?;
    Ok(DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        rational_to_f64(&rows[i][j])
    }))
}

/// `e_a = X_a / sqrt|g_aa|` for diagonal metrics, otherwise from the
/// symmetric eigendecomposition of `g`.
fn pseudo_orthonormal_frame(g: &DMatrix<f64>) -> (DMatrix<f64>, Vec<f64>) {
    let n = g.nrows();
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || g[(i, j)] == 0.0));
    if diagonal {
        let f = DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 / g[(i, i)].abs().sqrt() } else { 0.0 });
        return (f, (0..n).map(|i| g[(i, i)].signum()).collect());
    }
    let eig = g.clone().symmetric_eigen();
    let mut f = eig.eigenvectors.clone();
    for a in 0..n {
        let s = 1.0 / eig.eigenvalues[a].abs().sqrt();
        for i in 0..n {
            f[(i, a)] *= s;
        }
    }
    (f, eig.eigenvalues.iter().map(|v| v.signum()).collect())
}

/// Levi-Civita operators, Ricci and rough Laplacian computed directly in a
/// pseudo-orthonormal frame from the frame structure constants `c[a][b][c]`.
fn frame_geometry(c: &[Vec<Vec<f64>>], eta: &[f64]) -> (Vec<DMatrix<f64>>, DMatrix<f64>, DMatrix<f64>) {
    let n = eta.len();
    let gb = |a: usize, b: usize, k: usize| c[a][b][k] * eta[k]; // g([e_a, e_b], e_k)
    let ops: Vec<DMatrix<f64>> = (0..n)
        .map(|a| DMatrix::from_fn(n, n, |k, b| 0.5 * (gb(a, b, k) - gb(b, k, a) + gb(k, a, b)) * eta[k]))
        .collect();
    let along = |x: &DVector<f64>| -> DMatrix<f64> {
        let mut m = DMatrix::zeros(n, n);
        for (a, op) in ops.iter().enumerate() {
            m += op * x[a];
        }
        m
    };
    let curv = |a: usize, b: usize| -> DMatrix<f64> {
        let br = DVector::from_fn(n, |k, _| c[a][b][k]);
        along(&br) - (&ops[a] * &ops[b] - &ops[b] * &ops[a])
    };
    let mut ric = DMatrix::zeros(n, n);
    for k in 0..n {
        for i in 0..n {
            let rki = curv(k, i);
            for j in 0..n {
                // eta_k g(R(e_k, e_i) e_k, e_j)
                ric[(i, j)] += eta[k] * rki[(j, k)] * eta[j];
            }
        }
    }
    let mut lap = DMatrix::zeros(n, n);
    for a in 0..n {
        let na = ops[a].column(a).into_owned();
        lap += (&ops[a] * &ops[a] - along(&na)) * eta[a];
    }
    (ops, ric, lap)
}

/// Numeric model of `alg` at `eps0` in the X-basis and in a pseudo-orthonormal frame.
pub fn evaluate_numeric(alg: &MetricLieAlgebra, eps0: &Rational) -> Result<NumericModel, Error> {
    let special = alg.specialize(eps0)?;
    let n = alg.dim();
    let (positive, negative) = signature_at(alg, eps0)?;
    let metric = to_f64(special.metric(), eps0)?;
    let x_connection = connection_operators(&special)?
        .iter()
        .map(|op| to_f64(&op.matrix, eps0))
        .collect::<Result<Vec<_>, _>>()?;
    let x_ricci = to_f64(&ricci(&special)?.matrix, eps0)?;
    let x_laplacian = to_f64(&rough_laplacian(&special)?.matrix, eps0)?;

    let (frame, frame_signs) = pseudo_orthonormal_frame(&metric);
    let finv = frame
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::SingularMetricAtPoint(eps0.clone()))?;
    let k: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|l| rational_to_f64(&special.structure_constant(i, j, l).eval(eps0).expect("constant")))
                        .collect()
                })
                .collect()
        })
        .collect();
    // [e_a, e_b] in frame coordinates.
    let c: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut x = DVector::zeros(n);
                    for i in 0..n {
                        for j in 0..n {
                            let w = frame[(i, a)] * frame[(j, b)];
                            if w != 0.0 {
                                for l in 0..n {
                                    x[l] += w * k[i][j][l];
                                }
                            }
                        }
                    }
                    (&finv * x).iter().copied().collect()
                })
                .collect()
        })
        .collect();
    let (frame_connection, frame_ricci, frame_laplacian) = frame_geometry(&c, &frame_signs);
    Ok(NumericModel {
        eps: eps0.clone(),
        signature: SignatureKind::from_counts(positive, negative),
        positive,
        negative,
        metric,
        frame,
        frame_signs,
        x_connection,
        x_ricci,
        x_laplacian,
        frame_connection,
        frame_ricci,
        frame_laplacian,
    })
}

/// Eigenvalues sorted by real then imaginary part.
pub fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<Complex<f64>> {
    let mut v: Vec<Complex<f64>> = m.complex_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

/// Groups nearly equal eigenvalues: `(value, multiplicity)`.
pub fn cluster(values: &[Complex<f64>], rel_tol: f64) -> Vec<(Complex<f64>, usize)> {
    let mut out: Vec<(Complex<f64>, usize)> = Vec::new();
    for v in values {
        match out
            .iter_mut()
            .find(|(c, _)| (c - v).norm() <= rel_tol * c.norm().max(v.norm()).max(1.0))
        {
            Some(c) => c.1 += 1,
            None => out.push((*v, 1)),
        }
    }
    out
}

/// `|a - b| / max(|a|, |b|, 1)`
pub fn relative_difference(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

impl NumericModel {
    pub fn dim(&self) -> usize {
        self.metric.nrows()
    }

    pub fn x_laplacian_eigenvalues(&self) -> Vec<Complex<f64>> {
        sorted_eigenvalues(&self.x_laplacian)
    }

    pub fn frame_laplacian_eigenvalues(&self) -> Vec<Complex<f64>> {
        sorted_eigenvalues(&self.frame_laplacian)
    }

    /// Ricci tensor of the X-basis path expressed in the frame, `F^T rho F`.
    pub fn x_ricci_in_frame(&self) -> DMatrix<f64> {
        self.frame.transpose() * &self.x_ricci * &self.frame
    }

    /// `sum g^{ij} g(nabla_{X_i} V, nabla_{X_j} V)` for X-coordinates `v`.
    pub fn x_grad_norm_sq(&self, v: &[f64]) -> f64 {
        let v = DVector::from_column_slice(v);
        let gi = self.metric.clone().try_inverse().expect("regular metric");
        let nv: Vec<DVector<f64>> = self.x_connection.iter().map(|m| m * &v).collect();
        let mut acc = 0.0;
        for i in 0..nv.len() {
            for j in 0..nv.len() {
                acc += gi[(i, j)] * (nv[i].transpose() * &self.metric * &nv[j])[(0, 0)];
            }
        }
        acc
    }

    /// `sum_a eta_a g(nabla_{e_a} V, nabla_{e_a} V)` for frame coordinates `v`.
    pub fn frame_grad_norm_sq(&self, v: &[f64]) -> f64 {
        let v = DVector::from_column_slice(v);
        let eta = &self.frame_signs;
        self.frame_connection
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let w = m * &v;
                eta[a] * w.iter().enumerate().map(|(k, x)| eta[k] * x * x).sum::<f64>()
            })
            .sum()
    }

    /// X-coordinates of the frame vector with coordinates `v`.
    pub fn frame_to_x(&self, v: &[f64]) -> Vec<f64> {
        (&self.frame * DVector::from_column_slice(v)).iter().copied().collect()
    }

    /// Largest relative disagreement between the two paths over Laplacian
    /// eigenvalues and Ricci components.
    pub fn path_discrepancy(&self) -> f64 {
        let a = self.x_laplacian_eigenvalues();
        let b = self.frame_laplacian_eigenvalues();
        let mut worst: f64 = 0.0;
        for (x, y) in a.iter().zip(&b) {
            worst = worst.max((x - y).norm() / x.norm().max(y.norm()).max(1.0));
        }
        let r = self.x_ricci_in_frame();
        for (x, y) in r.iter().zip(self.frame_ricci.iter()) {
            worst = worst.max(relative_difference(*x, *y));
        }
        worst
    }

    /// Smallest departure from `nabla_{X_i} V` parallel to `V` over null
    /// directions `V`; `None` for a definite metric. Null directions are
    /// `u + w` with `u`, `w` unit vectors of the negative and positive frame
    /// blocks; a grid search is refined by coordinate descent.
    pub fn null_cone_scan(&self) -> Option<f64> {
        let neg: Vec<usize> = (0..self.dim()).filter(|&a| self.frame_signs[a] < 0.0).collect();
        let pos: Vec<usize> = (0..self.dim()).filter(|&a| self.frame_signs[a] > 0.0).collect();
        if neg.is_empty() || pos.is_empty() {
            return None;
        }
        let params = (neg.len() - 1) + (pos.len() - 1);
        let residual = |angles: &[f64], sign: f64| -> f64 {
            let mut v = vec![0.0; self.dim()];
            let (a1, a2) = angles.split_at(neg.len() - 1);
            for (idx, x) in neg.iter().zip(sphere_point(a1)) {
                v[*idx] = sign * x;
            }
            for (idx, x) in pos.iter().zip(sphere_point(a2)) {
                v[*idx] = x;
            }
            self.parallel_residual(&self.frame_to_x(&v))
        };
        let steps: usize = match params {
            0 => 1,
            1 => 720,
            2 => 120,
            _ => 24,
        };
        let h = std::f64::consts::PI / steps as f64;
        let mut best = (f64::INFINITY, vec![0.0; params], 1.0);
        for sign in [1.0, -1.0] {
            let total = (2 * steps).pow(params as u32);
            for idx in 0..total {
                let mut k = idx;
                let angles: Vec<f64> = (0..params)
                    .map(|_| {
                        let t = (k % (2 * steps)) as f64 * h;
                        k /= 2 * steps;
                        t
                    })
                    .collect();
                let r = residual(&angles, sign);
                if r < best.0 {
                    best = (r, angles, sign);
                }
            }
        }
        let (mut r, mut angles, sign) = best;
        let mut step = h;
        for _ in 0..200 {
            if params == 0 || r == 0.0 {
                break;
            }
            let mut improved = false;
            for p in 0..params {
                for d in [step, -step] {
                    let mut trial = angles.clone();
                    trial[p] += d;
                    let t = residual(&trial, sign);
                    if t < r {
                        r = t;
                        angles = trial;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        Some(r)
    }

    /// `max_i |Lambda_i v - proj_v(Lambda_i v)| / (|Lambda_i| |v|)` in X-coordinates.
    pub fn parallel_residual(&self, v: &[f64]) -> f64 {
        let v = DVector::from_column_slice(v);
        let vv = v.dot(&v);
        self.x_connection
            .iter()
            .map(|m| {
                let norm = m.norm();
                if norm == 0.0 {
                    return 0.0;
                }
                let w = m * &v;
                let perp = &w - &v * (w.dot(&v) / vv);
                perp.norm() / (norm * vv.sqrt())
            })
            .fold(0.0, f64::max)
    }
}

/// Point on the unit sphere `S^k` from `k` hyperspherical angles.
fn sphere_point(angles: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(angles.len() + 1);
    let mut s = 1.0;
    for a in angles {
        out.push(s * a.cos());
        s *= a.sin();
    }
    out.push(s);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalarfield::{rat, ratio};

    fn close(a: f64, b: f64) -> bool {
        relative_difference(a, b) < 1e-12
    }

    #[test]
    fn berger_at_minus_one() {
        let m = evaluate_numeric(&catalog::berger().algebra, &rat(-1)).unwrap();
        assert_eq!(m.signature, SignatureKind::Lorentzian);
        assert_eq!(m.frame_signs, vec![-1.0, 1.0, 1.0]);
        let ev: Vec<f64> = m.frame_laplacian_eigenvalues().iter().map(|c| c.re).collect();
        assert!(close(ev[0], 2.0) && close(ev[1], 10.0) && close(ev[2], 10.0), "{ev:?}");
        assert!(m.path_discrepancy() < 1e-12);
    }

    #[test]
    fn round_sphere_is_einstein() {
        let m = evaluate_numeric(&catalog::berger().algebra, &rat(1)).unwrap();
        assert_eq!(m.signature, SignatureKind::Riemannian);
        let id = DMatrix::<f64>::identity(3, 3) * 2.0;
        assert!((&m.frame_ricci - id).norm() < 1e-12);
        assert!(m.null_cone_scan().is_none());
    }

    #[test]
    fn gradient_norms_agree_in_both_frames() {
        for e in [rat(4), rat(-2), ratio(1, 2)] {
            let m = evaluate_numeric(&catalog::berger().algebra, &e).unwrap();
            for v in [[1.0, 0.0, 0.0], [0.3, -1.2, 0.7]] {
                let x = m.frame_to_x(&v);
                assert!(close(m.x_grad_norm_sq(&x), m.frame_grad_norm_sq(&v)));
            }
        }
        // e_1 = X_1 / 2 at eps = 4: 2 eps^2 / 4 = 8.
        let m = evaluate_numeric(&catalog::berger().algebra, &rat(4)).unwrap();
        assert!(close(m.frame_grad_norm_sq(&[1.0, 0.0, 0.0]), 8.0));
    }

    #[test]
    fn singular_and_pole_points_are_errors() {
        assert_eq!(
            evaluate_numeric(&catalog::berger().algebra, &rat(0)).unwrap_err(),
            Error::SingularMetricAtPoint(rat(0))
        );
    }

    #[test]
    fn null_cone_scan_controls() {
        let flat = evaluate_numeric(&catalog::abelian_control().algebra, &rat(1)).unwrap();
        assert_eq!(flat.null_cone_scan(), Some(0.0));
        let b = evaluate_numeric(&catalog::berger().algebra, &rat(-1)).unwrap();
        assert!(b.null_cone_scan().unwrap() > 1e-3);
    }
}
