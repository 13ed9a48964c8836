//! Shared test support: a seeded generator of validated 3D metric Lie
//! algebras, an exact-rational oracle for the geometry at a fixed parameter
//! value, and the structural identities every algebra must satisfy.

#![allow(dead_code, clippy::needless_range_loop)]

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use metric_lie::algebra::{
    bracket, connection_operators, cov_curvature, curvature_tensor, lie_derivative_metric, nabla, InvariantVector,
    MetricLieAlgebra,
};
use metric_lie::geometry::{killing_solve, soliton_system, SolitonConvention};
use metric_lie::scalarfield::{rat, ratio, Matrix, Poly, RatFunc, Rational};
use metric_lie::solvers::{solve_parametric, BranchKind, ParametricLinearSystem};

pub fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

pub fn k(n: i64) -> RatFunc {
    RatFunc::int(n)
}

/// Bracket families the generator draws from.
#[derive(Clone, Copy, Debug)]
pub enum Family {
    Su2,
    Sl2,
    Heisenberg,
    Semidirect,
}

fn brackets(family: Family, rng: &mut ChaCha8Rng) -> Vec<(usize, usize, usize, RatFunc)> {
    match family {
        Family::Su2 => vec![(0, 1, 2, k(1)), (1, 2, 0, k(1)), (0, 2, 1, k(-1))],
        Family::Sl2 => vec![(0, 1, 1, k(2)), (0, 2, 2, k(-2)), (1, 2, 0, k(1))],
        Family::Heisenberg => vec![(0, 1, 2, k(1))],
        Family::Semidirect => {
            // [X1, v] = D v on span{X2, X3}
            let d: Vec<i64> = (0..4).map(|_| rng.random_range(-3..=3)).collect();
            vec![
                (0, 1, 1, k(d[0])),
                (0, 1, 2, k(d[1])),
                (0, 2, 1, k(d[2])),
                (0, 2, 2, k(d[3])),
            ]
        }
    }
}

fn nonzero(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    loop {
        let v = rng.random_range(lo..=hi);
        if v != 0 {
            return v;
        }
    }
}

/// A validated 3D algebra: one of the bracket families with metric
/// `diag(s1 eps, s2, s3)` plus a constant symmetric perturbation, then
/// rewritten in a random rational basis.
pub fn random_algebra(seed: u64) -> MetricLieAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = [Family::Su2, Family::Sl2, Family::Heisenberg, Family::Semidirect][rng.random_range(0..4)];
    loop {
        let br = brackets(family, &mut rng);
        let mut g = Matrix::diagonal(&[
            RatFunc::eps().scale(&rat(nonzero(&mut rng, -2, 2))),
            k(nonzero(&mut rng, -2, 2)),
            k(nonzero(&mut rng, -2, 2)),
        ]);
        let (i, j) = [(0, 1), (0, 2), (1, 2)][rng.random_range(0..3)];
        let off = RatFunc::constant(ratio(rng.random_range(-2..=2), 2));
        g[(i, j)] = off.clone();
        g[(j, i)] = off;
        let Ok(alg) = MetricLieAlgebra::from_brackets(format!("{family:?}"), names(3), &br, g) else {
            continue;
        };
        let p = Matrix::from_rows(
            (0..3)
                .map(|_| {
                    (0..3)
                        .map(|_| RatFunc::constant(ratio(rng.random_range(-2..=2), rng.random_range(1..=2))))
                        .collect()
                })
                .collect(),
        );
        if p.det().is_zero() {
            continue;
        }
        if let Ok(changed) = alg.change_basis(&p) {
            return changed;
        }
    }
}

pub fn f(r: &Rational) -> f64 {
    metric_lie::scalarfield::rational::rational_to_f64(r)
}

// ---------------------------------------------------------------- exact oracle

type Q = Rational;

fn inverse(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("regular matrix");
        a.swap(c, p);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = &*x / &piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let factor = a[r][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Levi-Civita data at a fixed parameter, computed from the structure
/// constants with the Koszul formula in exact rationals.
pub struct Exact {
    pub n: usize,
    pub g: Vec<Vec<Q>>,
    pub gi: Vec<Vec<Q>>,
    /// `gamma[i][j][k]`: component `k` of `nabla_{X_i} X_j`.
    pub gamma: Vec<Vec<Vec<Q>>>,
    /// `r[a][b][c][d] = g(R(X_a, X_b) X_c, X_d)` with `R(x, y) = nabla_[x,y] - [nabla_x, nabla_y]`.
    pub r: Vec<Vec<Vec<Vec<Q>>>>,
    /// `dr[m][a][b][c][d] = (nabla_{X_m} R)(X_a, X_b, X_c, X_d)`.
    pub dr: Vec<Vec<Vec<Vec<Vec<Q>>>>>,
}

impl Exact {
    pub fn new(alg: &MetricLieAlgebra, eps: &Q) -> Self {
        let n = alg.dim();
        let ev = |x: &RatFunc| x.eval(eps).expect("no pole");
        let g: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| ev(&alg.metric()[(i, j)])).collect())
            .collect();
        let gi = inverse(&g);
        let c: Vec<Vec<Vec<Q>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| ev(alg.structure_constant(i, j, k))).collect())
                    .collect()
            })
            .collect();
        // g([X_i, X_j], X_l)
        let gb = |i: usize, j: usize, l: usize| -> Q { (0..n).map(|k| &c[i][j][k] * &g[k][l]).sum() };
        let half = ratio(1, 2);
        let mut gamma = vec![vec![vec![Q::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let low: Vec<Q> = (0..n)
                    .map(|l| &half * &(&(&gb(i, j, l) - &gb(j, l, i)) + &gb(l, i, j)))
                    .collect();
                for kk in 0..n {
                    gamma[i][j][kk] = (0..n).map(|l| &gi[kk][l] * &low[l]).sum();
                }
            }
        }
        let nab = |i: usize, v: &[Q]| -> Vec<Q> {
            (0..n)
                .map(|kk| (0..n).map(|m| &v[m] * &gamma[i][m][kk]).sum())
                .collect()
        };
        let mut r = vec![vec![vec![vec![Q::zero(); n]; n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    let xc: Vec<Q> = (0..n).map(|m| if m == cc { Q::one() } else { Q::zero() }).collect();
                    let mut v = vec![Q::zero(); n];
                    for e in 0..n {
                        let t = nab(e, &xc);
                        for m in 0..n {
                            v[m] = &v[m] + &(&c[a][b][e] * &t[m]);
                        }
                    }
                    let ab = nab(a, &nab(b, &xc));
                    let ba = nab(b, &nab(a, &xc));
                    for m in 0..n {
                        v[m] = &(&v[m] - &ab[m]) + &ba[m];
                    }
                    for d in 0..n {
                        r[a][b][cc][d] = (0..n).map(|m| &v[m] * &g[m][d]).sum();
                    }
                }
            }
        }
        let mut dr = vec![vec![vec![vec![vec![Q::zero(); n]; n]; n]; n]; n];
        for m in 0..n {
            for a in 0..n {
                for b in 0..n {
                    for cc in 0..n {
                        for d in 0..n {
                            let mut acc = Q::zero();
                            for e in 0..n {
                                acc = &acc + &(&gamma[m][a][e] * &r[e][b][cc][d]);
                                acc = &acc + &(&gamma[m][b][e] * &r[a][e][cc][d]);
                                acc = &acc + &(&gamma[m][cc][e] * &r[a][b][e][d]);
                                acc = &acc + &(&gamma[m][d][e] * &r[a][b][cc][e]);
                            }
                            dr[m][a][b][cc][d] = -acc;
                        }
                    }
                }
            }
        }
        Exact { n, g, gi, gamma, r, dr }
    }

    /// `sum g^{ac} g^{bd} R(x, X_a, x, X_b) (nabla_x R)(x, X_c, x, X_d)`.
    pub fn l5(&self, x: &[Q]) -> Q {
        let n = self.n;
        let mut a = vec![vec![Q::zero(); n]; n];
        let mut b = vec![vec![Q::zero(); n]; n];
        for p in 0..n {
            for q in 0..n {
                for i in 0..n {
                    for kk in 0..n {
                        let xik = &x[i] * &x[kk];
                        a[p][q] = &a[p][q] + &(&xik * &self.r[i][p][kk][q]);
                        for m in 0..n {
                            b[p][q] = &b[p][q] + &(&(&xik * &x[m]) * &self.dr[m][i][p][kk][q]);
                        }
                    }
                }
            }
        }
        let mut acc = Q::zero();
        for (ia, ic, ib, id) in
            (0..n).flat_map(|p| (0..n).flat_map(move |q| (0..n).flat_map(move |s| (0..n).map(move |t| (p, q, s, t)))))
        {
            acc = &acc + &(&(&self.gi[ia][ic] * &self.gi[ib][id]) * &(&a[ia][ib] * &b[ic][id]));
        }
        acc
    }

    /// `sum g^{ij} rho_ij`.
    pub fn scalar_curvature(&self) -> Q {
        let n = self.n;
        let mut s = Q::zero();
        for i in 0..n {
            for j in 0..n {
                // rho_ij = sum g^{kl} R(k, i, l, j)
                let rho: Q = (0..n)
                    .flat_map(|kk| (0..n).map(move |l| (kk, l)))
                    .map(|(kk, l)| &self.gi[kk][l] * &self.r[kk][i][l][j])
                    .sum();
                s = &s + &(&self.gi[i][j] * &rho);
            }
        }
        s
    }
}

// ---------------------------------------------------------------- identities

fn zero_vec(v: &[RatFunc]) -> bool {
    v.iter().all(RatFunc::is_zero)
}

/// Every structural identity, exactly over Q(eps). The error names the
/// first failure.
pub fn structural_checks(alg: &MetricLieAlgebra) -> Result<(), String> {
    let n = alg.dim();
    let e = |i| InvariantVector::basis(n, i);
    let g = alg.metric();
    let ops = connection_operators(alg).map_err(|x| x.to_string())?;

    for i in 0..n {
        for j in 0..n {
            let lhs = nabla(alg, &e(i), &e(j))
                .unwrap()
                .sub(&nabla(alg, &e(j), &e(i)).unwrap());
            if lhs != bracket(alg, &e(i), &e(j)) {
                return Err(format!("torsion at ({i}, {j})"));
            }
        }
        // g(nabla_i Y, Z) + g(Y, nabla_i Z) = 0  <=>  L^T g + g L = 0
        let m = &ops[i].matrix;
        if !(&(&m.transpose() * g) + &(g * m)).is_zero() {
            return Err(format!("metric compatibility along X{}", i + 1));
        }
    }

    let t = curvature_tensor(alg).map_err(|x| x.to_string())?;
    for (a, b, c, d) in quads(n) {
        let v = t.get(a, b, c, d);
        if v != &-t.get(b, a, c, d) || v != &-t.get(a, b, d, c) || v != t.get(c, d, a, b) {
            return Err(format!("curvature symmetry at {:?}", (a, b, c, d)));
        }
        let cyc = &(v + t.get(b, c, a, d)) + t.get(c, a, b, d);
        if !cyc.is_zero() {
            return Err(format!("first Bianchi at {:?}", (a, b, c, d)));
        }
    }
    let dr = cov_curvature(alg).map_err(|x| x.to_string())?;
    for m in 0..n {
        for (a, b, c, d) in quads(n) {
            let cyc = &(dr.get(m, a, b, c, d) + dr.get(a, b, m, c, d)) + dr.get(b, m, a, c, d);
            if !cyc.is_zero() {
                return Err(format!("second Bianchi at {:?}", (m, a, b, c, d)));
            }
        }
    }

    let x = InvariantVector::new(vec![k(1), RatFunc::eps(), k(-2)]);
    let y = InvariantVector::new(vec![k(3), k(0), RatFunc::eps().pow(2)]);
    let s = RatFunc::from_poly(Poly::from_i64(&[1, 1]));
    let lhs = lie_derivative_metric(alg, &x.add(&y.scale(&s))).unwrap().matrix;
    let rhs =
        &lie_derivative_metric(alg, &x).unwrap().matrix + &lie_derivative_metric(alg, &y).unwrap().matrix.scale(&s);
    if lhs != rhs {
        return Err("Lie derivative is not linear".into());
    }

    for (label, sys) in [
        (
            "soliton",
            soliton_system(alg, SolitonConvention::Plain).map_err(|x| x.to_string())?,
        ),
        ("killing", killing_solve(alg).map_err(|x| x.to_string())?.system),
    ] {
        residual_check(&sys).map_err(|m| format!("{label}: {m}"))?;
    }
    Ok(())
}

fn quads(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).flat_map(move |c| (0..n).map(move |d| (a, b, c, d)))))
}

/// Back-substitution: solutions satisfy their systems generically and at
/// every exceptional parameter.
pub fn residual_check(sys: &ParametricLinearSystem) -> Result<(), String> {
    let sol = solve_parametric(sys);
    let hom = |s: &ParametricLinearSystem, v: &[RatFunc]| -> bool { zero_vec(&s.matrix().mul_vec(v)) };
    if let Some(p) = &sol.generic.particular {
        if !zero_vec(&sys.residual(p)) {
            return Err("generic particular solution".into());
        }
    }
    if !sol.generic.kernel.iter().all(|v| hom(sys, v)) {
        return Err("generic kernel".into());
    }
    for b in &sol.exceptional {
        let BranchKind::Solved(s) = &b.kind else { continue };
        let special = sys.specialize(&b.eps).map_err(|e| e.to_string())?;
        if let Some(p) = &s.particular {
            if !zero_vec(&special.residual(p)) {
                return Err(format!("particular solution at eps={}", b.eps));
            }
        }
        if !s.kernel.iter().all(|v| hom(&special, v)) {
            return Err(format!("kernel at eps={}", b.eps));
        }
    }
    Ok(())
}

pub fn scalar_curvature(alg: &MetricLieAlgebra) -> RatFunc {
    let rho = metric_lie::algebra::ricci(alg).unwrap().matrix;
    let gi = alg.metric_inverse().unwrap();
    let mut s = RatFunc::zero();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            s = &s + &(&gi[(i, j)] * &rho[(i, j)]);
        }
    }
    s
}

/// Symbolic objects compared against the frame pipeline, computed once per algebra.
pub struct Symbolic {
    scalar: RatFunc,
    laplacian: [RatFunc; 3],
    spectrum: Option<metric_lie::solvers::EigenDecomposition>,
    ricci_chi: metric_lie::solvers::MuPoly,
    energy: metric_lie::geometry::EnergyReport,
}

impl Symbolic {
    /// `spectrum` also compares Laplacian eigenvalues one by one; the exact
    /// decomposition is slow when the spectrum leaves Q(eps).
    pub fn new(alg: &MetricLieAlgebra, spectrum: bool) -> Self {
        use metric_lie::solvers::{characteristic_polynomial, eigen_analyze, DEFAULT_DEGREE_BOUND};
        let l = metric_lie::geometry::rough_laplacian(alg).unwrap().matrix;
        let l2 = &l * &l;
        let ric_op = &alg.metric_inverse().unwrap() * &metric_lie::algebra::ricci(alg).unwrap().matrix;
        Symbolic {
            scalar: scalar_curvature(alg),
            laplacian: [l.trace(), l2.trace(), l.det()],
            spectrum: spectrum.then(|| eigen_analyze(&l, DEFAULT_DEGREE_BOUND).unwrap()),
            ricci_chi: characteristic_polynomial(&ric_op),
            energy: metric_lie::geometry::energy_report(alg).unwrap(),
        }
    }
}

fn close(what: &str, x: f64, y: f64, rtol: f64) -> Result<(), String> {
    use metric_lie::geometry::numeric::relative_difference;
    if relative_difference(x, y) < rtol {
        Ok(())
    } else {
        Err(format!("{what}: symbolic {x} vs frame {y}"))
    }
}

/// Frame-invariant quantities, symbolic values at `eps` against the
/// pseudo-orthonormal frame pipeline. Returns the number of comparisons.
pub fn dual_path(alg: &MetricLieAlgebra, sym: &Symbolic, eps: &Q, rtol: f64) -> Result<usize, String> {
    use metric_lie::geometry::evaluate_numeric;
    use metric_lie::geometry::numeric::sorted_eigenvalues;
    let m = evaluate_numeric(alg, eps).map_err(|e| e.to_string())?;
    let eta = &m.frame_signs;
    let n = alg.dim();
    let at = |x: &RatFunc| f(&x.eval(eps).unwrap());
    let mut count = 0;

    let frame_scalar: f64 = (0..n).map(|a| eta[a] * m.frame_ricci[(a, a)]).sum();
    close("scalar curvature", at(&sym.scalar), frame_scalar, rtol)?;
    count += 1;

    let fl = &m.frame_laplacian;
    let numeric = [fl.trace(), (fl * fl).trace(), fl.determinant()];
    for (x, y) in sym.laplacian.iter().zip(numeric) {
        close("Laplacian invariant", at(x), y, rtol)?;
        count += 1;
    }

    if let Some(spectrum) = sym
        .spectrum
        .as_ref()
        .filter(|s| s.pairs.iter().map(|p| p.multiplicity).sum::<usize>() == n)
    {
        let mut exact: Vec<f64> = spectrum
            .pairs
            .iter()
            .flat_map(|p| std::iter::repeat_n(at(&p.eigenvalue), p.multiplicity))
            .collect();
        exact.sort_by(f64::total_cmp);
        let numeric = m.frame_laplacian_eigenvalues();
        for (x, z) in exact.iter().zip(&numeric) {
            close("Laplacian eigenvalue", *x, z.re, rtol)?;
            count += 1;
        }
    }

    // Ricci operator g^{-1} rho: frame eigenvalues must be roots of the exact characteristic polynomial.
    let frame_op = nalgebra::DMatrix::from_fn(n, n, |a, b| eta[a] * m.frame_ricci[(a, b)]);
    let coeffs: Vec<f64> = sym.ricci_chi.coeffs().iter().map(at).collect();
    let scale: f64 = coeffs.iter().map(|c| c.abs()).fold(1.0, f64::max);
    for z in sorted_eigenvalues(&frame_op) {
        if z.im.abs() > 1e-9 {
            continue;
        }
        let value: f64 = coeffs.iter().enumerate().map(|(k, c)| c * z.re.powi(k as i32)).sum();
        if value.abs() > 1e-9 * scale * (1.0 + z.re.abs()).powi(n as i32) {
            return Err(format!("Ricci eigenvalue {z} leaves residual {value}"));
        }
        count += 1;
    }

    for v in [[1.0, 0.0, 0.0], [0.3, -1.2, 0.7], [2.0, 0.5, -0.25]] {
        let symbolic = sym.energy.grad_norm_sq.eval_f64(f(eps), &m.frame_to_x(&v));
        close("||nabla V||^2", symbolic, m.frame_grad_norm_sq(&v), rtol)?;
        count += 1;
    }
    Ok(count)
}
