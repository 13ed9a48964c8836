//! Invariant null parallel line fields (Walker structure).
//!
//! A line field spanned by an invariant `V` is parallel iff
//! `nabla_{X_i} V = w_i V` for every `i`. Such `V` is annihilated by every
//! commutator `[Lambda_i, Lambda_j]`, so the search runs inside the common
//! kernel `K` of the commutators: the rank-one conditions on
//! `(nabla_{X_i} V, V)` are solved there as a union of subspaces, and each
//! piece is searched for a null vector. A floating-point scan of the null
//! cone at sample parameters cross-checks negative answers.

use num_traits::{Signed, Zero};

use super::geodesic::{analyze, CaseAnalysis};
use super::harmonic::{family_vars, family_vector};
use super::numeric::{evaluate_numeric, SignatureKind};
use crate::algebra::{signature_at, symbolic, InvariantVector, LeviCivita, MetricLieAlgebra};
use crate::scalarfield::{ratio, Indeterminates, Matrix, MultiPoly, Poly, RatFunc, Rational};
use crate::solvers::{rank_one_conditions, solve_parametric, BranchKind, ParametricLinearSystem, ParametricSolution};
use crate::Error;

/// Numeric residual below which a null direction counts as parallel.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

/// Parameter range under study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EpsBranch {
    /// `eps < 0`
    Negative,
    /// `eps > 0`
    Positive,
    #[default]
    All,
}

impl EpsBranch {
    pub fn contains(self, eps: &Rational) -> bool {
        match self {
            EpsBranch::Negative => eps.is_negative(),
            EpsBranch::Positive => eps.is_positive(),
            EpsBranch::All => true,
        }
    }

    fn bounds(self) -> (Option<Rational>, Option<Rational>) {
        match self {
            EpsBranch::Negative => (None, Some(Rational::zero())),
            EpsBranch::Positive => (Some(Rational::zero()), None),
            EpsBranch::All => (None, None),
        }
    }

    /// Real roots of `p` strictly inside the range.
    pub fn real_roots(self, p: &Poly) -> usize {
        if p.is_zero() {
            return 0;
        }
        let (lo, hi) = self.bounds();
        p.count_real_roots(lo.as_ref(), hi.as_ref())
    }

    pub fn samples(self) -> Vec<Rational> {
        let neg = [ratio(-1, 2), ratio(-1, 1), ratio(-3, 2), ratio(-3, 1), ratio(-7, 3)];
        let pos = [ratio(1, 3), ratio(3, 4), ratio(3, 2), ratio(5, 2), ratio(7, 2)];
        match self {
            EpsBranch::Negative => neg.to_vec(),
            EpsBranch::Positive => pos.to_vec(),
            EpsBranch::All => neg.into_iter().chain(pos).collect(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EpsBranch::Negative => "eps < 0",
            EpsBranch::Positive => "eps > 0",
            EpsBranch::All => "all eps",
        }
    }
}

/// Result of the search at one exceptional parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkerBranch {
    pub eps: Rational,
    /// Dimension of the commutator kernel there; `None` where the metric
    /// degenerates or the connection has a pole.
    pub kernel_dim: Option<usize>,
    pub witness: Option<InvariantVector>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkerVerdict {
    pub branch: EpsBranch,
    pub walker: bool,
    /// Verified null parallel field for generic `eps` in the branch.
    pub witness: Option<InvariantVector>,
    pub commutator_kernel: ParametricSolution,
    pub signatures: Vec<(Rational, SignatureKind)>,
    pub exceptional: Vec<WalkerBranch>,
    /// Unknowns `a, b, ..., w1, w2, ...` of `nabla_{X_i} V - w_i V = 0`.
    pub eigen_vars: Indeterminates,
    pub eigen_equations: Vec<MultiPoly>,
    /// Nonzero 2x2 minors of `(nabla_{X_i} V, V)` in `a, b, ...`.
    pub minors: Vec<MultiPoly>,
    /// Smallest numeric residual on the null cone at each sample; `None`
    /// for a definite metric.
    pub numeric: Vec<(Rational, Option<f64>)>,
}

enum Search {
    Found(InvariantVector),
    None,
    Incomplete(String),
}

/// `v / v_k` for the first nonzero coordinate `v_k`.
fn normalized(v: Vec<RatFunc>) -> Vec<RatFunc> {
    let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() else {
        return v;
    };
    v.iter().map(|c| c.checked_div(&lead).expect("nonzero lead")).collect()
}

fn is_parallel_null(lc: &LeviCivita, g: &Matrix, v: &[RatFunc]) -> bool {
    let null = g.bilinear(v, v).is_zero();
    null && lc.operators.iter().all(|m| {
        let w = m.mul_vec(v);
        (0..v.len()).all(|i| (0..v.len()).all(|j| (&(&w[i] * &v[j]) - &(&w[j] * &v[i])).is_zero()))
    })
}

/// A null vector of the form `q` (coordinates in its basis), if one exists
/// over Q(eps); `Err` when null vectors exist for some `eps` in the branch
/// but not rationally.
fn null_vector(q: &Matrix, branch: EpsBranch, critical: &mut Vec<Poly>) -> Result<Option<Vec<RatFunc>>, String> {
    let d = q.rows();
    let unit = |i: usize| {
        (0..d)
            .map(|k| if k == i { RatFunc::one() } else { RatFunc::zero() })
            .collect::<Vec<_>>()
    };
    if let Some(i) = (0..d).find(|&i| q[(i, i)].is_zero()) {
        return Ok(Some(unit(i)));
    }
    for i in 0..d {
        critical.push(q[(i, i)].num().clone());
    }
    let mut undecided = false;
    for i in 0..d {
        for j in i + 1..d {
            let (p, b, s) = (&q[(i, i)], &q[(i, j)], &q[(j, j)]);
            let disc = &(b * b) - &(p * s);
            if let Some(r) = disc.sqrt() {
                let mut v = vec![RatFunc::zero(); d];
                v[i] = &(-b) - &r;
                v[j] = p.clone();
                return Ok(Some(v));
            }
            critical.push(disc.num().clone());
            critical.push(disc.den().clone());
            let crossing = branch.real_roots(disc.num()) + branch.real_roots(disc.den()) > 0;
            let sample = branch.samples().into_iter().find_map(|x| disc.eval(&x).ok());
            if crossing || sample.is_some_and(|v| v.is_positive()) {
                undecided = true;
            }
        }
    }
    if undecided || d >= 3 {
        return Err(format!(
            "null directions of a {d}-dimensional form are not rational in eps"
        ));
    }
    Ok(None)
}

/// Parallel null lines inside the subspace spanned by `kernel`.
fn search(
    lc: &LeviCivita,
    g: &Matrix,
    kernel: &[InvariantVector],
    branch: EpsBranch,
    critical: &mut Vec<Poly>,
) -> Search {
    let n = lc.dim();
    if kernel.is_empty() {
        return Search::None;
    }
    let vars = family_vars(kernel, n);
    let v = family_vector(&vars, kernel, n);
    let mut equations = Vec::new();
    for m in &lc.operators {
        let w = symbolic::apply(&vars, m, &v);
        equations.extend(
            rank_one_conditions(&[w, v.clone()])
                .into_iter()
                .filter(|e| !e.is_zero()),
        );
    }
    let parts = match analyze(kernel.len(), &equations) {
        CaseAnalysis::Union(parts) => parts,
        CaseAnalysis::Incomplete(reason) => return Search::Incomplete(reason),
    };
    let mut incomplete = None;
    for part in parts.iter().filter(|p| p.dim() > 0) {
        // Basis of the piece in X-coordinates.
        let w: Vec<Vec<RatFunc>> = part
            .basis
            .iter()
            .map(|c| {
                (0..n)
                    .map(|i| {
                        c.coords
                            .iter()
                            .zip(kernel)
                            .map(|(ck, k)| ck * &k.coords[i])
                            .sum::<RatFunc>()
                    })
                    .collect()
            })
            .collect();
        let wm = Matrix::from_columns(&w);
        let q = &(&wm.transpose() * g) * &wm;
        match null_vector(&q, branch, critical) {
            Ok(Some(c)) => {
                let x = normalized(wm.mul_vec(&c));
                if is_parallel_null(lc, g, &x) {
                    return Search::Found(InvariantVector::new(x));
                }
                incomplete = Some("candidate failed exact verification".to_string());
            }
            Ok(None) => {}
            Err(reason) => incomplete = Some(reason),
        }
    }
    match incomplete {
        Some(reason) => Search::Incomplete(reason),
        None => Search::None,
    }
}

fn commutator_system(lc: &LeviCivita) -> ParametricLinearSystem {
    let n = lc.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            rows.extend(lc.operators[i].commutator(&lc.operators[j]).to_rows());
        }
    }
    if rows.is_empty() {
        rows.push(vec![RatFunc::zero(); n]);
    }
    ParametricLinearSystem::homogeneous(Matrix::from_rows(rows), Indeterminates::components(n).names().to_vec())
        .expect("shapes agree")
}

fn eigen_system(lc: &LeviCivita) -> (Indeterminates, Vec<MultiPoly>, Vec<MultiPoly>) {
    let n = lc.dim();
    let mut names = Indeterminates::components(n).names().to_vec();
    names.extend((1..=n).map(|i| format!("w{i}")));
    let vars = Indeterminates::new(&names);
    let v = symbolic::generic_vector(&vars, n, 0);
    let mut eqs = Vec::new();
    for (i, m) in lc.operators.iter().enumerate() {
        let w = symbolic::apply(&vars, m, &v);
        let wi = MultiPoly::var(&vars, n + i);
        eqs.extend(w.iter().zip(&v).map(|(x, y)| x - &(&wi * y)));
    }
    let cvars = Indeterminates::components(n);
    let cv = symbolic::generic_vector(&cvars, n, 0);
    let minors = lc
        .operators
        .iter()
        .flat_map(|m| rank_one_conditions(&[symbolic::apply(&cvars, m, &cv), cv.clone()]))
        .filter(|e| !e.is_zero())
        .collect();
    (vars, eqs, minors)
}

fn search_at(
    alg: &MetricLieAlgebra,
    eps: &Rational,
    kernel: Option<&[Vec<RatFunc>]>,
) -> Result<(WalkerBranch, Option<String>), Error> {
    let degenerate = WalkerBranch {
        eps: eps.clone(),
        kernel_dim: None,
        witness: None,
    };
    let Ok(special) = alg.specialize(eps) else {
        return Ok((degenerate, None));
    };
    let Ok(lc) = LeviCivita::new(&special) else {
        return Ok((degenerate, None));
    };
    let k: Vec<InvariantVector> = match kernel {
        Some(k) => k.iter().cloned().map(InvariantVector::new).collect(),
        None => solve_parametric(&commutator_system(&lc))
            .generic
            .kernel
            .into_iter()
            .map(InvariantVector::new)
            .collect(),
    };
    let mut critical = Vec::new();
    let (witness, note) = match search(&lc, special.metric(), &k, EpsBranch::All, &mut critical) {
        Search::Found(v) => (Some(v), None),
        Search::None => (None, None),
        Search::Incomplete(reason) => (None, Some(format!("eps={eps}: {reason}"))),
    };
    Ok((
        WalkerBranch {
            eps: eps.clone(),
            kernel_dim: Some(k.len()),
            witness,
        },
        note,
    ))
}

/// Searches for an invariant null parallel line field for `eps` in `branch`.
pub fn walker_check(alg: &MetricLieAlgebra, branch: EpsBranch) -> Result<WalkerVerdict, Error> {
    let lc = LeviCivita::new(alg)?;
    let g = alg.metric();
    let commutator_kernel = solve_parametric(&commutator_system(&lc));
    let (eigen_vars, eigen_equations, minors) = eigen_system(&lc);

    let mut signatures = Vec::new();
    let mut numeric = Vec::new();
    for x in branch.samples() {
        let Ok((p, q)) = signature_at(alg, &x) else { continue };
        signatures.push((x.clone(), SignatureKind::from_counts(p, q)));
        if let Ok(model) = evaluate_numeric(alg, &x) {
            numeric.push((x, model.null_cone_scan()));
        }
    }

    let generic_kernel: Vec<InvariantVector> = commutator_kernel
        .generic
        .kernel
        .iter()
        .cloned()
        .map(InvariantVector::new)
        .collect();
    let mut critical = Vec::new();
    let witness = match search(&lc, g, &generic_kernel, branch, &mut critical) {
        Search::Found(v) => Some(v),
        Search::None => None,
        Search::Incomplete(reason) => return Err(Error::CaseAnalysisIncomplete(reason)),
    };

    let mut exceptional = Vec::new();
    let mut visited: Vec<Rational> = Vec::new();
    for b in commutator_kernel.exceptional.iter().filter(|b| branch.contains(&b.eps)) {
        visited.push(b.eps.clone());
        let kernel = match &b.kind {
            BranchKind::Solved(s) => Some(s.kernel.as_slice()),
            BranchKind::Pole => None,
        };
        let (wb, note) = search_at(alg, &b.eps, kernel)?;
        if let Some(reason) = note {
            return Err(Error::CaseAnalysisIncomplete(reason));
        }
        exceptional.push(wb);
    }
    for p in &commutator_kernel.unresolved {
        if branch.real_roots(p) > 0 {
            return Err(Error::CaseAnalysisIncomplete(format!(
                "the commutator kernel may change at an irrational root of {p} inside {}",
                branch.label()
            )));
        }
    }
    // Parameters where the null search itself changes shape.
    for p in critical.iter().filter(|p| !p.is_zero() && p.degree() > Some(0)) {
        for r in p.rational_roots() {
            if branch.contains(&r.value) && !visited.contains(&r.value) {
                visited.push(r.value.clone());
                let (wb, note) = search_at(alg, &r.value, None)?;
                if let Some(reason) = note {
                    return Err(Error::CaseAnalysisIncomplete(reason));
                }
                if wb.witness.is_some() {
                    exceptional.push(wb);
                }
            }
        }
        if branch.real_roots(&p.irrational_part()) > 0 {
            return Err(Error::CaseAnalysisIncomplete(format!(
                "the null search changes at an irrational root of {p} inside {}",
                branch.label()
            )));
        }
    }
    exceptional.sort_by(|a, b| a.eps.cmp(&b.eps));

    if witness.is_none() {
        for (x, r) in &numeric {
            let generic_point = !visited.contains(x);
            if let Some(r) = r {
                if generic_point && *r < NUMERIC_TOLERANCE {
                    return Err(Error::CaseAnalysisIncomplete(format!(
                        "numeric scan at eps={x} finds a parallel null direction (residual {r:e}) missed by the exact search"
                    )));
                }
            }
        }
    }

    Ok(WalkerVerdict {
        branch,
        walker: witness.is_some(),
        witness,
        commutator_kernel,
        signatures,
        exceptional,
        eigen_vars,
        eigen_equations,
        minors,
        numeric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalarfield::parse_ratfunc;

    #[test]
    fn berger_lorentzian_is_not_walker() {
        let v = walker_check(&catalog::berger().algebra, EpsBranch::Negative).unwrap();
        assert!(!v.walker);
        assert!(v.witness.is_none());
        assert!(v.commutator_kernel.generic.kernel.is_empty());
        assert!(v.signatures.iter().all(|(_, s)| *s == SignatureKind::Lorentzian));
        assert!(v.numeric.iter().all(|(_, r)| r.unwrap() > NUMERIC_TOLERANCE));
    }

    #[test]
    fn berger_positive_branch_is_riemannian() {
        let v = walker_check(&catalog::berger().algebra, EpsBranch::Positive).unwrap();
        assert!(!v.walker);
        assert!(v.exceptional.iter().all(|b| b.witness.is_none()));
        assert!(v.numeric.iter().all(|(_, r)| r.is_none()));
    }

    #[test]
    fn berger_minors_contain_published_relations() {
        let v = walker_check(&catalog::berger().algebra, EpsBranch::Negative).unwrap();
        let vars = Indeterminates::components(3);
        let x = |i| MultiPoly::var(&vars, i);
        let eps = MultiPoly::constant(&vars, parse_ratfunc("eps").unwrap());
        // c^2 + eps a^2 and b^2 + eps a^2 up to sign
        let m2 = &x(2).pow(2) + &(&eps * &x(0).pow(2));
        let m3 = &x(1).pow(2) + &(&eps * &x(0).pow(2));
        for m in [m2, m3] {
            assert!(v.minors.iter().any(|e| e == &m || e == &-&m), "missing {m}");
        }
    }

    #[test]
    fn abelian_control_is_walker() {
        let alg = catalog::abelian_control().algebra;
        let v = walker_check(&alg, EpsBranch::All).unwrap();
        assert!(v.walker);
        let w = v.witness.unwrap();
        assert_eq!(w, InvariantVector::from_i64(&[1, 1, 0]));
        assert!(alg.inner(&w, &w).is_zero());
    }
}
