//! Rough Laplacian of invariant vector fields, harmonic sections and the
//! harmonic-map condition into the Sasaki tangent bundle.

use crate::algebra::{
    curvature_operator_with, symbolic, InvariantOperator, InvariantVector, LeviCivita, MetricLieAlgebra,
};
use crate::scalarfield::{Indeterminates, Matrix, MultiPoly, RatFunc};
use crate::solvers::{
    eigen_analyze, kernel, kernel_parametric, solve_field, EigenDecomposition, ParametricLinearSystem,
    ParametricSolution, DEFAULT_DEGREE_BOUND,
};
use crate::Error;

/// Harmonic-map status of one critical family `V = sum_k t_k B_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyHarmonicity {
    pub eigenvalue: RatFunc,
    pub basis: Vec<InvariantVector>,
    /// Coordinates `t_k`, named after the basis position each vector pins to 1.
    pub vars: Indeterminates,
    /// `nabla* nabla V = 0` on the family, i.e. the eigenvalue vanishes.
    pub laplacian_vanishes: bool,
    /// `sum g^{ij} R(nabla_{X_i} V, V) X_j` in the family coordinates.
    pub trace_term: Vec<MultiPoly>,
    pub trace_vanishes: bool,
}

impl FamilyHarmonicity {
    pub fn harmonic_map(&self) -> bool {
        self.laplacian_vanishes && self.trace_vanishes
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicityVerdict {
    pub laplacian: InvariantOperator,
    pub critical_families: EigenDecomposition,
    /// Generic kernel of the rough Laplacian.
    pub harmonic_sections: Vec<InvariantVector>,
    /// The same kernel with the parameter values where it jumps.
    pub section_branches: ParametricSolution,
    pub families: Vec<FamilyHarmonicity>,
    pub parallel: Vec<InvariantVector>,
}

fn rough_laplacian_with(lc: &LeviCivita) -> Matrix {
    let n = lc.dim();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let gij = &lc.metric_inv[(i, j)];
            if gij.is_zero() {
                continue;
            }
            // nabla_{X_i} nabla_{X_j} - nabla_{nabla_{X_i} X_j}
            let inner = lc.operators[i].column(j);
            let term = &(&lc.operators[i] * &lc.operators[j]) - &lc.along(&inner);
            l = &l + &term.scale(gij);
        }
    }
    l
}

/// Matrix of `V -> sum g^{ij} (nabla_{X_i} nabla_{X_j} V - nabla_{nabla_{X_i} X_j} V)`.
pub fn rough_laplacian(alg: &MetricLieAlgebra) -> Result<InvariantOperator, Error> {
    let lc = LeviCivita::new(alg)?;
    Ok(InvariantOperator {
        matrix: rough_laplacian_with(&lc),
    })
}

fn trace_term_with(lc: &LeviCivita, alg: &MetricLieAlgebra, vars: &Indeterminates, v: &[MultiPoly]) -> Vec<MultiPoly> {
    let n = alg.dim();
    let e = |i| InvariantVector::basis(n, i).coords;
    // R(X_a, X_b) for all a, b; R(x, y) is bilinear in x and y.
    let ops: Vec<Vec<Matrix>> = (0..n)
        .map(|a| (0..n).map(|b| curvature_operator_with(lc, alg, &e(a), &e(b))).collect())
        .collect();
    let mut out = vec![MultiPoly::zero(vars); n];
    for i in 0..n {
        let nv = symbolic::apply(vars, &lc.operators[i], v);
        for j in 0..n {
            let gij = &lc.metric_inv[(i, j)];
            if gij.is_zero() {
                continue;
            }
            let xj = e(j);
            for a in 0..n {
                if nv[a].is_zero() {
                    continue;
                }
                for b in 0..n {
                    if v[b].is_zero() {
                        continue;
                    }
                    let w = ops[a][b].mul_vec(&xj);
                    let coef = (&nv[a] * &v[b]).scale(gij);
                    for (o, wk) in out.iter_mut().zip(&w) {
                        if !wk.is_zero() {
                            *o = &*o + &coef.scale(wk);
                        }
                    }
                }
            }
        }
    }
    out
}

/// `sum_{i,j} g^{ij} R(nabla_{X_i} V, V) X_j` for polynomial coordinates `v`.
pub fn trace_term(alg: &MetricLieAlgebra, vars: &Indeterminates, v: &[MultiPoly]) -> Result<Vec<MultiPoly>, Error> {
    let lc = LeviCivita::new(alg)?;
    Ok(trace_term_with(&lc, alg, vars, v))
}

/// Invariant fields with `nabla_{X_i} V = 0` for every `i`.
pub fn parallel_fields(alg: &MetricLieAlgebra) -> Result<Vec<InvariantVector>, Error> {
    let lc = LeviCivita::new(alg)?;
    Ok(parallel_with(&lc))
}

fn parallel_with(lc: &LeviCivita) -> Vec<InvariantVector> {
    let n = lc.dim();
    let rows: Vec<Vec<RatFunc>> = lc.operators.iter().flat_map(|m| m.to_rows()).collect();
    let unknowns = Indeterminates::components(n).names().to_vec();
    let sys = ParametricLinearSystem::homogeneous(Matrix::from_rows(rows), unknowns).expect("shapes agree");
    solve_field(&sys).kernel.into_iter().map(InvariantVector::new).collect()
}

/// Names for family coordinates: the component name of the position where a
/// basis vector is 1 and every other basis vector is 0, else `t1, t2, ...`.
pub(crate) fn family_vars(basis: &[InvariantVector], n: usize) -> Indeterminates {
    let names = Indeterminates::components(n).names().to_vec();
    let pinned: Option<Vec<String>> = basis
        .iter()
        .enumerate()
        .map(|(k, b)| {
            (0..n)
                .find(|&p| {
                    b.coords[p].is_one() && basis.iter().enumerate().all(|(m, o)| m == k || o.coords[p].is_zero())
                })
                .map(|p| names[p].clone())
        })
        .collect();
    match pinned {
        Some(p) => Indeterminates::new(&p),
        None => Indeterminates::new(&(1..=basis.len()).map(|k| format!("t{k}")).collect::<Vec<_>>()),
    }
}

/// `sum_k t_k B_k` with polynomial coordinates.
pub(crate) fn family_vector(vars: &Indeterminates, basis: &[InvariantVector], n: usize) -> Vec<MultiPoly> {
    let mut v = vec![MultiPoly::zero(vars); n];
    for (k, b) in basis.iter().enumerate() {
        let t = MultiPoly::var(vars, k);
        for (vi, c) in v.iter_mut().zip(&b.coords) {
            if !c.is_zero() {
                *vi = &*vi + &t.scale(c);
            }
        }
    }
    v
}

pub fn harmonicity_classify(alg: &MetricLieAlgebra) -> Result<HarmonicityVerdict, Error> {
    let n = alg.dim();
    let lc = LeviCivita::new(alg)?;
    let l = rough_laplacian_with(&lc);
    let critical_families = eigen_analyze(&l, DEFAULT_DEGREE_BOUND)?;
    let families = critical_families
        .pairs
        .iter()
        .map(|p| {
            let vars = family_vars(&p.eigenspace, n);
            let v = family_vector(&vars, &p.eigenspace, n);
            let trace_term = trace_term_with(&lc, alg, &vars, &v);
            FamilyHarmonicity {
                eigenvalue: p.eigenvalue.clone(),
                basis: p.eigenspace.clone(),
                laplacian_vanishes: p.eigenvalue.is_zero(),
                trace_vanishes: symbolic::is_zero(&trace_term),
                trace_term,
                vars,
            }
        })
        .collect();
    Ok(HarmonicityVerdict {
        harmonic_sections: kernel(&l),
        section_branches: kernel_parametric(&l),
        parallel: parallel_with(&lc),
        laplacian: InvariantOperator { matrix: l },
        critical_families,
        families,
    })
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
    fn berger_laplacian_is_diagonal() {
        let b = catalog::berger().algebra;
        let l = rough_laplacian(&b).unwrap().matrix;
        let k = rf("-2*(eps^2-2*eps+2)/eps");
        assert_eq!(l, Matrix::diagonal(&[rf("-2*eps"), k.clone(), k]));
        let at1 = rough_laplacian(&b.specialize(&rat(1)).unwrap()).unwrap().matrix;
        assert_eq!(at1, Matrix::diagonal(&[rf("-2"), rf("-2"), rf("-2")]));
    }

    #[test]
    fn laplacian_is_self_adjoint() {
        for entry in [catalog::berger(), catalog::abelian_control()] {
            let l = rough_laplacian(&entry.algebra).unwrap().matrix;
            let g = entry.algebra.metric();
            assert_eq!(g * &l, &l.transpose() * g);
        }
    }

    #[test]
    fn berger_has_no_harmonic_fields() {
        let v = harmonicity_classify(&catalog::berger().algebra).unwrap();
        assert!(v.harmonic_sections.is_empty());
        assert!(v.parallel.is_empty());
        assert_eq!(v.families.len(), 2);
        assert_eq!(v.families[0].basis, vec![InvariantVector::basis(3, 0)]);
        assert_eq!(
            v.families[1].basis,
            vec![InvariantVector::basis(3, 1), InvariantVector::basis(3, 2)]
        );
        assert_eq!(v.families[1].vars.names(), ["b", "c"]);
        assert!(v.families.iter().all(|f| !f.harmonic_map()));
    }

    #[test]
    fn abelian_fields_are_harmonic() {
        let v = harmonicity_classify(&catalog::abelian_control().algebra).unwrap();
        assert_eq!(v.harmonic_sections.len(), 3);
        assert_eq!(v.parallel.len(), 3);
        assert!(v.laplacian.matrix.is_zero());
        assert!(v.families.iter().all(FamilyHarmonicity::harmonic_map));
    }
}
