//! Energy density `n/2 + ||nabla V||^2 / 2` of invariant vector fields, as
//! a coefficient of the volume form.

use super::harmonic::{family_vars, family_vector, rough_laplacian};
use crate::algebra::{symbolic, InvariantVector, LeviCivita, MetricLieAlgebra};
use crate::scalarfield::{Indeterminates, MultiPoly, RatFunc, Rational};
use crate::solvers::{eigen_analyze, DEFAULT_DEGREE_BOUND};
use crate::Error;

/// Energy on one critical family (eigenspace of the rough Laplacian).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyEnergy {
    pub eigenvalue: RatFunc,
    pub basis: Vec<InvariantVector>,
    pub vars: Indeterminates,
    /// `||nabla V||^2` restricted to the family.
    pub grad_norm_sq: MultiPoly,
    /// `g(V, V)` restricted to the family.
    pub length_sq: MultiPoly,
    /// `k` with `density = n/2 + k g(V, V)` on the family; `None` when
    /// the density is not a multiple of `g(V, V)` there.
    pub coefficient: Option<RatFunc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyReport {
    pub vars: Indeterminates,
    pub grad_norm_sq: MultiPoly,
    pub density: MultiPoly,
    /// `n/2`
    pub constant: Rational,
    pub families: Vec<FamilyEnergy>,
}

fn grad_norm_sq_with(
    lc: &LeviCivita,
    g: &crate::scalarfield::Matrix,
    vars: &Indeterminates,
    v: &[MultiPoly],
) -> MultiPoly {
    let n = lc.dim();
    let nv: Vec<Vec<MultiPoly>> = lc.operators.iter().map(|m| symbolic::apply(vars, m, v)).collect();
    let mut acc = MultiPoly::zero(vars);
    for i in 0..n {
        for j in 0..n {
            let gij = &lc.metric_inv[(i, j)];
            if !gij.is_zero() {
                acc = &acc + &symbolic::inner(vars, g, &nv[i], &nv[j]).scale(gij);
            }
        }
    }
    acc
}

/// `k` with `q = k * p`, if any.
fn proportionality(q: &MultiPoly, p: &MultiPoly) -> Option<RatFunc> {
    let (exps, c) = p.terms().next()?;
    let k = q.coefficient(exps).checked_div(c).ok()?;
    (q == &p.scale(&k)).then_some(k)
}

/// Energy density of the generic field `a X_1 + b X_2 + ...` and its
/// restriction to each eigenspace of the rough Laplacian.
pub fn energy_report(alg: &MetricLieAlgebra) -> Result<EnergyReport, Error> {
    let n = alg.dim();
    let lc = LeviCivita::new(alg)?;
    let g = alg.metric();
    let vars = Indeterminates::components(n);
    let v = symbolic::generic_vector(&vars, n, 0);
    let grad_norm_sq = grad_norm_sq_with(&lc, g, &vars, &v);
    let constant = Rational::new((n as i64).into(), 2.into());
    let half = RatFunc::constant(Rational::new(1.into(), 2.into()));
    let density = &MultiPoly::constant(&vars, RatFunc::constant(constant.clone())) + &grad_norm_sq.scale(&half);

    let l = rough_laplacian(alg)?.matrix;
    let decomposition = eigen_analyze(&l, DEFAULT_DEGREE_BOUND)?;
    let families = decomposition
        .pairs
        .iter()
        .map(|p| {
            let fv = family_vars(&p.eigenspace, n);
            let w = family_vector(&fv, &p.eigenspace, n);
            let grad = grad_norm_sq_with(&lc, g, &fv, &w);
            let length_sq = symbolic::inner(&fv, g, &w, &w);
            let coefficient = proportionality(&grad, &length_sq).map(|k| &k * &half);
            FamilyEnergy {
                eigenvalue: p.eigenvalue.clone(),
                basis: p.eigenspace.clone(),
                vars: fv,
                grad_norm_sq: grad,
                length_sq,
                coefficient,
            }
        })
        .collect();
    Ok(EnergyReport {
        vars,
        grad_norm_sq,
        density,
        constant,
        families,
    })
}
