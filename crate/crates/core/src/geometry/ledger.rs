//! The first odd Ledger conditions L3 and L5.

use crate::algebra::{
    cov_curvature_with, cov_ricci_with, curvature_tensor_with, ricci_with, LeviCivita, MetricLieAlgebra,
};
use crate::scalarfield::{Indeterminates, MultiPoly, RatFunc, Rational};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerReport {
    pub vars: Indeterminates,
    /// `(nabla_X rho)(X, X)` for `X = a X_1 + b X_2 + ...`.
    pub l3_form: MultiPoly,
    /// Every cyclic sum of `nabla rho` over basis triples vanishes.
    pub cyclic_parallel: bool,
    /// `sum g^{ac} g^{bd} R(X, X_a, X, X_b) (nabla_X R)(X, X_c, X, X_d)`.
    pub l5_form: MultiPoly,
    pub l3: bool,
    pub l5: bool,
    /// Rational parameters where a generically failing condition holds.
    pub l3_exceptional: Vec<Rational>,
    pub l5_exceptional: Vec<Rational>,
}

fn monomial(vars: &Indeterminates, idx: &[usize]) -> MultiPoly {
    idx.iter().fold(MultiPoly::constant(vars, RatFunc::one()), |acc, &i| {
        &acc * &MultiPoly::var(vars, i)
    })
}

fn roots_where_zero(p: &MultiPoly) -> Vec<Rational> {
    if p.is_zero() {
        return Vec::new();
    }
    p.eps_content().rational_roots().into_iter().map(|r| r.value).collect()
}

pub fn ledger_check(alg: &MetricLieAlgebra) -> Result<LedgerReport, Error> {
    let n = alg.dim();
    let lc = LeviCivita::new(alg)?;
    let r = curvature_tensor_with(&lc, alg);
    let rho = ricci_with(&lc, &r);
    let dr = cov_ricci_with(&lc, &rho);
    let dcurv = cov_curvature_with(&lc, &r);
    let vars = Indeterminates::components(n);
    let gi = &lc.metric_inv;

    let mut cyclic_parallel = true;
    let mut l3_form = MultiPoly::zero(&vars);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let cyc = &(dr.get(i, j, k) + dr.get(j, k, i)) + dr.get(k, i, j);
                cyclic_parallel &= cyc.is_zero();
                let c = dr.get(i, j, k);
                if !c.is_zero() {
                    l3_form = &l3_form + &monomial(&vars, &[i, j, k]).scale(c);
                }
            }
        }
    }

    // A_ab = R(X, X_a, X, X_b) and B_cd = (nabla_X R)(X, X_c, X, X_d).
    let mut a = vec![vec![MultiPoly::zero(&vars); n]; n];
    let mut b = vec![vec![MultiPoly::zero(&vars); n]; n];
    for p in 0..n {
        for q in 0..n {
            for i in 0..n {
                for k in 0..n {
                    let c = r.get(i, p, k, q);
                    if !c.is_zero() {
                        a[p][q] = &a[p][q] + &monomial(&vars, &[i, k]).scale(c);
                    }
                    for m in 0..n {
                        let c = dcurv.get(m, i, p, k, q);
                        if !c.is_zero() {
                            b[p][q] = &b[p][q] + &monomial(&vars, &[m, i, k]).scale(c);
                        }
                    }
                }
            }
        }
    }
    let mut l5_form = MultiPoly::zero(&vars);
    for (ia, ic) in (0..n).flat_map(|x| (0..n).map(move |y| (x, y))) {
        if gi[(ia, ic)].is_zero() {
            continue;
        }
        for (ib, id) in (0..n).flat_map(|x| (0..n).map(move |y| (x, y))) {
            if gi[(ib, id)].is_zero() || a[ia][ib].is_zero() || b[ic][id].is_zero() {
                continue;
            }
            let w = &gi[(ia, ic)] * &gi[(ib, id)];
            l5_form = &l5_form + &(&a[ia][ib] * &b[ic][id]).scale(&w);
        }
    }

    Ok(LedgerReport {
        l3: cyclic_parallel,
        l5: l5_form.is_zero(),
        l3_exceptional: roots_where_zero(&l3_form),
        l5_exceptional: roots_where_zero(&l5_form),
        vars,
        l3_form,
        cyclic_parallel,
        l5_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn berger_ledger() {
        let r = ledger_check(&catalog::berger().algebra).unwrap();
        assert!(r.l3 && r.cyclic_parallel);
        assert!(r.l3_form.is_zero());
        assert!(r.l5);
    }

    #[test]
    fn abelian_ledger() {
        let r = ledger_check(&catalog::abelian_control().algebra).unwrap();
        assert!(r.l3 && r.l5);
    }
}
