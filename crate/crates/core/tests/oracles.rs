//! Engine results against independent computations: an exact-rational
//! Koszul oracle, the floating-point frame pipeline, and basis changes.

mod common;

use num_traits::Zero;

use metric_lie::algebra::{curvature_tensor, MetricLieAlgebra};
use metric_lie::catalog;
use metric_lie::geometry::numeric::relative_difference;
use metric_lie::geometry::{
    einstein_check, energy_report, evaluate_numeric, killing_solve, ledger_check, rough_laplacian,
};
use metric_lie::scalarfield::{parse_ratfunc, rat, ratio, Matrix, MultiPoly, RatFunc, Rational};
use metric_lie::solvers::characteristic_polynomial;

use common::{dual_path, f, random_algebra, scalar_curvature, Exact, Symbolic};

const RTOL: f64 = 1e-12;

fn grid() -> Vec<[Rational; 3]> {
    let r: Vec<Rational> = (-3..=3).map(rat).collect();
    let mut out = Vec::new();
    for a in &r {
        for b in &r {
            for c in &r {
                out.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    out
}

#[test]
fn l5_matches_grid_oracle_for_berger() {
    let alg = catalog::berger().algebra;
    let l5 = ledger_check(&alg).unwrap().l5_form;
    for eps in [ratio(-3, 2), ratio(1, 2), rat(3)] {
        let exact = Exact::new(&alg, &eps);
        for x in grid() {
            assert_eq!(l5.eval(&eps, &x).unwrap(), exact.l5(&x), "eps={eps} x={x:?}");
        }
    }
}

#[test]
fn l5_matches_grid_oracle_where_it_is_nonzero() {
    // Left-invariant metrics on sl(2) and on semidirect products generally violate L5.
    let mut nonzero_seen = false;
    for seed in [3, 11, 17] {
        let alg = random_algebra(seed);
        for eps in [rat(-2), rat(3), ratio(5, 2)] {
            let Ok(at) = alg.specialize(&eps) else { continue };
            let l5 = ledger_check(&at).unwrap().l5_form;
            let exact = Exact::new(&alg, &eps);
            for x in grid().into_iter().step_by(7) {
                let v = exact.l5(&x);
                nonzero_seen |= !v.is_zero();
                assert_eq!(l5.eval(&eps, &x).unwrap(), v, "{} eps={eps} x={x:?}", alg.name());
            }
        }
    }
    assert!(nonzero_seen, "the oracle comparison never exercised a nonzero L5 value");
}

#[test]
fn curvature_matches_koszul_oracle() {
    for seed in 0..8 {
        let alg = random_algebra(seed);
        let t = curvature_tensor(&alg).unwrap();
        let eps = ratio(7, 3);
        if alg.specialize(&eps).is_err() {
            continue;
        }
        let exact = Exact::new(&alg, &eps);
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        assert_eq!(
                            t.get(a, b, c, d).eval(&eps).unwrap(),
                            exact.r[a][b][c][d],
                            "seed {seed}"
                        );
                    }
                }
            }
        }
        assert_eq!(scalar_curvature(&alg).eval(&eps).unwrap(), exact.scalar_curvature());
    }
}

#[test]
fn berger_dual_path() {
    let alg = catalog::berger().algebra;
    let sym = Symbolic::new(&alg, true);
    for eps in [rat(-2), rat(-1), ratio(1, 2), rat(1), rat(3)] {
        let count = dual_path(&alg, &sym, &eps, RTOL).unwrap_or_else(|e| panic!("eps={eps}: {e}"));
        assert!(count >= 10, "eps={eps}: only {count} comparisons");
    }
}

#[test]
fn random_algebras_dual_path() {
    // Specialized first: the exact pipeline then runs on constant structure data.
    for seed in 0..10 {
        let alg = random_algebra(seed);
        for eps in [rat(-2), ratio(1, 2), rat(3)] {
            if let Ok(at) = alg.specialize(&eps) {
                dual_path(&at, &Symbolic::new(&at, false), &eps, RTOL)
                    .unwrap_or_else(|e| panic!("seed {seed} eps={eps}: {e}"));
            }
        }
    }
}

#[test]
fn invariants_survive_change_of_basis() {
    let alg = catalog::berger().algebra;
    let p = Matrix::from_rows(vec![
        vec![RatFunc::int(1), RatFunc::int(2), RatFunc::zero()],
        vec![RatFunc::zero(), RatFunc::int(1), RatFunc::constant(ratio(-1, 2))],
        vec![RatFunc::int(3), RatFunc::zero(), RatFunc::int(1)],
    ]);
    let other = alg.change_basis(&p).unwrap();
    assert_eq!(scalar_curvature(&other), scalar_curvature(&alg));
    let chi = |a: &MetricLieAlgebra| characteristic_polynomial(&rough_laplacian(a).unwrap().matrix);
    assert_eq!(chi(&other), chi(&alg));
    assert_eq!(killing_solve(&other).unwrap().generic.dim(), 1);
    assert!(einstein_check(&other).unwrap().is_none());
    let l = ledger_check(&other).unwrap();
    assert!(l.l3 && l.l5);
    let at_one = other.specialize(&rat(1)).unwrap();
    assert_eq!(einstein_check(&at_one).unwrap(), Some(RatFunc::int(2)));
}

#[test]
fn berger_frame_energy_formula() {
    // In frame coordinates V = a e1 + b e2 + c e3 with g(V, V) = eta_1 a^2 + b^2 + c^2:
    // ||nabla V||^2 = ((eps-2)^2 + eps^2)/eps g(V, V) -/+ 4 (eps-1)/eps a^2, minus for eps < 0.
    let alg = catalog::berger().algebra;
    let energy = energy_report(&alg).unwrap();
    let vars = &energy.vars;
    let sq = |i| MultiPoly::var(vars, i).pow(2);
    let k = |s: &str| parse_ratfunc(s).unwrap();
    let expected = &sq(0).scale(&k("2*eps^2")) + &(&sq(1) + &sq(2)).scale(&k("2*(eps^2-2*eps+2)/eps"));
    assert_eq!(energy.grad_norm_sq, expected);

    for eps in [rat(-3), ratio(-1, 2), ratio(1, 3), rat(2), rat(5)] {
        let m = evaluate_numeric(&alg, &eps).unwrap();
        let e = f(&eps);
        let sign = if e < 0.0 { -1.0 } else { 1.0 };
        for v in [[1.0, 0.0, 0.0], [0.5, 1.5, -2.0], [-1.25, 0.0, 0.75]] {
            let len = sign * v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            let formula = ((e - 2.0).powi(2) + e * e) / e * len + sign * 4.0 * (e - 1.0) / e * v[0] * v[0];
            let symbolic = energy.grad_norm_sq.eval_f64(e, &m.frame_to_x(&v));
            assert!(
                relative_difference(symbolic, formula) < RTOL,
                "eps={eps} v={v:?}: {symbolic} vs {formula}"
            );
        }
    }
}

#[test]
fn frozen_values_at_sample_parameters() {
    // Computed once from the exact oracle above and frozen.
    let alg = catalog::berger().algebra;
    let exact = Exact::new(&alg, &rat(-1));
    assert_eq!(exact.scalar_curvature(), rat(10));
    let exact = Exact::new(&alg, &ratio(1, 2));
    assert_eq!(exact.scalar_curvature(), rat(7));
    assert_eq!(exact.r[1][2][1][2], ratio(5, 2));
    let m = evaluate_numeric(&alg, &rat(4)).unwrap();
    assert!(relative_difference(m.frame_grad_norm_sq(&[1.0, 0.0, 0.0]), 8.0) < RTOL);
}
