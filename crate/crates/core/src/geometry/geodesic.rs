//! Geodesic invariant fields: `nabla_V V = 0`.
//!
//! The components of `nabla_V V` are quadratic forms in the coordinates of
//! `V`. When every form factors into linear forms over Q(eps) on the current
//! subspace, the solution set is a finite union of linear subspaces found by
//! branching on the factors.

use super::subspace::normalize_union;
use super::Subspace;
use crate::algebra::{symbolic, InvariantVector, LeviCivita, MetricLieAlgebra};
use crate::scalarfield::{Indeterminates, Matrix, MultiPoly, Poly, RatFunc, Rational};
use crate::solvers::kernel;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseAnalysis {
    /// Solutions are exactly the union of these subspaces.
    Union(Vec<Subspace>),
    /// Some equation does not split into linear factors.
    Incomplete(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeodesicBranch {
    /// The metric degenerates at this parameter.
    Degenerate {
        eps: Rational,
    },
    Solved {
        eps: Rational,
        analysis: CaseAnalysis,
    },
}

impl GeodesicBranch {
    pub fn eps(&self) -> &Rational {
        match self {
            GeodesicBranch::Degenerate { eps } | GeodesicBranch::Solved { eps, .. } => eps,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicReport {
    pub vars: Indeterminates,
    /// Components of `nabla_V V` for `V = a X_1 + b X_2 + ...`.
    pub equations: Vec<MultiPoly>,
    pub analysis: CaseAnalysis,
    pub exceptional: Vec<GeodesicBranch>,
}

/// `nabla_v v == 0`
pub fn geodesic_check(alg: &MetricLieAlgebra, v: &InvariantVector) -> Result<bool, Error> {
    let lc = LeviCivita::new(alg)?;
    Ok(lc.apply(&v.coords, &v.coords).iter().all(RatFunc::is_zero))
}

fn equations_with(lc: &LeviCivita, vars: &Indeterminates) -> Vec<MultiPoly> {
    let v = symbolic::generic_vector(vars, lc.dim(), 0);
    symbolic::along(vars, &lc.operators, &v, &v)
}

fn free_columns(s: &Subspace) -> Vec<usize> {
    let pivots: Vec<usize> = s
        .equations
        .iter()
        .filter_map(|row| row.iter().position(|c| !c.is_zero()))
        .collect();
    (0..s.dim_ambient).filter(|c| !pivots.contains(c)).collect()
}

/// Linear forms in the subspace coordinates whose product is a nonzero
/// multiple of the quadratic form `m`.
fn split(m: &Matrix) -> Result<Vec<Vec<RatFunc>>, String> {
    let d = m.rows();
    let rank = d - kernel(m).len();
    match rank {
        1 => {
            let r = (0..d)
                .find(|&r| !m[(r, r)].is_zero())
                .ok_or("rank-one form without diagonal")?;
            Ok(vec![m.row(r)])
        }
        2 => {
            let (p, q, inv) = (0..d)
                .flat_map(|p| (p + 1..d).map(move |q| (p, q)))
                .find_map(|(p, q)| {
                    let n = Matrix::from_rows(vec![
                        vec![m[(p, p)].clone(), m[(p, q)].clone()],
                        vec![m[(q, p)].clone(), m[(q, q)].clone()],
                    ]);
                    n.inverse().ok().map(|inv| (p, q, inv))
                })
                .ok_or("rank-two form without a regular principal minor")?;
            let (a, b, c) = (&inv[(0, 0)], &inv[(0, 1)], &inv[(1, 1)]);
            let (y1, y2) = (m.row(p), m.row(q));
            let comb = |s: &RatFunc, t: &RatFunc| -> Vec<RatFunc> {
                y1.iter().zip(&y2).map(|(u, v)| &(s * u) + &(t * v)).collect()
            };
            if a.is_zero() {
                return Ok(vec![y2.clone(), comb(&(b + b), c)]);
            }
            let disc = &(b * b) - &(a * c);
            let root = disc
                .sqrt()
                .ok_or_else(|| format!("discriminant {disc} is not a square in Q(eps)"))?;
            let one = RatFunc::one();
            let r1 = (&(-b) + &root).checked_div(a).map_err(|e| e.to_string())?;
            let r2 = (&(-b) - &root).checked_div(a).map_err(|e| e.to_string())?;
            Ok(vec![comb(&one, &(-&r1)), comb(&one, &(-&r2))])
        }
        r => Err(format!("quadratic form of rank {r} does not split into linear factors")),
    }
}

fn solve_on(s: Subspace, eqs: &[Matrix]) -> Result<Vec<Subspace>, String> {
    let d = s.dim();
    if d == 0 {
        return Ok(vec![s]);
    }
    let b = Matrix::from_columns(&s.basis.iter().map(|v| v.coords.clone()).collect::<Vec<_>>());
    let free = free_columns(&s);
    for m in eqs {
        let restricted = &(&b.transpose() * m) * &b;
        if restricted.is_zero() {
            continue;
        }
        let mut out = Vec::new();
        for form in split(&restricted)? {
            let mut lifted = vec![RatFunc::zero(); s.dim_ambient];
            for (k, c) in form.into_iter().enumerate() {
                lifted[free[k]] = c;
            }
            let mut rows = s.equations.clone();
            rows.push(lifted);
            out.extend(solve_on(Subspace::from_equations(s.dim_ambient, rows), eqs)?);
        }
        return Ok(normalize_union(out));
    }
    Ok(vec![s])
}

pub(super) fn analyze(n: usize, equations: &[MultiPoly]) -> CaseAnalysis {
    let mut forms = Vec::new();
    for e in equations.iter().filter(|e| !e.is_zero()) {
        match e.quadratic_form() {
            Some(q) => forms.push(Matrix::from_rows(q)),
            None => return CaseAnalysis::Incomplete(format!("{e} is not a quadratic form")),
        }
    }
    match solve_on(Subspace::whole(n), &forms) {
        Ok(parts) => CaseAnalysis::Union(parts),
        Err(reason) => CaseAnalysis::Incomplete(reason),
    }
}

fn push_roots(out: &mut Vec<Rational>, p: &Poly) {
    if p.is_zero() {
        return;
    }
    for r in p.rational_roots() {
        if !out.contains(&r.value) {
            out.push(r.value);
        }
    }
}

/// Candidate parameters: roots of every numerator and denominator occurring
/// in the equations, in the generic answer and in `det g`.
fn candidates(alg: &MetricLieAlgebra, equations: &[MultiPoly], analysis: &CaseAnalysis) -> Vec<Rational> {
    let mut out = Vec::new();
    for e in equations {
        for (_, c) in e.terms() {
            push_roots(&mut out, c.num());
            push_roots(&mut out, c.den());
        }
    }
    if let CaseAnalysis::Union(parts) = analysis {
        for c in parts.iter().flat_map(|s| s.equations.iter().flatten()) {
            push_roots(&mut out, c.num());
            push_roots(&mut out, c.den());
        }
    }
    let det = alg.determinant();
    push_roots(&mut out, det.num());
    push_roots(&mut out, det.den());
    out.sort();
    out
}

fn specialized_union(analysis: &CaseAnalysis, eps0: &Rational) -> Option<Vec<Subspace>> {
    let CaseAnalysis::Union(parts) = analysis else {
        return None;
    };
    let parts: Vec<Subspace> = parts
        .iter()
        .map(|s| s.specialize(eps0))
        .collect::<Result<_, _>>()
        .ok()?;
    Some(normalize_union(parts))
}

/// Solves `nabla_V V = 0` generically and at every parameter where the
/// answer changes.
pub fn geodesic_classify(alg: &MetricLieAlgebra) -> Result<GeodesicReport, Error> {
    let n = alg.dim();
    let lc = LeviCivita::new(alg)?;
    let vars = Indeterminates::components(n);
    let equations = equations_with(&lc, &vars);
    let analysis = analyze(n, &equations);
    let mut exceptional = Vec::new();
    for eps in candidates(alg, &equations, &analysis) {
        let special = match alg.specialize(&eps) {
            Ok(s) => s,
            Err(_) => {
                exceptional.push(GeodesicBranch::Degenerate { eps });
                continue;
            }
        };
        let Ok(slc) = LeviCivita::new(&special) else {
            exceptional.push(GeodesicBranch::Degenerate { eps });
            continue;
        };
        let local = analyze(n, &equations_with(&slc, &vars));
        let same = match (&local, specialized_union(&analysis, &eps)) {
            (CaseAnalysis::Union(parts), Some(generic)) => parts == &generic,
            _ => false,
        };
        if !same {
            exceptional.push(GeodesicBranch::Solved { eps, analysis: local });
        }
    }
    Ok(GeodesicReport {
        vars,
        equations,
        analysis,
        exceptional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalarfield::{parse_ratfunc, rat};

    #[test]
    fn berger_equations_and_cases() {
        let r = geodesic_classify(&catalog::berger().algebra).unwrap();
        let vars = &r.vars;
        let x = |i| MultiPoly::var(vars, i);
        let k = |s: &str| parse_ratfunc(s).unwrap();
        assert!(r.equations[0].is_zero());
        assert_eq!(r.equations[1], (&x(0) * &x(2)).scale(&k("2*eps-2")));
        assert_eq!(r.equations[2], (&x(0) * &x(1)).scale(&k("2-2*eps")));
        let CaseAnalysis::Union(parts) = &r.analysis else {
            panic!("{:?}", r.analysis)
        };
        let texts: Vec<String> = parts.iter().map(|s| s.equations_text(&["a", "b", "c"])).collect();
        assert_eq!(texts, ["a = 0", "b = 0, c = 0"]);
        let eps: Vec<Rational> = r.exceptional.iter().map(|b| b.eps().clone()).collect();
        assert_eq!(eps, vec![rat(0), rat(1)]);
        assert!(matches!(r.exceptional[0], GeodesicBranch::Degenerate { .. }));
        assert_eq!(
            r.exceptional[1],
            GeodesicBranch::Solved {
                eps: rat(1),
                analysis: CaseAnalysis::Union(vec![Subspace::whole(3)])
            }
        );
    }

    #[test]
    fn concrete_checks() {
        let alg = catalog::berger().algebra;
        assert!(geodesic_check(&alg, &InvariantVector::from_i64(&[0, 2, -3])).unwrap());
        assert!(geodesic_check(&alg, &InvariantVector::from_i64(&[5, 0, 0])).unwrap());
        assert!(!geodesic_check(&alg, &InvariantVector::from_i64(&[1, 1, 0])).unwrap());
    }

    #[test]
    fn abelian_every_field_is_geodesic() {
        let r = geodesic_classify(&catalog::abelian_control().algebra).unwrap();
        assert_eq!(r.analysis, CaseAnalysis::Union(vec![Subspace::whole(3)]));
        assert!(r.exceptional.is_empty());
    }

    #[test]
    fn difference_of_squares_splits() {
        // x^2 - 4 y^2 = (x - 2y)(x + 2y)
        let m = Matrix::from_i64(&[&[1, 0], &[0, -4]]);
        let forms = split(&m).unwrap();
        assert_eq!(forms.len(), 2);
        // x^2 + y^2 has no rational factors
        assert!(split(&Matrix::from_i64(&[&[1, 0], &[0, 1]])).is_err());
    }
}
