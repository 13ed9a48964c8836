//! Parametric linear systems `A(eps) x = b(eps)`.
//!
//! Rows are cleared of denominators and eliminated fraction-free (Bareiss),
//! logging every pivot and every consistency residual. Rational roots of the
//! logged polynomials are the candidate exceptional parameters; each one is
//! re-solved exactly with `eps` substituted.

use std::fmt;

use crate::algebra::InvariantVector;
use crate::scalarfield::{Indeterminates, Matrix, MultiPoly, Poly, RatFunc, Rational};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricLinearSystem {
    matrix: Matrix,
    rhs: Vec<RatFunc>,
    unknowns: Vec<String>,
}

impl ParametricLinearSystem {
    pub fn new(matrix: Matrix, rhs: Vec<RatFunc>, unknowns: Vec<String>) -> Result<Self, Error> {
        if rhs.len() != matrix.rows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                got: rhs.len(),
            });
        }
        if unknowns.len() != matrix.cols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.cols(),
                got: unknowns.len(),
            });
        }
        for (i, u) in unknowns.iter().enumerate() {
            if unknowns[..i].contains(u) {
                return Err(Error::CaseAnalysisIncomplete(format!("duplicate unknown name '{u}'")));
            }
        }
        Ok(ParametricLinearSystem { matrix, rhs, unknowns })
    }

    pub fn homogeneous(matrix: Matrix, unknowns: Vec<String>) -> Result<Self, Error> {
        let rhs = vec![RatFunc::zero(); matrix.rows()];
        ParametricLinearSystem::new(matrix, rhs, unknowns)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &[RatFunc] {
        &self.rhs
    }

    pub fn unknowns(&self) -> &[String] {
        &self.unknowns
    }

    /// `A x - b`, row by row.
    pub fn residual(&self, x: &[RatFunc]) -> Vec<RatFunc> {
        self.matrix
            .mul_vec(x)
            .iter()
            .zip(&self.rhs)
            .map(|(l, r)| l - r)
            .collect()
    }

    /// Each row as the polynomial `sum_j A_ij x_j - b_i` in the unknowns.
    pub fn row_polynomials(&self) -> Vec<MultiPoly> {
        let vars = Indeterminates::new(&self.unknowns);
        (0..self.matrix.rows())
            .map(|i| {
                let lin = MultiPoly::linear(&vars, &self.matrix.row(i));
                &lin - &MultiPoly::constant(&vars, self.rhs[i].clone())
            })
            .collect()
    }

    pub fn specialize(&self, eps0: &Rational) -> Result<ParametricLinearSystem, Error> {
        Ok(ParametricLinearSystem {
            matrix: self.matrix.specialize(eps0)?,
            rhs: self
                .rhs
                .iter()
                .map(|v| v.eval(eps0).map(RatFunc::constant))
                .collect::<Result<_, _>>()?,
            unknowns: self.unknowns.clone(),
        })
    }

    fn has_pole_at(&self, eps0: &Rational) -> bool {
        self.matrix.entries().chain(&self.rhs).any(|v| v.has_pole_at(eps0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionStatus {
    Inconsistent,
    Unique,
    Affine { dim: usize },
}

impl fmt::Display for SolutionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionStatus::Inconsistent => f.write_str("inconsistent"),
            SolutionStatus::Unique => f.write_str("unique"),
            SolutionStatus::Affine { dim } => write!(f, "affine family of dimension {dim}"),
        }
    }
}

/// Solution set `particular + span(kernel)`; `particular` is `None` when
/// the system is inconsistent. Free unknowns are set to zero in the
/// particular solution and the kernel basis is in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub status: SolutionStatus,
    pub particular: Option<Vec<RatFunc>>,
    pub kernel: Vec<Vec<RatFunc>>,
}

impl Solution {
    fn has_pole_at(&self, eps0: &Rational) -> bool {
        self.particular
            .iter()
            .flatten()
            .chain(self.kernel.iter().flatten())
            .any(|v| v.has_pole_at(eps0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchKind {
    /// Some coefficient has a pole: the system is undefined there.
    Pole,
    Solved(Solution),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalBranch {
    pub eps: Rational,
    pub kind: BranchKind,
}

impl ExceptionalBranch {
    pub fn solution(&self) -> Option<&Solution> {
        match &self.kind {
            BranchKind::Solved(s) => Some(s),
            BranchKind::Pole => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricSolution {
    pub generic: Solution,
    pub exceptional: Vec<ExceptionalBranch>,
    /// Pivot polynomials (monic, square-free) of the fraction-free elimination.
    pub pivot_polys: Vec<Poly>,
    /// Numerators of the consistency residuals, when the generic system is inconsistent.
    pub consistency_polys: Vec<Poly>,
    /// Denominators cleared from the rows.
    pub pole_polys: Vec<Poly>,
    /// Factors of logged polynomials without rational roots: possible
    /// exceptional values that are not rational and were not re-solved.
    pub unresolved: Vec<Poly>,
}

impl ParametricSolution {
    /// Branch at `eps0`, if it is exceptional.
    pub fn branch(&self, eps0: &Rational) -> Option<&ExceptionalBranch> {
        self.exceptional.iter().find(|b| &b.eps == eps0)
    }

    pub fn exceptional_values(&self) -> Vec<Rational> {
        self.exceptional.iter().map(|b| b.eps.clone()).collect()
    }
}

/// Gauss-Jordan elimination over the field Q(eps).
pub fn solve_field(sys: &ParametricLinearSystem) -> Solution {
    let rows = sys.matrix.rows();
    let cols = sys.matrix.cols();
    let mut a: Vec<Vec<RatFunc>> = (0..rows)
        .map(|i| {
            let mut r = sys.matrix.row(i);
            r.push(sys.rhs[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..=cols {
                if !a[r][j].is_zero() {
                    let d = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return Solution {
            status: SolutionStatus::Inconsistent,
            particular: None,
            kernel: Vec::new(),
        };
    }
    let mut particular = vec![RatFunc::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = a[i][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel: Vec<Vec<RatFunc>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![RatFunc::zero(); cols];
            v[f] = RatFunc::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -&a[i][f];
            }
            v
        })
        .collect();
    let status = if kernel.is_empty() {
        SolutionStatus::Unique
    } else {
        SolutionStatus::Affine { dim: kernel.len() }
    };
    Solution {
        status,
        particular: Some(particular),
        kernel,
    }
}

fn push_unique(list: &mut Vec<Poly>, p: Poly) {
    if p.is_constant() {
        return;
    }
    let p = p.squarefree().monic();
    if !list.contains(&p) {
        list.push(p);
    }
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = a.gcd(b);
    (a * b).div_exact(&g).expect("gcd divides the product").monic()
}

struct Elimination {
    pivots: Vec<Poly>,
    consistency: Vec<Poly>,
    poles: Vec<Poly>,
}

/// Fraction-free elimination on the row-cleared augmented matrix. Pivots are
/// chosen with lowest degree; rows left without a pivot give consistency
/// residuals, reduced by the last pivot to their field-elimination value.
fn bareiss_log(sys: &ParametricLinearSystem) -> Elimination {
    let rows = sys.matrix.rows();
    let cols = sys.matrix.cols();
    let mut poles = Vec::new();
    let mut a: Vec<Vec<Poly>> = (0..rows)
        .map(|i| {
            let row: Vec<RatFunc> = sys
                .matrix
                .row(i)
                .into_iter()
                .chain(std::iter::once(sys.rhs[i].clone()))
                .collect();
            let den = row.iter().fold(Poly::one(), |acc, v| lcm(&acc, v.den()));
            if !den.is_constant() {
                push_unique(&mut poles, den.clone());
            }
            row.iter()
                .map(|v| {
                    let q = den.div_exact(v.den()).expect("lcm is a multiple");
                    v.num() * &q
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = Poly::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| (a[i][c].degree().unwrap_or(0), i))
        else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        push_unique(&mut pivots, piv.clone());
        for i in r + 1..rows {
            for j in 0..=cols {
                if j == c {
                    continue;
                }
                let t = &(&piv * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = Poly::zero();
        }
        prev = piv;
        r += 1;
    }
    let mut consistency = Vec::new();
    for row in &a[r..] {
        let v = &row[cols];
        if !v.is_zero() {
            let reduced = RatFunc::new(v.clone(), prev.clone()).expect("pivot is nonzero");
            push_unique(&mut consistency, reduced.num().clone());
        }
    }
    Elimination {
        pivots,
        consistency,
        poles,
    }
}

/// Solves the system generically and at every rational exceptional value.
pub fn solve_parametric(sys: &ParametricLinearSystem) -> ParametricSolution {
    let generic = solve_field(sys);
    let log = bareiss_log(sys);
    let mut candidates: Vec<Rational> = Vec::new();
    let mut unresolved = Vec::new();
    for p in log.pivots.iter().chain(&log.consistency).chain(&log.poles) {
        for r in p.rational_roots() {
            if !candidates.contains(&r.value) {
                candidates.push(r.value);
            }
        }
        push_unique(&mut unresolved, p.irrational_part());
    }
    candidates.sort();
    let mut exceptional = Vec::new();
    for eps0 in candidates {
        if sys.has_pole_at(&eps0) {
            exceptional.push(ExceptionalBranch {
                eps: eps0,
                kind: BranchKind::Pole,
            });
            continue;
        }
        let special = solve_field(&sys.specialize(&eps0).expect("no pole at this value"));
        let generic_here = if generic.has_pole_at(&eps0) {
            None
        } else {
            Some(specialize_solution(&generic, &eps0))
        };
        let differs = match generic_here {
            None => true,
            Some(g) => g.status != special.status || !same_solution_set(&g, &special),
        };
        if differs {
            exceptional.push(ExceptionalBranch {
                eps: eps0,
                kind: BranchKind::Solved(special),
            });
        }
    }
    ParametricSolution {
        generic,
        exceptional,
        pivot_polys: log.pivots,
        consistency_polys: log.consistency,
        pole_polys: log.poles,
        unresolved,
    }
}

fn specialize_solution(s: &Solution, eps0: &Rational) -> Solution {
    let sp = |v: &Vec<RatFunc>| -> Vec<RatFunc> {
        v.iter()
            .map(|x| RatFunc::constant(x.eval(eps0).expect("checked for poles")))
            .collect()
    };
    Solution {
        status: s.status.clone(),
        particular: s.particular.as_ref().map(sp),
        kernel: s.kernel.iter().map(sp).collect(),
    }
}

/// Compares two solution sets over constants by membership.
fn same_solution_set(a: &Solution, b: &Solution) -> bool {
    if a.kernel.len() != b.kernel.len() {
        return false;
    }
    match (&a.particular, &b.particular) {
        (None, None) => true,
        (Some(pa), Some(pb)) => {
            let n = pa.len();
            let mut cols: Vec<Vec<RatFunc>> = b.kernel.clone();
            let diff: Vec<RatFunc> = pa.iter().zip(pb).map(|(x, y)| x - y).collect();
            cols.push(diff);
            cols.extend(a.kernel.iter().cloned());
            rank(&Matrix::from_columns(&cols), n) == b.kernel.len()
        }
        _ => false,
    }
}

fn rank(m: &Matrix, rows: usize) -> usize {
    if m.cols() == 0 {
        return 0;
    }
    let sys = ParametricLinearSystem::homogeneous(m.transpose(), (0..rows).map(|i| format!("x{i}")).collect())
        .expect("consistent shapes");
    rows - solve_field(&sys).kernel.len()
}

/// Generic null space of a square operator; empty for a trivial kernel.
pub fn kernel(l: &Matrix) -> Vec<InvariantVector> {
    let unknowns = (0..l.cols()).map(|i| format!("x{}", i + 1)).collect();
    let sys = ParametricLinearSystem::homogeneous(l.clone(), unknowns).expect("shapes agree");
    solve_field(&sys).kernel.into_iter().map(InvariantVector::new).collect()
}

/// Null space together with the parameter values where it grows.
pub fn kernel_parametric(l: &Matrix) -> ParametricSolution {
    let unknowns = (0..l.cols()).map(|i| format!("x{}", i + 1)).collect();
    solve_parametric(&ParametricLinearSystem::homogeneous(l.clone(), unknowns).expect("shapes agree"))
}
