//! Eigenvalues in Q(eps) of small operators.
//!
//! The characteristic polynomial is computed exactly. Its roots in Q(eps)
//! are found by sampling `eps` at primes, taking the exact rational roots of
//! each specialization, reconstructing candidates by rational interpolation
//! and then dividing them out of the characteristic polynomial.

use std::fmt;

use num_traits::Zero;

use super::interpolate::cauchy_interpolate;
use super::parametric::kernel;
use crate::algebra::InvariantVector;
use crate::scalarfield::{Matrix, Poly, RatFunc, Rational};
use crate::Error;

/// Default bound on numerator and denominator degree of reconstructed eigenvalues.
pub const DEFAULT_DEGREE_BOUND: usize = 8;

const COMBINATION_BUDGET: usize = 200_000;

/// Polynomial in `mu` with coefficients in Q(eps), lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuPoly {
    coeffs: Vec<RatFunc>,
}

impl MuPoly {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        MuPoly { coeffs }
    }

    pub fn one() -> Self {
        MuPoly {
            coeffs: vec![RatFunc::one()],
        }
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn eval(&self, mu: &RatFunc) -> RatFunc {
        self.coeffs
            .iter()
            .rev()
            .fold(RatFunc::zero(), |acc, c| &(&acc * mu) + c)
    }

    /// Specialization at `eps = eps0`, or `None` at a pole of some coefficient.
    pub fn specialize(&self, eps0: &Rational) -> Option<Poly> {
        let cs: Option<Vec<Rational>> = self.coeffs.iter().map(|c| c.eval(eps0).ok()).collect();
        cs.map(Poly::from_coeffs)
    }

    /// Quotient by `mu - r` when the division is exact.
    pub fn div_linear(&self, r: &RatFunc) -> Option<MuPoly> {
        if self.coeffs.is_empty() {
            return None;
        }
        let n = self.degree();
        let mut q = vec![RatFunc::zero(); n];
        let mut carry = RatFunc::zero();
        for k in (0..=n).rev() {
            let v = &self.coeffs[k] + &(&carry * r);
            if k == 0 {
                return v.is_zero().then(|| MuPoly::new(q));
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    pub fn mul(&self, other: &MuPoly) -> MuPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return MuPoly::new(Vec::new());
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        MuPoly::new(out)
    }

    /// `mu - r`
    pub fn linear(r: &RatFunc) -> MuPoly {
        MuPoly::new(vec![-r, RatFunc::one()])
    }
}

impl fmt::Display for MuPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "mu".to_string(),
                _ => format!("mu^{k}"),
            };
            let cs = c.to_string();
            let simple = c.is_polynomial() && c.num().coeffs().iter().filter(|v| !v.is_zero()).count() == 1;
            let body = if mono.is_empty() {
                cs.clone()
            } else if c.is_one() {
                mono.clone()
            } else if (-c).is_one() {
                format!("-{mono}")
            } else if simple {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            };
            if first {
                f.write_str(&body)?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, "-{rest}")?;
            } else {
                write!(f, "+{body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// `det(mu I - L)` by the Faddeev-LeVerrier recurrence.
pub fn characteristic_polynomial(l: &Matrix) -> MuPoly {
    assert!(l.is_square());
    let n = l.rows();
    let mut coeffs = vec![RatFunc::zero(); n + 1];
    coeffs[n] = RatFunc::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = l * &m;
        for i in 0..n {
            next[(i, i)] = &next[(i, i)] + &coeffs[n - k + 1];
        }
        m = next;
        let t = (l * &m).trace();
        coeffs[n - k] = -t.scale(&Rational::new(1.into(), (k as i64).into()));
    }
    MuPoly::new(coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPair {
    pub eigenvalue: RatFunc,
    pub multiplicity: usize,
    /// Generic eigenspace basis in reduced echelon form.
    pub eigenspace: Vec<InvariantVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenDecomposition {
    pub characteristic: MuPoly,
    pub pairs: Vec<EigenPair>,
    /// Part of the characteristic polynomial without roots in Q(eps).
    pub residual_factor: MuPoly,
    pub samples: Vec<Rational>,
}

fn primes() -> impl Iterator<Item = i64> {
    (2i64..).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

/// Tries every assignment of unclaimed sample roots to the first `t + 1`
/// samples and every degree split of total degree `t`.
fn search_degree(
    kept: &[&(Rational, Vec<Rational>)],
    free: &[Vec<Rational>],
    t: usize,
    bound: usize,
    cp: &MuPoly,
    found: &[RatFunc],
) -> Option<RatFunc> {
    if free[..=t].iter().any(Vec::is_empty) {
        return None;
    }
    let mut choice = vec![0usize; t + 1];
    loop {
        let points: Vec<(Rational, Rational)> = (0..=t)
            .map(|i| (kept[i].0.clone(), free[i][choice[i]].clone()))
            .collect();
        for d in 0..=t.min(bound) {
            let m = t - d;
            if m > bound {
                continue;
            }
            let Some(f) = cauchy_interpolate(&points, m, d) else {
                continue;
            };
            if found.contains(&f) {
                continue;
            }
            let fits = kept
                .iter()
                .all(|(x, roots)| f.eval(x).is_ok_and(|v| roots.contains(&v)));
            if fits && cp.eval(&f).is_zero() {
                return Some(f);
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return None;
            }
            choice[i] += 1;
            if choice[i] < free[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Eigenvalues of `l` in Q(eps) with eigenspaces and multiplicities.
pub fn eigen_analyze(l: &Matrix, degree_bound: usize) -> Result<EigenDecomposition, Error> {
    let cp = characteristic_polynomial(l);
    let wanted = 2 * degree_bound + 3;
    let mut samples: Vec<(Rational, Vec<Rational>)> = Vec::new();
    for p in primes() {
        if samples.len() == wanted {
            break;
        }
        let x = Rational::from_integer(p.into());
        let Some(sp) = cp.specialize(&x) else {
            continue;
        };
        let roots: Vec<Rational> = sp.rational_roots().into_iter().map(|r| r.value).collect();
        samples.push((x, roots));
    }
    let sample_points: Vec<Rational> = samples.iter().map(|s| s.0.clone()).collect();

    // Most frequent number of distinct rational roots; ties go to the larger count.
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for (_, r) in &samples {
        match counts.iter_mut().find(|c| c.0 == r.len()) {
            Some(c) => c.1 += 1,
            None => counts.push((r.len(), 1)),
        }
    }
    let mode = counts.iter().max_by_key(|c| (c.1, c.0)).map_or(0, |c| c.0);
    let uniform = counts.len() == 1;
    let kept: Vec<&(Rational, Vec<Rational>)> = samples.iter().filter(|s| s.1.len() == mode).collect();

    let mut found: Vec<RatFunc> = Vec::new();
    let mut exhausted = true;
    let mut t = 0;
    while mode > 0 && found.len() < mode && t <= 2 * degree_bound {
        if t + 1 > kept.len() {
            exhausted = false;
            break;
        }
        let combos = (mode - found.len()).checked_pow((t + 1) as u32).unwrap_or(usize::MAX);
        if combos > COMBINATION_BUDGET {
            exhausted = false;
            break;
        }
        // Values at each sample not yet claimed by a found root.
        let free: Vec<Vec<Rational>> = kept
            .iter()
            .map(|(x, roots)| {
                roots
                    .iter()
                    .filter(|v| !found.iter().any(|f| f.eval(x).as_ref() == Ok(*v)))
                    .cloned()
                    .collect()
            })
            .collect();
        match search_degree(&kept, &free, t, degree_bound, &cp, &found) {
            Some(f) => found.push(f),
            None => t += 1,
        }
    }
    if found.len() < mode && uniform && exhausted {
        return Err(Error::InterpolationDegreeExceeded { bound: degree_bound });
    }

    let mut residual = cp.clone();
    let mut pairs = Vec::new();
    for r in found {
        let mut multiplicity = 0;
        while let Some(q) = residual.div_linear(&r) {
            residual = q;
            multiplicity += 1;
        }
        let shifted = l - &Matrix::identity(l.rows()).scale(&r);
        pairs.push(EigenPair {
            eigenvalue: r,
            multiplicity,
            eigenspace: kernel(&shifted),
        });
    }
    Ok(EigenDecomposition {
        characteristic: cp,
        pairs,
        residual_factor: residual,
        samples: sample_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalarfield::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn characteristic_polynomial_of_diagonal() {
        let l = Matrix::diagonal(&[rf("2"), rf("eps")]);
        let cp = characteristic_polynomial(&l);
        assert_eq!(cp, MuPoly::new(vec![rf("2*eps"), rf("-2-eps"), RatFunc::one()]));
        assert_eq!(cp.to_string(), "mu^2+(-2-eps)*mu+2*eps");
    }

    #[test]
    fn identity_has_one_eigenvalue() {
        let e = eigen_analyze(&Matrix::identity(3), DEFAULT_DEGREE_BOUND).unwrap();
        assert_eq!(e.pairs.len(), 1);
        assert_eq!(e.pairs[0].eigenvalue, RatFunc::one());
        assert_eq!(e.pairs[0].multiplicity, 3);
        assert_eq!(e.pairs[0].eigenspace.len(), 3);
        assert!(e.residual_factor.is_one());
        assert_eq!(e.samples.len(), 2 * DEFAULT_DEGREE_BOUND + 3);
    }

    #[test]
    fn companion_of_irreducible_cubic() {
        // Companion matrix of mu^3 - eps.
        let l = Matrix::from_rows(vec![
            vec![RatFunc::zero(), RatFunc::zero(), RatFunc::eps()],
            vec![RatFunc::one(), RatFunc::zero(), RatFunc::zero()],
            vec![RatFunc::zero(), RatFunc::one(), RatFunc::zero()],
        ]);
        let e = eigen_analyze(&l, DEFAULT_DEGREE_BOUND).unwrap();
        assert!(e.pairs.is_empty());
        assert_eq!(
            e.residual_factor,
            MuPoly::new(vec![-RatFunc::eps(), RatFunc::zero(), RatFunc::zero(), RatFunc::one()])
        );
    }

    #[test]
    fn crossing_eigenvalues_are_separated() {
        // -2eps and -2(eps^2-2eps+2)/eps cross between the samples.
        let l = Matrix::diagonal(&[rf("-2*eps"), rf("-2*(eps^2-2*eps+2)/eps"), rf("-2*(eps^2-2*eps+2)/eps")]);
        let e = eigen_analyze(&l, DEFAULT_DEGREE_BOUND).unwrap();
        assert_eq!(e.pairs.len(), 2);
        assert_eq!(e.pairs[0].eigenvalue, rf("-2*eps"));
        assert_eq!(e.pairs[1].eigenvalue, rf("-2*(eps^2-2*eps+2)/eps"));
        assert_eq!(e.pairs[1].multiplicity, 2);
        assert_eq!(
            e.pairs[1].eigenspace,
            vec![InvariantVector::basis(3, 1), InvariantVector::basis(3, 2)]
        );
    }

    #[test]
    fn partial_factorization_keeps_a_residual() {
        // (mu - eps)(mu^2 - eps)
        let l = Matrix::from_rows(vec![
            vec![RatFunc::eps(), RatFunc::zero(), RatFunc::zero()],
            vec![RatFunc::zero(), RatFunc::zero(), RatFunc::eps()],
            vec![RatFunc::zero(), RatFunc::one(), RatFunc::zero()],
        ]);
        let e = eigen_analyze(&l, DEFAULT_DEGREE_BOUND).unwrap();
        assert_eq!(e.pairs.len(), 1);
        assert_eq!(e.pairs[0].eigenvalue, RatFunc::eps());
        assert_eq!(e.residual_factor.degree(), 2);
    }
}
