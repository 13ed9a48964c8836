//! Exact scalar arithmetic: rationals, polynomials and rational functions in
//! the parameter `eps`, and multivariate polynomials over Q(eps).

pub mod matrix;
pub mod multipoly;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use matrix::Matrix;
pub use multipoly::{multipoly_is_zero, Indeterminates, MultiPoly};
pub use parse::parse_ratfunc;
pub use poly::{Poly, RationalRoot};
pub use ratfunc::{ratfunc_arith, ArithOp, RatFunc};
pub use rational::{rat, ratio, Rational};

/// Rational roots of `p` with multiplicities.
pub fn poly_rational_roots(p: &Poly) -> Vec<RationalRoot> {
    p.rational_roots()
}

/// `f(eps0)`, exactly.
pub fn ratfunc_eval(f: &RatFunc, eps0: &Rational) -> Result<Rational, crate::Error> {
    f.eval(eps0)
}
