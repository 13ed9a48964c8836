//! Rational functions of `eps`: the scalar field every symbolic quantity lives in.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;
use crate::Error;

/// Element of Q(eps) in canonical form: coprime numerator and denominator,
/// monic denominator. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::constant(Rational::one())
    }

    pub fn eps() -> Self {
        RatFunc::from_poly(Poly::eps())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        RatFunc::constant(Rational::from_integer(n.into()))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// Builds `num / den` and normalizes; errors when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if this function does not depend on `eps`.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(RatFunc::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn inv(&self) -> Result<RatFunc, Error> {
        RatFunc::one().checked_div(self)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Exact value at `eps = x`.
    pub fn eval(&self, x: &Rational) -> Result<Rational, Error> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtEvaluationPoint(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    pub fn has_pole_at(&self, x: &Rational) -> bool {
        self.den.eval(x).is_zero()
    }

    /// Perfect square test in Q(eps): returns `s` with `s * s == self`.
    pub fn sqrt(&self) -> Option<RatFunc> {
        // den is monic, so a square denominator has a monic square root.
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        RatFunc::new(n, d).ok()
    }

    /// Checks the canonical-form invariants.
    pub fn is_normalized(&self) -> bool {
        !self.den.is_zero()
            && self.den.leading().is_one()
            && (self.num.is_zero() && self.den.is_one() || self.num.gcd(&self.den).is_one())
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(r: Rational) -> Self {
        RatFunc::constant(r)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::int(n)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.term_count() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalized(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by the zero function; use [`RatFunc::checked_div`]
/// where the divisor may vanish.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |a, b| &a + &b)
    }
}

/// Arithmetic selector for [`ratfunc_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic in Q(eps) with an explicit error for division by zero.
pub fn ratfunc_arith(lhs: &RatFunc, rhs: &RatFunc, op: ArithOp) -> Result<RatFunc, Error> {
    Ok(match op {
        ArithOp::Add => lhs + rhs,
        ArithOp::Sub => lhs - rhs,
        ArithOp::Mul => lhs * rhs,
        ArithOp::Div => lhs.checked_div(rhs)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalarfield::rational::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn gcd_cancellation_on_construction() {
        let f = RatFunc::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(f, RatFunc::from_poly(p(&[1, 1])));
    }

    #[test]
    fn laplacian_coefficient_sum() {
        // (eps-2)^2/eps + eps == 2(eps^2-2eps+2)/eps, coefficients expanded by hand:
        // (eps^2 - 4 eps + 4 + eps^2)/eps = (2 eps^2 - 4 eps + 4)/eps
        let a = RatFunc::new(p(&[4, -4, 1]), p(&[0, 1])).unwrap();
        let sum = ratfunc_arith(&a, &RatFunc::eps(), ArithOp::Add).unwrap();
        assert_eq!(sum.num(), &p(&[4, -4, 2]));
        assert_eq!(sum.den(), &p(&[0, 1]));
        assert_eq!(sum.to_string(), "(4-4*eps+2*eps^2)/eps");
    }

    #[test]
    fn additive_identity_and_division_by_zero() {
        let f = RatFunc::new(p(&[1, 2]), p(&[3, 0, 1])).unwrap();
        assert_eq!(&f + &RatFunc::zero(), f);
        assert_eq!(
            ratfunc_arith(&f, &RatFunc::zero(), ArithOp::Div),
            Err(Error::DivisionByZeroFunction)
        );
    }

    #[test]
    fn evaluation() {
        let f = RatFunc::new(p(&[4, -4, 2]), p(&[0, 1])).unwrap();
        assert_eq!(f.eval(&rat(1)).unwrap(), rat(2));
        assert_eq!(RatFunc::eps().eval(&rat(-1)).unwrap(), rat(-1));
        let inv = RatFunc::eps().inv().unwrap();
        assert_eq!(inv.eval(&rat(0)), Err(Error::PoleAtEvaluationPoint(rat(0))));
    }

    #[test]
    fn denominator_is_monic() {
        let f = RatFunc::new(p(&[1]), p(&[2, 4])).unwrap();
        assert!(f.den().leading().is_one());
        assert!(f.is_normalized());
        assert_eq!(f.to_string(), "1/4/(1/2+eps)");
    }

    #[test]
    fn perfect_squares() {
        let f = RatFunc::new(p(&[1, 1]), p(&[0, 1])).unwrap();
        assert_eq!((&f * &f).sqrt().map(|s| s.pow(2)), Some(&f * &f));
        assert!(RatFunc::eps().sqrt().is_none());
    }
}
