//! Dense univariate polynomials in `eps` over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, positive_divisors, rational_sqrt, rational_to_f64, Rational};

/// Polynomial with rational coefficients, lowest degree first.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

/// A rational root together with its multiplicity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalRoot {
    pub value: Rational,
    pub multiplicity: usize,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The indeterminate `eps`.
    pub fn eps() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// `eps - r`
    pub fn linear_root(r: &Rational) -> Self {
        Poly::from_coeffs(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division; panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree part, made monic.
    pub fn squarefree(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Content and primitive integer coefficients: `self = content * primitive`,
    /// with the primitive leading coefficient positive.
    pub fn primitive_integer_form(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let lcm_den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm_den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, lcm_den), prim)
    }

    /// All rational roots with multiplicities, ascending.
    ///
    /// Candidates come from the rational root theorem applied to the primitive
    /// integer form; every reported root is confirmed by exact evaluation.
    pub fn rational_roots(&self) -> Vec<RationalRoot> {
        assert!(!self.is_zero(), "roots of the zero polynomial requested");
        let mut roots = Vec::new();
        let mut rest = self.clone();
        let mut zero_mult = 0;
        while rest.coeff(0).is_zero() && !rest.is_zero() && rest.degree() != Some(0) {
            rest = Poly::from_coeffs(rest.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push(RationalRoot {
                value: Rational::zero(),
                multiplicity: zero_mult,
            });
        }
        if rest.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let sqf = rest.squarefree();
        let (_, prim) = sqf.primitive_integer_form();
        let ps = positive_divisors(&prim[0]);
        let qs = positive_divisors(prim.last().expect("nonconstant"));
        let mut cands: Vec<Rational> = Vec::new();
        for p in &ps {
            for q in &qs {
                for s in [p.clone(), -p.clone()] {
                    let r = Rational::new(s, q.clone());
                    if !cands.contains(&r) {
                        cands.push(r);
                    }
                }
            }
        }
        cands.sort();
        for r in cands {
            if sqf.eval(&r).is_zero() {
                let lin = Poly::linear_root(&r);
                let mut m = 0;
                while let Some(q) = rest.div_exact(&lin) {
                    rest = q;
                    m += 1;
                }
                roots.push(RationalRoot {
                    value: r,
                    multiplicity: m,
                });
            }
        }
        roots.sort_by(|a, b| a.value.cmp(&b.value));
        roots
    }

    /// Squarefree monic factor left after removing every rational root.
    /// Constant `1` when all roots are rational.
    pub fn irrational_part(&self) -> Poly {
        let mut rest = self.squarefree();
        for r in self.rational_roots() {
            rest = rest.div_exact(&Poly::linear_root(&r.value)).expect("root divides");
        }
        rest.monic()
    }

    /// Exact square root, if `self` is the square of a rational polynomial.
    pub fn sqrt(&self) -> Option<Poly> {
        let Some(d) = self.degree() else {
            return Some(Poly::zero());
        };
        if d % 2 == 1 {
            return None;
        }
        let half = d / 2;
        let lead = rational_sqrt(&self.leading())?;
        // Solve for root coefficients from the top down.
        let mut root = vec![Rational::zero(); half + 1];
        root[half] = lead.clone();
        let two_lead = &lead * Rational::from_integer(2.into());
        for k in (0..half).rev() {
            let target = half + k;
            let mut acc = self.coeff(target);
            for i in (k + 1)..half {
                let j = target - i;
                if j > k && j < half {
                    acc -= &root[i] * &root[j];
                }
            }
            root[k] = acc / &two_lead;
        }
        let cand = Poly::from_coeffs(root);
        (&cand * &cand == *self).then_some(cand)
    }

    /// Sign changes of `self` over a grid of sample points, as consecutive
    /// intervals where the sign flips.
    pub fn sign_changes(&self, samples: &[f64]) -> Vec<(f64, f64)> {
        samples
            .windows(2)
            .filter(|w| {
                let a = self.eval_f64(w[0]);
                let b = self.eval_f64(w[1]);
                a == 0.0 || a.signum() != b.signum()
            })
            .map(|w| (w[0], w[1]))
            .collect()
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`; `None`
    /// stands for an infinite end. Counted exactly with a Sturm sequence.
    pub fn count_real_roots(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
        assert!(!self.is_zero(), "roots of the zero polynomial requested");
        let p = self.squarefree();
        if p.degree() == Some(0) {
            return 0;
        }
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        let sign_at = |q: &Poly, x: Option<&Rational>, toward_plus: bool| -> i8 {
            let v = match x {
                Some(x) => q.eval(x),
                None => {
                    let odd = q.degree().unwrap_or(0) % 2 == 1;
                    let lead = q.leading();
                    if !toward_plus && odd {
                        -lead
                    } else {
                        lead
                    }
                }
            };
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        };
        let changes = |x: Option<&Rational>, toward_plus: bool| -> usize {
            let signs: Vec<i8> = chain
                .iter()
                .map(|q| sign_at(q, x, toward_plus))
                .filter(|&s| s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        // Sturm counts roots in (lo, hi]; drop a root sitting at hi.
        let mut count = changes(lo, false) - changes(hi, true);
        if let Some(h) = hi {
            if p.eval(h).is_zero() {
                count -= 1;
            }
        }
        count
    }

    pub(crate) fn write_terms(&self, f: &mut impl fmt::Write, var: &str) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => f.write_str(&format_rational(&abs))?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{}*", format_rational(&abs))?;
                    }
                    if i == 1 {
                        f.write_str(var)?;
                    } else {
                        write!(f, "{var}^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of printed terms.
    pub(crate) fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, "eps")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
