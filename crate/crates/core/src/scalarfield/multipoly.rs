//! Sparse multivariate polynomials with coefficients in Q(eps).
//!
//! Used for identities that carry unknown vector components or multipliers
//! (`a, b, c`, `lambda`, `omega_i`). The set of indeterminates is chosen per
//! analysis and shared by every polynomial taking part in it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::Rational;
use crate::Error;

/// Ordered, named indeterminates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Indeterminates {
    names: Arc<[String]>,
}

impl Indeterminates {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Indeterminates {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    /// `a, b, c, d` for vector components in dimension `n <= 4`, `x1..xn` beyond.
    pub fn components(n: usize) -> Self {
        if n <= 4 {
            Indeterminates::new(&["a", "b", "c", "d"][..n])
        } else {
            let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            Indeterminates::new(&names)
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

type Exponents = Vec<u32>;

/// Polynomial in the indeterminates of `vars`; no zero coefficient is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Indeterminates,
    terms: BTreeMap<Exponents, RatFunc>,
}

impl MultiPoly {
    pub fn zero(vars: &Indeterminates) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Indeterminates, c: RatFunc) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn var(vars: &Indeterminates, i: usize) -> Self {
        assert!(i < vars.len(), "indeterminate index out of range");
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = MultiPoly::zero(vars);
        p.terms.insert(e, RatFunc::one());
        p
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(vars: &Indeterminates, coeffs: &[RatFunc]) -> Self {
        let mut p = MultiPoly::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; vars.len()];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    pub fn vars(&self) -> &Indeterminates {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &RatFunc)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn coefficient(&self, exps: &[u32]) -> RatFunc {
        self.terms.get(exps).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn scale(&self, c: &RatFunc) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    fn add_term(&mut self, e: Exponents, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert!(
            Arc::ptr_eq(&self.vars.names, &other.vars.names) || self.vars == other.vars,
            "polynomials over different indeterminate sets"
        );
    }

    /// Exact value at `eps = eps0` and the given indeterminate values.
    pub fn eval(&self, eps0: &Rational, values: &[Rational]) -> Result<Rational, Error> {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.eval(eps0)?;
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(v.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, eps0: f64, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.eval_f64(eps0) * values.iter().zip(e).map(|(v, &k)| v.powi(k as i32)).product::<f64>())
            .sum()
    }

    /// Substitutes `eps = eps0` into every coefficient.
    pub fn specialize_eps(&self, eps0: &Rational) -> Result<MultiPoly, Error> {
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), RatFunc::constant(c.eval(eps0)?));
        }
        Ok(out)
    }

    /// Substitutes indeterminate `i` by the polynomial `value`.
    pub fn substitute(&self, i: usize, value: &MultiPoly) -> MultiPoly {
        self.check_vars(value);
        let mut out = MultiPoly::zero(&self.vars);
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::constant(&self.vars, RatFunc::one())];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().expect("nonempty") * value;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[i] = 0;
            let mut mono = MultiPoly::zero(&self.vars);
            mono.terms.insert(rest, c.clone());
            out = &out + &(&mono * &powers[k]);
        }
        out
    }

    /// Coefficients of a homogeneous linear form; `None` if not of that shape.
    pub fn linear_coefficients(&self) -> Option<Vec<RatFunc>> {
        let n = self.vars.len();
        let mut out = vec![RatFunc::zero(); n];
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() != 1 {
                return None;
            }
            let i = e.iter().position(|&k| k == 1).expect("degree one");
            out[i] = c.clone();
        }
        Some(out)
    }

    /// Symmetric Gram matrix `Q` with `self = x^T Q x`; `None` unless the
    /// polynomial is a homogeneous quadratic form.
    pub fn quadratic_form(&self) -> Option<Vec<Vec<RatFunc>>> {
        let n = self.vars.len();
        let mut q = vec![vec![RatFunc::zero(); n]; n];
        let half = RatFunc::constant(Rational::new(1.into(), 2.into()));
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() != 2 {
                return None;
            }
            let idx: Vec<usize> = e
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
                .collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                q[i][i] = c.clone();
            } else {
                let h = c * &half;
                q[i][j] = h.clone();
                q[j][i] = h;
            }
        }
        Some(q)
    }

    /// Monic gcd of all coefficient numerators: the part of the polynomial
    /// that vanishes as a whole at its roots in `eps`.
    pub fn eps_content(&self) -> Poly {
        self.terms.values().fold(Poly::zero(), |acc, c| acc.gcd(c.num()))
    }

    /// Polynomials in `eps` whose roots are poles of some coefficient.
    pub fn denominators(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for c in self.terms.values() {
            if !c.den().is_one() && !out.contains(c.den()) {
                out.push(c.den().clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(&self.vars, RatFunc::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

fn write_coeff_term(f: &mut fmt::Formatter<'_>, c: &RatFunc, mono: &str, first: bool) -> fmt::Result {
    let s = c.to_string();
    let simple = c.is_polynomial() && c.num().term_count() == 1;
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) if simple => (true, rest.to_string()),
        _ => (false, s.clone()),
    };
    if !first {
        f.write_str(if neg { "-" } else { "+" })?;
    } else if neg {
        f.write_str("-")?;
    }
    if mono.is_empty() {
        if simple {
            return f.write_str(&body);
        }
        return write!(f, "({body})");
    }
    if simple && body == "1" {
        f.write_str(mono)
    } else if simple {
        write!(f, "{body}*{mono}")
    } else {
        write!(f, "({body})*{mono}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest total degree first, then lexicographic on exponents.
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in entries.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let name = &self.vars.names[i];
                    if p == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            write_coeff_term(f, c, &mono.join("*"), k == 0)?;
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

// Exponents add under multiplication.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-RatFunc::one())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

/// True iff every coefficient is the zero rational function.
pub fn multipoly_is_zero(q: &MultiPoly) -> bool {
    q.is_zero()
}

/// Debug helper: every stored coefficient is nonzero and normalized.
pub fn multipoly_is_canonical(q: &MultiPoly) -> bool {
    q.terms
        .iter()
        .all(|(e, c)| !c.is_zero() && c.is_normalized() && e.len() == q.vars.len())
}

impl MultiPoly {
    /// `sum_i v_i * w_i`, a small convenience for symbolic dot products.
    pub fn dot(vars: &Indeterminates, v: &[MultiPoly], w: &[MultiPoly]) -> MultiPoly {
        v.iter()
            .zip(w)
            .fold(MultiPoly::zero(vars), |acc, (x, y)| &acc + &(x * y))
    }

    pub fn is_constant_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.iter().all(|&k| k == 0) && c.is_one())
    }
}
