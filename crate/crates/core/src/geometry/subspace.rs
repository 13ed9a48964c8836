//! Linear subspaces of the Lie algebra over Q(eps), kept in canonical form.

use crate::algebra::InvariantVector;
use crate::scalarfield::{RatFunc, Rational};
use crate::Error;

/// Zero set of linear equations. `equations` is the reduced row-echelon form
/// of the defining forms and `basis` the matching canonical kernel basis, so
/// two subspaces are equal iff their fields are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub dim_ambient: usize,
    pub equations: Vec<Vec<RatFunc>>,
    pub basis: Vec<InvariantVector>,
}

fn rref(mut rows: Vec<Vec<RatFunc>>, n: usize) -> (Vec<Vec<RatFunc>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..n {
                    let d = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

impl Subspace {
    pub fn whole(n: usize) -> Self {
        Subspace::from_equations(n, Vec::new())
    }

    pub fn from_equations(n: usize, forms: Vec<Vec<RatFunc>>) -> Self {
        let (equations, pivots) = rref(forms, n);
        let basis = (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![RatFunc::zero(); n];
                v[f] = RatFunc::one();
                for (row, &c) in equations.iter().zip(&pivots) {
                    v[c] = -&row[f];
                }
                InvariantVector::new(v)
            })
            .collect();
        Subspace {
            dim_ambient: n,
            equations,
            basis,
        }
    }

    pub fn span(n: usize, vectors: &[InvariantVector]) -> Self {
        // The span is the kernel of the annihilator of the vectors.
        let ann = Subspace::from_equations(n, vectors.iter().map(|v| v.coords.clone()).collect());
        Subspace::from_equations(n, ann.basis.into_iter().map(|v| v.coords).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains_vector(&self, v: &[RatFunc]) -> bool {
        self.equations
            .iter()
            .all(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<RatFunc>().is_zero())
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vector(&v.coords))
    }

    /// Generic subspace evaluated at `eps0` through its equations.
    pub fn specialize(&self, eps0: &Rational) -> Result<Subspace, Error> {
        let rows = self
            .equations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.eval(eps0).map(RatFunc::constant))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::from_equations(self.dim_ambient, rows))
    }

    /// Equations as text, e.g. `b = 0, c = 0`; `all` for the whole space.
    pub fn equations_text(&self, vars: &[&str]) -> String {
        if self.equations.is_empty() {
            return "all".into();
        }
        self.equations
            .iter()
            .map(|row| format!("{} = 0", linear_text(row, vars)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// `span{...}` of the basis in the given basis names.
    pub fn span_text(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.basis.iter().map(|v| vector_text(&v.coords, names)).collect();
        format!("span{{{}}}", parts.join(", "))
    }
}

/// Canonical union of subspaces: no member contains another, sorted by
/// decreasing dimension and then by equations.
pub fn normalize_union(mut parts: Vec<Subspace>) -> Vec<Subspace> {
    parts.sort_by(|a, b| {
        b.dim()
            .cmp(&a.dim())
            .then_with(|| format!("{:?}", a.equations).cmp(&format!("{:?}", b.equations)))
    });
    let mut out: Vec<Subspace> = Vec::new();
    for s in parts {
        if !out.iter().any(|o| o.contains(&s)) {
            out.push(s);
        }
    }
    out
}

fn term(c: &RatFunc, name: &str, first: bool) -> String {
    let s = c.to_string();
    let simple = c.is_polynomial()
        && c.num()
            .coeffs()
            .iter()
            .filter(|v| !num_traits::Zero::is_zero(*v))
            .count()
            == 1;
    let body = if c.is_one() {
        name.to_string()
    } else if (-c).is_one() {
        format!("-{name}")
    } else if simple {
        format!("{s}*{name}")
    } else {
        format!("({s})*{name}")
    };
    if first {
        body
    } else if let Some(rest) = body.strip_prefix('-') {
        format!(" - {rest}")
    } else {
        format!(" + {body}")
    }
}

pub fn linear_text(row: &[RatFunc], vars: &[&str]) -> String {
    let mut out = String::new();
    for (c, v) in row.iter().zip(vars) {
        if !c.is_zero() {
            out.push_str(&term(c, v, out.is_empty()));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn vector_text(coords: &[RatFunc], names: &[String]) -> String {
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    linear_text(coords, &vars)
}
