//! Rational-function reconstruction from exact samples (Cauchy interpolation).

use num_traits::Zero;

use crate::scalarfield::{Poly, RatFunc, Rational};

/// Null space of a dense rational matrix, one basis vector per free column.
pub fn rational_kernel(mut a: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let rows = a.len();
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
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::from_integer(1.into());
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

/// Finds `p/q` with `deg p <= m`, `deg q <= d` through every `(x_i, y_i)`.
///
/// Solves the linearized conditions `p(x_i) - y_i q(x_i) = 0` and accepts a
/// kernel vector only if `q` vanishes at no sample and the quotient
/// reproduces every value.
pub fn cauchy_interpolate(points: &[(Rational, Rational)], m: usize, d: usize) -> Option<RatFunc> {
    let cols = m + d + 2;
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|(x, y)| {
            let mut row = Vec::with_capacity(cols);
            let mut pw = Rational::from_integer(1.into());
            for _ in 0..=m {
                row.push(pw.clone());
                pw *= x;
            }
            let mut pw = Rational::from_integer(1.into());
            for _ in 0..=d {
                row.push(-(y * &pw));
                pw *= x;
            }
            row
        })
        .collect();
    for v in rational_kernel(rows, cols) {
        let p = Poly::from_coeffs(v[..=m].to_vec());
        let q = Poly::from_coeffs(v[m + 1..].to_vec());
        if q.is_zero() {
            continue;
        }
        if points.iter().any(|(x, _)| q.eval(x).is_zero()) {
            continue;
        }
        let f = RatFunc::new(p, q).expect("q is nonzero");
        if points.iter().all(|(x, y)| f.eval(x).as_ref() == Ok(y)) {
            return Some(f);
        }
    }
    None
}

/// Lowest total degree `m + d <= 2 * bound` interpolant (with `m, d <= bound`)
/// that uses the first `m + d + 1` points and agrees with all of them.
pub fn reconstruct(points: &[(Rational, Rational)], bound: usize) -> Option<RatFunc> {
    for t in 0..=2 * bound {
        if t + 1 > points.len() {
            break;
        }
        for d in 0..=t.min(bound) {
            let m = t - d;
            if m > bound {
                continue;
            }
            if let Some(f) = cauchy_interpolate(&points[..t + 1], m, d) {
                if points.iter().all(|(x, y)| f.eval(x).as_ref() == Ok(y)) {
                    return Some(f);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalarfield::{parse_ratfunc, rat};

    #[test]
    fn recovers_laplacian_eigenvalue() {
        let f = parse_ratfunc("-2*(eps^2-2*eps+2)/eps").unwrap();
        let pts: Vec<_> = [2, 3, 5, 7, 11, 13]
            .iter()
            .map(|&x| (rat(x), f.eval(&rat(x)).unwrap()))
            .collect();
        assert_eq!(reconstruct(&pts, 8), Some(f));
    }

    #[test]
    fn constant_and_linear() {
        let pts: Vec<_> = [2, 3, 5].iter().map(|&x| (rat(x), rat(7))).collect();
        assert_eq!(reconstruct(&pts, 8), Some(RatFunc::int(7)));
        let pts: Vec<_> = [2, 3, 5].iter().map(|&x| (rat(x), rat(-2 * x))).collect();
        assert_eq!(reconstruct(&pts, 8), Some(parse_ratfunc("-2*eps").unwrap()));
    }

    #[test]
    fn too_few_points_for_the_degree() {
        let f = parse_ratfunc("eps^5").unwrap();
        let pts: Vec<_> = [2, 3, 5, 7]
            .iter()
            .map(|&x| (rat(x), f.eval(&rat(x)).unwrap()))
            .collect();
        // Four points are always fit by something of total degree 3; the
        // result is a valid interpolant but not eps^5.
        let g = reconstruct(&pts, 8).unwrap();
        assert_ne!(g, f);
    }
}
