//! Invariant vectors whose coordinates are polynomials in unknowns.
//!
//! `V = a X_1 + b X_2 + c X_3` is represented as the coordinate list
//! `[a, b, c]` of [`MultiPoly`] values over a shared set of indeterminates.

use crate::scalarfield::{Indeterminates, Matrix, MultiPoly, RatFunc};

/// The generic vector `sum_i x_i X_i` where `x_i` is indeterminate `offset + i`.
pub fn generic_vector(vars: &Indeterminates, n: usize, offset: usize) -> Vec<MultiPoly> {
    (0..n).map(|i| MultiPoly::var(vars, offset + i)).collect()
}

/// Lifts constant coordinates into polynomial coordinates.
pub fn lift(vars: &Indeterminates, coords: &[RatFunc]) -> Vec<MultiPoly> {
    coords.iter().map(|c| MultiPoly::constant(vars, c.clone())).collect()
}

/// `m * v`
pub fn apply(vars: &Indeterminates, m: &Matrix, v: &[MultiPoly]) -> Vec<MultiPoly> {
    assert_eq!(m.cols(), v.len());
    (0..m.rows())
        .map(|i| {
            (0..m.cols()).fold(MultiPoly::zero(vars), |acc, j| {
                if m[(i, j)].is_zero() {
                    acc
                } else {
                    &acc + &v[j].scale(&m[(i, j)])
                }
            })
        })
        .collect()
}

/// `v^T g w`
pub fn inner(vars: &Indeterminates, g: &Matrix, v: &[MultiPoly], w: &[MultiPoly]) -> MultiPoly {
    let gw = apply(vars, g, w);
    MultiPoly::dot(vars, v, &gw)
}

/// Operator `sum_i v_i ops[i]` applied to `w`, i.e. `nabla_v w` when `ops`
/// are the connection matrices.
pub fn along(vars: &Indeterminates, ops: &[Matrix], v: &[MultiPoly], w: &[MultiPoly]) -> Vec<MultiPoly> {
    let n = w.len();
    let mut out = vec![MultiPoly::zero(vars); n];
    for (op, vi) in ops.iter().zip(v) {
        if vi.is_zero() {
            continue;
        }
        let t = apply(vars, op, w);
        for (o, ti) in out.iter_mut().zip(&t) {
            *o = &*o + &(vi * ti);
        }
    }
    out
}

pub fn add(v: &[MultiPoly], w: &[MultiPoly]) -> Vec<MultiPoly> {
    v.iter().zip(w).map(|(x, y)| x + y).collect()
}

pub fn scale(v: &[MultiPoly], c: &MultiPoly) -> Vec<MultiPoly> {
    v.iter().map(|x| x * c).collect()
}

pub fn is_zero(v: &[MultiPoly]) -> bool {
    v.iter().all(MultiPoly::is_zero)
}
