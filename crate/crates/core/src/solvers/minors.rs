//! Rank-one conditions on matrices with polynomial entries.

use crate::scalarfield::MultiPoly;

/// All 2x2 minors of the matrix whose columns are `columns`; they vanish
/// together iff the columns span at most a line.
pub fn rank_one_conditions(columns: &[Vec<MultiPoly>]) -> Vec<MultiPoly> {
    assert!(columns.len() >= 2, "rank-one conditions need at least two columns");
    let n = columns[0].len();
    let mut out = Vec::new();
    for p in 0..columns.len() {
        for q in p + 1..columns.len() {
            for i in 0..n {
                for j in i + 1..n {
                    let m = &(&columns[p][i] * &columns[q][j]) - &(&columns[p][j] * &columns[q][i]);
                    out.push(m);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalarfield::{Indeterminates, RatFunc};

    #[test]
    fn repeated_column_has_vanishing_minors() {
        let vars = Indeterminates::components(3);
        let v: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(&vars, i)).collect();
        assert!(rank_one_conditions(&[v.clone(), v]).iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn independent_basis_columns() {
        let vars = Indeterminates::components(3);
        let e = |i: usize| -> Vec<MultiPoly> {
            (0..3)
                .map(|k| MultiPoly::constant(&vars, if k == i { RatFunc::one() } else { RatFunc::zero() }))
                .collect()
        };
        let minors = rank_one_conditions(&[e(0), e(1)]);
        assert!(minors.contains(&MultiPoly::constant(&vars, RatFunc::one())));
    }
}
