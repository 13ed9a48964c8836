//! Built-in metric Lie algebras, file loading and reference records.
//!
//! A reference record holds values published for an entry. Most of them must
//! agree with the engine exactly; [`discrepancies`] lists the ones that do
//! not, next to the computed value.

use std::path::Path;

use crate::algebra::format::parse_algebra;
use crate::algebra::{connection_operators, InvariantVector, MetricLieAlgebra};
use crate::geometry::energy_report;
use crate::scalarfield::{parse_ratfunc, rat, Matrix, RatFunc, Rational};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: MetricLieAlgebra,
    pub expected: Option<ReferenceRecord>,
}

/// Published values for a catalog entry, transcribed as printed.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceRecord {
    /// Printed connection matrices; column `j` of `Lambda_i` is `nabla_{X_i} X_j`.
    pub connection: Vec<Matrix>,
    pub ricci: Matrix,
    /// `(eps, lambda)` where the metric is Einstein with `rho = lambda g`.
    pub einstein_at: Vec<(Rational, RatFunc)>,
    /// Parameter values where the soliton system changes status.
    pub soliton_exceptional: Vec<Rational>,
    pub killing_basis: Vec<InvariantVector>,
    /// Rough-Laplacian eigenvalues with multiplicities.
    pub laplacian_eigenvalues: Vec<(RatFunc, usize)>,
    /// Additive constant of the printed energy values.
    pub energy_constant: Rational,
    /// Printed coefficient of `rho^2` in the energy on each critical family,
    /// keyed by the coordinate indices spanning the family.
    pub family_energy: Vec<(Vec<usize>, RatFunc)>,
}

/// A published value that differs from the engine's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub item: String,
    pub reference: String,
    pub computed: String,
    pub note: String,
}

fn rf(s: &str) -> RatFunc {
    parse_ratfunc(s).expect("catalog literal")
}

fn rows(entries: [[&str; 3]; 3]) -> Matrix {
    Matrix::from_rows(entries.iter().map(|r| r.iter().map(|s| rf(s)).collect()).collect())
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

/// su(2) with `[X1,X2] = 2X3`, `[X2,X3] = 2X1`, `[X3,X1] = 2X2` and the
/// metric `diag(eps, 1, 1)`: Riemannian for `eps > 0`, Lorentzian for `eps < 0`.
pub fn berger() -> CatalogEntry {
    let metric = Matrix::diagonal(&[RatFunc::eps(), RatFunc::one(), RatFunc::one()]);
    let brackets = [
        (0, 1, 2, RatFunc::int(2)),
        (1, 2, 0, RatFunc::int(2)),
        (0, 2, 1, RatFunc::int(-2)),
    ];
    let algebra = MetricLieAlgebra::from_brackets("Berger sphere", names(3), &brackets, metric)
        .expect("Berger data is a valid metric Lie algebra");
    let expected = ReferenceRecord {
        connection: vec![
            // The (3,3) entry is printed as 1.
            rows([["0", "0", "0"], ["0", "0", "eps-2"], ["0", "2-eps", "1"]]),
            rows([["0", "0", "1"], ["0", "0", "0"], ["-eps", "0", "0"]]),
            rows([["0", "-1", "0"], ["eps", "0", "0"], ["0", "0", "0"]]),
        ],
        ricci: Matrix::diagonal(&[rf("2*eps^2"), rf("4-2*eps"), rf("4-2*eps")]),
        einstein_at: vec![(rat(1), RatFunc::int(2))],
        soliton_exceptional: vec![rat(0), rat(1)],
        killing_basis: vec![InvariantVector::basis(3, 0)],
        laplacian_eigenvalues: vec![(rf("-2*eps"), 1), (rf("-2*(eps^2-2*eps+2)/eps"), 2)],
        energy_constant: rat(2),
        family_energy: vec![(vec![1, 2], rf("((eps^2-2)^2+eps^2)/(2*eps)")), (vec![0], rf("eps"))],
    };
    CatalogEntry {
        name: "berger".into(),
        algebra,
        expected: Some(expected),
    }
}

/// Abelian R^3 with the flat Lorentzian metric `diag(-1, 1, 1)`.
pub fn abelian_control() -> CatalogEntry {
    let metric = Matrix::diagonal(&[RatFunc::int(-1), RatFunc::one(), RatFunc::one()]);
    let algebra =
        MetricLieAlgebra::from_brackets("abelian control", names(3), &[], metric).expect("abelian data is valid");
    CatalogEntry {
        name: "abelian".into(),
        algebra,
        expected: None,
    }
}

/// Built-in entry by name.
pub fn builtin(name: &str) -> Option<CatalogEntry> {
    match name {
        "berger" => Some(berger()),
        "abelian" => Some(abelian_control()),
        _ => None,
    }
}

/// Parses and validates an algebra file's contents.
pub fn load_str(text: &str) -> Result<CatalogEntry, Error> {
    let algebra = parse_algebra(text)?.validated()?;
    Ok(CatalogEntry {
        name: algebra.name().to_string(),
        algebra,
        expected: None,
    })
}

pub fn load(path: &Path) -> Result<CatalogEntry, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load_str(&text)
}

/// Published values of `entry` that differ from the engine's output.
pub fn discrepancies(entry: &CatalogEntry) -> Result<Vec<Discrepancy>, Error> {
    let Some(reference) = &entry.expected else {
        return Ok(Vec::new());
    };
    let alg = &entry.algebra;
    let n = alg.dim();
    let mut out = Vec::new();

    let ops = connection_operators(alg)?;
    for (i, (printed, op)) in reference.connection.iter().zip(&ops).enumerate() {
        for r in 0..n {
            for c in 0..n {
                if printed[(r, c)] != op.matrix[(r, c)] {
                    out.push(Discrepancy {
                        item: format!("connection matrix Lambda_{} entry ({}, {})", i + 1, r + 1, c + 1),
                        reference: printed[(r, c)].to_string(),
                        computed: op.matrix[(r, c)].to_string(),
                        note: "the printed value violates metric compatibility; the Koszul value is used".into(),
                    });
                }
            }
        }
    }

    let energy = energy_report(alg)?;
    if energy.constant != reference.energy_constant {
        out.push(Discrepancy {
            item: "additive constant of the energy density".into(),
            reference: crate::scalarfield::rational::format_rational(&reference.energy_constant),
            computed: crate::scalarfield::rational::format_rational(&energy.constant),
            note: format!("the energy definition gives n/2 with n = {n}"),
        });
    }
    for (indices, printed) in &reference.family_energy {
        let span: Vec<InvariantVector> = indices.iter().map(|&i| InvariantVector::basis(n, i)).collect();
        let Some(family) = energy.families.iter().find(|f| f.basis == span) else {
            continue;
        };
        let Some(coefficient) = &family.coefficient else {
            continue;
        };
        if coefficient != printed {
            let label: Vec<String> = indices.iter().map(|&i| alg.basis_names()[i].clone()).collect();
            out.push(Discrepancy {
                item: format!("energy coefficient of rho^2 on span{{{}}}", label.join(", ")),
                reference: printed.to_string(),
                computed: coefficient.to_string(),
                note: "computed from ||nabla V||^2 restricted to the family".into(),
            });
        }
    }
    Ok(out)
}
