//! Plain-text algebra files.
//!
//! ```text
//! name: Berger sphere
//! dim: 3
//! basis: X1 X2 X3
//! brackets:
//!   1 2 -> 3: 2
//!   2 3 -> 1: 2
//!   1 3 -> 2: -2
//! metric:
//!   eps, 0, 0
//!   0, 1, 0
//!   0, 0, 1
//! ```
//!
//! Keys may appear in any order. Bracket lines give `[X_i, X_j]` for
//! `i < j` (1-based), one target component per line; missing brackets are
//! zero. `#` starts a comment. Scalars use the syntax of
//! [`parse_ratfunc`](crate::scalarfield::parse_ratfunc).

use std::fmt::Write as _;

use super::MetricLieAlgebra;
use crate::scalarfield::{parse_ratfunc, Matrix, RatFunc};
use crate::Error;

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Brackets,
    Metric,
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    /// 1-based column of a subslice of this line.
    fn column_of(&self, part: &str) -> usize {
        part.as_ptr() as usize - self.text.as_ptr() as usize + 1
    }

    fn scalar(&self, part: &str) -> Result<RatFunc, Error> {
        let trimmed = part.trim();
        if trimmed.is_empty() {
            return Err(self.err(self.column_of(part), "missing scalar"));
        }
        let base = self.column_of(trimmed) - 1;
        parse_ratfunc(trimmed).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::Parse {
                line: self.number,
                column: base + column,
                message,
            },
            other => other,
        })
    }
}

fn strip_comment(s: &str) -> &str {
    s.split('#').next().unwrap_or("")
}

/// Parses an algebra file. The result is not validated; see
/// [`crate::catalog::load_str`] for the checked entry point.
pub fn parse_algebra(text: &str) -> Result<MetricLieAlgebra, Error> {
    let mut name: Option<String> = None;
    let mut dim: Option<(usize, usize)> = None;
    let mut basis: Option<(Vec<String>, usize)> = None;
    let mut brackets: Vec<(usize, usize, usize, RatFunc, usize)> = Vec::new();
    let mut metric_rows: Vec<(Vec<RatFunc>, usize)> = Vec::new();
    let mut metric_seen = false;
    let mut section = Section::None;

    for (idx, raw) in text.lines().enumerate() {
        let line = Line {
            number: idx + 1,
            text: raw,
        };
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let indented = body.starts_with(' ') || body.starts_with('\t');
        if !indented {
            section = Section::None;
            let Some((key, value)) = body.split_once(':') else {
                return Err(line.err(line.column_of(body.trim_start()), "expected 'key: value'"));
            };
            let key_trim = key.trim();
            match key_trim {
                "name" => name = Some(value.trim().to_string()),
                "dim" => {
                    let v = value.trim();
                    let d = v
                        .parse::<usize>()
                        .map_err(|_| line.err(line.column_of(v), "dim must be a positive integer"))?;
                    dim = Some((d, line.number));
                }
                "basis" => {
                    let names: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                    if names.is_empty() {
                        return Err(line.err(line.column_of(value), "empty basis"));
                    }
                    basis = Some((names, line.number));
                }
                "brackets" => section = Section::Brackets,
                "metric" => {
                    if metric_seen {
                        return Err(line.err(1, "duplicate metric section"));
                    }
                    metric_seen = true;
                    section = Section::Metric;
                }
                _ => return Err(line.err(line.column_of(key_trim), format!("unknown key '{key_trim}'"))),
            }
            if matches!(key_trim, "brackets" | "metric") && !value.trim().is_empty() {
                return Err(line.err(line.column_of(value.trim()), "section header takes no value"));
            }
            continue;
        }
        match section {
            Section::None => return Err(line.err(1, "indented line outside a section")),
            Section::Brackets => {
                let Some((lhs, coeff)) = body.split_once(':') else {
                    return Err(line.err(line.column_of(body.trim_start()), "expected 'i j -> k: coeff'"));
                };
                let Some((pair, target)) = lhs.split_once("->") else {
                    return Err(line.err(line.column_of(lhs.trim_start()), "expected 'i j -> k'"));
                };
                let idx_of = |s: &str| -> Result<usize, Error> {
                    s.parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1)
                        .map(|v| v - 1)
                        .ok_or_else(|| line.err(line.column_of(s), "expected a 1-based index"))
                };
                let parts: Vec<&str> = pair.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(line.err(line.column_of(pair.trim_start()), "expected two indices before '->'"));
                }
                let i = idx_of(parts[0])?;
                let j = idx_of(parts[1])?;
                let t = target.trim();
                let k = idx_of(t)?;
                if i >= j {
                    return Err(line.err(line.column_of(parts[0]), "brackets are listed with i < j"));
                }
                let c = line.scalar(coeff)?;
                if brackets.iter().any(|b| (b.0, b.1, b.2) == (i, j, k)) {
                    return Err(line.err(line.column_of(parts[0]), "duplicate bracket component"));
                }
                brackets.push((i, j, k, c, line.number));
            }
            Section::Metric => {
                let row = body
                    .split(',')
                    .map(|part| line.scalar(part))
                    .collect::<Result<Vec<_>, _>>()?;
                metric_rows.push((row, line.number));
            }
        }
    }

    let end = text.lines().count().max(1);
    let (names, basis_line) = basis.ok_or(Error::Parse {
        line: end,
        column: 1,
        message: "missing 'basis'".into(),
    })?;
    let n = names.len();
    if let Some((d, l)) = dim {
        if d != n {
            return Err(Error::Parse {
                line: l,
                column: 1,
                message: format!("dim {d} does not match {n} basis names"),
            });
        }
    }
    for w in 0..n {
        if names[w + 1..].contains(&names[w]) {
            return Err(Error::Parse {
                line: basis_line,
                column: 1,
                message: format!("duplicate basis name '{}'", names[w]),
            });
        }
    }
    if !metric_seen {
        return Err(Error::Parse {
            line: end,
            column: 1,
            message: "missing 'metric'".into(),
        });
    }
    if metric_rows.len() != n {
        let l = metric_rows.last().map_or(end, |r| r.1);
        return Err(Error::Parse {
            line: l,
            column: 1,
            message: format!("metric needs {n} rows, found {}", metric_rows.len()),
        });
    }
    for (row, l) in &metric_rows {
        if row.len() != n {
            return Err(Error::Parse {
                line: *l,
                column: 1,
                message: format!("metric row needs {n} entries, found {}", row.len()),
            });
        }
    }
    let mut s = vec![vec![vec![RatFunc::zero(); n]; n]; n];
    for (i, j, k, c, l) in brackets {
        if j >= n || k >= n {
            return Err(Error::Parse {
                line: l,
                column: 1,
                message: format!("index out of range for dimension {n}"),
            });
        }
        s[j][i][k] = -&c;
        s[i][j][k] = c;
    }
    let metric = Matrix::from_rows(metric_rows.into_iter().map(|r| r.0).collect());
    Ok(MetricLieAlgebra::from_parts(
        name.unwrap_or_else(|| "unnamed".into()),
        names,
        s,
        metric,
    ))
}

/// Canonical text form; `parse_algebra(&write_algebra(a))` reproduces `a`.
pub fn write_algebra(alg: &MetricLieAlgebra) -> String {
    let n = alg.dim();
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", alg.name());
    let _ = writeln!(out, "dim: {n}");
    let _ = writeln!(out, "basis: {}", alg.basis_names().join(" "));
    let _ = writeln!(out, "brackets:");
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let c = alg.structure_constant(i, j, k);
                if !c.is_zero() {
                    let _ = writeln!(out, "  {} {} -> {}: {}", i + 1, j + 1, k + 1, c);
                }
            }
        }
    }
    let _ = writeln!(out, "metric:");
    for i in 0..n {
        let row: Vec<String> = alg.metric().row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  {}", row.join(", "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn berger_round_trip() {
        let alg = catalog::berger().algebra;
        let text = write_algebra(&alg);
        assert_eq!(parse_algebra(&text).unwrap(), alg);
    }

    #[test]
    fn order_insensitive_keys() {
        let text = "metric:\n  eps, 0, 0\n  0, 1, 0\n  0, 0, 1\nbasis: X1 X2 X3\nbrackets:\n  2 3 -> 1: 2\n  1 3 -> 2: -2\n  1 2 -> 3: 2\nname: Berger sphere\n";
        assert_eq!(parse_algebra(text).unwrap(), catalog::berger().algebra);
    }

    #[test]
    fn errors_carry_positions() {
        let text = "basis: X1 X2\nmetric:\n  1, 0\n  0, 1/(eps-eps)\n";
        match parse_algebra(text) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (4, 8)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_algebra("basis: X1 X2\nbrackets:\n  2 1 -> 1: 1\nmetric:\n  1, 0\n  0, 1\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_algebra("basis: X1\ncolour: red\n"),
            Err(Error::Parse { line: 2, column: 1, .. })
        ));
        assert!(matches!(
            parse_algebra("dim: 2\nbasis: X1\nmetric:\n  1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
