//! Plain-text report assembly and canonical value formatting.

use metric_lie::algebra::InvariantVector;
use metric_lie::geometry::vector_text;
use metric_lie::scalarfield::rational::format_rational;
use metric_lie::scalarfield::{Matrix, Rational};

#[derive(Default)]
pub struct Text {
    lines: Vec<String>,
}

impl Text {
    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn heading(&mut self, title: &str) {
        if !self.lines.is_empty() {
            self.lines.push(String::new());
        }
        self.lines.push(format!("== {title} =="));
    }

    pub fn matrix(&mut self, label: &str, rows: &[Vec<String>]) {
        self.line(format!("{label} ="));
        for row in rows {
            self.line(format!("  [{}]", row.join(", ")));
        }
    }

    pub fn finish(self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

pub fn q(r: &Rational) -> String {
    format_rational(r)
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}

pub fn vector(v: &InvariantVector, names: &[String]) -> String {
    vector_text(&v.coords, names)
}

/// `span{...}`, or `{0}` for the zero subspace.
pub fn span(basis: &[InvariantVector], names: &[String]) -> String {
    if basis.is_empty() {
        return "{0}".into();
    }
    let parts: Vec<String> = basis.iter().map(|v| vector(v, names)).collect();
    format!("span{{{}}}", parts.join(", "))
}

/// Shortest decimal that reads back as the same double (at most 17
/// significant digits).
pub fn float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.abs() < 1e-4 || x.abs() >= 1e16 {
        return format!("{x:e}");
    }
    format!("{x}")
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
