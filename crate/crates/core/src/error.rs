use std::fmt;

use thiserror::Error;

use crate::scalarfield::Rational;

/// A failed structural identity of a metric Lie algebra. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DimensionOutOfRange {
        dim: usize,
    },
    ShapeMismatch {
        what: &'static str,
    },
    Antisymmetry {
        i: usize,
        j: usize,
        k: usize,
    },
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        component: usize,
    },
    MetricNotSymmetric {
        i: usize,
        j: usize,
    },
    DegenerateMetric,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionOutOfRange { dim } => {
                write!(f, "dimension {dim} outside the supported range 1..=4")
            }
            Violation::ShapeMismatch { what } => write!(f, "{what} has the wrong shape"),
            Violation::Antisymmetry { i, j, k } => write!(
                f,
                "antisymmetry fails: C[{}][{}][{}] != -C[{}][{}][{}]",
                i + 1,
                j + 1,
                k + 1,
                j + 1,
                i + 1,
                k + 1
            ),
            Violation::Jacobi { i, j, k, component } => write!(
                f,
                "Jacobi identity fails for ({}, {}, {}) in component {}",
                i + 1,
                j + 1,
                k + 1,
                component + 1
            ),
            Violation::MetricNotSymmetric { i, j } => {
                write!(f, "metric not symmetric at ({}, {})", i + 1, j + 1)
            }
            Violation::DegenerateMetric => write!(f, "metric determinant is identically zero"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by a rational function that is identically zero")]
    DivisionByZeroFunction,
    #[error("pole at eps = {0}")]
    PoleAtEvaluationPoint(Rational),
    #[error("metric is singular over Q(eps)")]
    SingularMetric,
    #[error("metric is singular at eps = {0}")]
    SingularMetricAtPoint(Rational),
    #[error("rational interpolation exceeded the degree bound {bound}")]
    InterpolationDegreeExceeded { bound: usize },
    #[error("case analysis incomplete: {0}")]
    CaseAnalysisIncomplete(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation failed: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    ValidationFailed(Vec<Violation>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("i/o error: {0}")]
    Io(String),
}
