//! Exact invariant geometry of metric Lie algebras whose metric depends on a
//! rational parameter `eps`.
//!
//! Every symbolic quantity is an element of the rational function field
//! Q(eps). Connection, curvature and Ricci tensors are computed in the given
//! basis of left-invariant fields; orthonormal frames (which need square
//! roots of `|eps|`) only appear in the floating-point layer of
//! [`geometry::numeric`].

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod catalog;
pub mod geometry;
pub mod scalarfield;
pub mod solvers;

mod error;

pub use error::{Error, Violation};
