//! Exact scalar, polynomial and linear-algebra kernel over ℚ(i).

pub mod chart;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use chart::{linear_change, pullback, pullback_holo, translate, translate_holo, LinearSubspaceChart};
pub use linalg::{Matrix, SparseEchelon};
pub use parse::{herm_from_text, holo_from_text, mixed_from_text, point_from_text, scalar_from_text, univariate_from_text};
pub use poly::{BiExponent, Exponent, HermPoly, HoloPoly, MixedPoly};
pub use scalar::GaussianRational;
