//! Exact computation of finite-type invariants of real hypersurfaces given
//! by polynomial defining functions: the order of contact of curve germs,
//! D'Angelo's type and q-type, and Catlin's q-type through generic slices.
//!
//! Everything is computed over the Gaussian rationals with no rounding.
//! Inputs are polynomials ("the polynomial model"): smooth germs are
//! represented by their Taylor polynomials, which loses nothing once the
//! truncation order exceeds the computed type.

pub mod algebra;
pub mod curves;
pub mod decomp;
pub mod error;
pub mod ideals;
pub mod rng;
pub mod serde_util;
pub mod types;
pub mod value;

pub use algebra::{GaussianRational, HermPoly, HoloPoly, LinearSubspaceChart, Matrix};
pub use curves::{CurveGerm, HermGerm};
pub use error::{Error, Result};
pub use value::{Order, TypeValue};
