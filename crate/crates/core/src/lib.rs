//! Center/focus analysis of Hopf equilibria in three-dimensional polynomial
//! systems.

pub mod error;
pub mod field;
pub mod grammar;
pub mod polysys;
pub mod catalog;
pub mod equilibria;
pub mod normalform;
pub mod focus;
pub mod period;
pub mod cyclicity;
pub mod simulate;
pub mod claims;

pub use error::{Error, Result};
pub use field::{GaussExpr, Jet, ParamExpr, ParamPoly, Rational};

/// Exact coefficients: rational functions of the declared parameters.
pub type ExactField = polysys::VectorField3<ParamExpr>;
/// Double-precision coefficients.
pub type FloatField = polysys::VectorField3<f64>;
/// Extended (double-double) precision scalar.
pub type Extended = twofloat::TwoFloat;
