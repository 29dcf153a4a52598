//! Exact toolkit for planar polynomial vector fields that carry a polynomial
//! first integral.
//!
//! The building blocks are generic over the coefficient scalar: any
//! [`Scalar`] supports ring arithmetic, calculus and evaluation, while the
//! algebraic algorithms (division, gcd, resultants, the field constructions)
//! require an [`ExactField`]. In practice that is [`Rat`], and the aliases
//! below name the concrete types used throughout the rest of the crate.
//!
//! Module map:
//!
//! * [`arith`]: rationals, dense univariate polynomials, rational roots and
//!   certified complex root boxes.
//! * [`bipoly`]: sparse bivariate polynomials with a text parser/printer,
//!   subresultant gcd and Sylvester resultants.
//! * [`field`]: vector fields, factored integrals, the product-of-factors
//!   field synthesis, Hamiltonian detection and cofactors.
//! * [`remarkable`]: integrating factors and critical remarkable values.
//! * [`cz`]: the four genericity conditions on a family of curves.
//! * [`linearize`]: certificates relating a field to the linear saddle.
//! * [`numcheck`]: RK4 orbits and conservation drift.

pub mod arith;
pub mod bipoly;
pub mod check;
pub mod cz;
pub mod error;
pub mod field;
pub mod linearize;
pub mod numcheck;
pub mod remarkable;
pub mod scalar;

pub use arith::upoly::UPoly;
pub use bipoly::{BiPoly, Monomial, Var};
pub use check::{CheckResult, Status, Witness};
pub use error::{Error, Result};
pub use field::{FactoredIntegral, VectorField};
pub use scalar::{ExactField, Scalar};

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

/// Exact bivariate polynomial over the rationals.
pub type Poly = BiPoly<Rat>;
/// Floating-point bivariate polynomial, used for numeric evaluation.
pub type PolyF64 = BiPoly<f64>;

/// Exact univariate polynomial over the rationals.
pub type UPolyQ = UPoly<Rat>;

pub type Field = VectorField<Rat>;
pub type FieldF64 = VectorField<f64>;
pub type Integral = FactoredIntegral<Rat>;
