//! Higher-order derivatives of rational Bézier curves, with exact rational
//! and floating-point arithmetic behind one generic interface.
//!
//! The `k`-th derivative of a degree-`n` rational Bézier curve is represented
//! as a ratio of two degree-`2^k n` Bernstein-form polynomials scaled by a
//! known integer factor. The tables behind that representation are built by a
//! simple recursion — weight self-convolution for the denominator,
//! cross-differencing plus one elevation step for the numerator — that stays
//! valid for every order, including `k > n`, where formulas built on
//! `n!/(n-k)!` style coefficients degenerate.
//!
//! Module map:
//!
//! * [`numeric`] — the scalar abstraction ([`BigRational`] and `f64`),
//!   vectors and norms.
//! * [`bernstein`] — Bernstein-form polynomial arithmetic.
//! * [`curve`] — the validated curve type and point evaluation.
//! * [`deriv`] — derivative tables, endpoint formulas, derivative bounds and
//!   coefficient-level property checks.
//! * [`oracle`] — independent derivative computations (Leibniz recursion,
//!   closed form for degree-1 curves, finite differences) used to
//!   cross-validate the table pipeline.

pub mod bernstein;
pub mod binomial;
pub mod curve;
pub mod deriv;
pub mod numeric;
pub mod oracle;

pub use bernstein::{BernsteinPoly, Coeff};
pub use curve::{random_curve, CurveError, RationalBezierCurve};
pub use deriv::{
    check_symmetry, check_zero_sum, derivative_at, derivative_bound, derivative_bound_sq,
    derivative_factor, endpoint_derivative, endpoint_derivative_reduced, DerivError,
    DerivativeRep, DerivativeTables, End, DEFAULT_DEGREE_CAP,
};
pub use numeric::{parse_scalar, Norm, Scalar, VecD};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
