//! Independent derivative computations for cross-validation.
//!
//! Three routes that share no code with the table pipeline in [`crate::deriv`]
//! beyond basic polynomial arithmetic:
//!
//! * [`leibniz_derivative`] — the quotient-rule recursion expressing `c^(k)`
//!   through lower-order derivatives of `c` and plain polynomial derivatives
//!   of the numerator and denominator. Exact under rational scalars, at the
//!   cost of computing every lower order along the way.
//! * [`closed_form_line`] — the analytic derivative of the degree-1 curve
//!   (a Möbius function of `t`), in closed form for any order.
//! * [`finite_difference`] — float-only central differences on top of point
//!   evaluation; a smoke test, not an authority.

use thiserror::Error;

use crate::curve::{CurveError, RationalBezierCurve};
use crate::numeric::{Norm, Scalar, VecD};

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("pole: denominator vanishes at the evaluation parameter")]
    Pole,
    #[error("finite-difference order too high for float precision ({order} > {limit})")]
    FdOrderTooHigh { order: usize, limit: usize },
    #[error("requires k >= 1")]
    RequiresPositiveOrder,
    #[error("finite-difference step must be positive")]
    NonPositiveStep,
}

impl From<CurveError> for OracleError {
    fn from(err: CurveError) -> Self {
        match err {
            CurveError::Pole => OracleError::Pole,
            // Oracle entry points take validated curves; anything else is a bug.
            other => panic!("unexpected curve error in oracle: {other}"),
        }
    }
}

/// Settings for the finite-difference oracle.
#[derive(Clone, Debug)]
pub struct OracleConfig<S: Scalar> {
    fd_step: S,
    fd_order_limit: usize,
}

impl<S: Scalar> OracleConfig<S> {
    pub fn new(fd_step: S, fd_order_limit: usize) -> Result<Self, OracleError> {
        if !(fd_step > S::zero()) {
            return Err(OracleError::NonPositiveStep);
        }
        Ok(Self {
            fd_step,
            fd_order_limit,
        })
    }

    /// Default step `1e-4`, scaled up by the largest control-point magnitude
    /// so that truncation and rounding stay balanced for large geometry.
    pub fn for_curve(curve: &RationalBezierCurve<S>) -> Self {
        let spread = curve
            .points()
            .iter()
            .map(|p| p.lp_norm(Norm::Inf).to_f64())
            .fold(1.0f64, f64::max);
        Self {
            fd_step: S::from_f64(1e-4 * spread),
            fd_order_limit: 4,
        }
    }

    pub fn fd_step(&self) -> &S {
        &self.fd_step
    }

    pub fn fd_order_limit(&self) -> usize {
        self.fd_order_limit
    }
}

impl<S: Scalar> Default for OracleConfig<S> {
    fn default() -> Self {
        Self {
            fd_step: S::from_f64(1e-4),
            fd_order_limit: 4,
        }
    }
}

/// The `order`-th derivative of the curve at `t` by the quotient-rule
/// recursion
///
/// ```text
/// c^(k) = ( r^(k) - sum_{j=1..=k} C(k, j) w^(j) c^(k-j) ) / w
/// ```
///
/// with `r`, `w` the numerator and denominator polynomials. Their polynomial
/// derivatives vanish once `j` exceeds the curve degree, which is exactly
/// what keeps the recursion valid for orders above the degree. Lower orders
/// are computed once and reused within the call; nothing is shared across
/// calls.
pub fn leibniz_derivative<S: Scalar>(
    curve: &RationalBezierCurve<S>,
    order: usize,
    t: &S,
) -> Result<VecD<S>, OracleError> {
    let num = curve.numerator_poly();
    let den = curve.denominator_poly();
    let w = den.eval(t);
    if w.is_zero() {
        return Err(OracleError::Pole);
    }
    let inv_w = S::one() / &w;

    let r_derivs: Vec<VecD<S>> = (0..=order).map(|j| num.derivative(j).eval(t)).collect();
    let w_derivs: Vec<S> = (0..=order).map(|j| den.derivative(j).eval(t)).collect();

    let mut lower: Vec<VecD<S>> = Vec::with_capacity(order + 1);
    lower.push(r_derivs[0].scale(&inv_w));
    for k in 1..=order {
        let mut acc = r_derivs[k].clone();
        for j in 1..=k {
            let c = S::binom(k, j) * &w_derivs[j];
            acc = acc.sub(&lower[k - j].scale(&c));
        }
        lower.push(acc.scale(&inv_w));
    }
    Ok(lower.pop().expect("order + 1 entries"))
}

/// Closed-form `order`-th derivative (order >= 1) of the degree-1 curve with
/// weights `(w0, w1)` and endpoints `(r0, r1)`:
///
/// ```text
/// c^(k)(t) = (-1)^(k-1) k! w0 w1 (w1 - w0)^(k-1) (r1 - r0) / D(t)^(k+1),
/// D(t) = w0 (1 - t) + w1 t.
/// ```
pub fn closed_form_line<S: Scalar>(
    w0: &S,
    w1: &S,
    r0: &VecD<S>,
    r1: &VecD<S>,
    order: usize,
    t: &S,
) -> Result<VecD<S>, OracleError> {
    if order == 0 {
        return Err(OracleError::RequiresPositiveOrder);
    }
    let d = w0.clone() * &(S::one() - t) + &(w1.clone() * t);
    if d.is_zero() {
        return Err(OracleError::Pole);
    }

    let k_factorial = (1..=order).fold(S::one(), |acc, v| acc * &S::from_int(v as i64));
    let diff_pow = (1..order).fold(S::one(), |acc, _| acc * &(w1.clone() - w0));
    let d_pow = (0..=order).fold(S::one(), |acc, _| acc * &d);
    let mut coeff = k_factorial * w0 * w1 * &diff_pow / &d_pow;
    if order % 2 == 0 {
        coeff = -coeff;
    }
    Ok(r1.sub(r0).scale(&coeff))
}

/// Central finite difference of order `order` (1 through the configured
/// limit) applied to point evaluation, with stencil step `fd_step`. Intended
/// for the float path; truncation error is `O(fd_step^2)`.
pub fn finite_difference<S: Scalar>(
    curve: &RationalBezierCurve<S>,
    order: usize,
    t: &S,
    config: &OracleConfig<S>,
) -> Result<VecD<S>, OracleError> {
    if order == 0 {
        return Err(OracleError::RequiresPositiveOrder);
    }
    if order > config.fd_order_limit {
        return Err(OracleError::FdOrderTooHigh {
            order,
            limit: config.fd_order_limit,
        });
    }
    let h = &config.fd_step;
    let two = S::from_int(2);

    let mut acc = VecD::zero(curve.dim());
    for i in 0..=order {
        // Offset (order/2 - i) * h, kept in halves so odd orders stay central.
        let shift = S::from_int(order as i64 - 2 * i as i64) / &two * h;
        let sample = curve.point_at(&(t.clone() + &shift))?;
        let c = S::binom(order, i);
        let term = sample.scale(&c);
        acc = if i % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    let h_pow = (0..order).fold(S::one(), |acc, _| acc * h);
    Ok(acc.scale(&(S::one() / h_pow)))
}
