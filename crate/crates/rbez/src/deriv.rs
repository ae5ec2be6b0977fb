//! The degree-doubling derivative representation.
//!
//! For a curve `c = r/w` of degree `n`, the `k`-th derivative is
//!
//! ```text
//! c^(k)(t) = factor(k) * N_k(t) / W_k(t),    factor(k) = prod_{j<k} 2^j n,
//! ```
//!
//! where `W_k` is the Bernstein form of `w(t)^(2^k)` (degree `2^k n`) and
//! `N_k` is a vector-valued Bernstein polynomial of the same degree. Both are
//! built level by level: `W_{j+1}` is the Bernstein self-product of `W_j`,
//! and `N_{j+1}` comes from the quotient-rule cross difference
//! `(ΔN_j) W_j - (ΔW_j) N_j` (degree `2^(j+1) n - 1`) followed by one degree
//! elevation. Nothing in the recursion divides by `n - k` style quantities,
//! so it is valid for every order, including orders above the curve degree.
//!
//! The construction yields endpoint formulas (the first/last numerator
//! coefficient against a power of the first/last weight), an a-priori bound
//! on the derivative norm over `[0, 1]`, and two coefficient-level
//! identities used as verification checks: numerators vanish identically
//! when all control points coincide, and reversing the curve reverses and
//! sign-flips the numerator tables.

use thiserror::Error;

use crate::bernstein::BernsteinPoly;
use crate::curve::{CurveError, RationalBezierCurve};
use crate::numeric::{pow_pow2, Norm, Scalar, VecD};

/// Default ceiling on the representation degree `2^k n`. Each level doubles
/// the table size, so an unguarded order would exhaust memory silently.
pub const DEFAULT_DEGREE_CAP: usize = 65_536;

#[derive(Debug, Error, PartialEq)]
pub enum DerivError {
    #[error("derivative degree overflow; raise cap (needs degree {required}, cap {cap})")]
    DegreeOverflow { required: usize, cap: usize },
    #[error("pole: denominator vanishes at the evaluation parameter")]
    Pole,
    #[error("requires k >= 1")]
    RequiresPositiveOrder,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Which end of the parameter interval an endpoint formula targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Start,
    End,
}

/// `prod_{j=0..k-1} (2^j n) = 2^(k(k-1)/2) n^k`, the scalar factor in front
/// of the level-`k` representation.
pub fn derivative_factor<S: Scalar>(degree: usize, order: usize) -> S {
    (0..order).fold(S::one(), |acc, j| {
        acc * &S::from_int(((1usize << j) * degree) as i64)
    })
}

#[derive(Clone, Debug)]
struct Level<S: Scalar> {
    /// Bernstein coefficients of `w(t)^(2^j)`, degree `2^j n`.
    weights: BernsteinPoly<S>,
    /// Numerator coefficient table of the same degree.
    numerators: BernsteinPoly<VecD<S>>,
}

/// Per-level coefficient tables for derivatives of one curve, built
/// incrementally so that all orders up to the requested one share work.
/// Immutable to readers; extending to a higher order is the only mutation.
#[derive(Clone, Debug)]
pub struct DerivativeTables<S: Scalar> {
    curve: RationalBezierCurve<S>,
    levels: Vec<Level<S>>,
    degree_cap: usize,
}

impl<S: Scalar> DerivativeTables<S> {
    /// Builds tables for orders `0..=order` under the default degree cap.
    pub fn build(curve: &RationalBezierCurve<S>, order: usize) -> Result<Self, DerivError> {
        Self::build_with_cap(curve, order, DEFAULT_DEGREE_CAP)
    }

    pub fn build_with_cap(
        curve: &RationalBezierCurve<S>,
        order: usize,
        degree_cap: usize,
    ) -> Result<Self, DerivError> {
        let base = Level {
            weights: curve.denominator_poly(),
            numerators: curve.numerator_poly(),
        };
        let mut tables = Self {
            curve: curve.clone(),
            levels: vec![base],
            degree_cap,
        };
        tables.extend_to(order)?;
        Ok(tables)
    }

    /// Grows the tables to cover `order`, reusing every existing level.
    pub fn extend_to(&mut self, order: usize) -> Result<(), DerivError> {
        while self.order() < order {
            let last = self.levels.last().expect("level 0 always present");
            let degree = last.weights.degree();
            let required = degree * 2;
            if required > self.degree_cap {
                return Err(DerivError::DegreeOverflow {
                    required,
                    cap: self.degree_cap,
                });
            }

            let dw = BernsteinPoly::new(last.weights.forward_difference(1).expect("degree >= 1"));
            let dn = BernsteinPoly::new(
                last.numerators.forward_difference(1).expect("degree >= 1"),
            );
            // Quotient-rule cross difference, all at degree 2*degree - 1 ...
            let cross = dn.product(&last.weights).sub(&last.numerators.product(&dw));
            // ... then one elevation step to land on degree 2*degree.
            let level = Level {
                weights: last.weights.product(&last.weights),
                numerators: cross.elevate(1),
            };
            self.levels.push(level);
        }
        Ok(())
    }

    pub fn curve(&self) -> &RationalBezierCurve<S> {
        &self.curve
    }

    /// Highest derivative order the tables currently cover.
    pub fn order(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// Weight coefficients at `level`, the Bernstein form of `w(t)^(2^level)`.
    pub fn weight_coeffs(&self, level: usize) -> &BernsteinPoly<S> {
        &self.levels[level].weights
    }

    /// Numerator coefficient table at `level`.
    pub fn numerator_coeffs(&self, level: usize) -> &BernsteinPoly<VecD<S>> {
        &self.levels[level].numerators
    }

    /// Packages the level-`order` representation (factor, numerator,
    /// denominator).
    pub fn rep(&self, order: usize) -> DerivativeRep<S> {
        let level = &self.levels[order];
        DerivativeRep {
            factor: derivative_factor(self.curve.degree(), order),
            numerator: level.numerators.clone(),
            denominator: level.weights.clone(),
        }
    }

    /// The `order`-th derivative of the curve at `t`.
    pub fn derivative_at(&self, order: usize, t: &S) -> Result<VecD<S>, DerivError> {
        let level = &self.levels[order];
        let den = level.weights.eval(t);
        if den.is_zero() {
            return Err(DerivError::Pole);
        }
        let factor = derivative_factor::<S>(self.curve.degree(), order);
        Ok(level.numerators.eval(t).scale(&(factor / den)))
    }

    /// The `order`-th derivative at `t = 0`: the first numerator coefficient
    /// scaled by `factor / w_0^(2^order)`. Cheaper than evaluation and exact
    /// in exact arithmetic.
    pub fn endpoint_start(&self, order: usize) -> VecD<S> {
        let factor = derivative_factor::<S>(self.curve.degree(), order);
        let w0 = pow_pow2(&self.curve.weights()[0], order);
        self.levels[order].numerators.coeffs()[0].scale(&(factor / w0))
    }

    /// The start-endpoint shortcut using only level `order - 1`: the first
    /// level-`order` numerator coefficient equals
    /// `N_1 W_0 - W_1 N_0` taken at level `order - 1`. All four quantities
    /// must come from that same level; mixing in base-curve weights here
    /// looks plausible but is wrong for every order above 1, which is why
    /// this path exists as an independently testable formula.
    pub fn endpoint_start_reduced(&self, order: usize) -> Result<VecD<S>, DerivError> {
        if order == 0 {
            return Err(DerivError::RequiresPositiveOrder);
        }
        let level = &self.levels[order - 1];
        let w = level.weights.coeffs();
        let n = level.numerators.coeffs();
        let head = n[1].scale(&w[0]).sub(&n[0].scale(&w[1]));
        let factor = derivative_factor::<S>(self.curve.degree(), order);
        let w0 = pow_pow2(&self.curve.weights()[0], order);
        Ok(head.scale(&(factor / w0)))
    }

    /// Upper bound on `||c^(order)(t)||_p` over `[0, 1]`: elevate both tables
    /// `elevation` steps and take the worst coefficientwise ratio. Elevation
    /// tightens the bound because elevated control values converge to the
    /// function. Under exact scalars with the 2-norm, the maximizing index is
    /// selected by exact squared-norm comparison so no square root enters the
    /// ordering.
    pub fn bound(&self, order: usize, elevation: usize, norm: Norm) -> S {
        let level = &self.levels[order];
        let nums = level.numerators.elevate(elevation);
        let dens = level.weights.elevate(elevation);
        let factor = derivative_factor::<S>(self.curve.degree(), order);
        if S::EXACT && norm == Norm::Two {
            let (i, _) = Self::max_ratio_sq(&nums, &dens);
            return nums.coeffs()[i].lp_norm(norm) * &factor / &dens.coeffs()[i];
        }
        nums.coeffs()
            .iter()
            .zip(dens.coeffs())
            .map(|(n, d)| n.lp_norm(norm) * &factor / d)
            .fold(S::zero(), |acc, r| if r > acc { r } else { acc })
    }

    /// Squared 2-norm variant of [`DerivativeTables::bound`]; exact under
    /// rational scalars, for comparisons that must avoid square roots.
    pub fn bound_sq(&self, order: usize, elevation: usize) -> S {
        let level = &self.levels[order];
        let nums = level.numerators.elevate(elevation);
        let dens = level.weights.elevate(elevation);
        let factor = derivative_factor::<S>(self.curve.degree(), order);
        let (_, ratio_sq) = Self::max_ratio_sq(&nums, &dens);
        ratio_sq * &(factor.clone() * &factor)
    }

    /// Index and value of `max_i ||n_i||_2^2 / d_i^2`.
    fn max_ratio_sq(
        nums: &BernsteinPoly<VecD<S>>,
        dens: &BernsteinPoly<S>,
    ) -> (usize, S) {
        let mut best = 0usize;
        let mut best_ratio = nums.coeffs()[0].norm_sq()
            / &(dens.coeffs()[0].clone() * &dens.coeffs()[0]);
        for (i, (n, d)) in nums.coeffs().iter().zip(dens.coeffs()).enumerate().skip(1) {
            let ratio = n.norm_sq() / &(d.clone() * d);
            if ratio > best_ratio {
                best = i;
                best_ratio = ratio;
            }
        }
        (best, best_ratio)
    }

    /// Corrupts one weight coefficient. Verification hook for negative
    /// controls; never use outside tests.
    #[doc(hidden)]
    pub fn tamper_weight(&mut self, level: usize, index: usize) {
        let poly = &self.levels[level].weights;
        let mut coeffs = poly.coeffs().to_vec();
        coeffs[index] = coeffs[index].clone() + &S::one();
        self.levels[level].weights = BernsteinPoly::new(coeffs);
    }
}

/// The packaged `order`-th derivative: `factor * numerator / denominator`
/// with both polynomials of degree `2^order n`.
#[derive(Clone, Debug)]
pub struct DerivativeRep<S: Scalar> {
    pub factor: S,
    pub numerator: BernsteinPoly<VecD<S>>,
    pub denominator: BernsteinPoly<S>,
}

impl<S: Scalar> DerivativeRep<S> {
    pub fn degree(&self) -> usize {
        self.numerator.degree()
    }

    pub fn eval_at(&self, t: &S) -> Result<VecD<S>, DerivError> {
        let den = self.denominator.eval(t);
        if den.is_zero() {
            return Err(DerivError::Pole);
        }
        Ok(self.numerator.eval(t).scale(&(self.factor.clone() / den)))
    }
}

/// One-shot `order`-th derivative at `t` under the default degree cap.
pub fn derivative_at<S: Scalar>(
    curve: &RationalBezierCurve<S>,
    order: usize,
    t: &S,
) -> Result<VecD<S>, DerivError> {
    DerivativeTables::build(curve, order)?.derivative_at(order, t)
}

/// The `order`-th derivative at an endpoint. The end side evaluates the
/// start formula on the reversed curve; reversal flips the parameter sign,
/// so odd orders are negated.
pub fn endpoint_derivative<S: Scalar>(
    curve: &RationalBezierCurve<S>,
    order: usize,
    end: End,
) -> Result<VecD<S>, DerivError> {
    match end {
        End::Start => Ok(DerivativeTables::build(curve, order)?.endpoint_start(order)),
        End::End => {
            let tables = DerivativeTables::build(&curve.reversed(), order)?;
            let value = tables.endpoint_start(order);
            Ok(if order % 2 == 1 { value.neg() } else { value })
        }
    }
}

/// Endpoint derivative via the level-`(order - 1)` shortcut; requires
/// `order >= 1` and must agree with [`endpoint_derivative`] exactly under
/// exact scalars.
pub fn endpoint_derivative_reduced<S: Scalar>(
    curve: &RationalBezierCurve<S>,
    order: usize,
    end: End,
) -> Result<VecD<S>, DerivError> {
    if order == 0 {
        return Err(DerivError::RequiresPositiveOrder);
    }
    match end {
        End::Start => {
            DerivativeTables::build(curve, order - 1)?.endpoint_start_reduced(order)
        }
        End::End => {
            let tables = DerivativeTables::build(&curve.reversed(), order - 1)?;
            let value = tables.endpoint_start_reduced(order)?;
            Ok(if order % 2 == 1 { value.neg() } else { value })
        }
    }
}

/// Norm bound on the `order`-th derivative over `[0, 1]` after `elevation`
/// degree elevations, under the default degree cap.
pub fn derivative_bound<S: Scalar>(
    curve: &RationalBezierCurve<S>,
    order: usize,
    elevation: usize,
    norm: Norm,
) -> Result<S, DerivError> {
    Ok(DerivativeTables::build(curve, order)?.bound(order, elevation, norm))
}

/// Squared 2-norm bound; see [`DerivativeTables::bound_sq`].
pub fn derivative_bound_sq<S: Scalar>(
    curve: &RationalBezierCurve<S>,
    order: usize,
    elevation: usize,
) -> Result<S, DerivError> {
    Ok(DerivativeTables::build(curve, order)?.bound_sq(order, elevation))
}

/// Outcome of one coefficient-level check at one level.
#[derive(Clone, Debug)]
pub struct LevelReport {
    pub level: usize,
    pub coeff_count: usize,
    /// Indices of coefficients violating the identity.
    pub failures: Vec<usize>,
}

/// Per-level results of a coefficient-level identity check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub levels: Vec<LevelReport>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(|l| l.failures.is_empty())
    }
}

/// Checks that every numerator coefficient is a zero combination of the
/// control points: rebuilds the tables with all control points replaced by
/// one common point, where every numerator coefficient must vanish (the
/// coefficients of the points sum to zero, so a common point cancels).
/// Requires tables of order >= 1.
pub fn check_zero_sum<S: Scalar>(
    tables: &DerivativeTables<S>,
) -> Result<CheckReport, DerivError> {
    if tables.order() == 0 {
        return Err(DerivError::RequiresPositiveOrder);
    }
    let curve = tables.curve();
    let common = curve.points()[0].clone();
    let squashed = curve.with_points(vec![common.clone(); curve.degree() + 1])?;
    let rebuilt =
        DerivativeTables::build_with_cap(&squashed, tables.order(), tables.degree_cap())?;

    // Floating junk left by inexact cancellation scales with the magnitudes
    // that entered the products.
    let tol_scale = rebuilt
        .weight_coeffs(tables.order())
        .coeffs()
        .iter()
        .fold(S::zero(), |acc, w| if w.abs() > acc { w.abs() } else { acc })
        .to_f64()
        * (1.0 + common.lp_norm(Norm::Inf).to_f64());

    let mut levels = Vec::new();
    for level in 1..=tables.order() {
        let coeffs = rebuilt.numerator_coeffs(level).coeffs();
        let failures = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                if S::EXACT {
                    !c.is_zero()
                } else {
                    c.lp_norm(Norm::Inf).to_f64() > 1e-10 * tol_scale.max(1.0)
                }
            })
            .map(|(i, _)| i)
            .collect();
        levels.push(LevelReport {
            level,
            coeff_count: coeffs.len(),
            failures,
        });
    }
    Ok(CheckReport { levels })
}

/// Checks the reversal identity: the numerator table of the reversed curve,
/// read backwards, equals the original table up to a sign of `(-1)^level`.
pub fn check_symmetry<S: Scalar>(
    curve: &RationalBezierCurve<S>,
    order: usize,
) -> Result<CheckReport, DerivError> {
    if order == 0 {
        return Err(DerivError::RequiresPositiveOrder);
    }
    let fwd = DerivativeTables::build(curve, order)?;
    let rev = DerivativeTables::build(&curve.reversed(), order)?;

    let mut levels = Vec::new();
    for level in 1..=order {
        let f = fwd.numerator_coeffs(level).coeffs();
        let r = rev.numerator_coeffs(level).coeffs();
        let top = f.len() - 1;
        let scale = f
            .iter()
            .map(|c| c.lp_norm(Norm::Inf).to_f64())
            .fold(1.0f64, f64::max);
        let failures = (0..f.len())
            .filter(|&i| {
                let mirrored = if level % 2 == 1 {
                    r[top - i].neg()
                } else {
                    r[top - i].clone()
                };
                if S::EXACT {
                    f[i] != mirrored
                } else {
                    f[i].sub(&mirrored).lp_norm(Norm::Inf).to_f64() > 1e-9 * scale
                }
            })
            .collect();
        levels.push(LevelReport {
            level,
            coeff_count: f.len(),
            failures,
        });
    }
    Ok(CheckReport { levels })
}
