//! Rational Bézier curves.
//!
//! A curve of degree `n` is the ratio
//! `c(t) = sum(w_i r_i B_i^n(t)) / sum(w_i B_i^n(t))`
//! with strictly positive weights `w_i` and control points `r_i` in `R^d`.
//! Positivity makes the denominator strictly positive on `[0, 1]`; outside
//! that interval the curve is still a well-defined rational function except
//! at poles of the denominator.

use rand::Rng;
use thiserror::Error;

use crate::bernstein::BernsteinPoly;
use crate::numeric::{Scalar, VecD};

#[derive(Debug, Error, PartialEq)]
pub enum CurveError {
    #[error("weight must be positive (weight {index} is not)")]
    NonPositiveWeight { index: usize },
    #[error("weights/points length mismatch ({weights} weights, {points} points)")]
    LengthMismatch { weights: usize, points: usize },
    #[error("degree must be >= 1")]
    DegreeTooSmall,
    #[error("inconsistent dimension (point {index} has dimension {got}, expected {expected})")]
    InconsistentDimension {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("pole: denominator vanishes at the evaluation parameter")]
    Pole,
}

/// A validated rational Bézier curve: degree `n >= 1`, `n + 1` strictly
/// positive weights and `n + 1` control points of a common dimension.
/// Immutable after construction and safe to share across threads.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalBezierCurve<S: Scalar> {
    weights: Vec<S>,
    points: Vec<VecD<S>>,
}

impl<S: Scalar> RationalBezierCurve<S> {
    pub fn new(weights: Vec<S>, points: Vec<VecD<S>>) -> Result<Self, CurveError> {
        if weights.len() != points.len() {
            return Err(CurveError::LengthMismatch {
                weights: weights.len(),
                points: points.len(),
            });
        }
        if weights.len() < 2 {
            return Err(CurveError::DegreeTooSmall);
        }
        for (index, w) in weights.iter().enumerate() {
            if !(*w > S::zero()) {
                return Err(CurveError::NonPositiveWeight { index });
            }
        }
        let expected = points[0].dim();
        for (index, p) in points.iter().enumerate() {
            if p.dim() != expected {
                return Err(CurveError::InconsistentDimension {
                    index,
                    got: p.dim(),
                    expected,
                });
            }
        }
        Ok(Self { weights, points })
    }

    /// Convenience constructor from machine integers (mostly for tests and
    /// fixtures): `weights` as (numerator, denominator) pairs would be
    /// overkill, so weights are plain integers here.
    pub fn from_ints(weights: &[i64], points: &[&[i64]]) -> Result<Self, CurveError> {
        Self::new(
            weights.iter().map(|&w| S::from_int(w)).collect(),
            points.iter().map(|p| VecD::from_ints(p)).collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn points(&self) -> &[VecD<S>] {
        &self.points
    }

    /// The vector-valued numerator `sum(w_i r_i B_i^n)` in Bernstein form.
    pub fn numerator_poly(&self) -> BernsteinPoly<VecD<S>> {
        BernsteinPoly::new(
            self.points
                .iter()
                .zip(&self.weights)
                .map(|(p, w)| p.scale(w))
                .collect(),
        )
    }

    /// The scalar denominator `sum(w_i B_i^n)` in Bernstein form.
    pub fn denominator_poly(&self) -> BernsteinPoly<S> {
        BernsteinPoly::new(self.weights.clone())
    }

    /// Evaluates the curve point at `t`. Any `t` is accepted; a vanishing
    /// denominator (possible only outside `[0, 1]`) reports a pole.
    pub fn point_at(&self, t: &S) -> Result<VecD<S>, CurveError> {
        let den = self.denominator_poly().eval(t);
        if den.is_zero() {
            return Err(CurveError::Pole);
        }
        Ok(self.numerator_poly().eval(t).scale(&(S::one() / den)))
    }

    /// The same curve traversed backwards: weights and points reversed.
    pub fn reversed(&self) -> Self {
        Self {
            weights: self.weights.iter().rev().cloned().collect(),
            points: self.points.iter().rev().cloned().collect(),
        }
    }

    /// A curve with the same weights but different control points.
    pub fn with_points(&self, points: Vec<VecD<S>>) -> Result<Self, CurveError> {
        Self::new(self.weights.clone(), points)
    }
}

/// Draws a random curve for verification runs: weights are rationals in
/// `[1/2, 4]` with denominators up to 64, control points have integer
/// coordinates in `[-8, 8]`. Small exact values keep rational arithmetic
/// cheap while still exercising thoroughly asymmetric weight vectors.
pub fn random_curve<S: Scalar, R: Rng>(
    rng: &mut R,
    degree: usize,
    dim: usize,
) -> RationalBezierCurve<S> {
    assert!(degree >= 1 && dim >= 1);
    let weights = (0..=degree)
        .map(|_| {
            let den = rng.gen_range(1i64..=64);
            let num = rng.gen_range((den + 1) / 2..=4 * den);
            let r = num_rational::BigRational::new(num.into(), den.into());
            S::from_rational(&r)
        })
        .collect();
    let points = (0..=degree)
        .map(|_| {
            let coords: Vec<i64> = (0..dim).map(|_| rng.gen_range(-8i64..=8)).collect();
            VecD::from_ints(&coords)
        })
        .collect();
    RationalBezierCurve::new(weights, points).expect("generated curve is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Rat = BigRational;

    fn rat(num: i64, den: i64) -> Rat {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn line_fixture() -> RationalBezierCurve<Rat> {
        RationalBezierCurve::from_ints(&[1, 2], &[&[0], &[1]]).unwrap()
    }

    #[test]
    fn validation_accepts_and_reports() {
        let ok = line_fixture();
        assert_eq!(ok.degree(), 1);
        assert_eq!(ok.dim(), 1);

        let err = RationalBezierCurve::<Rat>::from_ints(&[1, 0], &[&[0], &[1]]).unwrap_err();
        assert_eq!(err, CurveError::NonPositiveWeight { index: 1 });
        assert!(err.to_string().contains("weight must be positive"));

        let err =
            RationalBezierCurve::<Rat>::from_ints(&[1, 1, 1], &[&[0], &[1]]).unwrap_err();
        assert!(matches!(err, CurveError::LengthMismatch { .. }));

        let err = RationalBezierCurve::<Rat>::from_ints(&[1], &[&[0]]).unwrap_err();
        assert_eq!(err, CurveError::DegreeTooSmall);

        let err = RationalBezierCurve::<Rat>::new(
            vec![rat(1, 1), rat(1, 1)],
            vec![VecD::from_ints(&[0, 0]), VecD::from_ints(&[1])],
        )
        .unwrap_err();
        assert!(matches!(err, CurveError::InconsistentDimension { .. }));
    }

    #[test]
    fn numerator_and_denominator_coefficients() {
        let c = line_fixture();
        assert_eq!(
            c.numerator_poly().coeffs(),
            &[VecD::from_ints(&[0]), VecD::from_ints(&[2])]
        );
        assert_eq!(c.denominator_poly().coeffs(), &[rat(1, 1), rat(2, 1)]);

        let c = RationalBezierCurve::<Rat>::from_ints(&[1, 1, 2], &[&[0], &[1], &[0]]).unwrap();
        assert_eq!(
            c.numerator_poly().coeffs(),
            &[
                VecD::from_ints(&[0]),
                VecD::from_ints(&[1]),
                VecD::from_ints(&[0])
            ]
        );

        // Equal weights: numerator is w * points, denominator the constant w.
        let c = RationalBezierCurve::<Rat>::from_ints(&[3, 3], &[&[2], &[5]]).unwrap();
        assert_eq!(
            c.numerator_poly().coeffs(),
            &[VecD::from_ints(&[6]), VecD::from_ints(&[15])]
        );
        assert_eq!(c.denominator_poly().coeffs(), &[rat(3, 1), rat(3, 1)]);
    }

    #[test]
    fn point_evaluation() {
        // c(t) = 2t / (1 + t), so c(1/2) = 2/3.
        let c = line_fixture();
        assert_eq!(
            c.point_at(&rat(1, 2)).unwrap(),
            VecD::new(vec![rat(2, 3)])
        );
        // Endpoint interpolation.
        assert_eq!(c.point_at(&rat(0, 1)).unwrap(), c.points()[0]);
        assert_eq!(c.point_at(&rat(1, 1)).unwrap(), c.points()[1]);

        // Equal weights reduce to the plain polynomial 2t + t^2.
        let c = RationalBezierCurve::<Rat>::from_ints(&[4, 4, 4], &[&[0], &[1], &[3]]).unwrap();
        assert_eq!(
            c.point_at(&rat(1, 2)).unwrap(),
            VecD::new(vec![rat(5, 4)])
        );
    }

    #[test]
    fn pole_outside_unit_interval() {
        // Denominator 1 + t vanishes at t = -1.
        let c = line_fixture();
        assert_eq!(c.point_at(&rat(-1, 1)).unwrap_err(), CurveError::Pole);
        // ... but evaluation outside [0, 1] away from the pole works.
        assert_eq!(
            c.point_at(&rat(2, 1)).unwrap(),
            VecD::new(vec![rat(4, 3)])
        );
    }

    #[test]
    fn equal_weights_match_polynomial_curve() {
        let points = [&[0i64, 1][..], &[2, -1], &[5, 4], &[-3, 0]];
        let c = RationalBezierCurve::<Rat>::from_ints(&[7, 7, 7, 7], &points).unwrap();
        let poly = BernsteinPoly::new(
            points
                .iter()
                .map(|p| VecD::<Rat>::from_ints(p))
                .collect::<Vec<_>>(),
        );
        for i in 0..=6 {
            let t = rat(i, 6);
            assert_eq!(c.point_at(&t).unwrap(), poly.eval(&t));
        }
    }

    #[test]
    fn points_stay_in_convex_hull_in_monotone_case() {
        let c = RationalBezierCurve::<Rat>::from_ints(&[1, 3, 2], &[&[0], &[1], &[4]]).unwrap();
        for i in 0..=20 {
            let t = rat(i, 20);
            let v = c.point_at(&t).unwrap();
            let x = &v.components()[0];
            assert!(*x >= rat(0, 1) && *x <= rat(4, 1));
        }
    }

    #[test]
    fn random_curves_respect_the_advertised_ranges() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let c: RationalBezierCurve<Rat> = random_curve(&mut rng, 3, 2);
            for w in c.weights() {
                assert!(*w >= rat(1, 2) && *w <= rat(4, 1));
            }
            for p in c.points() {
                for x in p.components() {
                    assert!(*x >= rat(-8, 1) && *x <= rat(8, 1));
                }
            }
        }
    }
}
