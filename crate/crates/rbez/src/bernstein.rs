//! Polynomials in Bernstein form.
//!
//! A [`BernsteinPoly`] of degree `n` stores the `n + 1` coefficients of a
//! polynomial in the basis `B_i^n(t) = C(n, i) t^i (1 - t)^(n-i)`. The degree
//! is explicit: the same function has different coefficient vectors at
//! different degrees, and several identities here (products, elevation,
//! differences) are statements about coefficients at a stated degree.
//!
//! Coefficients may be scalars or vectors; both are covered by [`Coeff`].
//! Evaluation works for any real `t` — the basis defines a global polynomial
//! even though its geometric reading lives on `[0, 1]`.

use std::fmt::Debug;

use thiserror::Error;

use crate::numeric::{Scalar, VecD};

/// A polynomial coefficient: a scalar or a fixed-dimension vector over one.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Scalar: Scalar;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn scale(&self, factor: &Self::Scalar) -> Self;
    /// The additive identity of the same shape (dimension) as `self`.
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl<S: Scalar> Coeff for S {
    type Scalar = S;

    fn add(&self, rhs: &Self) -> Self {
        self.clone() + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.clone() - rhs
    }

    fn scale(&self, factor: &S) -> Self {
        self.clone() * factor
    }

    fn zero_like(&self) -> Self {
        S::zero()
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl<S: Scalar> Coeff for VecD<S> {
    type Scalar = S;

    fn add(&self, rhs: &Self) -> Self {
        VecD::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        VecD::sub(self, rhs)
    }

    fn scale(&self, factor: &S) -> Self {
        VecD::scale(self, factor)
    }

    fn zero_like(&self) -> Self {
        VecD::zero(self.dim())
    }

    fn is_zero(&self) -> bool {
        VecD::is_zero(self)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BernsteinError {
    #[error("difference order exceeds degree ({order} > {degree})")]
    DifferenceOrderExceedsDegree { order: usize, degree: usize },
}

/// A polynomial in Bernstein form with explicit degree `coeffs.len() - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BernsteinPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> BernsteinPoly<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a Bernstein polynomial needs at least one coefficient");
        Self { coeffs }
    }

    pub fn constant(value: C) -> Self {
        Self::new(vec![value])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Evaluates at `t`. The exact path expands the basis directly (O(n) with
    /// cached binomials, and stability is a non-issue without rounding); the
    /// float path runs de Casteljau, which is numerically stable on `[0, 1]`.
    pub fn eval(&self, t: &C::Scalar) -> C {
        if C::Scalar::EXACT {
            self.eval_basis(t)
        } else {
            self.eval_de_casteljau(t)
        }
    }

    fn eval_basis(&self, t: &C::Scalar) -> C {
        let n = self.degree();
        let u = C::Scalar::one() - t;
        // t^i and (1-t)^(n-i) tables.
        let mut t_pow = Vec::with_capacity(n + 1);
        let mut u_pow = Vec::with_capacity(n + 1);
        t_pow.push(C::Scalar::one());
        u_pow.push(C::Scalar::one());
        for i in 1..=n {
            t_pow.push(t_pow[i - 1].clone() * t);
            u_pow.push(u_pow[i - 1].clone() * &u);
        }
        let mut acc = self.coeffs[0].zero_like();
        for (i, c) in self.coeffs.iter().enumerate() {
            let w = C::Scalar::binom(n, i) * &t_pow[i] * &u_pow[n - i];
            acc = acc.add(&c.scale(&w));
        }
        acc
    }

    fn eval_de_casteljau(&self, t: &C::Scalar) -> C {
        let u = C::Scalar::one() - t;
        let mut beta = self.coeffs.clone();
        for pass in 1..beta.len() {
            for k in 0..beta.len() - pass {
                beta[k] = beta[k].scale(&u).add(&beta[k + 1].scale(t));
            }
        }
        beta.swap_remove(0)
    }

    /// The `order`-fold forward difference of the coefficient sequence:
    /// entry `j` is `sum_{i=0..=order} (-1)^(order-i) C(order, i) c_{i+j}`.
    pub fn forward_difference(&self, order: usize) -> Result<Vec<C>, BernsteinError> {
        let degree = self.degree();
        if order > degree {
            return Err(BernsteinError::DifferenceOrderExceedsDegree { order, degree });
        }
        let mut cur = self.coeffs.clone();
        for _ in 0..order {
            cur = cur.windows(2).map(|w| w[1].sub(&w[0])).collect();
        }
        Ok(cur)
    }

    /// The `order`-th derivative: degree drops to `n - order` with
    /// coefficients `n!/(n-order)!` times the forward differences. Orders
    /// beyond the degree yield the zero polynomial (of degree 0), which is
    /// what makes downstream recursions valid when the derivative order
    /// exceeds the curve degree.
    pub fn derivative(&self, order: usize) -> Self {
        let n = self.degree();
        if order > n {
            return Self::constant(self.coeffs[0].zero_like());
        }
        let falling = (n - order + 1..=n).fold(C::Scalar::one(), |acc, v| {
            acc * &C::Scalar::from_int(v as i64)
        });
        let diffs = self.forward_difference(order).expect("order <= degree");
        Self::new(diffs.into_iter().map(|c| c.scale(&falling)).collect())
    }

    /// The Bernstein product: degree `m + n`, coefficient `k` given by the
    /// double-binomial convolution
    /// `sum_j C(m, j) C(n, k-j) / C(m+n, k) * p_{k-j} * q_j`.
    pub fn product(&self, rhs: &BernsteinPoly<C::Scalar>) -> Self {
        let n = self.degree();
        let m = rhs.degree();
        let ctx = C::Scalar::binom_ctx(m, n);
        let mut out = Vec::with_capacity(m + n + 1);
        for k in 0..=m + n {
            let mut acc = self.coeffs[0].zero_like();
            for j in k.saturating_sub(n)..=m.min(k) {
                let w = C::Scalar::binom_ratio(&ctx, j, k - j) * &rhs.coeffs[j];
                acc = acc.add(&self.coeffs[k - j].scale(&w));
            }
            out.push(acc);
        }
        Self::new(out)
    }

    /// Degree elevation by `steps`: the same function re-expressed at degree
    /// `n + steps`, one single-step elevation at a time.
    pub fn elevate(&self, steps: usize) -> Self {
        let mut cur = self.clone();
        for _ in 0..steps {
            cur = cur.elevate_once();
        }
        cur
    }

    fn elevate_once(&self) -> Self {
        let n = self.degree();
        let denom = C::Scalar::from_int((n + 1) as i64);
        let mut out = Vec::with_capacity(n + 2);
        out.push(self.coeffs[0].clone());
        for i in 1..=n {
            let lo = C::Scalar::from_int(i as i64) / &denom;
            let hi = C::Scalar::from_int((n + 1 - i) as i64) / &denom;
            out.push(self.coeffs[i - 1].scale(&lo).add(&self.coeffs[i].scale(&hi)));
        }
        out.push(self.coeffs[n].clone());
        Self::new(out)
    }

    /// Componentwise difference of two polynomials of equal degree.
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in subtraction");
        Self::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }
}

/// The all-ones polynomial of a given degree, i.e. the constant 1 expressed
/// at that degree (partition of unity).
pub fn ones<S: Scalar>(degree: usize) -> BernsteinPoly<S> {
    BernsteinPoly::new(vec![S::one(); degree + 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Rat = BigRational;

    fn rat(num: i64, den: i64) -> Rat {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn poly_i64(coeffs: &[i64]) -> BernsteinPoly<Rat> {
        BernsteinPoly::new(coeffs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    #[test]
    fn eval_expands_the_basis() {
        // (0, 1, 3) at degree 2 is 2t(1-t) + 3t^2 = 2t + t^2.
        let p = poly_i64(&[0, 1, 3]);
        assert_eq!(p.eval(&rat(1, 2)), rat(5, 4));
        assert_eq!(p.eval(&rat(0, 1)), Rat::from_int(0));
        assert_eq!(p.eval(&rat(1, 1)), Rat::from_int(3));
    }

    #[test]
    fn eval_constant_uses_partition_of_unity() {
        let p = poly_i64(&[5, 5, 5, 5]);
        for t in [rat(0, 1), rat(1, 3), rat(1, 2), rat(7, 5), rat(-2, 3)] {
            assert_eq!(p.eval(&t), Rat::from_int(5));
        }
    }

    #[test]
    fn eval_single_bump() {
        // (0, 1/2, 0) at degree 2 is t(1-t).
        let p = BernsteinPoly::new(vec![rat(0, 1), rat(1, 2), rat(0, 1)]);
        assert_eq!(p.eval(&rat(1, 4)), rat(3, 16));
    }

    #[test]
    fn float_eval_matches_exact_eval() {
        let p = poly_i64(&[3, -1, 4, 1, -5]);
        let q = BernsteinPoly::new(vec![3.0, -1.0, 4.0, 1.0, -5.0]);
        for i in 0..=10 {
            let t = rat(i, 10);
            let exact = p.eval(&t).to_f64();
            let float = q.eval(&(i as f64 / 10.0));
            assert!((exact - float).abs() < 1e-12);
        }
    }

    #[test]
    fn forward_differences() {
        let p = poly_i64(&[0, 1, 3]);
        assert_eq!(p.forward_difference(0).unwrap(), vec![Rat::from_int(0), Rat::from_int(1), Rat::from_int(3)]);
        assert_eq!(p.forward_difference(1).unwrap(), vec![Rat::from_int(1), Rat::from_int(2)]);
        assert_eq!(p.forward_difference(2).unwrap(), vec![Rat::from_int(1)]);
        assert_eq!(
            p.forward_difference(3).unwrap_err(),
            BernsteinError::DifferenceOrderExceedsDegree { order: 3, degree: 2 }
        );
    }

    #[test]
    fn forward_difference_of_constants_is_zero() {
        let p = poly_i64(&[7, 7, 7, 7]);
        for k in 1..=3 {
            assert!(p.forward_difference(k).unwrap().iter().all(Coeff::is_zero));
        }
    }

    #[test]
    fn derivative_drops_degree_and_scales() {
        // p = 2t + t^2, p' = 2 + 2t, whose degree-1 coefficients are (2, 4).
        let p = poly_i64(&[0, 1, 3]);
        let d = p.derivative(1);
        assert_eq!(d, poly_i64(&[2, 4]));

        let linear = BernsteinPoly::new(vec![rat(2, 3), rat(7, 3)]);
        assert_eq!(linear.derivative(1), BernsteinPoly::constant(rat(5, 3)));
    }

    #[test]
    fn derivative_beyond_degree_is_zero() {
        let p = poly_i64(&[0, 1, 3]);
        let d = p.derivative(3);
        assert_eq!(d.degree(), 0);
        assert!(Coeff::is_zero(&d.coeffs()[0]));
        // Vector coefficients keep their dimension.
        let v = BernsteinPoly::new(vec![
            VecD::<Rat>::from_ints(&[1, 2]),
            VecD::from_ints(&[0, 5]),
        ]);
        let dv = v.derivative(4);
        assert_eq!(dv.coeffs()[0].dim(), 2);
        assert!(dv.coeffs()[0].is_zero());
    }

    #[test]
    fn derivative_matches_central_difference_under_floats() {
        let p = BernsteinPoly::new(vec![0.3, -1.2, 2.0, 0.7]);
        let d = p.derivative(1);
        let h = 1e-5;
        for i in 1..10 {
            let t = i as f64 / 10.0;
            let fd = (p.eval(&(t + h)) - p.eval(&(t - h))) / (2.0 * h);
            assert!((fd - d.eval(&t)).abs() < 1e-6);
        }
    }

    #[test]
    fn product_examples() {
        // (1-t) * t = B_1^2 / 2.
        let one_minus_t = poly_i64(&[1, 0]);
        let t = poly_i64(&[0, 1]);
        let prod = one_minus_t.product(&t);
        assert_eq!(prod, BernsteinPoly::new(vec![rat(0, 1), rat(1, 2), rat(0, 1)]));

        // Multiplying by a degree-0 constant scales.
        let c = BernsteinPoly::constant(rat(3, 2));
        let q = poly_i64(&[2, -4, 6]);
        assert_eq!(q.product(&c), BernsteinPoly::new(vec![rat(3, 1), rat(-6, 1), rat(9, 1)]));

        // (1 + t)^2 in degree-2 form is (1, 2, 4).
        let lin = poly_i64(&[1, 2]);
        assert_eq!(lin.product(&lin), poly_i64(&[1, 2, 4]));
    }

    #[test]
    fn product_of_ones_is_ones() {
        for (a, b) in [(1usize, 1usize), (2, 3), (4, 7)] {
            let p: BernsteinPoly<Rat> = ones(a);
            let q: BernsteinPoly<Rat> = ones(b);
            assert_eq!(p.product(&q), ones(a + b));
        }
    }

    #[test]
    fn elevation_examples() {
        let p = poly_i64(&[4, -2, 9]);
        assert_eq!(p.elevate(0), p);

        let line = BernsteinPoly::new(vec![rat(1, 1), rat(4, 1)]);
        assert_eq!(
            line.elevate(1),
            BernsteinPoly::new(vec![rat(1, 1), rat(5, 2), rat(4, 1)])
        );

        let elevated = p.elevate(3);
        assert_eq!(elevated.degree(), 5);
        for t in [rat(0, 1), rat(1, 3), rat(1, 2), rat(1, 1)] {
            assert_eq!(elevated.eval(&t), p.eval(&t));
        }
    }

    #[test]
    fn elevation_agrees_with_product_by_ones() {
        let p = BernsteinPoly::new(vec![rat(1, 2), rat(-3, 4), rat(5, 6), rat(0, 1)]);
        for e in 1..=4 {
            assert_eq!(p.elevate(e), p.product(&ones(e)));
        }
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_poly(max_degree: usize) -> impl Strategy<Value = BernsteinPoly<Rat>> {
        prop::collection::vec(arb_rat(), 1..=max_degree + 1).prop_map(BernsteinPoly::new)
    }

    proptest! {
        #[test]
        fn product_evaluates_pointwise(
            p in arb_poly(4),
            q in arb_poly(4),
            t in arb_rat(),
        ) {
            let prod = p.product(&q);
            prop_assert_eq!(prod.eval(&t), p.eval(&t) * q.eval(&t));
        }

        #[test]
        fn elevation_preserves_values(p in arb_poly(4), t in arb_rat(), e in 0usize..4) {
            prop_assert_eq!(p.elevate(e).eval(&t), p.eval(&t));
        }

        #[test]
        fn derivative_of_elevated_matches(p in arb_poly(3), t in arb_rat()) {
            // d/dt commutes with re-expressing the polynomial at higher degree.
            prop_assert_eq!(p.elevate(2).derivative(1).eval(&t), p.derivative(1).eval(&t));
        }
    }
}
