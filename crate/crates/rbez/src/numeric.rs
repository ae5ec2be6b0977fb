//! Scalar abstraction and small dense vectors.
//!
//! Everything in this crate is generic over [`Scalar`], which has two
//! interchangeable instantiations:
//!
//! * [`BigRational`] — exact rational arithmetic over arbitrary-precision
//!   integers. All algebraic identities hold exactly; this is the reference
//!   path used for verification.
//! * `f64` — IEEE 754 double precision for fast approximate work.
//!
//! [`VecD`] is a point/vector of fixed dimension `d >= 1` with componentwise
//! operations, and [`Norm`] selects the l^1, l^2 or l^inf vector norm.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::binomial;

/// An immutable field element. Values are never mutated in place, so they can
/// be shared and sent across threads freely.
///
/// The binomial hooks ([`Scalar::binom`], [`Scalar::binom_ratio`]) exist
/// because Bernstein-basis products need ratios of binomial coefficients at
/// degrees where the raw coefficients no longer fit in a `f64`. Each
/// implementation picks a representation that stays finite: exact big
/// integers for rationals, log-space evaluation for floats.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// True when arithmetic carries no rounding error.
    const EXACT: bool;

    /// Precomputed state for repeated binomial-ratio queries at fixed
    /// degrees `(m, n)`; see [`Scalar::binom_ratio`].
    type BinomCtx: Send + Sync;

    fn zero() -> Self;
    fn one() -> Self;

    /// Exact injection of a machine integer.
    fn from_int(v: i64) -> Self;
    /// Injection of an arbitrary-precision integer (exact for rationals,
    /// nearest-representable for floats).
    fn from_bigint(v: &BigInt) -> Self;
    /// Injection of an exact rational (exact for rationals, rounded for
    /// floats).
    fn from_rational(v: &BigRational) -> Self;
    /// Injection of a finite double (exact in both instantiations since
    /// every finite double is a dyadic rational).
    fn from_f64(v: f64) -> Self;

    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;

    /// Binomial coefficient `C(n, k)`.
    fn binom(n: usize, k: usize) -> Self;

    /// Prepares repeated evaluation of `C(m, j) * C(n, i) / C(m + n, j + i)`.
    fn binom_ctx(m: usize, n: usize) -> Self::BinomCtx;

    /// `C(m, j) * C(n, i) / C(m + n, j + i)` for `j <= m`, `i <= n`. The
    /// value always lies in `(0, 1]`, so the float path can evaluate it at
    /// degrees where the individual binomials overflow.
    fn binom_ratio(ctx: &Self::BinomCtx, j: usize, i: usize) -> Self;
}

/// Binomial-ratio state for the exact path: the three Pascal rows involved.
pub struct ExactBinomCtx {
    row_m: Arc<Vec<BigInt>>,
    row_n: Arc<Vec<BigInt>>,
    row_mn: Arc<Vec<BigInt>>,
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    type BinomCtx = ExactBinomCtx;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn from_rational(v: &BigRational) -> Self {
        v.clone()
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("scalar injection requires a finite double")
    }

    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn binom(n: usize, k: usize) -> Self {
        BigRational::from_integer(binomial::pascal_row(n)[k].clone())
    }

    fn binom_ctx(m: usize, n: usize) -> ExactBinomCtx {
        ExactBinomCtx {
            row_m: binomial::pascal_row(m),
            row_n: binomial::pascal_row(n),
            row_mn: binomial::pascal_row(m + n),
        }
    }

    fn binom_ratio(ctx: &ExactBinomCtx, j: usize, i: usize) -> Self {
        BigRational::new(&ctx.row_m[j] * &ctx.row_n[i], ctx.row_mn[j + i].clone())
    }
}

/// Largest combined degree at which float binomial rows are kept directly;
/// past that `C(m + n, k)` exceeds `f64::MAX` and rows switch to log space.
const DIRECT_ROW_LIMIT: usize = 1000;

/// Binomial-ratio state for the float path.
pub enum FloatBinomCtx {
    /// Plain `f64` Pascal rows; valid while `C(m + n, k)` is finite.
    Direct {
        row_m: Vec<f64>,
        row_n: Vec<f64>,
        row_mn: Vec<f64>,
    },
    /// Rows of `ln C(., k)`; ratios are recovered with one `exp` per query.
    Log {
        row_m: Vec<f64>,
        row_n: Vec<f64>,
        row_mn: Vec<f64>,
    },
}

impl Scalar for f64 {
    const EXACT: bool = false;

    type BinomCtx = FloatBinomCtx;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_bigint(v: &BigInt) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }

    fn from_rational(v: &BigRational) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn binom(n: usize, k: usize) -> Self {
        if n <= DIRECT_ROW_LIMIT {
            binomial::float_row(n)[k]
        } else {
            binomial::ln_binom_row(n)[k].exp()
        }
    }

    fn binom_ctx(m: usize, n: usize) -> FloatBinomCtx {
        if m + n <= DIRECT_ROW_LIMIT {
            FloatBinomCtx::Direct {
                row_m: binomial::float_row(m),
                row_n: binomial::float_row(n),
                row_mn: binomial::float_row(m + n),
            }
        } else {
            FloatBinomCtx::Log {
                row_m: binomial::ln_binom_row(m),
                row_n: binomial::ln_binom_row(n),
                row_mn: binomial::ln_binom_row(m + n),
            }
        }
    }

    fn binom_ratio(ctx: &FloatBinomCtx, j: usize, i: usize) -> Self {
        match ctx {
            // Divide before multiplying: the quotient is <= 1, so nothing
            // overflows even when both rows hold values near f64::MAX.
            FloatBinomCtx::Direct { row_m, row_n, row_mn } => {
                row_m[j] / row_mn[j + i] * row_n[i]
            }
            FloatBinomCtx::Log { row_m, row_n, row_mn } => {
                (row_m[j] + row_n[i] - row_mn[j + i]).exp()
            }
        }
    }
}

/// `x^(2^k)` by repeated squaring.
pub fn pow_pow2<S: Scalar>(x: &S, k: usize) -> S {
    let mut y = x.clone();
    for _ in 0..k {
        y = y.clone() * &y;
    }
    y
}

/// A point or vector in `R^d`, `d >= 1`. All operations are componentwise and
/// preserve the dimension; mixing dimensions is a programming error and
/// panics.
#[derive(Clone, Debug, PartialEq)]
pub struct VecD<S> {
    components: Vec<S>,
}

impl<S: Scalar> VecD<S> {
    pub fn new(components: Vec<S>) -> Self {
        assert!(!components.is_empty(), "vector dimension must be >= 1");
        Self { components }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![S::zero(); dim])
    }

    /// Builds a vector from machine integers.
    pub fn from_ints(components: &[i64]) -> Self {
        Self::new(components.iter().map(|&c| S::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[S] {
        &self.components
    }

    pub fn into_components(self) -> Vec<S> {
        self.components
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(
            self.dim(),
            other.dim(),
            "vector dimensions differ ({} vs {})",
            self.dim(),
            other.dim()
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_dim(other);
        Self::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_dim(other);
        Self::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        )
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::new(self.components.iter().map(|c| c.clone() * factor).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.components.iter().map(|c| -c.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Scalar::is_zero)
    }

    /// The squared l^2 norm; exact under rational scalars, which makes it the
    /// right quantity for comparisons that must not go through a square root.
    pub fn norm_sq(&self) -> S {
        self.components
            .iter()
            .fold(S::zero(), |acc, c| acc + &(c.clone() * c))
    }

    /// The l^p norm for p in {1, 2, inf}.
    ///
    /// The 2-norm of a rational vector is irrational in general, so the exact
    /// path computes the squared norm exactly and then injects its floating
    /// square root. Callers needing exact order comparisons should compare
    /// [`VecD::norm_sq`] values instead.
    pub fn lp_norm(&self, norm: Norm) -> S {
        match norm {
            Norm::One => self
                .components
                .iter()
                .fold(S::zero(), |acc, c| acc + &c.abs()),
            Norm::Two => S::from_f64(self.norm_sq().to_f64().sqrt()),
            Norm::Inf => self
                .components
                .iter()
                .map(Scalar::abs)
                .fold(S::zero(), |acc, c| if c > acc { c } else { acc }),
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.components.iter().map(Scalar::to_f64).collect()
    }
}

impl<S: Scalar> Display for VecD<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Vector norm selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    One,
    Two,
    Inf,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unsupported norm `{0}` (expected 1, 2 or inf)")]
pub struct NormParseError(String);

impl FromStr for Norm {
    type Err = NormParseError;

    fn from_str(s: &str) -> Result<Self, NormParseError> {
        match s.trim() {
            "1" => Ok(Norm::One),
            "2" => Ok(Norm::Two),
            "inf" | "Inf" | "INF" | "∞" => Ok(Norm::Inf),
            other => Err(NormParseError(other.to_string())),
        }
    }
}

impl Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::One => write!(f, "1"),
            Norm::Two => write!(f, "2"),
            Norm::Inf => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseScalarError {
    #[error("invalid scalar literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("exponent out of range in `{0}`")]
    ExponentOutOfRange(String),
}

/// Parses a scalar literal: an integer (`-3`), a decimal with optional
/// exponent (`0.25`, `2.5e-2`), or a fraction (`1/3`). Parsing is exact; the
/// float instantiation rounds once at the end.
pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S, ParseScalarError> {
    let rational = parse_rational(text)?;
    Ok(S::from_rational(&rational))
}

fn parse_rational(text: &str) -> Result<BigRational, ParseScalarError> {
    let invalid = || ParseScalarError::Invalid(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(invalid());
    }

    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| invalid())?;
        let den: BigInt = den.trim().parse().map_err(|_| invalid())?;
        if <BigInt as Zero>::is_zero(&den) {
            return Err(ParseScalarError::ZeroDenominator(text.to_string()));
        }
        return Ok(BigRational::new(num, den));
    }

    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i32 = e.parse().map_err(|_| invalid())?;
            (m, exp)
        }
        None => (s, 0),
    };

    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(invalid());
    }

    let digits: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| invalid())?;
    let exp10 = i64::from(exp) - frac_part.len() as i64;
    if exp10.unsigned_abs() > 10_000 {
        return Err(ParseScalarError::ExponentOutOfRange(text.to_string()));
    }

    let ten = BigInt::from(10);
    let value = if exp10 >= 0 {
        BigRational::from_integer(digits * ten.pow(exp10 as u32))
    } else {
        BigRational::new(digits, ten.pow(exp10.unsigned_abs() as u32))
    };
    Ok(value * BigRational::from_integer(BigInt::from(sign)))
}
