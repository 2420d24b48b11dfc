//! Coefficient fields shared by every module.
//!
//! Two domains are supported: exact complex rationals ([`QC`]) for rank and
//! dimension arguments, and binary64 complex numbers ([`C64`]) for points that
//! come out of root-finding or transcendental parametrizations.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Floating complex coefficient.
pub type C64 = Complex<f64>;

/// Exact complex-rational coefficient. `BigRational` keeps both parts in
/// lowest terms with a positive denominator.
pub type QC = Complex<BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Exact,
    Float,
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const FIELD: FieldTag;

    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// Approximate value as a floating complex number.
    fn to_c64(&self) -> C64;

    /// `|self|`, approximated in floating point for the exact domain.
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Zero test: exact for rationals, `|x| <= tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool;

    fn conj(&self) -> Self;

    /// The imaginary unit.
    fn i_unit() -> Self;
}

impl Scalar for C64 {
    const FIELD: FieldTag = FieldTag::Float;

    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }

    fn from_bigint(v: &BigInt) -> Self {
        C64::new(v.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn to_c64(&self) -> C64 {
        *self
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn i_unit() -> Self {
        C64::new(0.0, 1.0)
    }
}

impl Scalar for QC {
    const FIELD: FieldTag = FieldTag::Exact;

    fn from_i64(v: i64) -> Self {
        QC::new(BigRational::from_integer(v.into()), BigRational::zero())
    }

    fn from_bigint(v: &BigInt) -> Self {
        QC::new(BigRational::from_integer(v.clone()), BigRational::zero())
    }

    fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn i_unit() -> Self {
        qci(0, 1)
    }
}

/// Exact rational `num/den` as a real complex rational.
pub fn qc(num: i64, den: i64) -> QC {
    QC::new(BigRational::new(num.into(), den.into()), BigRational::zero())
}

/// Exact Gaussian rational `re + i·im` from integer parts.
pub fn qci(re: i64, im: i64) -> QC {
    QC::new(
        BigRational::from_integer(re.into()),
        BigRational::from_integer(im.into()),
    )
}

pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

pub fn factorial_big(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n (n-1) ... (n-k+1)`.
pub fn falling_factorial_big(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, v| acc * v)
}

/// Converts an exact value into the target field.
pub fn cast_exact<K: Scalar>(v: &QC) -> K {
    let re = K::from_bigint(v.re.numer()) / K::from_bigint(v.re.denom());
    if v.im.is_zero() {
        return re;
    }
    let im = K::from_bigint(v.im.numer()) / K::from_bigint(v.im.denom());
    re + im * K::i_unit()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn exact_cast_keeps_imaginary_part() {
        let v = QC::new(BigRational::new(1.into(), 2.into()), BigRational::new((-3).into(), 4.into()));
        let f: C64 = cast_exact(&v);
        assert_eq!(f, C64::new(0.5, -0.75));
        let e: QC = cast_exact(&v);
        assert_eq!(e, v);
    }
}
