//! Dixon's elliptic functions `s(u)`, `c(u)`:
//! `s' = c²`, `c' = −s²`, `s(0) = 0`, `c(0) = 1`, hence `s³ + c³ = 1`.
//!
//! The Taylor coefficients come from an exact-rational recurrence; a
//! fourth-order Runge–Kutta integrator provides an independent check.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::scalar::C64;

/// Distance from the origin to the nearest pole of `s` and `c`
/// (one third of `B(1/3, 1/3)`).
pub const POLE_RADIUS: f64 = 1.766_638_750_7;

/// Truncation budget used to derive the validated radius.
const TAIL_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DixonError {
    #[error("|u| = {modulus} exceeds the validated radius {radius:.4} for order {order}; use the ODE integrator or raise the order")]
    OutsideRadius { modulus: f64, radius: f64, order: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DixonSeries {
    /// Coefficient of `u^k` in `s`, `k = 0..=order`.
    pub s_coeffs: Vec<BigRational>,
    /// Coefficient of `u^k` in `c`, `k = 0..=order`.
    pub c_coeffs: Vec<BigRational>,
    pub order: usize,
}

fn cauchy_square(a: &[BigRational], k: usize) -> BigRational {
    (0..=k).fold(BigRational::zero(), |acc, i| acc + &a[i] * &a[k - i])
}

/// Series through `u^order` from `(k+1) s_{k+1} = [u^k] c²` and
/// `(k+1) c_{k+1} = −[u^k] s²`.
pub fn dixon_series(order: usize) -> Result<DixonSeries, DixonError> {
    if order == 0 {
        return Err(DixonError::ZeroOrder);
    }
    let mut s = vec![BigRational::zero(); order + 1];
    let mut c = vec![BigRational::zero(); order + 1];
    c[0] = BigRational::one();
    for k in 0..order {
        let denom = BigRational::from_integer((k as i64 + 1).into());
        s[k + 1] = cauchy_square(&c, k) / &denom;
        c[k + 1] = -cauchy_square(&s, k) / &denom;
    }
    Ok(DixonSeries { s_coeffs: s, c_coeffs: c, order })
}

impl DixonSeries {
    /// Partial sums at `u` (Horner).
    pub fn eval_unchecked(&self, u: C64) -> (C64, C64) {
        let horner = |coeffs: &[BigRational]| {
            coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, a| acc * u + a.to_f64().unwrap_or(f64::NAN))
        };
        (horner(&self.s_coeffs), horner(&self.c_coeffs))
    }

    /// Largest radius `ρ ≤ 1` at which the neglected tail is below `1e-14`,
    /// estimated from the first omitted nonzero coefficient and the
    /// geometric decay set by [`POLE_RADIUS`].
    pub fn validated_radius(&self) -> f64 {
        let next = dixon_series(self.order + 3).expect("order positive");
        let tail_coeff = ((self.order + 1)..=(self.order + 3))
            .map(|k| next.s_coeffs[k].abs().max(next.c_coeffs[k].abs()))
            .map(|r| r.to_f64().unwrap_or(0.0))
            .fold(0.0, f64::max);
        if tail_coeff == 0.0 {
            return 1.0;
        }
        let k = (self.order + 1) as f64;
        let tail = |rho: f64| tail_coeff * rho.powf(k) / (1.0 - (rho / POLE_RADIUS).powi(3));
        if tail(1.0) <= TAIL_TOLERANCE {
            return 1.0;
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if tail(mid) <= TAIL_TOLERANCE {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Coefficients of the truncated `s³ + c³ − 1` through `u^order`.
    pub fn cubic_identity_coeffs(&self) -> Vec<BigRational> {
        let n = self.order;
        let cube = |a: &[BigRational]| {
            let sq: Vec<BigRational> = (0..=n).map(|k| cauchy_square(a, k)).collect();
            (0..=n).map(|k| (0..=k).fold(BigRational::zero(), |acc, i| acc + &sq[i] * &a[k - i])).collect::<Vec<_>>()
        };
        let s3 = cube(&self.s_coeffs);
        let c3 = cube(&self.c_coeffs);
        let mut out: Vec<BigRational> = s3.into_iter().zip(c3).map(|(a, b)| a + b).collect();
        out[0] -= BigRational::one();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DixonValue {
    pub s: C64,
    pub c: C64,
    pub cubic_residual: f64,
}

/// `(s(u), c(u))` by partial sums through `u^order`. Fails outside the
/// validated radius of that order.
pub fn dixon_eval(u: C64, order: usize) -> Result<DixonValue, DixonError> {
    let series = dixon_series(order)?;
    dixon_eval_with(&series, u)
}

pub fn dixon_eval_with(series: &DixonSeries, u: C64) -> Result<DixonValue, DixonError> {
    let radius = series.validated_radius();
    if u.norm() > radius {
        return Err(DixonError::OutsideRadius { modulus: u.norm(), radius, order: series.order });
    }
    let (s, c) = series.eval_unchecked(u);
    Ok(DixonValue { s, c, cubic_residual: (s * s * s + c * c * c - 1.0).norm() })
}

/// Classical RK4 integration of the Dixon system from 0 to `u` with step at
/// most `step`.
pub fn dixon_ode_oracle(u: f64, step: f64) -> (f64, f64) {
    assert!(step > 0.0, "step must be positive");
    let n = (u.abs() / step).ceil().max(0.0) as usize;
    if n == 0 {
        return (0.0, 1.0);
    }
    let h = u / n as f64;
    let rhs = |s: f64, c: f64| (c * c, -s * s);
    let (mut s, mut c) = (0.0, 1.0);
    for _ in 0..n {
        let (k1s, k1c) = rhs(s, c);
        let (k2s, k2c) = rhs(s + 0.5 * h * k1s, c + 0.5 * h * k1c);
        let (k3s, k3c) = rhs(s + 0.5 * h * k2s, c + 0.5 * h * k2c);
        let (k4s, k4c) = rhs(s + h * k3s, c + h * k3c);
        s += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
        c += h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c);
    }
    (s, c)
}
