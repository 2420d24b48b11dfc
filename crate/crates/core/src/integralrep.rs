//! Integral representations `V(x) = ∫ Φ(ξ(t)·x, t) dt` over a chart of the
//! characteristic variety, the classical harmonic and wave formulas, and
//! residual checks of `F(∂)V = 0`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::curves::{CurveChart, CurveError, IntegrationPath};
use crate::polyhom::{HomogeneousPoly, PolyError};
use crate::quadrature::QuadratureRule;
use crate::scalar::{factorial_big, C64, QC};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegralError {
    #[error("quadrature node {0:?} lies outside the chart domain")]
    NodeOutsideDomain(Vec<C64>),
    #[error("rule has {rule} coordinates per node but the path needs {path}")]
    RuleDimension { rule: usize, path: usize },
    #[error("harmonic basis index out of range: n = {n}, m = {m}")]
    IndexOutOfRange { n: u32, m: u32 },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A JSON coefficient: a bare real number or an `[re, im]` pair.
#[derive(Deserialize)]
#[serde(untagged)]
enum ComplexInput {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexInput> for C64 {
    fn from(c: ComplexInput) -> Self {
        match c {
            ComplexInput::Real(re) => C64::new(re, 0.0),
            ComplexInput::Pair([re, im]) => C64::new(re, im),
        }
    }
}

fn complex_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<C64>, D::Error> {
    Ok(Vec::<ComplexInput>::deserialize(d)?.into_iter().map(C64::from).collect())
}

fn complex_one<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
    Ok(ComplexInput::deserialize(d)?.into())
}

/// `a·cos(k·t) + b·sin(k·t)` for an integer frequency vector `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierTerm {
    pub freq: Vec<i64>,
    #[serde(default, deserialize_with = "complex_one")]
    pub cos: C64,
    #[serde(default, deserialize_with = "complex_one")]
    pub sin: C64,
}

/// The coefficient `g_m(t)` of `w^m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierDegree {
    pub degree: u32,
    pub terms: Vec<FourierTerm>,
}

pub type AnalyticProfile = Arc<dyn Fn(C64, &[C64]) -> C64 + Send + Sync>;

/// The integrand `Φ(w, t)`.
#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    /// `Σ_k a_k w^k`.
    PolyInW {
        #[serde(deserialize_with = "complex_vec")]
        coeffs: Vec<C64>,
    },
    /// `Σ_m g_m(t) w^m` with trigonometric `g_m`.
    FourierPoly { degrees: Vec<FourierDegree> },
    /// `Σ_k a_k w^k / k!`.
    Series {
        #[serde(deserialize_with = "complex_vec")]
        coeffs: Vec<C64>,
    },
    /// Any function of `(w, t)`; not serializable.
    #[serde(skip)]
    Analytic(AnalyticProfile),
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::PolyInW { coeffs } => f.debug_struct("PolyInW").field("coeffs", coeffs).finish(),
            Profile::FourierPoly { degrees } => f.debug_struct("FourierPoly").field("degrees", degrees).finish(),
            Profile::Series { coeffs } => f.debug_struct("Series").field("coeffs", coeffs).finish(),
            Profile::Analytic(_) => f.write_str("Analytic(..)"),
        }
    }
}

impl Profile {
    /// `w^n`.
    pub fn power(n: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        Profile::PolyInW { coeffs }
    }

    /// `e^w`.
    pub fn exp() -> Self {
        Profile::Analytic(Arc::new(|w, _| w.exp()))
    }

    pub fn zero() -> Self {
        Profile::PolyInW { coeffs: Vec::new() }
    }

    /// Largest power of `w`, when finite.
    pub fn max_degree(&self) -> Option<usize> {
        match self {
            Profile::PolyInW { coeffs } | Profile::Series { coeffs } => Some(coeffs.len().saturating_sub(1)),
            Profile::FourierPoly { degrees } => Some(degrees.iter().map(|d| d.degree as usize).max().unwrap_or(0)),
            Profile::Analytic(_) => None,
        }
    }

    pub fn eval(&self, w: C64, t: &[C64]) -> C64 {
        let horner = |coeffs: &[C64]| coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * w + c);
        match self {
            Profile::PolyInW { coeffs } => horner(coeffs),
            Profile::Series { coeffs } => {
                let mut fact = 1.0;
                let mut pow = C64::new(1.0, 0.0);
                let mut sum = C64::new(0.0, 0.0);
                for (k, c) in coeffs.iter().enumerate() {
                    if k > 0 {
                        fact *= k as f64;
                        pow *= w;
                    }
                    sum += c * pow / fact;
                }
                sum
            }
            Profile::FourierPoly { degrees } => degrees
                .iter()
                .map(|d| {
                    let g: C64 = d
                        .terms
                        .iter()
                        .map(|term| {
                            let phase: C64 = term.freq.iter().zip(t).map(|(&k, tj)| tj * k as f64).sum();
                            term.cos * phase.cos() + term.sin * phase.sin()
                        })
                        .sum();
                    g * w.powu(d.degree)
                })
                .sum(),
            Profile::Analytic(f) => f(w, t),
        }
    }
}

/// `dt/dθ` for the node-to-parameter map of a path.
fn path_jacobian(path: &IntegrationPath, t: &[C64]) -> C64 {
    let i = C64::new(0.0, 1.0);
    match path {
        IntegrationPath::Angles { .. } | IntegrationPath::Interval { .. } => C64::new(1.0, 0.0),
        IntegrationPath::Loop { center, .. } => i * (t[0] - center),
        IntegrationPath::UnitTorus { .. } => t.iter().map(|tj| i * tj).product(),
    }
}

/// A quadrature rule matched to the chart's default path with `nodes`
/// points per parameter.
pub fn default_rule(chart: &CurveChart, nodes: usize) -> QuadratureRule {
    let path = &chart.path;
    if path.is_periodic() {
        let one = QuadratureRule::periodic_trapezoid(nodes, -PI, PI);
        if path.dim() == 1 {
            one
        } else {
            QuadratureRule::product(&vec![one; path.dim()])
        }
    } else {
        let (a, b) = path.bounds()[0];
        QuadratureRule::gauss_legendre(nodes, a, b)
    }
}

fn check_rule(chart: &CurveChart, rule: &QuadratureRule) -> Result<(), IntegralError> {
    if rule.dim() != chart.path.dim() {
        return Err(IntegralError::RuleDimension { rule: rule.dim(), path: chart.path.dim() });
    }
    Ok(())
}

/// `Σ_k w_k Φ(ξ(t_k)·x, t_k) t'(θ_k)` along the chart's integration path.
pub fn represent(chart: &CurveChart, profile: &Profile, rule: &QuadratureRule, x: &[C64]) -> Result<C64, IntegralError> {
    check_rule(chart, rule)?;
    if x.len() != chart.nvars() {
        return Err(IntegralError::Unsupported(format!("point has {} coordinates, chart has {}", x.len(), chart.nvars())));
    }
    let mut sum = C64::new(0.0, 0.0);
    for (node, &weight) in rule.nodes.iter().zip(&rule.weights) {
        let t = chart.path.param(node);
        if !chart.contains(&t) {
            return Err(IntegralError::NodeOutsideDomain(t));
        }
        let xi = chart.integration_point(&t)?;
        let w: C64 = xi.coords.iter().zip(x).map(|(a, b)| a * b).sum();
        sum += profile.eval(w, &t) * path_jacobian(&chart.path, &t) * weight;
    }
    Ok(sum)
}

/// `Σ_k w_k g(t_k) (ξ(t_k)·x)^m t'(θ_k)` as a polynomial in `x`; the degree-`m`
/// piece of a representation with profile `g(t) w^m`.
pub fn represent_degree(
    chart: &CurveChart,
    g: impl Fn(&[C64]) -> C64,
    m: u32,
    rule: &QuadratureRule,
) -> Result<HomogeneousPoly<C64>, IntegralError> {
    check_rule(chart, rule)?;
    let mut acc = HomogeneousPoly::zero(chart.nvars(), m);
    for (node, &weight) in rule.nodes.iter().zip(&rule.weights) {
        let t = chart.path.param(node);
        if !chart.contains(&t) {
            return Err(IntegralError::NodeOutsideDomain(t));
        }
        let xi = chart.integration_point(&t)?;
        let c = g(&t) * path_jacobian(&chart.path, &t) * weight;
        acc = acc.try_add(&xi.power(m).scale(&c))?;
    }
    Ok(acc)
}

/// `∫_{−π}^{π} f(z + ix cos u + iy sin u, u) du` by the `n`-point periodic
/// trapezoid rule.
pub fn whittaker_laplace(profile: &Profile, x: f64, y: f64, z: f64, n: usize) -> C64 {
    let rule = QuadratureRule::periodic_trapezoid(n, -PI, PI);
    let i = C64::new(0.0, 1.0);
    rule.integrate(|node| {
        let u = node[0];
        let w = z + i * x * u.cos() + i * y * u.sin();
        profile.eval(w, &[C64::new(u, 0.0)])
    })
}

/// `∫∫ f(t + x sin u cos v + y sin u sin v + z cos u, u, v) du dv` over
/// `[−π, π]²` with an `n × n` trapezoid grid.
pub fn whittaker_wave(profile: &Profile, x: f64, y: f64, z: f64, t: f64, n: usize) -> C64 {
    let one = QuadratureRule::periodic_trapezoid(n, -PI, PI);
    let rule = QuadratureRule::product(&[one.clone(), one]);
    rule.integrate(|node| {
        let (u, v) = (node[0], node[1]);
        let w = t + x * u.sin() * v.cos() + y * u.sin() * v.sin() + z * u.cos();
        profile.eval(C64::new(w, 0.0), &[C64::new(u, 0.0), C64::new(v, 0.0)])
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Cos,
    Sin,
}

fn qrat(n: i64, d: i64) -> QC {
    QC::new(BigRational::new(n.into(), d.into()), BigRational::zero())
}

/// `(1/π) ∫_{−π}^{π} (Z + iX cos u + iY sin u)^n cos(mu) du` (or `sin(mu)`),
/// exactly, in the variables `(X, Y, Z)`.
pub fn harmonic_fourier_basis(n: u32, m: u32, parity: Parity) -> Result<HomogeneousPoly<QC>, IntegralError> {
    let valid = match parity {
        Parity::Cos => m <= n,
        Parity::Sin => 1 <= m && m <= n,
    };
    if !valid {
        return Err(IntegralError::IndexOutOfRange { n, m });
    }
    // With ζ = e^{iu} the form is A + ζB + ζ⁻¹C, A = Z, B = (iX + Y)/2,
    // C = (iX − Y)/2, and (1/π)∫ζ^k du = 2δ_{k0}.
    let i = QC::new(BigRational::zero(), BigRational::from_integer(1.into()));
    let a = HomogeneousPoly::linear_form(&[qrat(0, 1), qrat(0, 1), qrat(1, 1)]);
    let b = HomogeneousPoly::linear_form(&[i.clone() * qrat(1, 2), qrat(1, 2), qrat(0, 1)]);
    let c = HomogeneousPoly::linear_form(&[i.clone() * qrat(1, 2), qrat(-1, 2), qrat(0, 1)]);
    let zeta_coeff = |k: i64| -> Result<HomogeneousPoly<QC>, IntegralError> {
        let mut acc = HomogeneousPoly::zero(3, n);
        let n64 = n as i64;
        for pb in 0..=n64 {
            let pc = pb - k;
            if pc < 0 || pb + pc > n64 {
                continue;
            }
            let pa = n64 - pb - pc;
            let multinomial = factorial_big(n) / (factorial_big(pa as u32) * factorial_big(pb as u32) * factorial_big(pc as u32));
            let coeff = QC::new(BigRational::from_integer(multinomial), BigRational::zero());
            let term = a.pow(pa as u32).try_mul(&b.pow(pb as u32))?.try_mul(&c.pow(pc as u32))?.scale(&coeff);
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    };
    let m = m as i64;
    let (plus, minus) = (zeta_coeff(m)?, zeta_coeff(-m)?);
    Ok(match parity {
        Parity::Cos => plus.try_add(&minus)?,
        Parity::Sin => plus.try_sub(&minus)?.scale(&i),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResidualMethod {
    ExactSymbolic,
    FiniteDifference { h: f64, order: u32, richardson: bool },
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    #[serde(skip)]
    pub operator: HomogeneousPoly<C64>,
    pub points: Vec<Vec<f64>>,
    pub max_abs_residual: f64,
    /// Scale at the point with the largest relative residual.
    pub scale: f64,
    /// `max_p |F(∂)V(p)| / scale(p)`.
    pub relative_residual: f64,
    pub method: ResidualMethod,
}

/// Exact residual of a polynomial solution; the scale is
/// `max(1, max_p |V(p)|)`.
pub fn pde_residual_exact(
    symbol: &HomogeneousPoly<C64>,
    v: &HomogeneousPoly<C64>,
    points: &[Vec<f64>],
) -> Result<ResidualReport, IntegralError> {
    let image = symbol.apply_diff_operator(v)?;
    let mut max_abs: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for p in points {
        let x: Vec<C64> = p.iter().map(|&c| C64::new(c, 0.0)).collect();
        max_abs = max_abs.max(image.evaluate(&x)?.norm());
        scale = scale.max(v.evaluate(&x)?.norm());
    }
    Ok(ResidualReport {
        operator: symbol.clone(),
        points: points.to_vec(),
        max_abs_residual: max_abs,
        scale,
        relative_residual: max_abs / scale,
        method: ResidualMethod::ExactSymbolic,
    })
}

/// Weights for the `k`-th derivative at 0 on the given offsets (Fornberg).
pub fn fornberg_weights(k: usize, offsets: &[f64]) -> Vec<f64> {
    let n = offsets.len();
    let mut c = vec![vec![0.0; k + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = offsets[0];
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(k);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = offsets[i];
        for j in 0..i {
            let c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if j == i - 1 {
                for s in (1..=mn).rev() {
                    c[i][s] = c1 * (s as f64 * c[i - 1][s - 1] - c5 * c[i - 1][s]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for s in (1..=mn).rev() {
                c[j][s] = (c4 * c[j][s] - s as f64 * c[j][s - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[k]).collect()
}

/// Central stencil for the `k`-th derivative with accuracy `order` (even):
/// integer offsets and weights for unit spacing.
pub fn central_stencil(k: u32, order: u32) -> (Vec<i64>, Vec<f64>) {
    let half = (k.div_ceil(2) + order / 2 - 1) as i64;
    let offsets: Vec<i64> = (-half..=half).collect();
    let as_f: Vec<f64> = offsets.iter().map(|&o| o as f64).collect();
    (offsets, fornberg_weights(k as usize, &as_f))
}

/// `F(∂)V(p)` by composed central stencils and the sum of the magnitudes of
/// the terms that were added up.
fn fd_apply(symbol: &HomogeneousPoly<C64>, v: &dyn Fn(&[f64]) -> C64, p: &[f64], h: f64, order: u32) -> (C64, f64) {
    let mut total = C64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for (mono, coeff) in symbol.terms() {
        let stencils: Vec<(usize, Vec<i64>, Vec<f64>)> = mono
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| {
                let (o, w) = central_stencil(e, order);
                (j, o, w.into_iter().map(|wi| wi / h.powi(e as i32)).collect())
            })
            .collect();
        let mut index = vec![0usize; stencils.len()];
        loop {
            let mut q = p.to_vec();
            let mut weight = 1.0;
            for (s, (j, offs, ws)) in stencils.iter().enumerate() {
                q[*j] += offs[index[s]] as f64 * h;
                weight *= ws[index[s]];
            }
            let term = coeff * v(&q) * weight;
            total += term;
            magnitude += term.norm();
            let mut s = 0;
            while s < stencils.len() {
                index[s] += 1;
                if index[s] < stencils[s].1.len() {
                    break;
                }
                index[s] = 0;
                s += 1;
            }
            if s == stencils.len() {
                break;
            }
        }
    }
    (total, magnitude)
}

/// Finite-difference residual of `F(∂)V` at `points`. Symbols of order ≤ 4
/// use `h = 1e−3`; higher orders use `h = 1e−2` with one Richardson step.
/// The scale is `max(1, Σ|stencil terms|)`.
pub fn pde_residual_fd(symbol: &HomogeneousPoly<C64>, v: &dyn Fn(&[f64]) -> C64, points: &[Vec<f64>]) -> ResidualReport {
    let order = 4;
    let high = symbol.degree() > 4;
    let h = if high { 1e-2 } else { 1e-3 };
    let mut max_abs: f64 = 0.0;
    let mut worst = (0.0, 1.0);
    for p in points {
        let (value, magnitude) = if high {
            let (coarse, m1) = fd_apply(symbol, v, p, h, order);
            let (fine, m2) = fd_apply(symbol, v, p, h / 2.0, order);
            let factor = 2f64.powi(order as i32);
            ((fine * factor - coarse) / (factor - 1.0), m1.max(m2))
        } else {
            fd_apply(symbol, v, p, h, order)
        };
        let scale = magnitude.max(1.0);
        max_abs = max_abs.max(value.norm());
        if value.norm() / scale >= worst.0 {
            worst = (value.norm() / scale, scale);
        }
    }
    ResidualReport {
        operator: symbol.clone(),
        points: points.to_vec(),
        max_abs_residual: max_abs,
        scale: worst.1,
        relative_residual: worst.0,
        method: ResidualMethod::FiniteDifference { h, order, richardson: high },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{preset_chart, Preset};
    use crate::linear::{Matrix, TolerancePolicy};
    use crate::scalar::qci;

    fn laplace_symbol() -> HomogeneousPoly<C64> {
        preset_chart(Preset::LaplaceQuadric).symbol
    }

    #[test]
    fn whittaker_closed_form() {
        let v = whittaker_laplace(&Profile::power(2), 1.0, 2.0, 3.0, 64);
        assert!((v - C64::new(13.0 * PI, 0.0)).norm() < 1e-9);
        let chart = preset_chart(Preset::LaplaceQuadric);
        let x = [C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(3.0, 0.0)];
        let r = represent(&chart, &Profile::power(2), &default_rule(&chart, 64), &x).unwrap();
        assert!((r - v).norm() < 1e-9);
        assert_eq!(represent(&chart, &Profile::zero(), &default_rule(&chart, 8), &x).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn wave_examples() {
        let v = whittaker_wave(&Profile::power(3), 0.0, 0.0, 0.0, 1.0, 32);
        assert!((v - C64::new(4.0 * PI * PI, 0.0)).norm() < 1e-10);
        let chart = preset_chart(Preset::WaveQuadric);
        let profile = Profile::power(2);
        let f = |p: &[f64]| whittaker_wave(&profile, p[0], p[1], p[2], p[3], 24);
        let rep = pde_residual_fd(&chart.symbol, &f, &[vec![0.1, 0.2, -0.3, 0.4]]);
        assert!(rep.relative_residual <= 1e-8, "{rep:?}");
    }

    #[test]
    fn exp_profile_is_harmonic() {
        let profile = Profile::exp();
        let f = |p: &[f64]| whittaker_laplace(&profile, p[0], p[1], p[2], 48);
        let rep = pde_residual_fd(&laplace_symbol(), &f, &[vec![0.3, -0.2, 0.5], vec![-0.6, 0.1, 0.0]]);
        assert!(rep.relative_residual <= 1e-7);
    }

    #[test]
    fn fourier_basis_examples() {
        let g0 = harmonic_fourier_basis(1, 0, Parity::Cos).unwrap();
        assert_eq!(g0.coeff(&[0, 0, 1]), qrat(2, 1));
        assert_eq!(g0.num_terms(), 1);
        let g1 = harmonic_fourier_basis(1, 1, Parity::Cos).unwrap();
        assert_eq!(g1.coeff(&[1, 0, 0]), qci(0, 1));
        assert_eq!(g1.num_terms(), 1);
        assert!(harmonic_fourier_basis(2, 0, Parity::Sin).is_err());
        assert!(harmonic_fourier_basis(2, 3, Parity::Cos).is_err());
    }

    #[test]
    fn fourier_basis_spans_harmonics() {
        let lap = HomogeneousPoly::<QC>::from_int_terms(3, 2, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]).unwrap();
        for n in 1..=4u32 {
            let mut polys = Vec::new();
            for m in 0..=n {
                polys.push(harmonic_fourier_basis(n, m, Parity::Cos).unwrap());
                if m >= 1 {
                    polys.push(harmonic_fourier_basis(n, m, Parity::Sin).unwrap());
                }
            }
            assert_eq!(polys.len() as u32, 2 * n + 1);
            for p in &polys {
                assert!(lap.apply_diff_operator(p).unwrap().is_zero());
            }
            let a = Matrix::from_rows(polys.iter().map(HomogeneousPoly::to_dense).collect()).unwrap();
            assert_eq!(a.rank(&TolerancePolicy::Default), (2 * n + 1) as usize);
        }
    }

    #[test]
    fn profile_json() {
        let p: Profile = serde_json::from_str(r#"{"kind":"poly_in_w","coeffs":[0,0,1]}"#).unwrap();
        assert_eq!(p.eval(C64::new(3.0, 0.0), &[]), C64::new(9.0, 0.0));
        let p: Profile = serde_json::from_str(r#"{"kind":"series","coeffs":[[0,1],0,2]}"#).unwrap();
        assert_eq!(p.eval(C64::new(2.0, 0.0), &[]), C64::new(4.0, 1.0));
        let p: Profile = serde_json::from_str(
            r#"{"kind":"fourier_poly","degrees":[{"degree":1,"terms":[{"freq":[1],"cos":2}]}]}"#,
        )
        .unwrap();
        assert!((p.eval(C64::new(1.0, 0.0), &[C64::new(0.0, 0.0)]) - C64::new(2.0, 0.0)).norm() < 1e-15);
        let back = serde_json::to_string(&Profile::power(1)).unwrap();
        assert_eq!(back, r#"{"kind":"poly_in_w","coeffs":[[0.0,0.0],[1.0,0.0]]}"#);
    }

    #[test]
    fn exact_residuals() {
        let sym = laplace_symbol();
        let harmonic = HomogeneousPoly::from_terms(3, 2, [(vec![2, 0, 0], C64::new(1.0, 0.0)), (vec![0, 2, 0], C64::new(-1.0, 0.0))]).unwrap();
        let pts = vec![vec![0.1, 0.2, 0.3]; 10];
        assert_eq!(pde_residual_exact(&sym, &harmonic, &pts).unwrap().max_abs_residual, 0.0);
        let x2 = HomogeneousPoly::from_terms(3, 2, [(vec![2, 0, 0], C64::new(1.0, 0.0))]).unwrap();
        let rep = pde_residual_exact(&sym, &x2, &pts).unwrap();
        assert!((rep.max_abs_residual - 2.0).abs() < 1e-15);
    }

    #[test]
    fn stencils() {
        let (o, w) = central_stencil(2, 4);
        assert_eq!(o, vec![-2, -1, 0, 1, 2]);
        let want = [-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0];
        assert!(w.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-14));
        let (o, _) = central_stencil(3, 4);
        assert_eq!(o.len(), 7);
    }

    #[test]
    fn fermat_two_paths() {
        let chart = preset_chart(Preset::FermatCubic);
        let x = [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        let v = represent(&chart, &Profile::power(3), &default_rule(&chart, 40), &x).unwrap();
        let direct: f64 = QuadratureRule::gauss_legendre(60, -1.0, 1.0).integrate(|u| crate::dixon::dixon_ode_oracle(u[0], 1e-3).1.powi(3));
        assert!((v.re - direct).abs() < 1e-10 && v.im.abs() < 1e-14);
    }

    #[test]
    fn degree_piece_matches_value() {
        let chart = preset_chart(Preset::LaplaceQuadric);
        let rule = default_rule(&chart, 32);
        let poly = represent_degree(&chart, |t| t[0].cos(), 3, &rule).unwrap();
        let profile = Profile::Analytic(Arc::new(|w, t| t[0].cos() * w.powu(3)));
        let x = [C64::new(0.2, 0.0), C64::new(-0.4, 0.0), C64::new(0.7, 0.0)];
        let v = represent(&chart, &profile, &rule, &x).unwrap();
        assert!((poly.evaluate(&x).unwrap() - v).norm() < 1e-12);
        assert!(laplace_symbol().apply_diff_operator(&poly).unwrap().norm_inf() < 1e-12);
    }
}
