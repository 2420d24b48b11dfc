//! Oriented lines in ℝ³ as points of `TS²`, the stereographic chart
//! `(ξ, η)`, the real structure `τ`, and the John line transform.

use serde::Serialize;
use thiserror::Error;

use crate::polyhom::HomogeneousPoly;
use crate::quadrature::QuadratureRule;
use crate::scalar::C64;

const UNIT_TOLERANCE: f64 = 1e-12;
/// Relative size of the integrand at the truncation points below which the
/// tail counts as negligible.
pub const TAIL_TOLERANCE: f64 = 1e-14;
pub const DEFAULT_NODES: usize = 200;
const MAX_HALF_WIDTH: f64 = 64.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwistorError {
    #[error("direction has norm {0}, expected 1")]
    NonUnit(f64),
    #[error("direction is the north pole; the chart is singular there")]
    Pole,
    #[error("ξ = 0 is outside the overlap where τ is written in this chart")]
    ZeroXi,
}

type V3 = [f64; 3];

fn dot(a: &V3, b: &V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrientedLine {
    /// Unit direction.
    pub u: V3,
    /// Foot point, orthogonal to `u`.
    pub v: V3,
}

impl OrientedLine {
    pub fn point_at(&self, t: f64) -> V3 {
        [self.v[0] + t * self.u[0], self.v[1] + t * self.u[1], self.v[2] + t * self.u[2]]
    }

    pub fn distance_to(&self, p: &V3) -> f64 {
        let w = [p[0] - self.v[0], p[1] - self.v[1], p[2] - self.v[2]];
        let along = dot(&w, &self.u);
        let perp = [w[0] - along * self.u[0], w[1] - along * self.u[1], w[2] - along * self.u[2]];
        dot(&perp, &perp).sqrt()
    }
}

/// `{v + tu}` ↦ `(u, v − (v,u)u)`.
pub fn line_to_ts2(u: V3, v: V3) -> Result<OrientedLine, TwistorError> {
    let norm = dot(&u, &u).sqrt();
    if (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(TwistorError::NonUnit(norm));
    }
    let s = dot(&v, &u);
    Ok(OrientedLine { u, v: [v[0] - s * u[0], v[1] - s * u[1], v[2] - s * u[2]] })
}

/// Stereographic coordinates `(ξ, η)` of an oriented line, defined off
/// `u = (0, 0, 1)`.
pub fn chart_coordinates(u: V3, v: V3) -> Result<(C64, C64), TwistorError> {
    let denom = 1.0 - u[2];
    if denom.abs() <= UNIT_TOLERANCE {
        return Err(TwistorError::Pole);
    }
    let uc = C64::new(u[0], u[1]);
    let xi = uc / denom;
    let eta = C64::new(v[0], v[1]) / denom + uc * v[2] / (denom * denom);
    Ok((xi, eta))
}

/// `η = a + bξ + cξ²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RealSection {
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

impl RealSection {
    pub fn eval(&self, xi: C64) -> C64 {
        self.a + self.b * xi + self.c * xi * xi
    }

    /// `a = −conj(c)` and `b ∈ ℝ` to within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        (self.a + self.c.conj()).norm() <= tol && self.b.im.abs() <= tol
    }

    /// The point whose lines this section describes, when the section is real.
    pub fn to_point(&self, tol: f64) -> Option<V3> {
        self.is_real(tol).then_some([2.0 * self.a.re, 2.0 * self.a.im, self.b.re])
    }
}

/// The section of lines through `p`: `a = (x+iy)/2`, `b = z`, `c = −(x−iy)/2`.
pub fn real_section_of_point(p: V3) -> RealSection {
    RealSection {
        a: C64::new(p[0], p[1]) * 0.5,
        b: C64::new(p[2], 0.0),
        c: -C64::new(p[0], -p[1]) * 0.5,
    }
}

/// `(ξ, η) ↦ (−1/conj ξ, −conj η / conj ξ²)`: reversal of orientation.
pub fn tau(xi: C64, eta: C64) -> Result<(C64, C64), TwistorError> {
    if xi.norm() == 0.0 {
        return Err(TwistorError::ZeroXi);
    }
    let xb = xi.conj();
    Ok((-1.0 / xb, -eta.conj() / (xb * xb)))
}

/// `∂f/∂conj(z) = ½(∂_x + i∂_y) f` by fourth-order central differences.
pub fn wirtinger_dbar(f: impl Fn(C64) -> C64, z: C64, h: f64) -> C64 {
    let d = |dir: C64| {
        let at = |k: f64| f(z + dir * (k * h));
        (at(-2.0) - at(-1.0) * 8.0 + at(1.0) * 8.0 - at(2.0)) / (12.0 * h)
    };
    (d(C64::new(1.0, 0.0)) + C64::new(0.0, 1.0) * d(C64::new(0.0, 1.0))) * 0.5
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JohnValue {
    pub value: f64,
    pub half_width: f64,
    pub nodes: usize,
    pub warnings: Vec<String>,
}

/// `φ(s,x,y,z) = ∫ f(s + ty, x + tz, t) dt` by Gauss–Legendre on `[−T, T]`.
/// `T` starts at `√(14 ln 10)` and grows until the integrand at `±T` is
/// below `1e−14` of its sampled peak; a warning is recorded if it never is.
pub fn john_transform(f: impl Fn(V3) -> f64, s: f64, x: f64, y: f64, z: f64, nodes: usize) -> JohnValue {
    let g = |t: f64| f([s + t * y, x + t * z, t]);
    let mut half_width = (14.0 * std::f64::consts::LN_10).sqrt();
    loop {
        let rule = QuadratureRule::gauss_legendre(nodes, -half_width, half_width);
        let mut peak: f64 = 0.0;
        let mut value = 0.0;
        for (node, &w) in rule.nodes.iter().zip(&rule.weights) {
            let gv = g(node[0]);
            peak = peak.max(gv.abs());
            value += gv * w;
        }
        let tail = g(half_width).abs().max(g(-half_width).abs());
        let decayed = tail <= TAIL_TOLERANCE * peak.max(f64::MIN_POSITIVE);
        if decayed || half_width >= MAX_HALF_WIDTH {
            let warnings = if decayed {
                Vec::new()
            } else {
                vec![format!("integrand at ±{half_width} is {tail:.2e}; truncation may be inaccurate")]
            };
            return JohnValue { value, half_width, nodes, warnings };
        }
        half_width = (half_width * 1.5).min(MAX_HALF_WIDTH);
    }
}

/// Closed form of the transform of `exp(−‖·‖²)`.
pub fn john_gaussian_closed_form(s: f64, x: f64, y: f64, z: f64) -> f64 {
    let a = 1.0 + y * y + z * z;
    let b = s * y + x * z;
    let c = s * s + x * x;
    (std::f64::consts::PI / a).sqrt() * (b * b / a - c).exp()
}

/// `x·y − s·z` in the variables `(s, x, y, z)`.
pub fn ultrahyperbolic_symbol() -> HomogeneousPoly<C64> {
    let one = C64::new(1.0, 0.0);
    HomogeneousPoly::from_terms(4, 2, [(vec![0, 1, 1, 0], one), (vec![1, 0, 0, 1], -one)]).expect("homogeneous")
}
