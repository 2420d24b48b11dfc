//! Intersection of two plane curves through a numeric resultant.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::roots::{horner, roots_univariate};
use super::CurveError;
use crate::linear::{Lu, Matrix};
use crate::polyhom::{HomogeneousPoly, ProjPoint};
use crate::scalar::C64;

const ATTEMPTS: u64 = 3;
/// Points of an intersection set closer than this are flagged as a possible
/// multiple intersection.
const COINCIDENCE_TOLERANCE: f64 = 1e-6;
/// Residual bound, relative to the coefficient scale, that every reported
/// point must meet.
pub const POINT_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, Default)]
pub struct IntersectionSet {
    pub points: Vec<ProjPoint<C64>>,
    pub multiplicity_warnings: Vec<String>,
}

impl IntersectionSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `{"points": [[[re, im], …], …], "warnings": […]}`.
    pub fn to_json(&self) -> Value {
        let points: Vec<Value> = self
            .points
            .iter()
            .map(|p| Value::from(p.coords.iter().map(|c| json!([c.re, c.im])).collect::<Vec<_>>()))
            .collect();
        json!({ "points": points, "warnings": self.multiplicity_warnings })
    }
}

/// Interpolated resultant and the largest magnitude of its samples.
#[derive(Clone, Debug)]
pub struct ResultantPoly {
    /// Ascending coefficients.
    pub coeffs: Vec<C64>,
    pub values_scale: f64,
    /// Whether every sample was negligible against its Hadamard-type bound.
    pub vanishes: bool,
}

/// Sylvester determinant of two polynomials given by ascending coefficients.
/// Formal degrees are the vector lengths minus one.
pub fn sylvester_resultant(p: &[C64], q: &[C64]) -> C64 {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    if size == 0 {
        return C64::new(1.0, 0.0);
    }
    let mut s = Matrix::<C64>::zeros(size, size);
    for r in 0..n {
        for (k, c) in p.iter().rev().enumerate() {
            s[(r, r + k)] = *c;
        }
    }
    for r in 0..m {
        for (k, c) in q.iter().rev().enumerate() {
            s[(n + r, r + k)] = *c;
        }
    }
    Lu::new(&s).expect("square").determinant()
}

fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Interpolates `t ↦ Res_η(a_t, b_t)` of degree at most `degree_bound` from
/// its values at roots of unity scaled by `radius`.
pub fn resultant_polynomial<F>(pair: F, degree_bound: usize, radius: f64) -> Result<ResultantPoly, CurveError>
where
    F: Fn(C64) -> (Vec<C64>, Vec<C64>),
{
    let n = degree_bound + 1;
    let mut values = Vec::with_capacity(n);
    let mut vanishes = true;
    for k in 0..n {
        let t = C64::from_polar(radius, 2.0 * PI * k as f64 / n as f64);
        let (a, b) = pair(t);
        let v = sylvester_resultant(&a, &b);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(CurveError::IntersectionFailed("non-finite resultant sample".into()));
        }
        let bound = norm2(&a).powi(b.len() as i32 - 1) * norm2(&b).powi(a.len() as i32 - 1);
        if v.norm() > 1e-10 * bound {
            vanishes = false;
        }
        values.push(v);
    }
    let values_scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let coeffs = (0..n)
        .map(|j| {
            let sum: C64 = values
                .iter()
                .enumerate()
                .map(|(k, v)| v * C64::from_polar(1.0, -2.0 * PI * (j * k) as f64 / n as f64))
                .sum();
            sum / (n as f64 * radius.powi(j as i32))
        })
        .collect();
    Ok(ResultantPoly { coeffs, values_scale, vanishes })
}

/// A unitary 3×3 matrix from Gram–Schmidt on seeded random columns.
fn random_unitary(rng: &mut ChaCha8Rng) -> Vec<Vec<C64>> {
    let mut cols: Vec<Vec<C64>> = Vec::new();
    while cols.len() < 3 {
        let mut v: Vec<C64> = (0..3).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        for u in &cols {
            let dot: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= dot * ui;
            }
        }
        let nv = norm2(&v);
        if nv > 1e-3 {
            cols.push(v.into_iter().map(|c| c / nv).collect());
        }
    }
    (0..3).map(|j| (0..3).map(|k| cols[k][j]).collect()).collect()
}

/// Ascending `y`-coefficients of `G(x, y, 1)`.
fn y_coefficients(g: &HomogeneousPoly<C64>, x: C64) -> Vec<C64> {
    let mut a = vec![C64::new(0.0, 0.0); g.degree() as usize + 1];
    for (mono, c) in g.terms() {
        a[mono.exps[1] as usize] += c * x.powi(mono.exps[0] as i32);
    }
    a
}

fn gradient_xy(g: &HomogeneousPoly<C64>, x: C64, y: C64) -> (C64, C64, C64) {
    let p = [x, y, C64::new(1.0, 0.0)];
    let val = g.evaluate(&p).expect("three variables");
    let gx = g.derivative(0).evaluate(&p).expect("three variables");
    let gy = g.derivative(1).evaluate(&p).expect("three variables");
    (val, gx, gy)
}

/// Newton iteration on the affine system `G₁ = G₂ = 0`.
fn polish(g1: &HomogeneousPoly<C64>, g2: &HomogeneousPoly<C64>, mut x: C64, mut y: C64) -> (C64, C64) {
    for _ in 0..20 {
        let (f1, a, b) = gradient_xy(g1, x, y);
        let (f2, c, d) = gradient_xy(g2, x, y);
        let det = a * d - b * c;
        if det.norm() == 0.0 {
            break;
        }
        let dx = (f1 * d - f2 * b) / det;
        let dy = (a * f2 - c * f1) / det;
        if !dx.re.is_finite() || !dy.re.is_finite() || !dx.im.is_finite() || !dy.im.is_finite() {
            break;
        }
        x -= dx;
        y -= dy;
        if dx.norm() + dy.norm() <= 1e-15 * (1.0 + x.norm() + y.norm()) {
            break;
        }
    }
    (x, y)
}

fn normalized(f: &HomogeneousPoly<C64>) -> HomogeneousPoly<C64> {
    f.scale(&C64::new(1.0 / f.norm_inf(), 0.0))
}

/// The `m·n` intersection points of two plane curves (with multiplicity),
/// after a seeded unitary change of coordinates.
pub fn intersect_plane_curves(
    f1: &HomogeneousPoly<C64>,
    f2: &HomogeneousPoly<C64>,
    seed: u64,
) -> Result<IntersectionSet, CurveError> {
    if f1.nvars() != 3 || f2.nvars() != 3 {
        return Err(CurveError::InvalidPolynomial("plane curves need three variables".into()));
    }
    if f1.degree() == 0 || f2.degree() == 0 || f1.is_zero() || f2.is_zero() {
        return Err(CurveError::InvalidPolynomial("curves must be nonzero of positive degree".into()));
    }
    let (m, n) = (f1.degree() as usize, f2.degree() as usize);
    let (f1, f2) = (normalized(f1), normalized(f2));
    let mut last_reason = String::new();
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let u = random_unitary(&mut rng);
        let g1 = normalized(&f1.linear_substitution(&u)?);
        let g2 = normalized(&f2.linear_substitution(&u)?);
        let lead1 = g1.coeff(&[0, m as u32, 0]).norm();
        let lead2 = g2.coeff(&[0, n as u32, 0]).norm();
        if lead1 < 1e-6 || lead2 < 1e-6 {
            last_reason = "coordinate change left a point at infinity in y".into();
            continue;
        }
        let res = resultant_polynomial(|x| (y_coefficients(&g1, x), y_coefficients(&g2, x)), m * n, 1.0)?;
        if res.vanishes {
            return Err(CurveError::CommonComponent);
        }
        let max_c = res.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if res.coeffs[m * n].norm() < 1e-8 * max_c {
            last_reason = "resultant lost degree; intersection near the line at infinity".into();
            continue;
        }
        let roots = roots_univariate(&res.coeffs)?;
        let mut warnings: Vec<String> = roots
            .clusters
            .iter()
            .map(|c| format!("{} resultant roots coincide near x = {}", c.len(), roots.roots[c[0]]))
            .collect();
        let mut points = Vec::with_capacity(m * n);
        for &x in &roots.roots {
            let a = y_coefficients(&g1, x);
            let ys = roots_univariate(&a)
                .map(|r| r.roots)
                .or_else(|e| match e {
                    CurveError::NonConvergence { partial } => Ok(partial),
                    other => Err(other),
                })?;
            let b = y_coefficients(&g2, x);
            let y = ys
                .into_iter()
                .min_by(|p, q| horner(&b, *p).norm().total_cmp(&horner(&b, *q).norm()))
                .expect("degree at least one");
            let (x, y) = polish(&g1, &g2, x, y);
            let local = [x, y, C64::new(1.0, 0.0)];
            let coords: Vec<C64> = (0..3).map(|j| (0..3).map(|k| u[j][k] * local[k]).sum()).collect();
            let p = ProjPoint::new(coords).normalized();
            let r1 = f1.relative_value(&p.coords)?;
            let r2 = f2.relative_value(&p.coords)?;
            if r1 > POINT_TOLERANCE || r2 > POINT_TOLERANCE {
                warnings.push(format!("point {:?} has residuals {r1:.1e}, {r2:.1e}", p.coords));
            }
            points.push(p);
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i].approx_eq(&points[j], COINCIDENCE_TOLERANCE) {
                    warnings.push(format!("points {i} and {j} coincide; possible multiple intersection"));
                }
            }
        }
        return Ok(IntersectionSet { points, multiplicity_warnings: warnings });
    }
    Err(CurveError::IntersectionFailed(format!("{last_reason} after {ATTEMPTS} coordinate changes")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(&[u32], f64)], deg: u32) -> HomogeneousPoly<C64> {
        HomogeneousPoly::from_terms(3, deg, terms.iter().map(|(e, c)| (e.to_vec(), C64::new(*c, 0.0)))).unwrap()
    }

    #[test]
    fn sylvester_matches_root_products() {
        // (z−1)(z−2) and (z−3): resultant = (1−3)(2−3) = 2.
        let p = [C64::new(2.0, 0.0), C64::new(-3.0, 0.0), C64::new(1.0, 0.0)];
        let q = [C64::new(-3.0, 0.0), C64::new(1.0, 0.0)];
        assert!((sylvester_resultant(&p, &q) - C64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn circle_and_line() {
        let circle = poly(&[(&[2, 0, 0], 1.0), (&[0, 2, 0], 1.0), (&[0, 0, 2], -1.0)], 2);
        let line = poly(&[(&[0, 1, 0], 1.0)], 1);
        let set = intersect_plane_curves(&circle, &line, 5).unwrap();
        assert_eq!(set.len(), 2);
        for want in [[1.0, 0.0, 1.0], [-1.0, 0.0, 1.0]] {
            let w = ProjPoint::new(want.iter().map(|&v| C64::new(v, 0.0)).collect());
            assert!(set.points.iter().any(|p| p.approx_eq(&w, 1e-10)));
        }
        assert!(set.multiplicity_warnings.is_empty());
        let js = set.to_json();
        assert_eq!(js["points"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn common_component_detected() {
        let l = poly(&[(&[1, 0, 0], 1.0), (&[0, 1, 0], 2.0)], 1);
        let q = l.try_mul(&poly(&[(&[0, 0, 1], 1.0), (&[1, 0, 0], -1.0)], 1)).unwrap();
        assert!(matches!(intersect_plane_curves(&l, &q, 1), Err(CurveError::CommonComponent)));
    }

    #[test]
    fn tangent_line_warns() {
        let circle = poly(&[(&[2, 0, 0], 1.0), (&[0, 2, 0], 1.0), (&[0, 0, 2], -1.0)], 2);
        let tangent = poly(&[(&[1, 0, 0], 1.0), (&[0, 0, 1], -1.0)], 1);
        let set = intersect_plane_curves(&circle, &tangent, 2).unwrap();
        assert_eq!(set.len(), 2);
        assert!(!set.multiplicity_warnings.is_empty());
    }
}
