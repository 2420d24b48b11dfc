//! Bases of `ker F(∂)` in degree `m` made of `m`-th powers of linear forms
//! `(ξᵢ·x)^m` with `ξᵢ` on the characteristic variety.

use serde_json::{json, Value};
use thiserror::Error;

use crate::curves::{CurveChart, CurveError};
use crate::kernelspace::kernel_dimension_predicted;
use crate::linear::{condition_number, determinant, vec_norm, Matrix, PivotedQr};
use crate::polyhom::{HomogeneousPoly, PolyError, ProjPoint};
use crate::quadrature::QuadratureRule;
use crate::scalar::C64;

/// Relative pivot threshold for the rank of the power coefficient matrix.
pub const RANK_TOLERANCE: f64 = 1e-10;
/// Relative residual allowed when expanding a kernel element.
pub const EXPANSION_TOLERANCE: f64 = 1e-6;
/// Relative bound on `‖F(∂)P‖` for accepting `P` as a kernel element.
pub const KERNEL_TOLERANCE: f64 = 1e-6;
const RESAMPLES: u64 = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PowerBasisError {
    #[error("sampled points give rank {rank}, expected {expected}, after {attempts} attempts")]
    Degenerate { points: Vec<ProjPoint<C64>>, rank: usize, expected: usize, attempts: usize },
    #[error("polynomial is not in the kernel: ‖F(∂)P‖ = {residual:.3e} (scale {scale:.3e})")]
    NotInKernel { residual: f64, scale: f64 },
    #[error("expansion residual {residual:.3e} exceeds tolerance; basis ill-conditioned")]
    IllConditioned { residual: f64 },
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug)]
pub struct PowerBasis {
    pub f: HomogeneousPoly<C64>,
    pub m: u32,
    /// Chart parameters of the points.
    pub params: Vec<Vec<C64>>,
    /// Points scaled so their largest coordinate is 1.
    pub points: Vec<ProjPoint<C64>>,
    pub powers: Vec<HomogeneousPoly<C64>>,
    pub r: usize,
    /// Seed that produced the accepted sample.
    pub seed: u64,
    pub resamples: usize,
    qr: PivotedQr,
    columns: Matrix<C64>,
}

fn falling_factorial(m: u32, n: u32) -> f64 {
    (0..n).map(|k| (m - k) as f64).product()
}

/// `‖F(∂)P‖∞` and the scale `‖F‖₁ ‖P‖∞ m!/(m−n)!` it is compared with.
pub fn kernel_residual(f: &HomogeneousPoly<C64>, p: &HomogeneousPoly<C64>) -> Result<(f64, f64), PolyError> {
    let (m, n) = (p.degree(), f.degree());
    if m < n {
        return Ok((0.0, 1.0));
    }
    let image = f.apply_diff_operator(p)?;
    let scale = (f.norm_1() * p.norm_inf() * falling_factorial(m, n)).max(f64::MIN_POSITIVE);
    Ok((image.norm_inf(), scale))
}

/// Builds `r = dim ker F(∂)|_m` powers from chart samples, resampling with
/// shifted seeds until their coefficient matrix has full rank.
pub fn build_power_basis(
    f: &HomogeneousPoly<C64>,
    m: u32,
    chart: &CurveChart,
    seed: u64,
) -> Result<PowerBasis, PowerBasisError> {
    if chart.nvars() != f.nvars() {
        return Err(PowerBasisError::Shape(format!(
            "symbol has {} variables, chart has {}",
            f.nvars(),
            chart.nvars()
        )));
    }
    let d = f.nvars();
    let r = kernel_dimension_predicted(d, f.degree(), m);
    let mut last = None;
    for attempt in 0..=RESAMPLES {
        let s = seed.wrapping_add(attempt);
        let params = chart.sample_params(r, s);
        let points: Vec<ProjPoint<C64>> = params
            .iter()
            .map(|t| chart.point(t).map(|p| p.normalized()))
            .collect::<Result<_, _>>()?;
        let powers: Vec<HomogeneousPoly<C64>> = points.iter().map(|p| p.power(m)).collect();
        let columns = Matrix::from_columns(powers.iter().map(HomogeneousPoly::to_dense).collect())
            .map_err(|e| PowerBasisError::Shape(e.to_string()))?;
        let qr = PivotedQr::new(&columns);
        let rank = qr.numerical_rank(RANK_TOLERANCE * columns.norm_inf());
        if rank == r {
            return Ok(PowerBasis {
                f: f.clone(),
                m,
                params,
                points,
                powers,
                r,
                seed: s,
                resamples: attempt as usize,
                qr,
                columns,
            });
        }
        last = Some((points, rank));
    }
    let (points, rank) = last.expect("at least one attempt");
    Err(PowerBasisError::Degenerate { points, rank, expected: r, attempts: RESAMPLES as usize + 1 })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub coeffs: Vec<C64>,
    /// `‖Σ pᵢ powersᵢ − P‖₂ / ‖P‖₂`.
    pub relative_residual: f64,
}

impl PowerBasis {
    /// `r × dim` matrix whose rows are the coefficient vectors of the powers.
    pub fn coefficient_matrix(&self) -> Matrix<C64> {
        self.columns.transpose()
    }

    /// Largest `‖F(∂)Pᵢ‖∞ / scale` over the basis powers.
    pub fn max_kernel_residual(&self) -> f64 {
        self.powers
            .iter()
            .map(|p| kernel_residual(&self.f, p).map(|(r, s)| r / s).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    fn solve_dense(&self, target: &[C64]) -> Result<Expansion, PowerBasisError> {
        let coeffs = self.qr.least_squares(target, self.r);
        let back = self.columns.mul_vec(&coeffs).map_err(|e| PowerBasisError::Shape(e.to_string()))?;
        let diff: Vec<C64> = back.iter().zip(target).map(|(a, b)| a - b).collect();
        let norm = vec_norm(target);
        let relative_residual = if norm == 0.0 { vec_norm(&diff) } else { vec_norm(&diff) / norm };
        if relative_residual > EXPANSION_TOLERANCE {
            return Err(PowerBasisError::IllConditioned { residual: relative_residual });
        }
        Ok(Expansion { coeffs, relative_residual })
    }

    /// Coefficients `p` with `Σ pᵢ (ξᵢ·x)^m = P`, for `P` in the kernel.
    pub fn expand_in_basis(&self, p: &HomogeneousPoly<C64>) -> Result<Expansion, PowerBasisError> {
        if p.nvars() != self.f.nvars() || p.degree() != self.m {
            return Err(PowerBasisError::Shape(format!(
                "expected degree {} in {} variables, got degree {} in {}",
                self.m,
                self.f.nvars(),
                p.degree(),
                p.nvars()
            )));
        }
        let (residual, scale) = kernel_residual(&self.f, p)?;
        if residual > KERNEL_TOLERANCE * scale {
            return Err(PowerBasisError::NotInKernel { residual, scale });
        }
        self.solve_dense(&p.to_dense())
    }

    /// `μ(t)`: coordinates of `(ξ(t)·x)^m` in the basis, with `ξ(t)` scaled
    /// to unit largest coordinate like the basis points.
    pub fn mu_coordinates(&self, chart: &CurveChart, t: &[C64]) -> Result<Vec<C64>, PowerBasisError> {
        let point = chart.point(t)?.normalized();
        Ok(self.expand_in_basis(&point.power(self.m))?.coeffs)
    }

    pub fn to_json(&self) -> Value {
        let pair = |c: &C64| json!([c.re, c.im]);
        json!({
            "m": self.m,
            "r": self.r,
            "seed": self.seed,
            "resamples": self.resamples,
            "points": self.points.iter().map(|p| p.coords.iter().map(pair).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "coefficient_matrix": self.coefficient_matrix().to_json_rows(),
            "max_kernel_residual": self.max_kernel_residual(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct MomentMatrix {
    /// `θ[j][i] = ∫ μᵢ(u) u^j e^{s₀u} du`.
    pub matrix: Matrix<C64>,
    pub determinant: C64,
    /// 1-norm condition number; infinite when singular.
    pub condition: f64,
    /// Product of row 2-norms, an upper bound for `|det|`.
    pub hadamard_bound: f64,
}

/// Moments of `r` functions `μ(u)` against `u^j e^{s₀u}`, `j < r`, on
/// `[a, b]` by `nodes`-point Gauss–Legendre quadrature.
pub fn moment_matrix(mu: impl Fn(f64) -> Vec<C64>, r: usize, a: f64, b: f64, s0: f64, nodes: usize) -> MomentMatrix {
    let rule = QuadratureRule::gauss_legendre(nodes.max(2), a, b);
    let mut matrix = Matrix::<C64>::zeros(r, r);
    for (x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let u = x[0];
        let values = mu(u);
        let damp = (s0 * u).exp() * w;
        for j in 0..r {
            let l = u.powi(j as i32) * damp;
            for (i, v) in values.iter().take(r).enumerate() {
                matrix[(j, i)] += v * l;
            }
        }
    }
    let det = determinant(&matrix).expect("square");
    let condition = condition_number(&matrix).expect("square");
    let hadamard_bound = (0..r).map(|j| vec_norm(matrix.row(j))).product();
    MomentMatrix { matrix, determinant: det, condition, hadamard_bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{preset_chart, Preset};
    use crate::polyhom::HomogeneousPoly;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn laplace_counts() {
        let chart = preset_chart(Preset::LaplaceQuadric);
        for (m, r) in [(1, 3), (2, 5), (3, 7)] {
            let b = build_power_basis(&chart.symbol, m, &chart, 1).unwrap();
            assert_eq!(b.r, r);
            assert!(b.max_kernel_residual() <= 1e-8);
        }
    }

    #[test]
    fn fermat_cubic_rank_nine() {
        let chart = preset_chart(Preset::FermatCubic);
        let b = build_power_basis(&chart.symbol, 3, &chart, 7).unwrap();
        assert_eq!(b.r, 9);
    }

    #[test]
    fn expansions() {
        let chart = preset_chart(Preset::LaplaceQuadric);
        let b = build_power_basis(&chart.symbol, 2, &chart, 3).unwrap();
        let e = b.expand_in_basis(&b.powers[0]).unwrap();
        assert!((e.coeffs[0] - c(1.0)).norm() < 1e-10);
        assert!(e.coeffs[1..].iter().all(|z| z.norm() < 1e-10));
        let harmonic = HomogeneousPoly::from_terms(3, 2, [(vec![2, 0, 0], c(1.0)), (vec![0, 2, 0], c(-1.0))]).unwrap();
        assert!(b.expand_in_basis(&harmonic).unwrap().relative_residual <= 1e-8);
        let x2 = HomogeneousPoly::from_terms(3, 2, [(vec![2, 0, 0], c(1.0))]).unwrap();
        assert!(matches!(b.expand_in_basis(&x2), Err(PowerBasisError::NotInKernel { .. })));
    }

    #[test]
    fn mu_reconstructs_and_is_independent() {
        let chart = preset_chart(Preset::LaplaceQuadric);
        let b = build_power_basis(&chart.symbol, 2, &chart, 3).unwrap();
        let mu0 = b.mu_coordinates(&chart, &b.params[0]).unwrap();
        assert!((mu0[0] - c(1.0)).norm() < 1e-10);
        let samples: Vec<Vec<C64>> = chart
            .sample_params(50, 99)
            .iter()
            .map(|t| b.mu_coordinates(&chart, t).unwrap())
            .collect();
        let m = Matrix::from_columns(samples).unwrap();
        let qr = PivotedQr::new(&m);
        assert_eq!(qr.numerical_rank(1e-10 * m.norm_inf()), b.r);
    }

    #[test]
    fn moment_examples() {
        let mm = moment_matrix(|u| vec![c(1.0), c(u)], 2, 0.0, 1.0, 0.0, 16);
        assert!((mm.determinant - c(1.0 / 12.0)).norm() < 1e-14);
        assert!((mm.matrix[(0, 1)] - c(0.5)).norm() < 1e-14);
        let pi = std::f64::consts::PI;
        // With s₀ = 0 the first row is (∫sin, ∫cos) = 0; a shifted s₀ fixes it.
        let mm = moment_matrix(|u| vec![c(u.sin()), c(u.cos())], 2, -pi, pi, 0.0, 32);
        assert!(mm.determinant.norm() <= 1e-12);
        let mm = moment_matrix(|u| vec![c(u.sin()), c(u.cos())], 2, -pi, pi, 1.0, 32);
        assert!(mm.determinant.norm() > 1e-3 * mm.hadamard_bound);
        let mm = moment_matrix(|u| vec![c(u), c(2.0 * u)], 2, 0.0, 1.0, 0.5, 16);
        assert!(mm.determinant.norm() <= 1e-10 * mm.hadamard_bound);
    }
}
