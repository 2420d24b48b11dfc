//! Local parametrizations of characteristic varieties.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::intersect::resultant_polynomial;
use super::roots::{horner, roots_univariate};
use super::CurveError;
use crate::dixon::{dixon_series, DixonSeries};
use crate::polyhom::{HomogeneousPoly, ProjPoint};
use crate::scalar::C64;

const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;
/// Order of the Dixon series behind the Fermat chart; its validated radius is 1.
pub const FERMAT_SERIES_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    LaplaceQuadric,
    WaveQuadric,
    FermatCubic,
    /// `z₁ z₂ ⋯ z_{n−1} = z_n^{n−1}` in `n` variables.
    ProductHypersurface(usize),
}

impl FromStr for Preset {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, CurveError> {
        let s = s.trim();
        match s {
            "laplace_quadric" | "laplace" => return Ok(Preset::LaplaceQuadric),
            "wave_quadric" | "wave" => return Ok(Preset::WaveQuadric),
            "fermat_cubic" | "fermat" => return Ok(Preset::FermatCubic),
            _ => {}
        }
        let arg = s
            .strip_prefix("product_hypersurface")
            .or_else(|| s.strip_prefix("product"))
            .map(|rest| rest.trim_start_matches(['(', ':', '=']).trim_end_matches(')'));
        if let Some(arg) = arg {
            if let Ok(n) = arg.parse::<usize>() {
                if n >= 3 {
                    return Ok(Preset::ProductHypersurface(n));
                }
            }
        }
        Err(CurveError::UnknownPreset(s.to_string()))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::LaplaceQuadric => write!(f, "laplace_quadric"),
            Preset::WaveQuadric => write!(f, "wave_quadric"),
            Preset::FermatCubic => write!(f, "fermat_cubic"),
            Preset::ProductHypersurface(n) => write!(f, "product_hypersurface({n})"),
        }
    }
}

/// Where a chart's parameters may range.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    /// Angle parameters; the chart is entire in each of them.
    Angles { dim: usize },
    /// A disc in ℂ.
    Disc { center: C64, radius: f64 },
    /// `(ℂ^×)^dim`.
    PuncturedPlanes { dim: usize },
}

/// The closed loop (or interval) used by default for integral representations.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IntegrationPath {
    /// Each real node coordinate in `[−π, π]` is used directly as a parameter.
    Angles { dim: usize },
    /// Nodes in `[a, b]` used directly as a real parameter.
    Interval { a: f64, b: f64 },
    /// `t = center + radius·e^{iθ}` for nodes `θ ∈ [−π, π]`.
    Loop { center: C64, radius: f64 },
    /// `t_j = e^{iθ_j}` for nodes `θ ∈ [−π, π]^dim`.
    UnitTorus { dim: usize },
}

impl IntegrationPath {
    pub fn dim(&self) -> usize {
        match self {
            IntegrationPath::Angles { dim } | IntegrationPath::UnitTorus { dim } => *dim,
            IntegrationPath::Interval { .. } | IntegrationPath::Loop { .. } => 1,
        }
    }

    pub fn is_periodic(&self) -> bool {
        !matches!(self, IntegrationPath::Interval { .. })
    }

    /// Node coordinate ranges.
    pub fn bounds(&self) -> Vec<(f64, f64)> {
        match self {
            IntegrationPath::Interval { a, b } => vec![(*a, *b)],
            _ => vec![(-PI, PI); self.dim()],
        }
    }

    /// Chart parameters for a quadrature node.
    pub fn param(&self, node: &[f64]) -> Vec<C64> {
        match self {
            IntegrationPath::Angles { .. } => node.iter().map(|&u| C64::new(u, 0.0)).collect(),
            IntegrationPath::Interval { .. } => vec![C64::new(node[0], 0.0)],
            IntegrationPath::Loop { center, radius } => vec![center + C64::from_polar(*radius, node[0])],
            IntegrationPath::UnitTorus { .. } => node.iter().map(|&th| C64::from_polar(1.0, th)).collect(),
        }
    }
}

#[derive(Clone, Debug)]
enum ChartKind {
    Laplace,
    Wave,
    Fermat(Arc<DixonSeries>),
    Product(usize),
    GenericPlane(Arc<GenericPlane>),
}

/// A parametrization `t ↦ [ξ(t)]` of a patch of `{F = 0}`.
#[derive(Clone, Debug)]
pub struct CurveChart {
    pub name: String,
    pub symbol: HomogeneousPoly<C64>,
    pub domain: Domain,
    pub path: IntegrationPath,
    kind: ChartKind,
}

fn exps(v: &[u32]) -> Vec<u32> {
    v.to_vec()
}

fn symbol_for(preset: Preset) -> HomogeneousPoly<C64> {
    let one = C64::new(1.0, 0.0);
    match preset {
        Preset::LaplaceQuadric => HomogeneousPoly::from_terms(
            3,
            2,
            [(exps(&[2, 0, 0]), one), (exps(&[0, 2, 0]), one), (exps(&[0, 0, 2]), one)],
        ),
        Preset::WaveQuadric => HomogeneousPoly::from_terms(
            4,
            2,
            [
                (exps(&[2, 0, 0, 0]), one),
                (exps(&[0, 2, 0, 0]), one),
                (exps(&[0, 0, 2, 0]), one),
                (exps(&[0, 0, 0, 2]), -one),
            ],
        ),
        Preset::FermatCubic => HomogeneousPoly::from_terms(
            3,
            3,
            [(exps(&[3, 0, 0]), one), (exps(&[0, 3, 0]), one), (exps(&[0, 0, 3]), one)],
        ),
        Preset::ProductHypersurface(n) => {
            let mut prod = vec![1u32; n];
            prod[n - 1] = 0;
            let mut power = vec![0u32; n];
            power[n - 1] = (n - 1) as u32;
            HomogeneousPoly::from_terms(n, (n - 1) as u32, [(prod, one), (power, -one)])
        }
    }
    .expect("preset symbols are homogeneous")
}

/// The chart for a named preset.
pub fn preset_chart(preset: Preset) -> CurveChart {
    let symbol = symbol_for(preset);
    let name = preset.to_string();
    match preset {
        Preset::LaplaceQuadric => CurveChart {
            name,
            symbol,
            domain: Domain::Angles { dim: 1 },
            path: IntegrationPath::Angles { dim: 1 },
            kind: ChartKind::Laplace,
        },
        Preset::WaveQuadric => CurveChart {
            name,
            symbol,
            domain: Domain::Angles { dim: 2 },
            path: IntegrationPath::Angles { dim: 2 },
            kind: ChartKind::Wave,
        },
        Preset::FermatCubic => {
            let series = dixon_series(FERMAT_SERIES_ORDER).expect("positive order");
            let radius = series.validated_radius();
            CurveChart {
                name,
                symbol,
                domain: Domain::Disc { center: C64::new(0.0, 0.0), radius },
                path: IntegrationPath::Interval { a: -radius, b: radius },
                kind: ChartKind::Fermat(Arc::new(series)),
            }
        }
        Preset::ProductHypersurface(n) => CurveChart {
            name,
            symbol,
            domain: Domain::PuncturedPlanes { dim: n - 2 },
            path: IntegrationPath::UnitTorus { dim: n - 2 },
            kind: ChartKind::Product(n),
        },
    }
}

impl CurveChart {
    /// Number of variables of the symbol.
    pub fn nvars(&self) -> usize {
        self.symbol.nvars()
    }

    /// Number of chart parameters (the intrinsic dimension of the patch).
    pub fn param_dim(&self) -> usize {
        match &self.kind {
            ChartKind::Laplace | ChartKind::Fermat(_) | ChartKind::GenericPlane(_) => 1,
            ChartKind::Wave => 2,
            ChartKind::Product(n) => n - 2,
        }
    }

    pub fn contains(&self, t: &[C64]) -> bool {
        if t.len() != self.param_dim() || t.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return false;
        }
        match &self.domain {
            Domain::Angles { .. } => true,
            Domain::Disc { center, radius } => (t[0] - center).norm() <= radius * (1.0 + 1e-12),
            Domain::PuncturedPlanes { .. } => t.iter().all(|z| z.norm() > 0.0),
        }
    }

    fn check(&self, t: &[C64]) -> Result<(), CurveError> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(CurveError::OutsideDomain(format!("parameter {t:?} is outside the domain of {}", self.name)))
        }
    }

    /// The chart point in its defining coordinates.
    pub fn point(&self, t: &[C64]) -> Result<ProjPoint<C64>, CurveError> {
        self.check(t)?;
        let i = C64::new(0.0, 1.0);
        let one = C64::new(1.0, 0.0);
        let coords = match &self.kind {
            ChartKind::Laplace => {
                let w = (i * t[0]).exp();
                let w2 = w * w;
                vec![i * (w2 + one), w2 - one, w * 2.0]
            }
            ChartKind::Wave => {
                let a = (i * t[0]).exp();
                let b = (i * t[1]).exp();
                let (a2, b2) = (a * a, b * b);
                vec![(a2 - one) * (b2 + one), -i * (a2 - one) * (b2 - one), i * 2.0 * (a2 + one) * b, i * 4.0 * a * b]
            }
            ChartKind::Fermat(series) => {
                let (s, c) = series.eval_unchecked(t[0]);
                vec![c, s, -one]
            }
            ChartKind::Product(n) => {
                let mut v: Vec<C64> = t.to_vec();
                let prod: C64 = t.iter().product();
                v.push(prod.inv());
                v.push(one);
                debug_assert_eq!(v.len(), *n);
                v
            }
            ChartKind::GenericPlane(g) => vec![t[0], g.eta(t[0])?, one],
        };
        Ok(ProjPoint::new(coords))
    }

    /// The representative used inside integral formulas. For the quadrics
    /// this divides out the factor that turns the linear form into the
    /// classical `z + ix cos u + iy sin u` (resp. `t + x sin u cos v + …`).
    pub fn integration_point(&self, t: &[C64]) -> Result<ProjPoint<C64>, CurveError> {
        self.check(t)?;
        let i = C64::new(0.0, 1.0);
        let one = C64::new(1.0, 0.0);
        match &self.kind {
            ChartKind::Laplace => Ok(ProjPoint::new(vec![i * t[0].cos(), i * t[0].sin(), one])),
            ChartKind::Wave => {
                let (u, v) = (t[0], t[1]);
                Ok(ProjPoint::new(vec![u.sin() * v.cos(), u.sin() * v.sin(), u.cos(), one]))
            }
            _ => self.point(t),
        }
    }

    /// `|F(chart(t))| / (‖F‖₁ ‖chart(t)‖∞^deg)`.
    pub fn residual(&self, t: &[C64]) -> Result<f64, CurveError> {
        let p = self.point(t)?;
        Ok(self.symbol.relative_value(&p.coords)?)
    }

    /// `count` low-discrepancy parameter samples inside the domain, rotated
    /// by a seeded offset.
    pub fn sample_params(&self, count: usize, seed: u64) -> Vec<Vec<C64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = self.param_dim();
        let offsets: Vec<f64> = (0..2 * dim.max(1)).map(|_| rng.gen::<f64>()).collect();
        // Kronecker sequence steps: fractional parts of square roots of primes.
        let steps = [
            0.414_213_562_373_095,
            0.732_050_807_568_877,
            0.236_067_977_499_79,
            0.645_751_311_064_591,
            0.316_624_790_355_4,
            0.605_551_275_463_99,
            0.123_105_625_617_66,
            0.358_898_943_540_67,
        ];
        let kron = |k: usize, j: usize| ((k as f64 + 0.5) * steps[j % steps.len()] + offsets[j]).fract();
        (0..count)
            .map(|k| match &self.domain {
                Domain::Angles { dim } if *dim == 1 => {
                    vec![C64::new(-PI + 2.0 * PI * ((k as f64 + offsets[0]) / count as f64), 0.0)]
                }
                Domain::Angles { dim } => {
                    let mut v = vec![C64::new(-PI + 2.0 * PI * ((k as f64 + offsets[0]) / count as f64), 0.0)];
                    v.extend((1..*dim).map(|j| C64::new(-PI + 2.0 * PI * kron(k, j), 0.0)));
                    v
                }
                Domain::Disc { center, radius } => {
                    let r = 0.9 * radius * ((k as f64 + 0.5) / count as f64).sqrt();
                    vec![center + C64::from_polar(r, k as f64 * GOLDEN_ANGLE + 2.0 * PI * offsets[0])]
                }
                Domain::PuncturedPlanes { dim } => (0..*dim)
                    .map(|j| {
                        let theta = 2.0 * PI * kron(k, j);
                        let modulus = 1.0 + 0.5 * kron(k, dim + j);
                        C64::from_polar(modulus, theta)
                    })
                    .collect(),
            })
            .collect()
    }
}

/// Data for `t ↦ [t, η(t), 1]` with `η(t)` a tracked root of `F(t, η, 1)`.
#[derive(Clone, Debug)]
pub struct GenericPlane {
    f: HomogeneousPoly<C64>,
    pub base: C64,
    pub base_eta: C64,
    pub radius: f64,
    pub branch_points: Vec<C64>,
}

/// Ascending η-coefficients of `F(t, η, 1)` and of `∂F/∂t (t, η, 1)`.
fn eta_coefficients(f: &HomogeneousPoly<C64>, t: C64) -> (Vec<C64>, Vec<C64>) {
    let n = f.degree() as usize;
    let mut a = vec![C64::new(0.0, 0.0); n + 1];
    let mut at = vec![C64::new(0.0, 0.0); n + 1];
    for (m, c) in f.terms() {
        let (e0, e1) = (m.exps[0] as i32, m.exps[1] as usize);
        a[e1] += c * t.powi(e0);
        if e0 > 0 {
            at[e1] += c * (e0 as f64) * t.powi(e0 - 1);
        }
    }
    (a, at)
}

fn derivative_coeffs(a: &[C64]) -> Vec<C64> {
    a.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// Root with the smallest `|Im|`; ties go to the smallest argument in `[0, 2π)`.
fn branch_rule(roots: &[C64]) -> C64 {
    let arg = |z: &C64| {
        let a = z.arg();
        if a < -1e-15 { a + 2.0 * PI } else { a.max(0.0) }
    };
    let min_im = roots.iter().map(|z| z.im.abs()).fold(f64::INFINITY, f64::min);
    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    *roots
        .iter()
        .filter(|z| z.im.abs() <= min_im + 1e-9 * scale)
        .min_by(|a, b| arg(a).total_cmp(&arg(b)))
        .expect("at least one root")
}

impl GenericPlane {
    fn newton(&self, t: C64, mut eta: C64) -> Option<C64> {
        for _ in 0..30 {
            let (a, _) = eta_coefficients(&self.f, t);
            let da = derivative_coeffs(&a);
            let step = horner(&a, eta) / horner(&da, eta);
            if !step.re.is_finite() || !step.im.is_finite() {
                return None;
            }
            eta -= step;
            if step.norm() <= 1e-15 * eta.norm().max(1.0) {
                return Some(eta);
            }
        }
        let (a, _) = eta_coefficients(&self.f, t);
        super::roots::residual_ok(&a, eta).then_some(eta)
    }

    /// `η(t)`, continued along the segment from the base point.
    pub fn eta(&self, t: C64) -> Result<C64, CurveError> {
        let dist = (t - self.base).norm();
        let steps = ((dist / (0.02 * self.radius)).ceil() as usize).max(4);
        let mut cur_t = self.base;
        let mut eta = self.base_eta;
        for k in 1..=steps {
            let next_t = self.base + (t - self.base) * (k as f64 / steps as f64);
            let (a, at) = eta_coefficients(&self.f, cur_t);
            let slope = -horner(&at, eta) / horner(&derivative_coeffs(&a), eta);
            let predicted = if slope.re.is_finite() && slope.im.is_finite() { eta + slope * (next_t - cur_t) } else { eta };
            eta = self
                .newton(next_t, predicted)
                .ok_or_else(|| CurveError::Tracking(format!("Newton failed at t = {next_t}")))?;
            cur_t = next_t;
        }
        Ok(eta)
    }
}

/// Chart `t ↦ [t, η(t), 1]` over a disc around a base point that avoids the
/// branch points of `η`.
pub fn generic_plane_chart(f: &HomogeneousPoly<C64>, seed: u64) -> Result<CurveChart, CurveError> {
    if f.nvars() != 3 || f.degree() == 0 {
        return Err(CurveError::InvalidPolynomial("generic chart needs a plane curve of positive degree".into()));
    }
    let n = f.degree() as usize;
    let mut lead_exps = vec![0u32; 3];
    lead_exps[1] = n as u32;
    if f.coeff(&lead_exps).norm() <= 1e-12 * f.norm_inf() {
        return Err(CurveError::InvalidPolynomial("coefficient of y^deg vanishes; change coordinates first".into()));
    }
    let branch_points = if n >= 2 {
        let disc = resultant_polynomial(
            |t| {
                let (a, _) = eta_coefficients(f, t);
                let da = derivative_coeffs(&a);
                (a, da)
            },
            n * (n - 1),
            1.0,
        )?;
        let scale = disc.values_scale;
        let coeffs = disc.coeffs;
        let max_c = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max_c <= 1e-11 * scale {
            return Err(CurveError::InvalidPolynomial("symbol is not squarefree".into()));
        }
        let top = coeffs.iter().rposition(|c| c.norm() > 1e-12 * max_c).unwrap_or(0);
        if top == 0 {
            Vec::new()
        } else {
            roots_univariate(&coeffs[..=top])?.roots
        }
    } else {
        Vec::new()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nearest = |b: C64| branch_points.iter().map(|p| (p - b).norm()).fold(f64::INFINITY, f64::min);
    let mut base = C64::new(0.0, 0.0);
    let mut attempts = 0;
    while nearest(base) < 1e-3 {
        attempts += 1;
        if attempts > 3 {
            return Err(CurveError::BranchPoint(format!("no admissible base point after 3 shifts (seed {seed})")));
        }
        base = C64::from_polar(0.5 * rng.gen::<f64>() + 0.1, 2.0 * PI * rng.gen::<f64>());
    }
    let radius = (0.9 * nearest(base)).min(2.0);
    let (a, _) = eta_coefficients(f, base);
    let base_eta = branch_rule(&roots_univariate(&a)?.roots);
    let name = format!("generic_plane(base={base})");
    let plane = GenericPlane { f: f.clone(), base, base_eta, radius, branch_points };
    Ok(CurveChart {
        name,
        symbol: f.clone(),
        domain: Domain::Disc { center: base, radius },
        path: IntegrationPath::Loop { center: base, radius: 0.5 * radius },
        kind: ChartKind::GenericPlane(Arc::new(plane)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn preset_names() {
        assert_eq!("laplace_quadric".parse::<Preset>().unwrap(), Preset::LaplaceQuadric);
        assert_eq!("product_hypersurface(4)".parse::<Preset>().unwrap(), Preset::ProductHypersurface(4));
        assert!("nope".parse::<Preset>().is_err());
        assert!("product_hypersurface(2)".parse::<Preset>().is_err());
    }

    #[test]
    fn laplace_at_zero() {
        let ch = preset_chart(Preset::LaplaceQuadric);
        let p = ch.point(&[c(0.0, 0.0)]).unwrap();
        assert!((p.coords[0] - c(0.0, 2.0)).norm() < 1e-15);
        assert!(p.coords[1].norm() < 1e-15);
        assert!((p.coords[2] - c(2.0, 0.0)).norm() < 1e-15);
        assert!(ch.residual(&[c(0.0, 0.0)]).unwrap() < 1e-15);
    }

    #[test]
    fn wave_chart_on_quadric() {
        let ch = preset_chart(Preset::WaveQuadric);
        assert!(ch.residual(&[c(0.5, 0.0), c(2.0, 0.0)]).unwrap() <= 1e-12);
        assert!(ch.residual(&[c(0.5, 0.3), c(-1.0, 0.2)]).unwrap() <= 1e-12);
        let p = ch.point(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let q = ch.integration_point(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(p.approx_eq(&q, 1e-12));
    }

    #[test]
    fn product_example() {
        let ch = preset_chart(Preset::ProductHypersurface(4));
        let p = ch.point(&[c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        let want = [c(2.0, 0.0), c(3.0, 0.0), c(1.0 / 6.0, 0.0), c(1.0, 0.0)];
        for (a, b) in p.coords.iter().zip(want) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!(ch.symbol.evaluate(&p.coords).unwrap().norm() < 1e-15);
    }

    #[test]
    fn generic_chart_branch_rule() {
        let laplace = preset_chart(Preset::LaplaceQuadric).symbol;
        let g = generic_plane_chart(&laplace, 0).unwrap();
        let p = g.point(&[c(0.0, 0.0)]).unwrap();
        assert!((p.coords[1] - c(0.0, 1.0)).norm() < 1e-14);
        let fermat = preset_chart(Preset::FermatCubic).symbol;
        let g = generic_plane_chart(&fermat, 0).unwrap();
        let p = g.point(&[c(0.0, 0.0)]).unwrap();
        assert!((p.coords[1] - c(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn generic_chart_stays_on_curve() {
        let fermat = preset_chart(Preset::FermatCubic).symbol;
        let g = generic_plane_chart(&fermat, 3).unwrap();
        for t in g.sample_params(100, 11) {
            assert!(g.residual(&t).unwrap() <= 1e-10);
        }
        assert!(g.point(&[c(5.0, 0.0)]).is_err());
    }
}
