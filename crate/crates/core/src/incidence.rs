//! Syzygies among powers of linear forms, curves through point sets, the
//! Cayley–Bacharach family, and `L = AF + BG` decompositions.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::curves::{intersect_plane_curves, CurveError};
use crate::linear::{Field, LinearError, Matrix, TolerancePolicy};
use crate::polyhom::{monomial_basis, HomogeneousPoly, Monomial, PolyError, ProjPoint};
use crate::scalar::{Scalar, C64};

/// Relative pivot threshold for floating evaluation and power matrices.
pub const FLOAT_RANK_TOLERANCE: f64 = 1e-9;
/// Relative value below which a curve is taken to pass through a point.
pub const VANISHING_TOLERANCE: f64 = 1e-6;
const NONZERO_TRIALS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IncidenceError {
    #[error("{0}")]
    Shape(String),
    #[error("L = AF + BG has no solution (residual {residual:.3e})")]
    Infeasible { residual: f64 },
    #[error("could not build a test instance: {0}")]
    Instance(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linear(#[from] LinearError),
}

fn rank_policy() -> TolerancePolicy {
    TolerancePolicy::Relative(FLOAT_RANK_TOLERANCE)
}

fn monomial_value<K: Scalar>(mono: &Monomial, x: &[K]) -> K {
    mono.exps.iter().zip(x).fold(K::one(), |acc, (&e, xi)| {
        (0..e).fold(acc, |a, _| a * xi.clone())
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SyzygyReport<K: Scalar> {
    pub points: Vec<ProjPoint<K>>,
    pub power: u32,
    pub nullspace_dim: usize,
    /// A relation `Σ λᵢ (pᵢ·x)^r = 0`, preferring one with every `λᵢ ≠ 0`.
    pub syzygy: Option<Vec<K>>,
    pub all_coeffs_nonzero: bool,
    /// `‖Σ λᵢ (pᵢ·x)^r‖∞ / (‖λ‖∞ Σ‖(pᵢ·x)^r‖∞)` for the reported syzygy.
    pub relative_residual: f64,
}

/// Linear relations among the `r`-th powers of the linear forms of `points`.
pub fn serret_syzygy<K: Field>(points: &[ProjPoint<K>], r: u32) -> Result<SyzygyReport<K>, IncidenceError> {
    if points.len() < 2 {
        return Err(IncidenceError::Shape("need at least two points".into()));
    }
    let d = points[0].dim();
    if points.iter().any(|p| p.dim() != d) {
        return Err(IncidenceError::Shape("points live in different dimensions".into()));
    }
    let powers: Vec<HomogeneousPoly<K>> = points.iter().map(|p| p.power(r)).collect();
    let a = Matrix::from_columns(powers.iter().map(HomogeneousPoly::to_dense).collect())?;
    let result = a.rank_nullspace(&rank_policy());
    let nullspace = result.nullspace_basis;
    let mut report = SyzygyReport {
        points: points.to_vec(),
        power: r,
        nullspace_dim: nullspace.len(),
        syzygy: None,
        all_coeffs_nonzero: false,
        relative_residual: 0.0,
    };
    if nullspace.is_empty() {
        return Ok(report);
    }
    let nonzero = |v: &[K]| {
        let norm = v.iter().map(Scalar::magnitude).fold(0.0, f64::max);
        v.iter().all(|c| !c.is_negligible(1e-9 * norm))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut chosen = nullspace[0].clone();
    for trial in 0..NONZERO_TRIALS {
        let candidate: Vec<K> = if trial == 0 {
            nullspace[0].clone()
        } else {
            let weights: Vec<K> = nullspace.iter().map(|_| K::from_i64(rng.gen_range(1..=1000) * if rng.gen() { 1 } else { -1 })).collect();
            (0..points.len())
                .map(|i| nullspace.iter().zip(&weights).fold(K::zero(), |acc, (v, w)| acc + v[i].clone() * w.clone()))
                .collect()
        };
        if nonzero(&candidate) {
            chosen = candidate;
            report.all_coeffs_nonzero = true;
            break;
        }
    }
    let combo = a.mul_vec(&chosen)?;
    let lambda_norm = chosen.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    let power_norm: f64 = powers.iter().map(HomogeneousPoly::norm_inf).sum();
    let residual = combo.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    report.relative_residual = residual / (lambda_norm * power_norm).max(f64::MIN_POSITIVE);
    report.syzygy = Some(chosen);
    Ok(report)
}

/// Basis of the degree-`deg` forms vanishing at every point.
pub fn curves_through_points<K: Field>(deg: u32, points: &[ProjPoint<K>]) -> Result<Vec<HomogeneousPoly<K>>, IncidenceError> {
    let d = points
        .first()
        .map(ProjPoint::dim)
        .ok_or_else(|| IncidenceError::Shape("need at least one point".into()))?;
    let basis = monomial_basis(d, deg);
    let rows: Vec<Vec<K>> = points.iter().map(|p| basis.iter().map(|m| monomial_value(m, &p.coords)).collect()).collect();
    let a = Matrix::from_rows(rows)?;
    let result = a.rank_nullspace(&rank_policy());
    result
        .nullspace_basis
        .into_iter()
        .map(|v| HomogeneousPoly::from_dense(d, deg, &v).map_err(IncidenceError::from))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CbStatus {
    /// Every curve through the kept points vanishes at the removed ones
    /// (including the case where no such curve exists).
    Holds,
    /// Some curve fails to vanish and the removed points lie on a curve of
    /// degree `γ − 3`.
    ExceptionDetected,
    /// Some curve fails to vanish and no exceptional curve exists.
    Violated,
    /// The test curves would have degree ≤ 0 or nothing is left to test.
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CbReport {
    pub m: u32,
    pub n: u32,
    pub gamma: u32,
    pub seed: Option<u64>,
    pub points: Vec<ProjPoint<C64>>,
    pub removed: Vec<usize>,
    /// Degree `m + n − γ` of the test curves.
    pub test_degree: i64,
    pub test_curve_count: usize,
    /// Largest relative value of a test curve at a removed point.
    pub max_removed_value: f64,
    /// Whether the removed points lie on a curve of degree `γ − 3`.
    pub exception_curve_exists: Option<bool>,
    pub status: CbStatus,
    pub warnings: Vec<String>,
}

fn normalized_form(f: &HomogeneousPoly<C64>) -> HomogeneousPoly<C64> {
    let n = f.norm_inf();
    if n == 0.0 {
        f.clone()
    } else {
        f.scale(&C64::new(1.0 / n, 0.0))
    }
}

/// The Cayley–Bacharach test on a given intersection set with an explicit
/// choice of removed points.
pub fn cayley_bacharach_on_points(
    points: &[ProjPoint<C64>],
    m: u32,
    n: u32,
    gamma: u32,
    removed: &[usize],
) -> Result<CbReport, IncidenceError> {
    let test_degree = m as i64 + n as i64 - gamma as i64;
    let mut report = CbReport {
        m,
        n,
        gamma,
        seed: None,
        points: points.to_vec(),
        removed: removed.to_vec(),
        test_degree,
        test_curve_count: 0,
        max_removed_value: 0.0,
        exception_curve_exists: None,
        status: CbStatus::NotApplicable,
        warnings: Vec::new(),
    };
    if gamma < 3 || test_degree <= 0 || removed.is_empty() || removed.len() >= points.len() {
        return Ok(report);
    }
    if removed.iter().any(|&i| i >= points.len()) {
        return Err(IncidenceError::Shape("removed index out of range".into()));
    }
    let normalized: Vec<ProjPoint<C64>> = points.iter().map(ProjPoint::normalized).collect();
    let (gone, kept): (Vec<_>, Vec<_>) = normalized.iter().cloned().enumerate().partition(|(i, _)| removed.contains(i));
    let gone: Vec<ProjPoint<C64>> = gone.into_iter().map(|(_, p)| p).collect();
    let kept: Vec<ProjPoint<C64>> = kept.into_iter().map(|(_, p)| p).collect();
    let curves = curves_through_points(test_degree as u32, &kept)?;
    report.test_curve_count = curves.len();
    for c in &curves {
        let c = normalized_form(c);
        for p in &gone {
            report.max_removed_value = report.max_removed_value.max(c.relative_value(&p.coords)?);
        }
    }
    if report.max_removed_value <= VANISHING_TOLERANCE {
        report.status = CbStatus::Holds;
        return Ok(report);
    }
    let exceptional = curves_through_points(gamma - 3, &gone)?;
    let exists = !exceptional.is_empty();
    report.exception_curve_exists = Some(exists);
    report.status = if exists { CbStatus::ExceptionDetected } else { CbStatus::Violated };
    Ok(report)
}

/// Intersects the curves and removes `(γ−1)(γ−2)/2` seeded random points.
pub fn cayley_bacharach_check(
    f1: &HomogeneousPoly<C64>,
    f2: &HomogeneousPoly<C64>,
    gamma: u32,
    seed: u64,
) -> Result<CbReport, IncidenceError> {
    let (m, n) = (f1.degree(), f2.degree());
    if gamma < 3 || gamma > m + n {
        return Err(IncidenceError::Shape(format!("γ = {gamma} outside 3..={}", m + n)));
    }
    let set = intersect_plane_curves(f1, f2, seed)?;
    let e = ((gamma - 1) * (gamma - 2) / 2) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut removed: Vec<usize> = if e < set.len() { sample(&mut rng, set.len(), e).into_vec() } else { Vec::new() };
    removed.sort_unstable();
    let mut report = cayley_bacharach_on_points(&set.points, m, n, gamma, &removed)?;
    report.seed = Some(seed);
    report.warnings = set.multiplicity_warnings;
    Ok(report)
}

/// A form of degree `deg` in `d` variables with seeded coefficients whose
/// real and imaginary parts are uniform in `[−1, 1]`.
pub fn random_form(d: usize, deg: u32, seed: u64) -> HomogeneousPoly<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = monomial_basis(d, deg)
        .into_iter()
        .map(|mono| (mono.exps, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect::<Vec<_>>();
    HomogeneousPoly::from_terms(d, deg, terms).expect("basis monomials are homogeneous")
}

fn random_points(count: usize, seed: u64) -> Vec<ProjPoint<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| ProjPoint::new((0..3).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()))
        .collect()
}

/// Two cubics through 8 seeded points; removes their ninth intersection
/// point and tests every cubic through the chosen 8 there.
pub fn chasles_instance(seed: u64) -> Result<CbReport, IncidenceError> {
    let base = random_points(8, seed);
    let pencil = curves_through_points(3, &base)?;
    if pencil.len() != 2 {
        return Err(IncidenceError::Instance(format!("expected a pencil of cubics, found dimension {}", pencil.len())));
    }
    let set = intersect_plane_curves(&pencil[0], &pencil[1], seed)?;
    let distance = |p: &ProjPoint<C64>| {
        base.iter()
            .map(|b| {
                let (p, b) = (p.normalized(), b.normalized());
                p.coords.iter().zip(&b.coords).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    };
    let ninth = (0..set.len())
        .max_by(|&i, &j| distance(&set.points[i]).total_cmp(&distance(&set.points[j])))
        .ok_or_else(|| IncidenceError::Instance("empty intersection".into()))?;
    let mut report = cayley_bacharach_on_points(&set.points, 3, 3, 3, &[ninth])?;
    report.seed = Some(seed);
    report.warnings = set.multiplicity_warnings;
    Ok(report)
}

/// Cubics `L·Q` and `G` (seeded); the three points on the line `L` are
/// removed, so the conic test fails and the line is the exceptional curve.
pub fn collinear_removal_instance(seed: u64) -> Result<CbReport, IncidenceError> {
    let line = random_form(3, 1, seed);
    let conic = random_form(3, 2, seed.wrapping_add(1));
    let g = random_form(3, 3, seed.wrapping_add(2));
    let f1 = line.try_mul(&conic)?;
    let set = intersect_plane_curves(&f1, &g, seed)?;
    let line_n = normalized_form(&line);
    let removed: Vec<usize> = (0..set.len())
        .filter(|&i| line_n.relative_value(&set.points[i].coords).map(|v| v <= 1e-8).unwrap_or(false))
        .collect();
    if removed.len() != 3 {
        return Err(IncidenceError::Instance(format!("{} intersection points on the line, expected 3", removed.len())));
    }
    let mut report = cayley_bacharach_on_points(&set.points, 3, 3, 4, &removed)?;
    report.seed = Some(seed);
    report.warnings = set.multiplicity_warnings;
    Ok(report)
}

/// `(A, B)` with `L = A·F + B·G`, verified coefficientwise.
pub fn afbg_decompose<K: Field>(
    l: &HomogeneousPoly<K>,
    f: &HomogeneousPoly<K>,
    g: &HomogeneousPoly<K>,
) -> Result<(HomogeneousPoly<K>, HomogeneousPoly<K>), IncidenceError> {
    let d = l.nvars();
    if f.nvars() != d || g.nvars() != d {
        return Err(IncidenceError::Shape("L, F, G need the same variables".into()));
    }
    let deg = l.degree();
    if deg < f.degree() || deg < g.degree() {
        return Err(IncidenceError::Shape("deg L must be at least max(deg F, deg G)".into()));
    }
    let (da, db) = (deg - f.degree(), deg - g.degree());
    let basis_a = monomial_basis(d, da);
    let basis_b = monomial_basis(d, db);
    let mut columns = Vec::with_capacity(basis_a.len() + basis_b.len());
    for (basis, h) in [(&basis_a, f), (&basis_b, g)] {
        for mono in basis {
            let x = HomogeneousPoly::from_terms(d, mono.degree(), [(mono.exps.clone(), K::one())])?;
            columns.push(x.try_mul(h)?.to_dense());
        }
    }
    let a = Matrix::from_columns(columns)?;
    let target = l.to_dense();
    let sol = match a.solve(&target, &rank_policy()) {
        Ok(sol) => sol,
        Err(LinearError::NoSolution { residual }) => return Err(IncidenceError::Infeasible { residual }),
        Err(e) => return Err(e.into()),
    };
    let na = basis_a.len();
    let pa = HomogeneousPoly::from_dense(d, da, &sol.x[..na])?;
    let pb = HomogeneousPoly::from_dense(d, db, &sol.x[na..])?;
    let diff = pa.try_mul(f)?.try_add(&pb.try_mul(g)?)?.try_sub(l)?;
    let scale = l.norm_inf().max(f64::MIN_POSITIVE);
    let residual = diff.norm_inf();
    if residual > 1e-8 * scale {
        return Err(IncidenceError::Infeasible { residual });
    }
    Ok((pa, pb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qc, QC};

    fn conic_points(ts: &[i64]) -> Vec<ProjPoint<QC>> {
        ts.iter().map(|&t| ProjPoint::from_ints(&[1, t, t * t])).collect()
    }

    #[test]
    fn serret_on_conic() {
        let rep = serret_syzygy(&conic_points(&[-3, -1, 0, 2, 5, 7]), 2).unwrap();
        assert!(rep.nullspace_dim >= 1);
        assert!(rep.all_coeffs_nonzero);
        assert_eq!(rep.relative_residual, 0.0);
        let generic: Vec<ProjPoint<QC>> =
            [[1, 2, 3], [4, -1, 2], [0, 1, 5], [3, 3, -2], [7, 1, 1], [-2, 5, 9]].iter().map(|p| ProjPoint::from_ints(p)).collect();
        assert_eq!(serret_syzygy(&generic, 2).unwrap().nullspace_dim, 0);
        let two = [ProjPoint::<QC>::from_ints(&[1, 0, 0]), ProjPoint::from_ints(&[0, 1, 0])];
        assert_eq!(serret_syzygy(&two, 1).unwrap().nullspace_dim, 0);
    }

    #[test]
    fn curve_counts() {
        let pts = [ProjPoint::<QC>::from_ints(&[1, 0, 0]), ProjPoint::from_ints(&[0, 1, 0])];
        let lines = curves_through_points(1, &pts).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].coeff(&[0, 0, 1]), qc(1, 1));
        let five: Vec<ProjPoint<QC>> =
            [[1, 2, 3], [4, -1, 2], [0, 1, 5], [3, 3, -2], [7, 1, 1]].iter().map(|p| ProjPoint::from_ints(p)).collect();
        assert_eq!(curves_through_points(2, &five).unwrap().len(), 1);
        assert_eq!(curves_through_points(3, &random_points(8, 4)).unwrap().len(), 2);
    }

    #[test]
    fn chasles_holds() {
        for seed in 0..3 {
            let rep = chasles_instance(seed).unwrap();
            assert_eq!(rep.status, CbStatus::Holds, "seed {seed}: {rep:?}");
            assert_eq!(rep.test_curve_count, 2);
        }
    }

    #[test]
    fn cb2_dichotomy() {
        let f1 = random_form(3, 3, 10);
        let f2 = random_form(3, 3, 11);
        let rep = cayley_bacharach_check(&f1, &f2, 4, 3).unwrap();
        assert_eq!(rep.status, CbStatus::Holds);
        let rep = collinear_removal_instance(2).unwrap();
        assert_eq!(rep.status, CbStatus::ExceptionDetected);
        assert_eq!(rep.test_curve_count, 1);
    }

    #[test]
    fn degree_zero_is_not_applicable() {
        let line = random_form(3, 1, 1);
        let conic = random_form(3, 2, 2);
        let rep = cayley_bacharach_check(&line, &conic, 3, 0).unwrap();
        assert_eq!(rep.status, CbStatus::NotApplicable);
    }

    #[test]
    fn afbg() {
        let f = HomogeneousPoly::<QC>::from_int_terms(3, 2, &[(&[2, 0, 0], 1), (&[0, 1, 1], -3)]).unwrap();
        let g = HomogeneousPoly::<QC>::from_int_terms(3, 2, &[(&[0, 2, 0], 2), (&[1, 0, 1], 1), (&[0, 0, 2], 1)]).unwrap();
        let (a, b) = afbg_decompose(&f, &f, &g).unwrap();
        assert_eq!(a.coeff(&[0, 0, 0]), qc(1, 1));
        assert!(b.is_zero());
        let x = HomogeneousPoly::<QC>::linear_form(&[qc(1, 1), qc(0, 1), qc(0, 1)]);
        let y = HomogeneousPoly::<QC>::linear_form(&[qc(0, 1), qc(1, 1), qc(0, 1)]);
        let l = x.try_mul(&f).unwrap().try_add(&y.try_mul(&g).unwrap()).unwrap();
        let (a, b) = afbg_decompose(&l, &f, &g).unwrap();
        assert_eq!(a.try_mul(&f).unwrap().try_add(&b.try_mul(&g).unwrap()).unwrap(), l);
        let z3 = HomogeneousPoly::<QC>::from_int_terms(3, 3, &[(&[0, 0, 3], 1)]).unwrap();
        assert!(matches!(afbg_decompose(&z3, &f, &g), Err(IncidenceError::Infeasible { .. })));
    }

    #[test]
    fn afbg_float_on_conic_cubic_points() {
        let f = random_form(3, 2, 5);
        let g = random_form(3, 3, 6);
        let h = random_form(3, 1, 7);
        let l = h.try_mul(&f).unwrap().try_add(&g.scale(&C64::new(0.5, -0.2))).unwrap();
        let (a, b) = afbg_decompose(&l, &f, &g).unwrap();
        let back = a.try_mul(&f).unwrap().try_add(&b.try_mul(&g).unwrap()).unwrap();
        assert!(back.try_sub(&l).unwrap().norm_inf() <= 1e-10 * l.norm_inf());
    }
}
