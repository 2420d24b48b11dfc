//! Dense linear algebra over both coefficient fields.
//!
//! The exact path runs fraction-free (Bareiss) elimination over Gaussian
//! integers after clearing row denominators, so every rank it reports is a
//! certainty. The floating path uses Householder QR with column pivoting and a
//! [`TolerancePolicy`] deciding which trailing diagonal entries count as zero.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::scalar::{Scalar, C64, QC};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinearError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("system has no solution (residual {residual:.3e})")]
    NoSolution { residual: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Scalar> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![K::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Result<Self, LinearError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinearError::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(cols: Vec<Vec<K>>) -> Result<Self, LinearError> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[K]) -> Result<Vec<K>, LinearError> {
        if x.len() != self.cols {
            return Err(LinearError::Shape(format!("{}x{} times vector of {}", self.rows, self.cols, x.len())));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).fold(K::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinearError> {
        if self.cols != other.rows {
            return Err(LinearError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::magnitude).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> Matrix<C64> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::to_c64).collect() }
    }

    /// Entries as `[re, im]` pairs, row-major; used for debug dumps.
    pub fn to_json_rows(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|c| {
                let z = c.to_c64();
                [z.re, z.im]
            }).collect())
            .collect()
    }
}

impl<K: Scalar> Index<(usize, usize)> for Matrix<K> {
    type Output = K;
    fn index(&self, (i, j): (usize, usize)) -> &K {
        &self.data[i * self.cols + j]
    }
}

impl<K: Scalar> IndexMut<(usize, usize)> for Matrix<K> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut K {
        &mut self.data[i * self.cols + j]
    }
}

/// How small a pivot must be before the floating path treats it as zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Default)]
pub enum TolerancePolicy {
    /// `max(rows, cols) · ε · ‖A‖∞`.
    #[default]
    Default,
    /// A fixed absolute threshold.
    Absolute(f64),
    /// `rel · ‖A‖∞`.
    Relative(f64),
}

impl TolerancePolicy {
    pub fn threshold(&self, rows: usize, cols: usize, norm_inf: f64) -> f64 {
        match *self {
            TolerancePolicy::Default => rows.max(cols) as f64 * f64::EPSILON * norm_inf,
            TolerancePolicy::Absolute(t) => t,
            TolerancePolicy::Relative(r) => r * norm_inf,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankResult<K: Scalar> {
    pub rank: usize,
    pub nullspace_basis: Vec<Vec<K>>,
    pub pivot_columns: Vec<usize>,
    /// `None` in the exact domain.
    pub tolerance_used: Option<f64>,
}

impl<K: Scalar> RankResult<K> {
    pub fn nullity(&self) -> usize {
        self.nullspace_basis.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution<K: Scalar> {
    pub x: Vec<K>,
    /// `‖Ax − b‖₂`; exactly zero in the exact domain.
    pub residual: f64,
}

/// Fields with a rank/nullspace/solve implementation.
pub trait Field: Scalar {
    fn rank_nullspace(a: &Matrix<Self>, tol: &TolerancePolicy) -> RankResult<Self>;
    fn solve(a: &Matrix<Self>, b: &[Self], tol: &TolerancePolicy) -> Result<Solution<Self>, LinearError>;
}

impl<K: Field> Matrix<K> {
    pub fn rank_nullspace(&self, tol: &TolerancePolicy) -> RankResult<K> {
        K::rank_nullspace(self, tol)
    }

    pub fn rank(&self, tol: &TolerancePolicy) -> usize {
        self.rank_nullspace(tol).rank
    }

    pub fn solve(&self, b: &[K], tol: &TolerancePolicy) -> Result<Solution<K>, LinearError> {
        if b.len() != self.rows {
            return Err(LinearError::Shape(format!("{} rows, right-hand side of {}", self.rows, b.len())));
        }
        K::solve(self, b, tol)
    }
}

// ---------------------------------------------------------------------------
// Exact domain

type GaussInt = Complex<BigInt>;

fn gauss_div_exact(a: &GaussInt, b: &GaussInt) -> GaussInt {
    let num = a * b.conj();
    let den = &b.re * &b.re + &b.im * &b.im;
    debug_assert!((&num.re % &den).is_zero() && (&num.im % &den).is_zero(), "Bareiss division must be exact");
    GaussInt::new(&num.re / &den, &num.im / &den)
}

/// Row scaled by the lcm of its denominators, as Gaussian integers.
fn clear_denominators(row: &[QC]) -> Vec<GaussInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.re.denom()).lcm(c.im.denom()));
    row.iter()
        .map(|c| {
            GaussInt::new(
                c.re.numer() * (&lcm / c.re.denom()),
                c.im.numer() * (&lcm / c.im.denom()),
            )
        })
        .collect()
}

/// Fraction-free elimination to row echelon form. Returns the echelon rows
/// (only the first `rank` are meaningful) and the pivot columns.
fn bareiss_echelon(mut m: Vec<Vec<GaussInt>>, cols: usize) -> (Vec<Vec<GaussInt>>, Vec<usize>) {
    let rows = m.len();
    let mut prev = GaussInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let lead = std::mem::replace(&mut row[c], GaussInt::zero());
            for j in (c + 1)..cols {
                let v = &pv * &row[j] - &lead * &pivot_row[j];
                row[j] = gauss_div_exact(&v, &prev);
            }
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

fn gauss_to_qc(g: &GaussInt) -> QC {
    QC::new(BigRational::from_integer(g.re.clone()), BigRational::from_integer(g.im.clone()))
}

/// Back substitution on echelon rows for `x` with the free entries given.
fn back_substitute(echelon: &[Vec<GaussInt>], pivots: &[usize], x: &mut [QC], rhs: Option<&[QC]>) {
    for (i, &pc) in pivots.iter().enumerate().rev() {
        let row = &echelon[i];
        let mut acc = rhs.map_or_else(QC::zero, |b| b[i].clone());
        for j in (pc + 1)..x.len() {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= gauss_to_qc(&row[j]) * x[j].clone();
            }
        }
        x[pc] = acc / gauss_to_qc(&row[pc]);
    }
}

impl Field for QC {
    fn rank_nullspace(a: &Matrix<QC>, _tol: &TolerancePolicy) -> RankResult<QC> {
        let rows: Vec<Vec<GaussInt>> = (0..a.rows).map(|i| clear_denominators(a.row(i))).collect();
        let (echelon, pivots) = bareiss_echelon(rows, a.cols);
        let rank = pivots.len();
        let mut nullspace_basis = Vec::with_capacity(a.cols - rank);
        let mut is_pivot = vec![false; a.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..a.cols).filter(|&j| !is_pivot[j]) {
            let mut x = vec![QC::zero(); a.cols];
            x[free] = QC::one();
            back_substitute(&echelon[..rank], &pivots, &mut x, None);
            nullspace_basis.push(x);
        }
        RankResult { rank, nullspace_basis, pivot_columns: pivots, tolerance_used: None }
    }

    fn solve(a: &Matrix<QC>, b: &[QC], _tol: &TolerancePolicy) -> Result<Solution<QC>, LinearError> {
        // Eliminate on [A | b]; the scaling of each row is tracked through the
        // augmented column, so back substitution stays consistent.
        let rows: Vec<Vec<GaussInt>> = (0..a.rows)
            .map(|i| {
                let mut r = a.row(i).to_vec();
                r.push(b[i].clone());
                clear_denominators(&r)
            })
            .collect();
        let (echelon, pivots) = bareiss_echelon(rows, a.cols + 1);
        let inconsistent = pivots.last() == Some(&a.cols);
        let a_pivots: Vec<usize> = pivots.iter().copied().filter(|&p| p < a.cols).collect();
        let rhs: Vec<QC> = echelon.iter().map(|r| gauss_to_qc(&r[a.cols])).collect();
        let trimmed: Vec<Vec<GaussInt>> = echelon.iter().take(a_pivots.len()).map(|r| r[..a.cols].to_vec()).collect();
        let mut x = vec![QC::zero(); a.cols];
        back_substitute(&trimmed, &a_pivots, &mut x, Some(&rhs[..a_pivots.len()]));
        if inconsistent {
            let ax = a.mul_vec(&x)?;
            let residual = ax.iter().zip(b).map(|(u, v)| (u.clone() - v.clone()).magnitude().powi(2)).sum::<f64>().sqrt();
            return Err(LinearError::NoSolution { residual });
        }
        Ok(Solution { x, residual: 0.0 })
    }
}

// ---------------------------------------------------------------------------
// Floating domain

/// Householder QR with column pivoting: `A P = Q R`.
#[derive(Clone, Debug)]
pub struct PivotedQr {
    pub r: Matrix<C64>,
    /// Reflector `k` acts on rows `k..`.
    reflectors: Vec<Vec<C64>>,
    pub perm: Vec<usize>,
}

impl PivotedQr {
    pub fn new(a: &Matrix<C64>) -> Self {
        let (m, n) = (a.rows, a.cols);
        let mut r = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut reflectors = Vec::new();
        for k in 0..m.min(n) {
            let col_norm = |r: &Matrix<C64>, j: usize| (k..m).map(|i| r[(i, j)].norm_sqr()).sum::<f64>();
            let best = (k..n).max_by(|&x, &y| col_norm(&r, x).total_cmp(&col_norm(&r, y))).unwrap_or(k);
            if best != k {
                for i in 0..m {
                    let t = r[(i, k)];
                    r[(i, k)] = r[(i, best)];
                    r[(i, best)] = t;
                }
                perm.swap(k, best);
            }
            let nx = col_norm(&r, k).sqrt();
            if nx == 0.0 {
                reflectors.push(Vec::new());
                continue;
            }
            let x0 = r[(k, k)];
            let phase = if x0.norm() == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
            let alpha = -phase * nx;
            let mut v: Vec<C64> = (k..m).map(|i| r[(i, k)]).collect();
            v[0] -= alpha;
            let nv = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if nv == 0.0 {
                reflectors.push(Vec::new());
                continue;
            }
            for z in &mut v {
                *z /= nv;
            }
            for j in k..n {
                let s: C64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * r[(k + i, j)]).sum();
                for (i, vi) in v.iter().enumerate() {
                    r[(k + i, j)] -= vi * s * 2.0;
                }
            }
            reflectors.push(v);
        }
        PivotedQr { r, reflectors, perm }
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.r.rows.min(self.r.cols)).map(|k| self.r[(k, k)].norm()).collect()
    }

    pub fn numerical_rank(&self, threshold: f64) -> usize {
        self.diag().iter().take_while(|&&d| d > threshold).count()
    }

    fn apply_qh(&self, b: &mut [C64]) {
        for (k, v) in self.reflectors.iter().enumerate() {
            if v.is_empty() {
                continue;
            }
            let s: C64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * b[k + i]).sum();
            for (i, vi) in v.iter().enumerate() {
                b[k + i] -= vi * s * 2.0;
            }
        }
    }

    /// Solves `R[..k, ..k] y = rhs` by back substitution.
    fn upper_solve(&self, k: usize, rhs: &[C64]) -> Vec<C64> {
        let mut y = vec![C64::zero(); k];
        for i in (0..k).rev() {
            let mut acc = rhs[i];
            for j in (i + 1)..k {
                acc -= self.r[(i, j)] * y[j];
            }
            y[i] = acc / self.r[(i, i)];
        }
        y
    }

    /// Basic least-squares solution using the leading `rank` columns.
    pub fn least_squares(&self, b: &[C64], rank: usize) -> Vec<C64> {
        let mut qb = b.to_vec();
        self.apply_qh(&mut qb);
        let y = self.upper_solve(rank, &qb[..rank]);
        let mut x = vec![C64::zero(); self.r.cols];
        for (i, yi) in y.into_iter().enumerate() {
            x[self.perm[i]] = yi;
        }
        x
    }

    /// Unit-norm nullspace vectors for the trailing `cols − rank` columns.
    pub fn nullspace(&self, rank: usize) -> Vec<Vec<C64>> {
        let n = self.r.cols;
        (rank..n)
            .map(|j| {
                let rhs: Vec<C64> = (0..rank).map(|i| -self.r[(i, j)]).collect();
                let y = self.upper_solve(rank, &rhs);
                let mut x = vec![C64::zero(); n];
                for (i, yi) in y.into_iter().enumerate() {
                    x[self.perm[i]] = yi;
                }
                x[self.perm[j]] = C64::new(1.0, 0.0);
                let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                x.into_iter().map(|z| z / norm).collect()
            })
            .collect()
    }
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl Field for C64 {
    fn rank_nullspace(a: &Matrix<C64>, tol: &TolerancePolicy) -> RankResult<C64> {
        let threshold = tol.threshold(a.rows, a.cols, a.norm_inf());
        let qr = PivotedQr::new(a);
        let rank = qr.numerical_rank(threshold);
        let mut pivot_columns: Vec<usize> = qr.perm[..rank].to_vec();
        pivot_columns.sort_unstable();
        RankResult { rank, nullspace_basis: qr.nullspace(rank), pivot_columns, tolerance_used: Some(threshold) }
    }

    fn solve(a: &Matrix<C64>, b: &[C64], tol: &TolerancePolicy) -> Result<Solution<C64>, LinearError> {
        let threshold = tol.threshold(a.rows, a.cols, a.norm_inf());
        let qr = PivotedQr::new(a);
        let rank = qr.numerical_rank(threshold);
        let x = qr.least_squares(b, rank);
        let ax = a.mul_vec(&x)?;
        let residual = ax.iter().zip(b).map(|(u, v)| (u - v).norm_sqr()).sum::<f64>().sqrt();
        Ok(Solution { x, residual })
    }
}

/// LU factorization with partial pivoting, for determinants and inverses of
/// small dense floating matrices.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: Matrix<C64>,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    pub fn new(a: &Matrix<C64>) -> Result<Self, LinearError> {
        if a.rows != a.cols {
            return Err(LinearError::Shape("LU needs a square matrix".into()));
        }
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let p = (k..n).max_by(|&x, &y| lu[(x, k)].norm().total_cmp(&lu[(y, k)].norm())).unwrap_or(k);
            if lu[(p, k)].norm() == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                for j in (k + 1)..n {
                    let v = lu[(k, j)];
                    lu[(i, j)] -= f * v;
                }
            }
        }
        Ok(Lu { lu, perm, sign, singular })
    }

    pub fn determinant(&self) -> C64 {
        if self.singular {
            return C64::zero();
        }
        (0..self.lu.rows).fold(C64::new(self.sign, 0.0), |acc, k| acc * self.lu[(k, k)])
    }

    pub fn solve(&self, b: &[C64]) -> Option<Vec<C64>> {
        if self.singular {
            return None;
        }
        let n = self.lu.rows;
        let mut y: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let v = self.lu[(i, j)] * y[j];
                y[i] -= v;
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let v = self.lu[(i, j)] * y[j];
                y[i] -= v;
            }
            y[i] /= self.lu[(i, i)];
        }
        Some(y)
    }

    pub fn inverse(&self) -> Option<Matrix<C64>> {
        let n = self.lu.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![C64::zero(); n];
            e[j] = C64::new(1.0, 0.0);
            cols.push(self.solve(&e)?);
        }
        Matrix::from_columns(cols).ok()
    }
}

pub fn determinant(a: &Matrix<C64>) -> Result<C64, LinearError> {
    Ok(Lu::new(a)?.determinant())
}

/// 1-norm condition number; infinite for singular input.
pub fn condition_number(a: &Matrix<C64>) -> Result<f64, LinearError> {
    let norm1 = |m: &Matrix<C64>| m.transpose().norm_inf();
    match Lu::new(a)?.inverse() {
        Some(inv) => Ok(norm1(a) * norm1(&inv)),
        None => Ok(f64::INFINITY),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c64, qc};

    fn qm(rows: &[&[i64]]) -> Matrix<QC> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| qc(v, 1)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let r = Matrix::<QC>::identity(4).rank_nullspace(&TolerancePolicy::Default);
        assert_eq!(r.rank, 4);
        assert!(r.nullspace_basis.is_empty());
        assert_eq!(r.tolerance_used, None);
    }

    #[test]
    fn duplicated_column_nullspace() {
        let a = qm(&[&[1, 2, 1], &[3, 4, 3], &[5, 7, 5]]);
        let r = a.rank_nullspace(&TolerancePolicy::Default);
        assert_eq!(r.rank, 2);
        assert_eq!(r.nullspace_basis, vec![vec![qc(-1, 1), qc(0, 1), qc(1, 1)]]);
    }

    #[test]
    fn vandermonde_interpolation() {
        // p(t) = a + b t + c t² through (0,1), (1,2), (2,4).
        let a = qm(&[&[1, 0, 0], &[1, 1, 1], &[1, 2, 4]]);
        let b = vec![qc(1, 1), qc(2, 1), qc(4, 1)];
        let s = a.solve(&b, &TolerancePolicy::Default).unwrap();
        assert_eq!(s.x, vec![qc(1, 1), qc(1, 2), qc(1, 2)]);
    }

    #[test]
    fn inconsistent_exact_system() {
        let a = qm(&[&[1, 1], &[2, 2]]);
        let err = a.solve(&[qc(1, 1), qc(3, 1)], &TolerancePolicy::Default).unwrap_err();
        match err {
            LinearError::NoSolution { residual } => assert!(residual > 0.0),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn rational_entries_with_imaginary_parts() {
        let i = QC::new(qc(0, 1).re, qc(1, 1).re);
        let half = qc(1, 2);
        // Second row is i/2 times the first.
        let a = Matrix::from_rows(vec![
            vec![qc(2, 1), qc(4, 3)],
            vec![qc(2, 1) * i.clone() * half.clone(), qc(4, 3) * i * half],
        ])
        .unwrap();
        let r = a.rank_nullspace(&TolerancePolicy::Default);
        assert_eq!(r.rank, 1);
        let v = &r.nullspace_basis[0];
        assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn float_rank_and_least_squares() {
        let a = Matrix::from_rows(vec![
            vec![c64(1.0, 0.0), c64(2.0, 0.0), c64(3.0, 0.0)],
            vec![c64(2.0, 1.0), c64(4.0, 2.0), c64(6.0, 3.0)],
            vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0)],
        ])
        .unwrap();
        let r = a.rank_nullspace(&TolerancePolicy::Default);
        assert_eq!(r.rank, 2);
        for v in &r.nullspace_basis {
            let av = a.mul_vec(v).unwrap();
            assert!(vec_norm(&av) <= 1e-12 * a.norm_inf() * vec_norm(v));
        }
        let id = Matrix::<C64>::identity(3);
        let b = vec![c64(1.0, 2.0), c64(-3.0, 0.5), c64(0.0, 7.0)];
        let s = id.solve(&b, &TolerancePolicy::Default).unwrap();
        assert!(s.residual < 1e-14, "{}", s.residual);
    }

    #[test]
    fn lu_determinant() {
        let a = Matrix::from_rows(vec![vec![c64(2.0, 0.0), c64(1.0, 0.0)], vec![c64(1.0, 0.0), c64(3.0, 0.0)]]).unwrap();
        assert!((determinant(&a).unwrap() - c64(5.0, 0.0)).norm() < 1e-14);
        let inv = Lu::new(&a).unwrap().inverse().unwrap();
        let prod = a.mul(&inv).unwrap();
        assert!((prod[(0, 1)]).norm() < 1e-15);
    }
}
