//! Homogeneous multivariate polynomials over [`QC`] or [`C64`].
//!
//! Monomials of a fixed degree are ordered graded-lexicographically with
//! `x0 > x1 > ... > x_{d-1}`, so for `d = 3, m = 2` the order is
//! `x0², x0x1, x0x2, x1², x1x2, x2²`. Every dense coefficient vector and every
//! matrix layout in the crate uses this order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{binomial, cast_exact, falling_factorial_big, factorial_big, FieldTag, Scalar, C64, QC};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("monomial {exps:?} has degree {found}, expected {expected}")]
    NotHomogeneous { exps: Vec<u32>, found: u32, expected: u32 },
    #[error("malformed polynomial json: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// `m!/∏ eᵢ!` for the monomial's own degree `m`.
    pub fn multinomial(&self) -> BigInt {
        let mut acc = factorial_big(self.degree());
        for &e in &self.exps {
            acc /= factorial_big(e);
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All degree-`m` monomials in `d` variables, graded-lex order.
/// The length is `C(m+d-1, d-1)`.
pub fn monomial_basis(d: usize, m: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(basis_len(d, m));
    let mut current = vec![0u32; d];
    fill_basis(0, m, &mut current, &mut out);
    out
}

fn fill_basis(pos: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    let d = current.len();
    if d == 0 {
        if remaining == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return;
    }
    if pos == d - 1 {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill_basis(pos + 1, remaining - e, current, out);
    }
    current[pos] = 0;
}

pub fn basis_len(d: usize, m: u32) -> usize {
    if d == 0 {
        return usize::from(m == 0);
    }
    binomial(m as u64 + d as u64 - 1, d as u64 - 1) as usize
}

/// Lookup table from monomial to its position in [`monomial_basis`].
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    pub basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(d: usize, m: u32) -> Self {
        let basis = monomial_basis(d, m);
        let index = basis.iter().enumerate().map(|(i, mono)| (mono.clone(), i)).collect();
        MonomialIndex { basis, index }
    }

    pub fn position(&self, mono: &Monomial) -> Option<usize> {
        self.index.get(mono).copied()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPoly<K: Scalar> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Scalar> HomogeneousPoly<K> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomogeneousPoly { nvars, degree, terms: BTreeMap::new() }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs. Duplicate
    /// monomials are summed and zero coefficients dropped.
    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, K)>,
    {
        let mut poly = Self::zero(nvars, degree);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(PolyError::DimensionMismatch(format!(
                    "monomial {exps:?} has {} exponents, expected {nvars}",
                    exps.len()
                )));
            }
            let found: u32 = exps.iter().sum();
            if found != degree {
                return Err(PolyError::NotHomogeneous { exps, found, expected: degree });
            }
            poly.add_term(Monomial::new(exps), c);
        }
        Ok(poly)
    }

    /// Builds a polynomial from integer coefficients; convenient in tests.
    pub fn from_int_terms(nvars: usize, degree: u32, terms: &[(&[u32], i64)]) -> Result<Self, PolyError> {
        Self::from_terms(nvars, degree, terms.iter().map(|(e, c)| (e.to_vec(), K::from_i64(*c))))
    }

    /// The linear form `Σ cᵢ xᵢ`.
    pub fn linear_form(coeffs: &[K]) -> Self {
        let d = coeffs.len();
        let mut poly = Self::zero(d, 1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; d];
            exps[i] = 1;
            poly.add_term(Monomial::new(exps), c.clone());
        }
        poly
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        let mut poly = Self::zero(nvars, 0);
        poly.add_term(Monomial::new(vec![0; nvars]), c);
        poly
    }

    fn add_term(&mut self, mono: Monomial, c: K) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field_tag(&self) -> FieldTag {
        K::FIELD
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> K {
        self.terms.get(&Monomial::new(exps.to_vec())).cloned().unwrap_or_else(K::zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DimensionMismatch(format!(
                "{} variables vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    fn check_summable(&self, other: &Self) -> Result<u32, PolyError> {
        self.check_compatible(other)?;
        if self.is_zero() {
            return Ok(other.degree);
        }
        if other.is_zero() || self.degree == other.degree {
            return Ok(self.degree);
        }
        Err(PolyError::DimensionMismatch(format!(
            "cannot add degree {} and degree {}",
            self.degree, other.degree
        )))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        let degree = self.check_summable(other)?;
        let mut out = Self { nvars: self.nvars, degree, terms: self.terms.clone() };
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.scale(&-K::one()))
    }

    pub fn scale(&self, s: &K) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        if s.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    /// Generic product; degrees add.
    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps = ma.exps.iter().zip(&mb.exps).map(|(a, b)| a + b).collect();
                out.add_term(Monomial::new(exps), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, K::one());
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same nvars");
        }
        acc
    }

    /// Evaluates at an affine tuple of length `nvars`.
    pub fn evaluate(&self, x: &[K]) -> Result<K, PolyError> {
        if x.len() != self.nvars {
            return Err(PolyError::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                x.len(),
                self.nvars
            )));
        }
        // powers[i][e] = x_i^e
        let powers: Vec<Vec<K>> = x
            .iter()
            .map(|xi| {
                let mut p = Vec::with_capacity(self.degree as usize + 1);
                p.push(K::one());
                for e in 1..=self.degree as usize {
                    p.push(p[e - 1].clone() * xi.clone());
                }
                p
            })
            .collect();
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t = t * powers[i][e as usize].clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// `∂/∂x_var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c.clone() * K::from_i64(e as i64));
        }
        out
    }

    /// Applies `self(∂/∂x₀, …, ∂/∂x_{d-1})` to `p`. When `deg p < deg self`
    /// the result is the zero polynomial of degree 0.
    pub fn apply_diff_operator(&self, p: &Self) -> Result<Self, PolyError> {
        self.check_compatible(p)?;
        if p.degree < self.degree {
            return Ok(Self::zero(self.nvars, 0));
        }
        let mut out = Self::zero(self.nvars, p.degree - self.degree);
        for (ma, fa) in &self.terms {
            for (mb, pb) in &p.terms {
                if ma.exps.iter().zip(&mb.exps).any(|(a, b)| a > b) {
                    continue;
                }
                let mut factor = BigInt::one();
                let mut exps = Vec::with_capacity(self.nvars);
                for (&a, &b) in ma.exps.iter().zip(&mb.exps) {
                    factor *= falling_factorial_big(b, a);
                    exps.push(b - a);
                }
                out.add_term(Monomial::new(exps), fa.clone() * pb.clone() * K::from_bigint(&factor));
            }
        }
        Ok(out)
    }

    /// `(Σ pᵢ xᵢ)^m` by multinomial expansion.
    pub fn power_of_linear_form(p: &[K], m: u32) -> Self {
        let d = p.len();
        let mut out = Self::zero(d, m);
        for mono in monomial_basis(d, m) {
            let mut c = K::from_bigint(&mono.multinomial());
            for (pi, &e) in p.iter().zip(&mono.exps) {
                for _ in 0..e {
                    c = c * pi.clone();
                }
            }
            out.add_term(mono, c);
        }
        out
    }

    /// Coefficients in [`monomial_basis`] order.
    pub fn to_dense(&self) -> Vec<K> {
        let index = MonomialIndex::new(self.nvars, self.degree);
        let mut v = vec![K::zero(); index.len()];
        for (m, c) in &self.terms {
            v[index.position(m).expect("monomial of stored degree")] = c.clone();
        }
        v
    }

    pub fn from_dense(nvars: usize, degree: u32, coeffs: &[K]) -> Result<Self, PolyError> {
        let basis = monomial_basis(nvars, degree);
        if basis.len() != coeffs.len() {
            return Err(PolyError::DimensionMismatch(format!(
                "{} coefficients for a basis of size {}",
                coeffs.len(),
                basis.len()
            )));
        }
        let mut poly = Self::zero(nvars, degree);
        for (m, c) in basis.into_iter().zip(coeffs) {
            poly.add_term(m, c.clone());
        }
        Ok(poly)
    }

    /// Substitutes `x_j = Σ_k map[j][k] y_k`.
    pub fn linear_substitution(&self, map: &[Vec<K>]) -> Result<Self, PolyError> {
        if map.len() != self.nvars || map.iter().any(|row| row.len() != self.nvars) {
            return Err(PolyError::DimensionMismatch("substitution must be square".into()));
        }
        let forms: Vec<Self> = map.iter().map(|row| Self::linear_form(row)).collect();
        let mut out = Self::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            let mut t = Self::constant(self.nvars, c.clone());
            for (j, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&forms[j].pow(e))?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    pub fn map_coeffs<L: Scalar>(&self, f: impl Fn(&K) -> L) -> HomogeneousPoly<L> {
        let mut out = HomogeneousPoly::<L>::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn to_float(&self) -> HomogeneousPoly<C64> {
        self.map_coeffs(|c| c.to_c64())
    }

    /// Largest coefficient magnitude.
    pub fn norm_inf(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    /// Sum of coefficient magnitudes.
    pub fn norm_1(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).sum()
    }

    /// `|P(x)| / (‖P‖₁ · ‖x‖∞^m)`: a dimensionless vanishing measure.
    pub fn relative_value(&self, x: &[K]) -> Result<f64, PolyError> {
        let v = self.evaluate(x)?.magnitude();
        let xs = x.iter().map(|c| c.magnitude()).fold(0.0, f64::max);
        let scale = self.norm_1() * xs.powi(self.degree as i32);
        Ok(if scale > 0.0 { v / scale } else { v })
    }
}

impl HomogeneousPoly<C64> {
    /// Exact polynomial cast into floating coefficients.
    pub fn from_exact(p: &HomogeneousPoly<QC>) -> Self {
        p.map_coeffs(cast_exact)
    }
}

/// A point of projective space, stored as a coordinate tuple.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "K: Serialize"))]
pub struct ProjPoint<K: Scalar> {
    pub coords: Vec<K>,
}

impl<K: Scalar> ProjPoint<K> {
    pub fn new(coords: Vec<K>) -> Self {
        ProjPoint { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        ProjPoint { coords: coords.iter().map(|&c| K::from_i64(c)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Representative with the last nonzero coordinate equal to 1.
    pub fn canonical(&self) -> Self {
        match self.coords.iter().rposition(|c| !c.is_zero()) {
            None => self.clone(),
            Some(i) => {
                let inv = K::one() / self.coords[i].clone();
                ProjPoint { coords: self.coords.iter().map(|c| c.clone() * inv.clone()).collect() }
            }
        }
    }

    /// The dual linear form `Σ pᵢ xᵢ`.
    pub fn linear_form(&self) -> HomogeneousPoly<K> {
        HomogeneousPoly::linear_form(&self.coords)
    }

    pub fn power(&self, m: u32) -> HomogeneousPoly<K> {
        HomogeneousPoly::power_of_linear_form(&self.coords, m)
    }

    pub fn to_float(&self) -> ProjPoint<C64> {
        ProjPoint { coords: self.coords.iter().map(|c| c.to_c64()).collect() }
    }

    pub fn sup_norm(&self) -> f64 {
        self.coords.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}

impl ProjPoint<C64> {
    /// Scaled so that the largest coordinate has modulus one and the
    /// phase of the first such coordinate is zero.
    pub fn normalized(&self) -> Self {
        let (idx, _) = self
            .coords
            .iter()
            .enumerate()
            .fold((0, -1.0), |(bi, bv), (i, c)| if c.norm() > bv * (1.0 + 1e-12) { (i, c.norm()) } else { (bi, bv) });
        let pivot = self.coords[idx];
        if pivot.norm() == 0.0 {
            return self.clone();
        }
        ProjPoint { coords: self.coords.iter().map(|c| c / pivot).collect() }
    }

    /// Projective equality with relative tolerance `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        // Compare the 2×2 minors a_i b_j - a_j b_i, scale-free.
        let na = self.sup_norm();
        let nb = other.sup_norm();
        if na == 0.0 || nb == 0.0 {
            return na == nb;
        }
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                let minor = self.coords[i] * other.coords[j] - self.coords[j] * other.coords[i];
                if minor.norm() > tol * na * nb {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub degree: u32,
    pub field: FieldTag,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub re: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub im: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub re_f: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub im_f: Option<f64>,
}

/// A parsed polynomial of either field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPoly {
    Exact(HomogeneousPoly<QC>),
    Float(HomogeneousPoly<C64>),
}

impl AnyPoly {
    pub fn to_float(&self) -> HomogeneousPoly<C64> {
        match self {
            AnyPoly::Exact(p) => p.to_float(),
            AnyPoly::Float(p) => p.clone(),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            AnyPoly::Exact(p) => p.nvars(),
            AnyPoly::Float(p) => p.nvars(),
        }
    }

    pub fn to_json(&self) -> PolyJson {
        match self {
            AnyPoly::Exact(p) => p.to_json(),
            AnyPoly::Float(p) => p.to_json(),
        }
    }
}

pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let s = s.trim();
    let parsed = if s.contains('/') {
        BigRational::from_str(s).ok()
    } else {
        BigInt::from_str(s).ok().map(BigRational::from_integer)
    };
    match parsed {
        Some(r) => Ok(r),
        None => Err(PolyError::Json(format!("bad rational '{s}'"))),
    }
}

impl HomogeneousPoly<QC> {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            nvars: self.nvars,
            degree: self.degree,
            field: FieldTag::Exact,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exps: m.exps.clone(),
                    re: Some(format_rational(&c.re)),
                    im: Some(format_rational(&c.im)),
                    re_f: None,
                    im_f: None,
                })
                .collect(),
        }
    }
}

impl HomogeneousPoly<C64> {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            nvars: self.nvars,
            degree: self.degree,
            field: FieldTag::Float,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { exps: m.exps.clone(), re: None, im: None, re_f: Some(c.re), im_f: Some(c.im) })
                .collect(),
        }
    }
}

impl PolyJson {
    pub fn into_poly(self) -> Result<AnyPoly, PolyError> {
        if self.nvars < 1 {
            return Err(PolyError::Json("nvars must be positive".into()));
        }
        match self.field {
            FieldTag::Exact => {
                let mut terms = Vec::with_capacity(self.terms.len());
                for t in self.terms {
                    if t.re_f.is_some() || t.im_f.is_some() {
                        return Err(PolyError::Json("exact polynomial with re_f/im_f fields".into()));
                    }
                    let re = t.re.as_deref().map(parse_rational).transpose()?.unwrap_or_else(BigRational::zero);
                    let im = t.im.as_deref().map(parse_rational).transpose()?.unwrap_or_else(BigRational::zero);
                    terms.push((t.exps, QC::new(re, im)));
                }
                Ok(AnyPoly::Exact(HomogeneousPoly::from_terms(self.nvars, self.degree, terms)?))
            }
            FieldTag::Float => {
                let mut terms = Vec::with_capacity(self.terms.len());
                for t in self.terms {
                    if t.re.is_some() || t.im.is_some() {
                        return Err(PolyError::Json("float polynomial with re/im string fields".into()));
                    }
                    let c = C64::new(t.re_f.unwrap_or(0.0), t.im_f.unwrap_or(0.0));
                    if !c.re.is_finite() || !c.im.is_finite() {
                        return Err(PolyError::Json("non-finite coefficient".into()));
                    }
                    terms.push((t.exps, c));
                }
                Ok(AnyPoly::Float(HomogeneousPoly::from_terms(self.nvars, self.degree, terms)?))
            }
        }
    }
}

pub fn parse_poly_json(text: &str) -> Result<AnyPoly, PolyError> {
    let raw: PolyJson = serde_json::from_str(text).map_err(|e| PolyError::Json(e.to_string()))?;
    raw.into_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qc, qci};

    type PQ = HomogeneousPoly<QC>;

    fn laplace() -> PQ {
        PQ::from_int_terms(3, 2, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]).unwrap()
    }

    #[test]
    fn basis_sizes_and_order() {
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(monomial_basis(3, 0), vec![Monomial::new(vec![0, 0, 0])]);
        let b = monomial_basis(3, 2);
        let exps: Vec<_> = b.iter().map(|m| m.exps.clone()).collect();
        assert_eq!(exps, vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]);
    }

    #[test]
    fn basis_matches_enumeration() {
        // Brute force: every tuple in [0,3]^4 summing to 3.
        let mut count = 0;
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                for c in 0..=3u32 {
                    for d in 0..=3u32 {
                        if a + b + c + d == 3 {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 20);
        let basis = monomial_basis(4, 3);
        assert_eq!(basis.len(), count);
        let mut sorted = basis.clone();
        sorted.sort();
        assert_eq!(sorted, basis, "basis is emitted in the Ord order");
    }

    #[test]
    fn harmonic_quadric_is_annihilated() {
        let p = PQ::from_int_terms(3, 2, &[(&[2, 0, 0], 1), (&[0, 0, 2], -1)]).unwrap();
        let r = laplace().apply_diff_operator(&p).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.degree(), 0);
    }

    #[test]
    fn isotropic_square_is_annihilated() {
        // (z + i x)^2
        let p = PQ::power_of_linear_form(&[qci(0, 1), qc(0, 1), qc(1, 1)], 2);
        assert!(laplace().apply_diff_operator(&p).unwrap().is_zero());
    }

    #[test]
    fn lower_degree_gives_zero_constant() {
        let p = PQ::linear_form(&[qc(1, 1), qc(2, 1), qc(3, 1)]);
        let r = laplace().apply_diff_operator(&p).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.degree(), 0);
    }

    #[test]
    fn mismatched_nvars_rejected() {
        let p = PQ::linear_form(&[qc(1, 1), qc(2, 1)]);
        assert!(matches!(laplace().apply_diff_operator(&p), Err(PolyError::DimensionMismatch(_))));
    }

    #[test]
    fn binomial_power() {
        let p = PQ::power_of_linear_form(&[qc(1, 1), qc(1, 1)], 2);
        assert_eq!(p.to_dense(), vec![qc(1, 1), qc(2, 1), qc(1, 1)]);
        let q = PQ::power_of_linear_form(&[qc(1, 1), qc(0, 1), qc(0, 1)], 5);
        assert_eq!(q.num_terms(), 1);
        assert_eq!(q.coeff(&[5, 0, 0]), qc(1, 1));
    }

    #[test]
    fn power_matches_generic_square() {
        let l = PQ::linear_form(&[qc(1, 1), qc(2, 1), qc(3, 1)]);
        let sq = l.try_mul(&l).unwrap();
        let p = PQ::power_of_linear_form(&[qc(1, 1), qc(2, 1), qc(3, 1)], 2);
        assert_eq!(sq, p);
        let expected: Vec<QC> = [1, 4, 6, 4, 12, 9].iter().map(|&v| qc(v, 1)).collect();
        assert_eq!(p.to_dense(), expected);
    }

    #[test]
    fn evaluate_basics() {
        let one = qc(1, 1);
        assert_eq!(laplace().evaluate(&[one.clone(), one.clone(), one]).unwrap(), qc(3, 1));
        let z = qc(0, 1);
        assert_eq!(laplace().evaluate(&[z.clone(), z.clone(), z]).unwrap(), qc(0, 1));
    }

    #[test]
    fn cubic_operator_on_point_of_variety() {
        // ξ = (1, -1, 0) lies on x³+y³+z³.
        let f = PQ::from_int_terms(3, 3, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1)]).unwrap();
        let p = PQ::power_of_linear_form(&[qc(1, 1), qc(-1, 1), qc(0, 1)], 3);
        assert!(f.apply_diff_operator(&p).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let p = laplace().try_add(&PQ::from_terms(3, 2, vec![(vec![1, 1, 0], QC::new(qc(1, 2).re, qc(-3, 7).re))]).unwrap()).unwrap();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        assert!(text.contains("\"re\":\"1/2\""));
        assert!(text.contains("\"im\":\"-3/7\""));
        assert_eq!(parse_poly_json(&text).unwrap(), AnyPoly::Exact(p));

        let bad = r#"{"nvars":3,"degree":2,"field":"exact","terms":[{"exps":[1,0,0],"re":"1/1","im":"0/1"}]}"#;
        assert!(matches!(parse_poly_json(bad), Err(PolyError::NotHomogeneous { .. })));
        let float = r#"{"nvars":2,"degree":1,"field":"float","terms":[{"exps":[1,0],"re_f":0.5,"im_f":0}]}"#;
        assert!(matches!(parse_poly_json(float).unwrap(), AnyPoly::Float(_)));
    }

    #[test]
    fn canonical_point() {
        let p = ProjPoint::<QC>::from_ints(&[2, 4, 0]);
        assert_eq!(p.canonical(), ProjPoint::new(vec![qc(1, 2), qc(1, 1), qc(0, 1)]));
        let f = ProjPoint::new(vec![C64::new(1.0, 1.0), C64::new(2.0, 2.0)]);
        let g = ProjPoint::new(vec![C64::new(0.5, 0.0), C64::new(1.0, 0.0)]);
        assert!(f.approx_eq(&g, 1e-9));
    }
}
