//! Dimension of the degree-`m` kernel of `F(∂)`, explicit exact bases, and the
//! closed-form cohomology dimensions of line bundles on projective space.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::linear::{Field, Matrix, TolerancePolicy};
use crate::polyhom::{basis_len, monomial_basis, HomogeneousPoly, MonomialIndex};
use crate::scalar::{binomial, QC};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelDims {
    pub d: usize,
    pub n: u32,
    pub m: u32,
    pub predicted: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<usize>,
}

/// `C(m+d-1, d-1) − C(m-n+d-1, d-1)` for `m ≥ n`, otherwise `C(m+d-1, d-1)`.
///
/// For `d = 3` and `m ≥ n` this equals `mn + 1 − (n−1)(n−2)/2`.
pub fn kernel_dimension_predicted(d: usize, n: u32, m: u32) -> usize {
    let full = basis_len(d, m);
    if m < n {
        full
    } else {
        full - basis_len(d, m - n)
    }
}

/// Matrix of `P ↦ F(∂)P` from degree-`m` monomials (columns) to
/// degree-`(m−n)` monomials (rows).
pub fn diff_operator_matrix<K: Field>(f: &HomogeneousPoly<K>, m: u32) -> Matrix<K> {
    let d = f.nvars();
    let n = f.degree();
    let cols = monomial_basis(d, m);
    let target = MonomialIndex::new(d, m.saturating_sub(n));
    let mut a = Matrix::zeros(if m < n { 0 } else { target.len() }, cols.len());
    if m < n {
        return a;
    }
    for (j, mono) in cols.iter().enumerate() {
        let x = HomogeneousPoly::from_terms(d, m, [(mono.exps.clone(), K::one())]).expect("basis monomial");
        let image = f.apply_diff_operator(&x).expect("same nvars");
        for (out, c) in image.terms() {
            let i = target.position(out).expect("image has degree m-n");
            a[(i, j)] = c.clone();
        }
    }
    a
}

/// Exact basis of `{P homogeneous of degree m : F(∂)P = 0}`.
///
/// Each basis element is scaled so its first nonzero coefficient in
/// graded-lex order is 1. For `m < n` the monomial basis is returned.
pub fn kernel_basis(f: &HomogeneousPoly<QC>, m: u32) -> Vec<HomogeneousPoly<QC>> {
    let d = f.nvars();
    if m < f.degree() {
        return monomial_basis(d, m)
            .into_iter()
            .map(|mono| HomogeneousPoly::from_terms(d, m, [(mono.exps, QC::one())]).expect("basis monomial"))
            .collect();
    }
    let a = diff_operator_matrix(f, m);
    let result = a.rank_nullspace(&TolerancePolicy::Default);
    result
        .nullspace_basis
        .into_iter()
        .map(|v| {
            let lead = v.iter().find(|c| !c.is_zero()).cloned().expect("nullspace vectors are nonzero");
            let scaled: Vec<QC> = v.into_iter().map(|c| c / lead.clone()).collect();
            HomogeneousPoly::from_dense(d, m, &scaled).expect("dense length matches basis")
        })
        .collect()
}

/// Predicted and computed kernel dimensions for a concrete symbol.
pub fn kernel_dims(f: &HomogeneousPoly<QC>, m: u32) -> KernelDims {
    let d = f.nvars();
    let n = f.degree();
    let computed = if m < n {
        basis_len(d, m)
    } else {
        let a = diff_operator_matrix(f, m);
        a.cols() - a.rank(&TolerancePolicy::Default)
    };
    KernelDims { d, n, m, predicted: kernel_dimension_predicted(d, n, m), computed: Some(computed) }
}

/// `h^q(CP_n, O(k))`.
pub fn bott_dimension(n: u32, k: i64, q: u32) -> u64 {
    let n64 = n as i64;
    if q == 0 && k >= 0 {
        binomial((k + n64) as u64, k as u64)
    } else if q == n && k < -n64 {
        binomial((-k - 1) as u64, (-k - 1 - n64) as u64)
    } else {
        0
    }
}
