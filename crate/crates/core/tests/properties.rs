use charvar::curves::{poly_from_roots, roots_univariate};
use charvar::kernelspace::{diff_operator_matrix, kernel_basis, kernel_dimension_predicted};
use charvar::polyhom::{monomial_basis, parse_poly_json, AnyPoly};
use charvar::scalar::{qci, C64, QC};
use charvar::{HomogeneousPoly, Matrix, ProjPoint, TolerancePolicy};
use proptest::prelude::*;

fn gaussian_int() -> impl Strategy<Value = QC> {
    (-4i64..=4, -4i64..=4).prop_map(|(a, b)| qci(a, b))
}

fn exact_poly(d: usize, deg: u32) -> impl Strategy<Value = HomogeneousPoly<QC>> {
    let basis = monomial_basis(d, deg);
    prop::collection::vec(gaussian_int(), basis.len()).prop_map(move |coeffs| {
        HomogeneousPoly::from_terms(d, deg, basis.iter().map(|m| m.exps.clone()).zip(coeffs)).expect("homogeneous")
    })
}

fn small_complex() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn diff_operator_is_linear(f in exact_poly(3, 2), p in exact_poly(3, 3), q in exact_poly(3, 3), a in gaussian_int()) {
        let combo = p.scale(&a).try_add(&q).unwrap();
        let lhs = f.apply_diff_operator(&combo).unwrap();
        let rhs = f.apply_diff_operator(&p).unwrap().scale(&a).try_add(&f.apply_diff_operator(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operators_compose_by_multiplication(f in exact_poly(3, 1), g in exact_poly(3, 2), p in exact_poly(3, 4)) {
        let fg = f.try_mul(&g).unwrap();
        let lhs = fg.apply_diff_operator(&p).unwrap();
        let rhs = f.apply_diff_operator(&g.apply_diff_operator(&p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_evaluates_as_power_of_pairing(p in prop::collection::vec(small_complex(), 3),
                                           x in prop::collection::vec(small_complex(), 3), m in 0u32..6) {
        let pt = ProjPoint::new(p.clone());
        let value = pt.power(m).evaluate(&x).unwrap();
        let pairing: C64 = p.iter().zip(&x).map(|(a, b)| a * b).sum();
        prop_assert!((value - pairing.powu(m)).norm() <= 1e-12 * (1.0 + pairing.norm().powi(m as i32)));
    }

    #[test]
    fn kernel_elements_are_annihilated(f in exact_poly(3, 2), m in 0u32..5) {
        prop_assume!(!f.is_zero());
        let basis = kernel_basis(&f, m);
        prop_assert_eq!(basis.len(), kernel_dimension_predicted(3, 2, m));
        for p in basis {
            prop_assert!(f.apply_diff_operator(&p).unwrap().is_zero());
        }
    }

    #[test]
    fn exact_and_float_ranks_agree(f in exact_poly(3, 2), m in 2u32..5) {
        prop_assume!(!f.is_zero());
        let exact = diff_operator_matrix(&f, m);
        let float: Matrix<C64> = diff_operator_matrix(&f.to_float(), m);
        prop_assert_eq!(exact.rank(&TolerancePolicy::Default), float.rank(&TolerancePolicy::Default));
    }

    #[test]
    fn polynomial_json_round_trips(f in exact_poly(4, 3)) {
        let text = serde_json::to_string(&f.to_json()).unwrap();
        let back = parse_poly_json(&text).unwrap();
        prop_assert_eq!(back, AnyPoly::Exact(f));
    }

    #[test]
    fn roots_recover_vieta(roots in prop::collection::vec(small_complex(), 1..7)) {
        // Keep roots apart so the comparison is well conditioned.
        for (i, a) in roots.iter().enumerate() {
            for b in &roots[..i] {
                prop_assume!((a - b).norm() > 0.1);
            }
        }
        let coeffs = poly_from_roots(&roots);
        let found = roots_univariate(&coeffs).unwrap();
        prop_assert_eq!(found.roots.len(), roots.len());
        let sum: C64 = found.roots.iter().sum();
        let product: C64 = found.roots.iter().product();
        let n = roots.len();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((sum + coeffs[n - 1] / coeffs[n]).norm() <= 1e-9);
        prop_assert!((product - coeffs[0] / coeffs[n] * sign).norm() <= 1e-9);
        for r in &roots {
            let nearest = found.roots.iter().map(|z| (z - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= 1e-8);
        }
    }
}
