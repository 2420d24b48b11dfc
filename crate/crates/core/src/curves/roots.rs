//! All complex roots of a univariate polynomial by Aberth–Ehrlich iteration.

use serde::Serialize;

use super::CurveError;
use crate::scalar::C64;

const MAX_ITERATIONS: usize = 500;
/// Roots closer than this (relative to `max(1, |r|)`) are reported as a cluster.
pub const CLUSTER_TOLERANCE: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Roots {
    pub roots: Vec<C64>,
    /// Index groups of roots that sit on top of each other; usually a
    /// multiple root.
    pub clusters: Vec<Vec<usize>>,
    pub iterations: usize,
}

/// Evaluates `p` (ascending coefficients) and its derivative.
pub fn horner_with_derivative(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn coeff_norm(coeffs: &[C64]) -> f64 {
    coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Whether `|p(r)| ≤ 1e-10 · ‖p‖₂ · max(1, |r|)^deg`.
pub fn residual_ok(coeffs: &[C64], r: C64) -> bool {
    let deg = coeffs.len() as i32 - 1;
    horner(coeffs, r).norm() <= 1e-10 * coeff_norm(coeffs) * r.norm().max(1.0).powi(deg)
}

/// Roots of `Σ coeffs[k] z^k`. The leading coefficient must be nonzero and
/// the degree at least one. Initial guesses sit on a fixed circle, so the
/// result is deterministic.
pub fn roots_univariate(coeffs: &[C64]) -> Result<Roots, CurveError> {
    if coeffs.len() < 2 {
        return Err(CurveError::InvalidPolynomial("degree must be at least 1".into()));
    }
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(CurveError::InvalidPolynomial("non-finite coefficient".into()));
    }
    let lead = *coeffs.last().expect("nonempty");
    if lead.norm() == 0.0 {
        return Err(CurveError::InvalidPolynomial("leading coefficient is zero".into()));
    }
    // Exact zero roots first.
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced: Vec<C64> = coeffs[zeros..].iter().map(|c| c / lead).collect();
    let n = reduced.len() - 1;
    let mut roots = vec![C64::new(0.0, 0.0); zeros];
    let mut iterations = 0;
    if n > 0 {
        let radius = reduced[0].norm().powf(1.0 / n as f64).max(f64::MIN_POSITIVE);
        let mut z: Vec<C64> = (0..n)
            .map(|k| C64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
            .collect();
        while iterations < MAX_ITERATIONS {
            iterations += 1;
            let mut max_step: f64 = 0.0;
            for k in 0..n {
                let (p, dp) = horner_with_derivative(&reduced, z[k]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let repulsion: C64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
                let w = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
                if w.re.is_finite() && w.im.is_finite() {
                    z[k] -= w;
                    max_step = max_step.max(w.norm() / z[k].norm().max(1.0));
                }
            }
            if max_step <= 4.0 * f64::EPSILON {
                break;
            }
        }
        // A final Newton step helps simple roots; keep it only if it helps.
        for zk in z.iter_mut() {
            let (p, dp) = horner_with_derivative(&reduced, *zk);
            if dp.norm() > 0.0 {
                let cand = *zk - p / dp;
                if horner(&reduced, cand).norm() < p.norm() {
                    *zk = cand;
                }
            }
        }
        let all_ok = z.iter().all(|&r| residual_ok(&reduced, r));
        if !all_ok {
            let mut partial = roots.clone();
            partial.extend(z);
            return Err(CurveError::NonConvergence { partial });
        }
        roots.extend(z);
    }
    let clusters = find_clusters(&roots);
    Ok(Roots { roots, clusters, iterations })
}

fn find_clusters(roots: &[C64]) -> Vec<Vec<usize>> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = roots[i].norm().max(roots[j].norm()).max(1.0);
            if (roots[i] - roots[j]).norm() <= CLUSTER_TOLERANCE * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().filter(|g| g.len() > 1).collect()
}

/// Ascending coefficients of `∏ (z − r)`.
pub fn poly_from_roots(roots: &[C64]) -> Vec<C64> {
    let mut c = vec![C64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![C64::new(0.0, 0.0); c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= ck * r;
        }
        c = next;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_re(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn unit_imaginary_pair() {
        let r = roots_univariate(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        let s = sorted_re(r.roots);
        let mut ims: Vec<f64> = s.iter().map(|z| z.im).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-14 && (ims[1] - 1.0).abs() < 1e-14);
        assert!(r.clusters.is_empty());
    }

    #[test]
    fn triple_root_is_flagged() {
        let c = poly_from_roots(&[C64::new(1.0, 0.0); 3]);
        let r = roots_univariate(&c).unwrap();
        assert_eq!(r.clusters, vec![vec![0, 1, 2]]);
        for z in r.roots {
            assert!((z - 1.0).norm() < 1e-4);
        }
    }

    #[test]
    fn wilkinson_five() {
        let expected: Vec<C64> = (1..=5).map(|k| C64::new(k as f64, 0.0)).collect();
        let c = poly_from_roots(&expected);
        let r = roots_univariate(&c).unwrap();
        for (got, want) in sorted_re(r.roots).iter().zip(&expected) {
            assert!((got - want).norm() < 1e-8);
        }
    }

    #[test]
    fn zero_roots_and_errors() {
        let r = roots_univariate(&[C64::new(0.0, 0.0), C64::new(-2.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        let s = sorted_re(r.roots);
        assert_eq!(s[0], C64::new(0.0, 0.0));
        assert!((s[1] - 2.0).norm() < 1e-14);
        assert!(roots_univariate(&[C64::new(1.0, 0.0)]).is_err());
        assert!(roots_univariate(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).is_err());
    }
}
