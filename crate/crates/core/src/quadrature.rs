//! Gauss–Legendre, periodic trapezoid and tensor-product quadrature.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureKind {
    PeriodicTrapezoid,
    GaussLegendre,
    ProductRule,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureRule {
    /// One coordinate vector per node.
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub kind: QuadratureKind,
}

/// Legendre `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`,
/// nodes ascending.
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

impl QuadratureRule {
    pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Self {
        assert!(n >= 2, "a quadrature rule needs at least two nodes");
        let (x, w) = gauss_legendre_unit(n);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        QuadratureRule {
            nodes: x.iter().map(|&t| vec![mid + half * t]).collect(),
            weights: w.iter().map(|&wi| wi * half).collect(),
            kind: QuadratureKind::GaussLegendre,
        }
    }

    /// `n` equispaced nodes on the period `[a, b)`, each with weight `(b−a)/n`.
    pub fn periodic_trapezoid(n: usize, a: f64, b: f64) -> Self {
        assert!(n >= 2, "a quadrature rule needs at least two nodes");
        let h = (b - a) / n as f64;
        QuadratureRule {
            nodes: (0..n).map(|k| vec![a + h * k as f64]).collect(),
            weights: vec![h; n],
            kind: QuadratureKind::PeriodicTrapezoid,
        }
    }

    /// Tensor product; node coordinates are concatenated.
    pub fn product(rules: &[QuadratureRule]) -> Self {
        let mut nodes: Vec<Vec<f64>> = vec![Vec::new()];
        let mut weights = vec![1.0];
        for rule in rules {
            let mut next_nodes = Vec::with_capacity(nodes.len() * rule.len());
            let mut next_weights = Vec::with_capacity(nodes.len() * rule.len());
            for (n0, w0) in nodes.iter().zip(&weights) {
                for (n1, w1) in rule.nodes.iter().zip(&rule.weights) {
                    let mut v = n0.clone();
                    v.extend_from_slice(n1);
                    next_nodes.push(v);
                    next_weights.push(w0 * w1);
                }
            }
            nodes = next_nodes;
            weights = next_weights;
        }
        QuadratureRule { nodes, weights, kind: QuadratureKind::ProductRule }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.nodes.first().map_or(0, Vec::len)
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate<T>(&self, f: impl Fn(&[f64]) -> T) -> T
    where
        T: std::ops::Mul<f64, Output = T> + std::iter::Sum<T>,
    {
        self.nodes.iter().zip(&self.weights).map(|(x, &w)| f(x) * w).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        let rule = QuadratureRule::gauss_legendre(5, 0.0, 2.0);
        assert!((rule.weight_sum() - 2.0).abs() < 1e-14);
        // Exact through degree 9.
        let v: f64 = rule.integrate(|x| x[0].powi(9));
        assert!((v - 2f64.powi(10) / 10.0).abs() < 1e-11);
    }

    #[test]
    fn high_order_nodes_are_accurate() {
        let rule = QuadratureRule::gauss_legendre(200, -1.0, 1.0);
        let v: f64 = rule.integrate(|x| x[0].exp());
        assert!((v - (1f64.exp() - (-1f64).exp())).abs() < 1e-13);
        assert!((rule.weight_sum() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn trapezoid_is_spectral_on_periodic_data() {
        let rule = QuadratureRule::periodic_trapezoid(32, -PI, PI);
        let v: f64 = rule.integrate(|x| x[0].cos().exp());
        // 2π I₀(1)
        assert!((v - 2.0 * PI * 1.266_065_877_752_008_4).abs() < 1e-13);
        let v: f64 = rule.integrate(|x| (3.0 * x[0]).cos().powi(2));
        assert!((v - PI).abs() < 1e-13);
    }

    #[test]
    fn product_rule_weights() {
        let r = QuadratureRule::periodic_trapezoid(8, -PI, PI);
        let p = QuadratureRule::product(&[r.clone(), r]);
        assert_eq!(p.len(), 64);
        assert_eq!(p.dim(), 2);
        assert!((p.weight_sum() - 4.0 * PI * PI).abs() < 1e-12);
    }
}
