//! Gauss-Legendre rules, single-panel and composite.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const NEWTON_MAX_STEPS: usize = 100;

/// A quadrature rule on `[a, b]`: strictly increasing nodes in the open
/// interval with matching positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Gauss-Legendre order of each panel.
    pub order: usize,
    pub panels: usize,
    pub a: f64,
    pub b: f64,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Like [`integrate`](Self::integrate) with the node index passed along,
    /// for integrands built from values stored per node.
    pub fn integrate_indexed<F: FnMut(usize, f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .enumerate()
            .map(|(i, (&x, &w))| w * f(i, x))
            .sum()
    }

    /// Weighted sum of integrand values already sampled at the nodes.
    pub fn sum(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.nodes.len());
        values.iter().zip(&self.weights).map(|(v, w)| v * w).sum()
    }
}

/// Nodes and weights on [-1, 1], ascending.
fn reference_rule(order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = order;
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut converged = false;
        let mut dp = 0.0;
        for _ in 0..NEWTON_MAX_STEPS {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() <= 1e-15 {
                converged = true;
                dp = legendre_with_derivative(n, z).1;
                break;
            }
        }
        if !converged {
            return Err(Error::NonConvergence(format!(
                "Gauss-Legendre node {i} of order {n} after {NEWTON_MAX_STEPS} Newton steps"
            )));
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (z * p1 - p0) / (z * z - 1.0))
}

/// Gauss-Legendre rule of `order` points mapped affinely to `[a, b]`.
pub fn gauss_legendre(order: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    composite_gauss_legendre(order, a, b, 1)
}

/// `panels` equal sub-intervals of `[a, b]`, each with its own rule.
pub fn composite_gauss_legendre(
    order: usize,
    a: f64,
    b: f64,
    panels: usize,
) -> Result<QuadratureRule> {
    if order < 2 {
        return Err(Error::Domain(format!("quadrature order {order} < 2")));
    }
    if panels == 0 {
        return Err(Error::Domain("quadrature needs at least one panel".into()));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("quadrature interval [{a}, {b}]")));
    }
    let (xs, ws) = reference_rule(order)?;
    let width = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(order * panels);
    let mut weights = Vec::with_capacity(order * panels);
    for p in 0..panels {
        let lo = a + width * p as f64;
        let half = 0.5 * width;
        let mid = lo + half;
        for (&x, &w) in xs.iter().zip(&ws) {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        order,
        panels,
        a,
        b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_rule() {
        let r = gauss_legendre(2, -1.0, 1.0).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + s).abs() < 1e-15 && (r.nodes[1] - s).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15 && (r.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn five_point_quartic() {
        let r = gauss_legendre(5, -1.0, 1.0).unwrap();
        let v = r.integrate(|x| x.powi(4));
        assert!((v - 0.4).abs() < 1e-14);
    }

    #[test]
    fn weights_sum_to_length() {
        for &n in &[2usize, 3, 17, 64, 128, 257] {
            let r = gauss_legendre(n, 0.25, 3.5).unwrap();
            let s: f64 = r.weights.iter().sum();
            assert!((s / 3.25 - 1.0).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn nodes_strictly_inside_and_increasing() {
        let r = composite_gauss_legendre(33, 0.0, 2.0, 4).unwrap();
        assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(r.nodes[0] > 0.0 && *r.nodes.last().unwrap() < 2.0);
    }

    #[test]
    fn gaussian_panel_split_self_consistency() {
        // One 200-point rule against two 200-point panels.
        let f = |x: f64| (-x * x).exp();
        let one = gauss_legendre(200, 0.0, 0.5).unwrap().integrate(f);
        let two = composite_gauss_legendre(200, 0.0, 0.5, 2).unwrap().integrate(f);
        assert!((one - two).abs() < 1e-13 * one);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(gauss_legendre(1, 0.0, 1.0).is_err());
        assert!(gauss_legendre(4, 1.0, 1.0).is_err());
        assert!(composite_gauss_legendre(4, 0.0, 1.0, 0).is_err());
    }
}
