//! Gauss rules and composite panel integration.

use std::collections::HashMap;
use std::ops::{Add, Mul};
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// ∫_a^b f, with the rule's weight function mapped affinely.
    pub fn integrate<T, F>(&self, f: F, a: f64, b: f64) -> T
    where
        T: Add<Output = T> + Mul<f64, Output = T> + Default,
        F: Fn(f64) -> T,
    {
        let (h, c) = (0.5 * (b - a), 0.5 * (b + a));
        let mut acc = T::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(c + h * x) * *w;
        }
        acc * h
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// n-point Gauss–Legendre rule by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> GaussRule {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GaussRule { nodes, weights }
}

/// Shared Gauss–Legendre rule of order n.
pub fn legendre_cached(n: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("quadrature cache poisoned");
    map.entry(n).or_insert_with(|| Arc::new(gauss_legendre(n))).clone()
}

/// n-point Gauss–Jacobi rule for the weight (1−x)^α(1+x)^β, via Golub–Welsch.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> GaussRule {
    assert!(n >= 1 && alpha > -1.0 && beta > -1.0);
    let ab = alpha + beta;
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        jac[(k, k)] = if k == 0 { (beta - alpha) / (ab + 2.0) } else { (beta * beta - alpha * alpha) / (s * (s + 2.0)) };
        if k + 1 < n {
            let k1 = kf + 1.0;
            let s1 = 2.0 * k1 + ab;
            let num = 4.0 * k1 * (k1 + alpha) * (k1 + beta) * (k1 + ab);
            let den = s1 * s1 * (s1 + 1.0) * (s1 - 1.0);
            let b = (num / den).sqrt();
            jac[(k, k + 1)] = b;
            jac[(k + 1, k)] = b;
        }
    }
    let mu0 = (ab + 1.0).exp2() * statrs::function::gamma::gamma(alpha + 1.0) * statrs::function::gamma::gamma(beta + 1.0)
        / statrs::function::gamma::gamma(ab + 2.0);
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n).map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2))).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    GaussRule { nodes: pairs.iter().map(|p| p.0).collect(), weights: pairs.iter().map(|p| p.1).collect() }
}

/// Shared Gauss–Jacobi rule, keyed by (n, α, β).
pub fn jacobi_cached(n: usize, alpha: f64, beta: f64) -> Arc<GaussRule> {
    type Key = (usize, u64, u64);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("quadrature cache poisoned");
    map.entry((n, alpha.to_bits(), beta.to_bits())).or_insert_with(|| Arc::new(gauss_jacobi(n, alpha, beta))).clone()
}

/// Points per panel of the composite rule.
pub const PANEL_ORDER: usize = 16;

/// Composite 16-point Gauss–Legendre over `panels` equal panels.
pub fn integrate_gl<T, F>(f: F, a: f64, b: f64, panels: usize) -> T
where
    T: Add<Output = T> + Mul<f64, Output = T> + Default,
    F: Fn(f64) -> T,
{
    integrate_panels(f, &uniform_edges(a, b, panels.max(1)), PANEL_ORDER)
}

/// Composite Gauss–Legendre over consecutive panel edges.
pub fn integrate_panels<T, F>(f: F, edges: &[f64], order: usize) -> T
where
    T: Add<Output = T> + Mul<f64, Output = T> + Default,
    F: Fn(f64) -> T,
{
    let rule = legendre_cached(order);
    let mut acc = T::default();
    for w in edges.windows(2) {
        acc = acc + rule.integrate(&f, w[0], w[1]);
    }
    acc
}

pub fn uniform_edges(a: f64, b: f64, panels: usize) -> Vec<f64> {
    let h = (b - a) / panels as f64;
    (0..=panels).map(|i| if i == panels { b } else { a + h * i as f64 }).collect()
}

/// Edges clustered geometrically toward `a`, then uniform up to `b`.
pub fn graded_edges(a: f64, b: f64, first: f64, uniform_width: f64) -> Vec<f64> {
    let mut edges = vec![a];
    let mut h = first.min(b - a);
    let mut x = a;
    while x < b {
        let next = (x + h).min(b);
        edges.push(next);
        x = next;
        h = (2.0 * h).min(uniform_width);
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let rule = gauss_legendre(8);
        for p in 0..16 {
            let exact = if p % 2 == 0 { 2.0 / (p as f64 + 1.0) } else { 0.0 };
            let got: f64 = rule.integrate(|x| x.powi(p), -1.0, 1.0);
            assert_abs_diff_eq!(got, exact, epsilon = 1e-14);
        }
    }

    #[test]
    fn jacobi_weights_sum_to_moment() {
        let rule = gauss_jacobi(32, -0.5, 0.0);
        let s: f64 = rule.weights.iter().sum();
        assert_abs_diff_eq!(s, 2.0 * 2f64.sqrt(), epsilon = 1e-13);
        // ∫ (1−x)^{-1/2} x² dx over [−1,1] = 14√2/15
        let m2: f64 = rule.integrate(|x| x * x, -1.0, 1.0);
        assert_abs_diff_eq!(m2, 14.0 * 2f64.sqrt() / 15.0, epsilon = 1e-13);
    }

    #[test]
    fn jacobi_reduces_to_legendre() {
        let j = gauss_jacobi(10, 0.0, 0.0);
        let l = gauss_legendre(10);
        for i in 0..10 {
            assert_abs_diff_eq!(j.nodes[i], l.nodes[i], epsilon = 1e-13);
            assert_abs_diff_eq!(j.weights[i], l.weights[i], epsilon = 1e-13);
        }
    }

    #[test]
    fn graded_edges_cover_interval() {
        let e = graded_edges(0.0, 3.0, 1e-6, 0.1);
        assert_eq!(e[0], 0.0);
        assert_eq!(*e.last().unwrap(), 3.0);
        assert!(e.windows(2).all(|w| w[1] > w[0] && w[1] - w[0] <= 0.1 + 1e-15));
    }
}
