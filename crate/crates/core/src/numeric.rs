//! Quadrature rules used by the numeric side of the one-matrix model.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi's initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

pub fn integrate_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    gauss_legendre(n)
        .into_iter()
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// `∫_{-1}^{1} f(x) √(1-x²) dx` by Gauss–Chebyshev quadrature of the second
/// kind; exact when `f` is a polynomial of degree below `2n`.
pub fn integrate_semicircle(f: impl Fn(f64) -> f64, n: usize) -> f64 {
    (1..=n)
        .map(|i| {
            let theta = i as f64 * PI / (n as f64 + 1.0);
            let w = PI / (n as f64 + 1.0) * theta.sin().powi(2);
            w * f(theta.cos())
        })
        .sum()
}
