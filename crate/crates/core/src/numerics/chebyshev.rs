//! Chebyshev-Lobatto grids, barycentric interpolation and series calculus.

/// Chebyshev-Lobatto nodes on `[a, b]`, ordered increasing. `n` is the
/// polynomial degree; `n + 1` nodes are returned.
pub fn lobatto_nodes(n: usize, a: f64, b: f64) -> Vec<f64> {
    assert!(n >= 1);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    (0..=n)
        .map(|j| c - h * (std::f64::consts::PI * j as f64 / n as f64).cos())
        .collect()
}

/// Barycentric weights for the Chebyshev-Lobatto nodes in increasing order.
pub fn lobatto_bary_weights(n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..=n).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 }).collect();
    w[0] *= 0.5;
    w[n] *= 0.5;
    w
}

/// Barycentric interpolation of `(nodes, values)` at `x`. Exact at nodes.
pub fn bary_eval(nodes: &[f64], weights: &[f64], values: &[f64], x: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for ((&xi, &wi), &fi) in nodes.iter().zip(weights).zip(values) {
        let d = x - xi;
        if d == 0.0 {
            return fi;
        }
        let t = wi / d;
        num += t * fi;
        den += t;
    }
    num / den
}

/// Chebyshev series coefficients from values on the Lobatto grid (increasing
/// order on `[a, b]`). Direct O(n^2) cosine sums; the grids used here are a
/// few hundred points at most.
pub fn lobatto_to_coeffs(values: &[f64]) -> Vec<f64> {
    let n = values.len() - 1;
    assert!(n >= 1);
    let pi = std::f64::consts::PI;
    // values[j] corresponds to x_j = -cos(pi j / n) = cos(pi (n - j)/n)
    let mut c = vec![0.0; n + 1];
    for (k, ck) in c.iter_mut().enumerate() {
        let mut s = 0.0;
        for (j, &fj) in values.iter().enumerate() {
            let theta = pi * (n - j) as f64 / n as f64;
            let w = if j == 0 || j == n { 0.5 } else { 1.0 };
            s += w * fj * (k as f64 * theta).cos();
        }
        *ck = 2.0 * s / n as f64;
    }
    c[0] *= 0.5;
    c[n] *= 0.5;
    c
}

/// Coefficients of the antiderivative of a Chebyshev series on `[a, b]`,
/// normalized so the antiderivative vanishes at `x0`.
pub fn integrate_coeffs(coeffs: &[f64], a: f64, b: f64, x0: f64) -> Vec<f64> {
    let n = coeffs.len() - 1;
    let h = 0.5 * (b - a);
    let mut bcoef = vec![0.0; n + 2];
    let get = |k: usize| if k <= n { coeffs[k] } else { 0.0 };
    for k in 1..=n + 1 {
        let cm = if k == 1 { 2.0 * get(0) } else { get(k - 1) };
        bcoef[k] = h * (cm - get(k + 1)) / (2.0 * k as f64);
    }
    let f0 = eval_coeffs(&bcoef, a, b, x0);
    bcoef[0] -= f0;
    bcoef
}

/// Evaluate a Chebyshev series on `[a, b]` at `x` by Clenshaw recurrence.
pub fn eval_coeffs(coeffs: &[f64], a: f64, b: f64, x: f64) -> f64 {
    let t = (2.0 * x - a - b) / (b - a);
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in coeffs.iter().rev() {
        let tmp = 2.0 * t * b1 - b2 + c;
        b2 = b1;
        b1 = tmp;
    }
    b1 - t * b2
}
