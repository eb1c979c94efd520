//! Fornberg finite-difference weights on arbitrary node sets.

/// Weights for approximating derivatives of order `0..=m` at `x0` from the
/// nodes `xs` (all nodes are used as the stencil). Returns `m+1` rows, one per
/// derivative order, each of length `xs.len()`.
///
/// Classic recursion from Fornberg, Math. Comp. 51 (1988).
pub fn fornberg_weights(xs: &[f64], x0: f64, m: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    assert!(n > m, "need more than m+1 nodes");
    let mut c = vec![vec![0.0; n]; m + 1];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Dense differentiation matrices of orders `1..=m` on the node set `xs`.
/// Entry `(i, j)` of matrix `k-1` is the weight of `f(xs[j])` in the k-th
/// derivative at `xs[i]`.
pub fn differentiation_matrices(xs: &[f64], m: usize) -> Vec<Vec<Vec<f64>>> {
    let n = xs.len();
    let mut mats = vec![vec![vec![0.0; n]; n]; m];
    for i in 0..n {
        let w = fornberg_weights(xs, xs[i], m);
        for (k, mat) in mats.iter_mut().enumerate() {
            mat[i].copy_from_slice(&w[k + 1]);
        }
    }
    mats
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_central_second_difference() {
        let xs = [-1.0, 0.0, 1.0];
        let w = fornberg_weights(&xs, 0.0, 2);
        assert!((w[2][0] - 1.0).abs() < 1e-14);
        assert!((w[2][1] + 2.0).abs() < 1e-14);
        assert!((w[2][2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn differentiates_polynomial_exactly() {
        // nodes deliberately non-uniform
        let xs = [0.0_f64, 0.13, 0.41, 0.72, 0.95, 1.3, 1.71];
        let f: Vec<f64> = xs.iter().map(|&x| 2.0 + x - 3.0 * x.powi(3) + 0.5 * x.powi(5)).collect();
        let mats = differentiation_matrices(&xs, 2);
        for (i, &x) in xs.iter().enumerate() {
            let d1: f64 = mats[0][i].iter().zip(&f).map(|(w, v)| w * v).sum();
            let d2: f64 = mats[1][i].iter().zip(&f).map(|(w, v)| w * v).sum();
            let d1_true = 1.0 - 9.0 * x.powi(2) + 2.5 * x.powi(4);
            let d2_true = -18.0 * x + 10.0 * x.powi(3);
            assert!((d1 - d1_true).abs() < 1e-10 * (1.0 + d1_true.abs()));
            assert!((d2 - d2_true).abs() < 1e-9 * (1.0 + d2_true.abs()));
        }
    }
}
