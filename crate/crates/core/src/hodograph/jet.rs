//! Truncated bivariate Taylor algebra of total order 6 over complex
//! coefficients.
//!
//! The catalog potentials are closed-form expressions in (u, v) built from
//! arithmetic, square roots and logarithms; propagating jets through those
//! expressions yields every partial derivative up to total order 6 without
//! hand transcription. Analytic functions of a jet use the exact finite
//! composition with the nilpotent part (order > 6 truncates to zero).

use num_complex::Complex64;

/// Total truncation order of the algebra.
pub const ORDER: usize = 6;
/// Number of monomials u^i v^j with i + j <= ORDER.
pub const LEN: usize = (ORDER + 1) * (ORDER + 2) / 2;

/// Flat index of the (i, j) Taylor coefficient, graded lexicographic.
#[inline]
pub fn index(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// Taylor polynomial `sum c_{ij} (du)^i (dv)^j`, `c_{ij}` scaled so that the
/// (i, j) partial derivative equals `c_{ij} * i! * j!`.
#[derive(Clone, Copy, Debug)]
pub struct Jet {
    pub c: [Complex64; LEN],
}

impl Jet {
    pub fn zero() -> Self {
        Jet { c: [Complex64::new(0.0, 0.0); LEN] }
    }

    pub fn constant(value: Complex64) -> Self {
        let mut j = Jet::zero();
        j.c[0] = value;
        j
    }

    pub fn real_constant(value: f64) -> Self {
        Jet::constant(Complex64::new(value, 0.0))
    }

    /// The coordinate `u` seeded at `u0`.
    pub fn var_u(u0: f64) -> Self {
        let mut j = Jet::constant(Complex64::new(u0, 0.0));
        j.c[index(1, 0)] = Complex64::new(1.0, 0.0);
        j
    }

    /// The coordinate `v` seeded at `v0`.
    pub fn var_v(v0: f64) -> Self {
        let mut j = Jet::constant(Complex64::new(v0, 0.0));
        j.c[index(0, 1)] = Complex64::new(1.0, 0.0);
        j
    }

    pub fn value(&self) -> Complex64 {
        self.c[0]
    }

    pub fn scale(mut self, s: Complex64) -> Self {
        for c in &mut self.c {
            *c *= s;
        }
        self
    }

    pub fn scale_re(self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let mut out = Jet::zero();
        for ia in 0..=ORDER {
            for ja in 0..=(ORDER - ia) {
                let a = self.c[index(ia, ja)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for ib in 0..=(ORDER - ia - ja) {
                    for jb in 0..=(ORDER - ia - ja - ib) {
                        let b = other.c[index(ib, jb)];
                        if b.norm_sqr() != 0.0 {
                            out.c[index(ia + ib, ja + jb)] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let mut out = *self;
        for k in 0..LEN {
            out.c[k] += other.c[k];
        }
        out
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        let mut out = *self;
        for k in 0..LEN {
            out.c[k] -= other.c[k];
        }
        out
    }

    pub fn add_const(mut self, value: Complex64) -> Self {
        self.c[0] += value;
        self
    }

    /// Compose a univariate analytic function with this jet, given the
    /// scaled derivatives `g_k = g^(k)(c_0) / k!`. Exact in the truncated
    /// algebra because the non-constant part is nilpotent.
    pub fn compose(&self, g: &[Complex64; ORDER + 1]) -> Jet {
        let mut w = *self;
        w.c[0] = Complex64::new(0.0, 0.0);
        // Horner: r = g_6; r = r*w + g_5; ...
        let mut r = Jet::constant(g[ORDER]);
        for k in (0..ORDER).rev() {
            r = r.mul(&w).add_const(g[k]);
        }
        r
    }

    pub fn sqrt(&self) -> Jet {
        let x0 = self.c[0];
        let s = x0.sqrt();
        // g_k = binom(1/2, k) x0^{1/2 - k}
        let mut g = [Complex64::new(0.0, 0.0); ORDER + 1];
        g[0] = s;
        let mut coef = Complex64::new(1.0, 0.0);
        for (k, gk) in g.iter_mut().enumerate().skip(1) {
            let kf = k as f64;
            coef *= (Complex64::new(0.5, 0.0) - (kf - 1.0)) / kf;
            *gk = coef * s / x0.powu(k as u32);
        }
        self.compose(&g)
    }

    pub fn ln(&self) -> Jet {
        let x0 = self.c[0];
        let mut g = [Complex64::new(0.0, 0.0); ORDER + 1];
        g[0] = x0.ln();
        let mut p = Complex64::new(1.0, 0.0);
        for (k, gk) in g.iter_mut().enumerate().skip(1) {
            p /= x0;
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            *gk = sign * p / k as f64;
        }
        self.compose(&g)
    }

    pub fn recip(&self) -> Jet {
        let x0 = self.c[0];
        let mut g = [Complex64::new(0.0, 0.0); ORDER + 1];
        let mut p = 1.0 / x0;
        g[0] = p;
        for gk in g.iter_mut().skip(1) {
            p = -p / x0;
            *gk = p;
        }
        self.compose(&g)
    }

    pub fn div(&self, other: &Jet) -> Jet {
        self.mul(&other.recip())
    }
}

/// Real partial derivatives of total order <= 6 extracted from a jet.
#[derive(Clone, Copy, Debug)]
pub struct PartialTable {
    d: [f64; LEN],
}

impl PartialTable {
    pub fn from_jet(jet: &Jet) -> Self {
        let mut d = [0.0; LEN];
        let mut fact = [1.0f64; ORDER + 1];
        for k in 1..=ORDER {
            fact[k] = fact[k - 1] * k as f64;
        }
        for i in 0..=ORDER {
            for j in 0..=(ORDER - i) {
                d[index(i, j)] = jet.c[index(i, j)].re * fact[i] * fact[j];
            }
        }
        PartialTable { d }
    }

    /// `d^{i+j} f / du^i dv^j` at the expansion point.
    #[inline]
    pub fn partial(&self, i: usize, j: usize) -> f64 {
        assert!(i + j <= ORDER, "partial order exceeds the jet order");
        self.d[index(i, j)]
    }

    pub fn f(&self) -> f64 {
        self.d[0]
    }
    pub fn fu(&self) -> f64 {
        self.partial(1, 0)
    }
    pub fn fv(&self) -> f64 {
        self.partial(0, 1)
    }
    pub fn fuu(&self) -> f64 {
        self.partial(2, 0)
    }
    pub fn fuv(&self) -> f64 {
        self.partial(1, 1)
    }
    pub fn fvv(&self) -> f64 {
        self.partial(0, 2)
    }
    pub fn fuuu(&self) -> f64 {
        self.partial(3, 0)
    }
    pub fn fuuv(&self) -> f64 {
        self.partial(2, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn polynomial_partials_exact() {
        // f = u^2 v + 3 u v^3
        let (u0, v0) = (1.3, -0.7);
        let u = Jet::var_u(u0);
        let v = Jet::var_v(v0);
        let f = u.mul(&u).mul(&v).add(&u.mul(&v).mul(&v).mul(&v).scale(c(3.0)));
        let t = PartialTable::from_jet(&f);
        assert!((t.f() - (u0 * u0 * v0 + 3.0 * u0 * v0.powi(3))).abs() < 1e-14);
        assert!((t.fu() - (2.0 * u0 * v0 + 3.0 * v0.powi(3))).abs() < 1e-14);
        assert!((t.fv() - (u0 * u0 + 9.0 * u0 * v0 * v0)).abs() < 1e-14);
        assert!((t.fuv() - (2.0 * u0 + 9.0 * v0 * v0)).abs() < 1e-13);
        assert!((t.partial(2, 1) - 2.0).abs() < 1e-13);
        assert!((t.partial(1, 3) - 18.0).abs() < 1e-13);
        assert!((t.partial(0, 3) - 18.0 * u0).abs() < 1e-13);
    }

    #[test]
    fn sqrt_log_match_finite_differences() {
        let f = |u: f64, v: f64| (u * u + v * v + 1.0).sqrt() * (u + 2.0 + v).ln();
        let build = |u0: f64, v0: f64| {
            let u = Jet::var_u(u0);
            let v = Jet::var_v(v0);
            u.mul(&u)
                .add(&v.mul(&v))
                .add_const(c(1.0))
                .sqrt()
                .mul(&u.add(&v).add_const(c(2.0)).ln())
        };
        let (u0, v0) = (0.8, 0.45);
        let t = PartialTable::from_jet(&build(u0, v0));
        let h = 1e-4;
        let fd_u = (f(u0 + h, v0) - f(u0 - h, v0)) / (2.0 * h);
        let fd_v = (f(u0, v0 + h) - f(u0, v0 - h)) / (2.0 * h);
        let fd_uv = (f(u0 + h, v0 + h) - f(u0 + h, v0 - h) - f(u0 - h, v0 + h)
            + f(u0 - h, v0 - h))
            / (4.0 * h * h);
        assert!((t.fu() - fd_u).abs() < 1e-7);
        assert!((t.fv() - fd_v).abs() < 1e-7);
        assert!((t.fuv() - fd_uv).abs() < 1e-6);
    }

    #[test]
    fn recip_is_multiplicative_inverse() {
        let u = Jet::var_u(2.0);
        let v = Jet::var_v(0.3);
        let g = u.mul(&v).add_const(c(1.5)).add(&v);
        let prod = g.mul(&g.recip());
        for k in 0..LEN {
            let want = if k == 0 { 1.0 } else { 0.0 };
            assert!((prod.c[k].re - want).abs() < 1e-13);
            assert!(prod.c[k].im.abs() < 1e-13);
        }
    }

    #[test]
    fn high_order_sqrt_derivative() {
        // d^6/du^6 sqrt(u) = (1/2)(−1/2)(−3/2)(−5/2)(−7/2)(−9/2) u^{-11/2}
        let u0: f64 = 1.7;
        let t = PartialTable::from_jet(&Jet::var_u(u0).sqrt());
        let want = 0.5 * (-0.5) * (-1.5) * (-2.5) * (-3.5) * (-4.5) * u0.powf(-5.5);
        assert!((t.partial(6, 0) - want).abs() < 1e-10 * want.abs());
    }
}
