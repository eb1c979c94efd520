//! Boundary value solve of Painleve-I along a straight line in the complex
//! plane, with asymptotic boundary data from the truncated series.
//!
//! The equation `Omega'' = 6 Omega^2 - zeta` restricted to `zeta = a y + b`
//! becomes `d^2 Omega / dy^2 = a^2 (6 Omega^2 - zeta(y))`. It is written as a
//! first order system and discretized by three-point Lobatto IIIA collocation
//! (the scheme underlying cubic-polynomial collocation BVP codes), then
//! solved by damped Newton iteration on a banded Jacobian. The initial guess
//! is `Omega = -sqrt(zeta/6)`.

use num_complex::Complex64;

use super::series::{AsymptoticSeries, SECTOR_HALF_ANGLE};
use super::PainleveError;
use crate::numerics::banded::BandMatrix;
use crate::numerics::fornberg::fornberg_weights;

/// Straight line `zeta = a y + b`, canonicalized to `|a| = 1`, `Im a >= 0`
/// (and `Re a > 0` when `Im a = 0`).
#[derive(Debug, Clone, Copy)]
pub struct ComplexLine {
    a: Complex64,
    b: Complex64,
    y0: f64,
    n_points: usize,
}

impl ComplexLine {
    pub fn new(a: Complex64, b: Complex64, y0: f64, n_points: usize) -> Result<Self, PainleveError> {
        if a.norm() == 0.0 {
            return Err(PainleveError::LineDomain("direction a must be nonzero".into()));
        }
        if y0 <= 0.0 {
            return Err(PainleveError::LineDomain("half length y0 must be positive".into()));
        }
        if n_points < 16 {
            return Err(PainleveError::LineDomain("need at least 16 points".into()));
        }
        let mut a = a / a.norm();
        if a.im < 0.0 || (a.im == 0.0 && a.re < 0.0) {
            a = -a;
        }
        Ok(ComplexLine { a, b, y0, n_points })
    }

    pub fn direction(&self) -> Complex64 {
        self.a
    }

    pub fn offset(&self) -> Complex64 {
        self.b
    }

    pub fn half_length(&self) -> f64 {
        self.y0
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn zeta(&self, y: f64) -> Complex64 {
        self.a * y + self.b
    }

    /// Both endpoints must lie in the sector where the asymptotic condition
    /// is meaningful.
    pub fn endpoints_valid(&self, min_radius: f64) -> Result<(), PainleveError> {
        for y in [-self.y0, self.y0] {
            let z = self.zeta(y);
            if z.norm() < min_radius {
                return Err(PainleveError::LineDomain(format!(
                    "endpoint |zeta| = {:.3} below series radius {min_radius}",
                    z.norm()
                )));
            }
            if z.arg().abs() >= SECTOR_HALF_ANGLE {
                return Err(PainleveError::LineDomain(format!(
                    "endpoint arg zeta = {:.4} outside |arg| < 4 pi / 5",
                    z.arg()
                )));
            }
        }
        Ok(())
    }
}

/// Solved tritronquee restriction to a line: grid values of `Omega`,
/// `dOmega/dy`, and an independently measured equation residual per node.
#[derive(Debug, Clone)]
pub struct TritronqueeLine {
    pub line: ComplexLine,
    pub y_grid: Vec<f64>,
    pub omega: Vec<Complex64>,
    pub omega_prime: Vec<Complex64>,
    /// |Omega'' - a^2 (6 Omega^2 - zeta)| recomputed by finite differences.
    pub residual: Vec<f64>,
    pub residual_norm: f64,
}

struct Collocation<'a> {
    line: &'a ComplexLine,
    y: Vec<f64>,
    bc_left: Complex64,
    bc_right: Complex64,
}

impl<'a> Collocation<'a> {
    fn rhs(&self, y: f64, omega: Complex64) -> Complex64 {
        let a2 = self.line.a * self.line.a;
        a2 * (6.0 * omega * omega - self.line.zeta(y))
    }

    /// d(rhs)/d(omega)
    fn rhs_jac(&self, omega: Complex64) -> Complex64 {
        12.0 * self.line.a * self.line.a * omega
    }

    /// Residual of all collocation equations for the stacked unknowns
    /// `[Omega_0, Omega'_0, ..., Omega_{n-1}, Omega'_{n-1}]`.
    fn residual(&self, u: &[Complex64]) -> Vec<Complex64> {
        let n = self.y.len();
        let mut r = vec![Complex64::new(0.0, 0.0); 2 * n];
        r[0] = u[0] - self.bc_left;
        for i in 0..n - 1 {
            let h = self.y[i + 1] - self.y[i];
            let ym = 0.5 * (self.y[i] + self.y[i + 1]);
            let (w_i, wp_i) = (u[2 * i], u[2 * i + 1]);
            let (w_j, wp_j) = (u[2 * i + 2], u[2 * i + 3]);
            let f_i = (wp_i, self.rhs(self.y[i], w_i));
            let f_j = (wp_j, self.rhs(self.y[i + 1], w_j));
            let wm = 0.5 * (w_i + w_j) + h / 8.0 * (f_i.0 - f_j.0);
            let wpm = 0.5 * (wp_i + wp_j) + h / 8.0 * (f_i.1 - f_j.1);
            let f_m = (wpm, self.rhs(ym, wm));
            r[2 * i + 1] = w_j - w_i - h / 6.0 * (f_i.0 + 4.0 * f_m.0 + f_j.0);
            r[2 * i + 2] = wp_j - wp_i - h / 6.0 * (f_i.1 + 4.0 * f_m.1 + f_j.1);
        }
        r[2 * n - 1] = u[2 * n - 2] - self.bc_right;
        r
    }

    /// Banded Jacobian of `residual` (kl = ku = 2 with the stacked ordering).
    fn jacobian(&self, u: &[Complex64]) -> BandMatrix {
        let n = self.y.len();
        let one = Complex64::new(1.0, 0.0);
        let mut jac = BandMatrix::zeros(2 * n, 2, 2);
        jac.set(0, 0, one);
        for i in 0..n - 1 {
            let h = self.y[i + 1] - self.y[i];
            let (w_i, wp_i) = (u[2 * i], u[2 * i + 1]);
            let (w_j, wp_j) = (u[2 * i + 2], u[2 * i + 3]);
            let gi = self.rhs_jac(w_i);
            let gj = self.rhs_jac(w_j);
            let wm = 0.5 * (w_i + w_j) + h / 8.0 * (wp_i - wp_j);
            let gm = self.rhs_jac(wm);

            // midpoint sensitivities:
            // d wm / d w_i = 1/2, d wm / d wp_i = h/8, d wm / d w_j = 1/2, d wm / d wp_j = -h/8
            // d wpm / d w_i = (h/8) gi, d wpm / d wp_i = 1/2, and mirrored for node j

            // Equation A (row 2i+1): w_j - w_i - h/6 (wp_i + 4 wpm + wp_j)
            // wpm = 1/2 (wp_i + wp_j) + h/8 (f_i1 - f_j1)
            let r = 2 * i + 1;
            jac.set(r, 2 * i, -one - h / 6.0 * (4.0 * (h / 8.0) * gi)); // d/d w_i
            jac.set(r, 2 * i + 1, -(h / 6.0) * (one + 4.0 * 0.5 * one)); // d/d wp_i
            jac.set(r, 2 * i + 2, one - h / 6.0 * (4.0 * (-h / 8.0) * gj)); // d/d w_j
            jac.set(r, 2 * i + 3, -(h / 6.0) * (one + 4.0 * 0.5 * one)); // d/d wp_j

            // Equation B (row 2i+2): wp_j - wp_i - h/6 (f_i1 + 4 f_m1 + f_j1)
            // f_m1 = rhs(ym, wm), d f_m1 / d x = gm * d wm / d x
            let r = 2 * i + 2;
            jac.set(r, 2 * i, -(h / 6.0) * (gi + 4.0 * gm * 0.5));
            jac.set(r, 2 * i + 1, -one - (h / 6.0) * (4.0 * gm * (h / 8.0)));
            jac.set(r, 2 * i + 2, -(h / 6.0) * (gj + 4.0 * gm * 0.5));
            jac.set(r, 2 * i + 3, one - (h / 6.0) * (4.0 * gm * (-h / 8.0)));
        }
        jac.set(2 * n - 1, 2 * n - 2, one);
        jac
    }
}

fn inf_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Solve the tritronquee boundary value problem on `line` to tolerance `tol`
/// (Newton residual, absolute on the collocation equations).
pub fn solve_line(
    line: &ComplexLine,
    series: &AsymptoticSeries,
    tol: f64,
) -> Result<TritronqueeLine, PainleveError> {
    line.endpoints_valid(8.0)?;
    // plain Newton from the square-root guess first; on failure grow the
    // interval from y0 = 3 reusing each solution as the next guess
    match solve_on_interval(line, series, tol, None) {
        Ok(sol) => Ok(sol),
        Err(PainleveError::NewtonFailed { .. }) => {
            let mut y0 = 3.0_f64.min(line.y0);
            let mut prev: Option<TritronqueeLine> = None;
            loop {
                let n = ((line.n_points as f64) * y0 / line.y0).ceil() as usize;
                let sub = ComplexLine::new(line.a, line.b, y0, n.max(64))?;
                let sol = solve_on_interval(&sub, series, tol, prev.as_ref())?;
                if y0 >= line.y0 {
                    return Ok(sol);
                }
                prev = Some(sol);
                y0 = (y0 * 1.6).min(line.y0);
            }
        }
        Err(e) => Err(e),
    }
}

fn solve_on_interval(
    line: &ComplexLine,
    series: &AsymptoticSeries,
    tol: f64,
    warm: Option<&TritronqueeLine>,
) -> Result<TritronqueeLine, PainleveError> {
    let n = line.n_points;
    let y: Vec<f64> = (0..n)
        .map(|i| -line.y0 + 2.0 * line.y0 * i as f64 / (n - 1) as f64)
        .collect();

    // boundary data from the truncated series; relax the radius during
    // continuation where endpoints may sit inside |zeta| = 10
    let bc_left = series.evaluate_with_radius(line.zeta(-line.y0), 1.0)?.value;
    let bc_right = series.evaluate_with_radius(line.zeta(line.y0), 1.0)?.value;
    let coll = Collocation { line, y: y.clone(), bc_left, bc_right };

    let mut u = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (i, &yi) in y.iter().enumerate() {
        let z = line.zeta(yi);
        let (w, wp) = match warm {
            Some(sol) if yi.abs() <= sol.line.y0 => {
                let w = hermite_eval(sol, yi).expect("warm start in range");
                (w.0, w.1)
            }
            _ => {
                let s = (z / 6.0).sqrt();
                // guard the branch point zeta = 0; the guess only needs to be smooth
                let s = if z.norm() < 1e-8 { Complex64::new(0.0, 0.0) } else { s };
                let sp = if z.norm() < 1e-8 {
                    Complex64::new(0.0, 0.0)
                } else {
                    line.a * s / (2.0 * z)
                };
                (-s, -sp)
            }
        };
        u[2 * i] = w;
        u[2 * i + 1] = wp;
    }

    let mut r = coll.residual(&u);
    let mut rnorm = inf_norm(&r);
    let max_iter = 40;
    for _ in 0..max_iter {
        if rnorm <= tol {
            break;
        }
        let jac = coll.jacobian(&u);
        let mut delta: Vec<Complex64> = r.iter().map(|c| -c).collect();
        jac.solve_in_place(&mut delta)
            .map_err(|e| PainleveError::LineDomain(format!("singular collocation Jacobian: {e}")))?;
        // damped update: halve until the residual decreases
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..25 {
            let trial: Vec<Complex64> =
                u.iter().zip(&delta).map(|(ui, di)| ui + lambda * di).collect();
            let rt = coll.residual(&trial);
            let nt = inf_norm(&rt);
            if nt < rnorm {
                u = trial;
                r = rt;
                rnorm = nt;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(PainleveError::NewtonFailed { residual: rnorm, iterations: max_iter });
        }
    }
    if rnorm > tol {
        return Err(PainleveError::NewtonFailed { residual: rnorm, iterations: max_iter });
    }

    let omega: Vec<Complex64> = (0..n).map(|i| u[2 * i]).collect();
    let omega_prime: Vec<Complex64> = (0..n).map(|i| u[2 * i + 1]).collect();
    let residual = equation_residual(line, &y, &omega);
    let residual_norm = residual.iter().copied().fold(0.0, f64::max);
    Ok(TritronqueeLine {
        line: *line,
        y_grid: y,
        omega,
        omega_prime,
        residual,
        residual_norm,
    })
}

/// Independent check: differentiate the solved `Omega` values by high-order
/// finite differences and measure `|Omega'' - a^2 (6 Omega^2 - zeta)|`.
fn equation_residual(line: &ComplexLine, y: &[f64], omega: &[Complex64]) -> Vec<f64> {
    let n = y.len();
    let h = y[1] - y[0];
    let a2 = line.a * line.a;
    let mut res = vec![0.0; n];
    // 6th order central stencil for the interior
    let c = [1.0 / 90.0, -3.0 / 20.0, 1.5, -49.0 / 18.0, 1.5, -3.0 / 20.0, 1.0 / 90.0];
    for i in 0..n {
        let d2 = if (3..n - 3).contains(&i) {
            let mut s = Complex64::new(0.0, 0.0);
            for (k, &ck) in c.iter().enumerate() {
                s += ck * omega[i + k - 3];
            }
            s / (h * h)
        } else {
            // one-sided 8-node stencil near the ends
            let lo = if i < 3 { 0 } else { n - 8 };
            let nodes: Vec<f64> = y[lo..lo + 8].to_vec();
            let w = fornberg_weights(&nodes, y[i], 2);
            let mut s = Complex64::new(0.0, 0.0);
            for (k, &wk) in w[2].iter().enumerate() {
                s += wk * omega[lo + k];
            }
            s
        };
        let rhs = a2 * (6.0 * omega[i] * omega[i] - line.zeta(y[i]));
        res[i] = (d2 - rhs).norm();
    }
    res
}

fn hermite_eval(sol: &TritronqueeLine, y: f64) -> Option<(Complex64, Complex64)> {
    let grid = &sol.y_grid;
    let n = grid.len();
    if y < grid[0] - 1e-12 || y > grid[n - 1] + 1e-12 {
        return None;
    }
    let h = grid[1] - grid[0];
    let mut i = (((y - grid[0]) / h).floor() as usize).min(n - 2);
    if y < grid[i] {
        i = i.saturating_sub(1);
    }
    let t = ((y - grid[i]) / h).clamp(0.0, 1.0);
    let (w0, w1) = (sol.omega[i], sol.omega[i + 1]);
    let (d0, d1) = (sol.omega_prime[i], sol.omega_prime[i + 1]);
    let t2 = t * t;
    let t3 = t2 * t;
    let value = (2.0 * t3 - 3.0 * t2 + 1.0) * w0
        + (t3 - 2.0 * t2 + t) * h * d0
        + (-2.0 * t3 + 3.0 * t2) * w1
        + (t3 - t2) * h * d1;
    let dvalue = ((6.0 * t2 - 6.0 * t) * w0
        + (3.0 * t2 - 4.0 * t + 1.0) * h * d0
        + (-6.0 * t2 + 6.0 * t) * w1
        + (3.0 * t2 - 2.0 * t) * h * d1)
        / h;
    Some((value, dvalue))
}

/// Cubic Hermite interpolation of the solved line at parameter `y`.
pub fn evaluate_omega(sol: &TritronqueeLine, y: f64) -> Result<Complex64, PainleveError> {
    hermite_eval(sol, y)
        .map(|(w, _)| w)
        .ok_or(PainleveError::OutOfRange { y, y0: sol.line.y0 })
}

/// Interpolated derivative `dOmega/dy` along the line.
pub fn evaluate_omega_prime(sol: &TritronqueeLine, y: f64) -> Result<Complex64, PainleveError> {
    hermite_eval(sol, y)
        .map(|(_, d)| d)
        .ok_or(PainleveError::OutOfRange { y, y0: sol.line.y0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series() -> AsymptoticSeries {
        AsymptoticSeries::new(30)
    }

    #[test]
    fn imaginary_axis_residuals() {
        let line = ComplexLine::new(Complex64::i(), Complex64::new(0.0, 0.0), 10.0, 2001).unwrap();
        let sol = solve_line(&line, &series(), 1e-12).unwrap();
        // boundary region
        assert!(sol.residual_norm < 1e-6, "residual norm {}", sol.residual_norm);
        // interior nodes should be far better than the edges
        let n = sol.y_grid.len();
        let interior = sol.residual[8..n - 8].iter().copied().fold(0.0, f64::max);
        assert!(interior < 1e-7, "interior residual {interior}");
    }

    #[test]
    fn real_axis_solution_is_real() {
        let line = ComplexLine::new(Complex64::new(1.0, 0.0), Complex64::new(20.0, 0.0), 5.0, 301)
            .unwrap();
        let sol = solve_line(&line, &series(), 1e-12).unwrap();
        for w in &sol.omega {
            assert!(w.im.abs() < 1e-12, "imaginary part {}", w.im);
        }
    }

    #[test]
    fn conjugate_lines_give_conjugate_solutions() {
        let a = Complex64::from_polar(1.0, 2.0);
        let b = Complex64::new(0.5, 0.2);
        let line = ComplexLine::new(a, b, 12.0, 801).unwrap();
        let conj = ComplexLine::new(a.conj(), b.conj(), 12.0, 801).unwrap();
        let s = series();
        let sol = solve_line(&line, &s, 1e-12).unwrap();
        let sol_c = solve_line(&conj, &s, 1e-12).unwrap();
        // canonicalization flips the conjugated direction, so node i pairs
        // with node n-1-i of the conjugate solve
        let n = sol.y_grid.len();
        for i in [0, n / 4, n / 2, 3 * n / 4, n - 1] {
            let j = n - 1 - i;
            assert!((sol_c.line.zeta(sol_c.y_grid[j]) - sol.line.zeta(sol.y_grid[i]).conj()).norm() < 1e-9);
            assert!((sol.omega[i].conj() - sol_c.omega[j]).norm() < 1e-8);
        }
    }

    #[test]
    fn interpolation_reproduces_nodes_and_midpoints() {
        let line = ComplexLine::new(Complex64::i(), Complex64::new(0.0, 0.0), 10.0, 1001).unwrap();
        let s = series();
        let sol = solve_line(&line, &s, 1e-12).unwrap();
        let k = 400;
        assert_eq!(evaluate_omega(&sol, sol.y_grid[k]).unwrap(), sol.omega[k]);

        let fine = ComplexLine::new(Complex64::i(), Complex64::new(0.0, 0.0), 10.0, 2001).unwrap();
        let sol_f = solve_line(&fine, &s, 1e-12).unwrap();
        let ymid = 0.5 * (sol.y_grid[k] + sol.y_grid[k + 1]);
        let coarse = evaluate_omega(&sol, ymid).unwrap();
        let refined = evaluate_omega(&sol_f, ymid).unwrap();
        assert!((coarse - refined).norm() < 1e-9);
    }

    #[test]
    fn out_of_range_is_error() {
        let line = ComplexLine::new(Complex64::i(), Complex64::new(0.0, 0.0), 10.0, 201).unwrap();
        let sol = solve_line(&line, &series(), 1e-10).unwrap();
        assert!(matches!(
            evaluate_omega(&sol, 10.5),
            Err(PainleveError::OutOfRange { .. })
        ));
    }
}
