//! Two-dimensional construction of the tritronquee solution on a sector
//! |arg zeta| <= phi_max, r_min <= |zeta| <= R by solving the Laplace
//! equation for its real and imaginary parts (the solution is holomorphic
//! there).
//!
//! The solve runs in log-polar coordinates `w = log zeta = s + i phi`, where
//! the sector becomes a rectangle and harmonicity is preserved by conformal
//! invariance. Chebyshev collocation in both `s` and `phi` is then well
//! conditioned; a grid clustered directly at `r = 0` is not, because the
//! polar Laplacian coefficients grow like `1/r^2` there. The small disk
//! `|zeta| < r_min` is covered by the Taylor expansion of the equation around
//! the origin, seeded with `Omega(0)`, `Omega'(0)` from an edge line solve.
//! Boundary data: truncated series on the outer arc, line solves on the
//! edges, the origin Taylor polynomial on the inner arc. Accuracy here is
//! diagnostic grade, below the one-dimensional solves: the pole lines of the
//! adjacent sectors hug the edges at angular distance ~0.05 and limit the
//! angular convergence rate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::line::{evaluate_omega, evaluate_omega_prime, solve_line, ComplexLine};
use super::series::AsymptoticSeries;
use super::PainleveError;
use crate::numerics::chebyshev::lobatto_nodes;
use crate::numerics::fornberg::differentiation_matrices;

/// Where each piece of boundary data came from.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundaryProvenance {
    pub outer_arc: &'static str,
    pub edges: &'static str,
    pub inner_arc: &'static str,
}

#[derive(Debug, Clone)]
pub struct SectorSolution {
    /// Radii `exp(s)` of the collocation circles, increasing.
    pub r_nodes: Vec<f64>,
    pub phi_nodes: Vec<f64>,
    /// omega[i][k] at (r_nodes[i], phi_nodes[k])
    pub omega: Vec<Vec<Complex64>>,
    pub max_abs: f64,
    /// max polar-Laplacian residual re-applied on interior nodes
    pub laplace_residual: f64,
    /// qualitative max |Omega'' - (6 Omega^2 - zeta)| via radial differentiation
    pub pi_residual: f64,
    pub boundary_provenance: BoundaryProvenance,
    /// Taylor coefficients of the solution at the origin (covers r < r_min)
    origin_taylor: Vec<Complex64>,
    inner_radius: f64,
}

pub struct SectorConfig {
    pub radius: f64,
    pub phi_max: f64,
    pub inner_radius: f64,
    pub n_radial: usize,
    pub n_angular: usize,
    pub corner_tol: f64,
    pub line_points: usize,
}

impl Default for SectorConfig {
    fn default() -> Self {
        SectorConfig {
            radius: 20.0,
            phi_max: 4.0 * std::f64::consts::PI / 5.0 - 0.05,
            inner_radius: 0.25,
            n_radial: 44,
            n_angular: 64,
            corner_tol: 1e-4,
            line_points: 4001,
        }
    }
}

/// Taylor coefficients of a Painleve-I solution around zeta = 0 given value
/// and derivative there: `(n+2)(n+1) c_{n+2} = 6 sum c_m c_{n-m} - [n = 1]`.
fn pi_taylor(c0: Complex64, c1: Complex64, order: usize) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
    c[0] = c0;
    c[1] = c1;
    for n in 0..order - 1 {
        let mut conv = Complex64::new(0.0, 0.0);
        for m in 0..=n {
            conv += c[m] * c[n - m];
        }
        let mut rhs = 6.0 * conv;
        if n == 1 {
            rhs -= 1.0;
        }
        c[n + 2] = rhs / ((n + 2) as f64 * (n + 1) as f64);
    }
    c
}

fn taylor_eval(c: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        acc = acc * z + ck;
    }
    acc
}

pub fn solve_sector(
    series: &AsymptoticSeries,
    cfg: &SectorConfig,
) -> Result<SectorSolution, PainleveError> {
    if cfg.radius <= 10.0 {
        return Err(PainleveError::BadBoundaryData("sector radius must exceed 10".into()));
    }
    if cfg.phi_max >= 4.0 * std::f64::consts::PI / 5.0 {
        return Err(PainleveError::BadBoundaryData(
            "phi_max must stay below 4 pi / 5".into(),
        ));
    }

    // edge line through the origin at angle +phi_max; the negative edge
    // follows from the conjugation symmetry Omega(conj zeta) = conj Omega(zeta)
    let edge_dir = Complex64::from_polar(1.0, cfg.phi_max);
    let edge_line = ComplexLine::new(
        edge_dir,
        Complex64::new(0.0, 0.0),
        cfg.radius + 2.0,
        cfg.line_points,
    )?;
    let edge = solve_line(&edge_line, series, 1e-11)?;

    // origin Taylor seed; d/dzeta = (d/dy) / a on the line
    let c0 = evaluate_omega(&edge, 0.0)?;
    let c1 = evaluate_omega_prime(&edge, 0.0)? / edge.line.direction();
    let taylor = pi_taylor(c0, c1, 12);

    let s_nodes = lobatto_nodes(cfg.n_radial, cfg.inner_radius.ln(), cfg.radius.ln());
    let r_nodes: Vec<f64> = s_nodes.iter().map(|s| s.exp()).collect();
    let nr = r_nodes.len();
    let phi_nodes = lobatto_nodes(cfg.n_angular, -cfg.phi_max, cfg.phi_max);
    let np = phi_nodes.len();

    let ds = differentiation_matrices(&s_nodes, 2);
    let dphi = differentiation_matrices(&phi_nodes, 2);

    // Dirichlet data
    let mut bdata = vec![vec![Complex64::new(0.0, 0.0); np]; nr];
    let mut is_boundary = vec![vec![false; np]; nr];
    for k in 0..np {
        is_boundary[0][k] = true;
        bdata[0][k] = taylor_eval(&taylor, Complex64::from_polar(cfg.inner_radius, phi_nodes[k]));
        is_boundary[nr - 1][k] = true;
        let z = Complex64::from_polar(cfg.radius, phi_nodes[k]);
        bdata[nr - 1][k] = series.evaluate(z)?.value;
    }
    for i in 0..nr {
        let w = evaluate_omega(&edge, r_nodes[i])?;
        is_boundary[i][np - 1] = true;
        bdata[i][np - 1] = w; // phi = +phi_max
        is_boundary[i][0] = true;
        bdata[i][0] = w.conj(); // phi = -phi_max by symmetry
    }

    // corner consistency: outer arc datum versus edge line at |zeta| = R,
    // inner arc versus the Taylor seed
    let corner_outer = (bdata[nr - 1][np - 1] - evaluate_omega(&edge, cfg.radius)?).norm();
    let corner_inner = (bdata[0][np - 1] - evaluate_omega(&edge, cfg.inner_radius)?).norm();
    let corner_gap = corner_outer.max(corner_inner);
    if corner_gap > cfg.corner_tol {
        return Err(PainleveError::BadBoundaryData(format!(
            "corner mismatch {corner_gap:.3e} exceeds {:.1e}",
            cfg.corner_tol
        )));
    }

    // strip Laplacian u_ss + u_phiphi = 0 with identity rows on the boundary
    let n = nr * np;
    let idx = |i: usize, k: usize| i * np + k;
    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut rhs_re = DVector::<f64>::zeros(n);
    let mut rhs_im = DVector::<f64>::zeros(n);
    for i in 0..nr {
        for k in 0..np {
            let row = idx(i, k);
            if is_boundary[i][k] {
                a[(row, row)] = 1.0;
                rhs_re[row] = bdata[i][k].re;
                rhs_im[row] = bdata[i][k].im;
            } else {
                for j in 0..nr {
                    a[(row, idx(j, k))] += ds[1][i][j];
                }
                for l in 0..np {
                    a[(row, idx(i, l))] += dphi[1][k][l];
                }
            }
        }
    }

    let lu = a.lu();
    let sol_re = lu
        .solve(&rhs_re)
        .ok_or_else(|| PainleveError::BadBoundaryData("singular sector system".into()))?;
    let sol_im = lu
        .solve(&rhs_im)
        .ok_or_else(|| PainleveError::BadBoundaryData("singular sector system".into()))?;

    let mut omega = vec![vec![Complex64::new(0.0, 0.0); np]; nr];
    let mut max_abs: f64 = 0.0;
    for i in 0..nr {
        for k in 0..np {
            let w = Complex64::new(sol_re[idx(i, k)], sol_im[idx(i, k)]);
            omega[i][k] = w;
            max_abs = max_abs.max(w.norm());
        }
    }

    // residual of the polar Laplacian, re-applied (conformal factor 1/r^2)
    let mut laplace_residual: f64 = 0.0;
    for i in 1..nr - 1 {
        for k in 1..np - 1 {
            let mut lap = Complex64::new(0.0, 0.0);
            for j in 0..nr {
                lap += ds[1][i][j] * omega[j][k];
            }
            for l in 0..np {
                lap += dphi[1][k][l] * omega[i][l];
            }
            laplace_residual = laplace_residual.max(lap.norm() / (r_nodes[i] * r_nodes[i]));
        }
    }

    // qualitative Painleve-I residual: Omega holomorphic in w = log zeta, so
    // Omega_zetazeta = e^{-2w} (Omega_ww - Omega_w) with d/dw taken along s.
    // Measured away from the boundaries, where double differentiation of the
    // collocation field is meaningful.
    let mut pi_residual: f64 = 0.0;
    for k in 1..np - 1 {
        if phi_nodes[k].abs() > cfg.phi_max - 0.3 {
            continue;
        }
        for i in 1..nr - 1 {
            if r_nodes[i] < 1.0 {
                continue;
            }
            let mut d1 = Complex64::new(0.0, 0.0);
            let mut d2 = Complex64::new(0.0, 0.0);
            for j in 0..nr {
                d1 += ds[0][i][j] * omega[j][k];
                d2 += ds[1][i][j] * omega[j][k];
            }
            let z = Complex64::from_polar(r_nodes[i], phi_nodes[k]);
            let lhs = (d2 - d1) / (z * z);
            let res = (lhs - (6.0 * omega[i][k] * omega[i][k] - z)).norm();
            pi_residual = pi_residual.max(res);
        }
    }

    Ok(SectorSolution {
        r_nodes,
        phi_nodes,
        omega,
        max_abs,
        laplace_residual,
        pi_residual,
        boundary_provenance: BoundaryProvenance {
            outer_arc: "truncated asymptotic series",
            edges: "line boundary value solves",
            inner_arc: "origin Taylor expansion seeded by the edge line",
        },
        origin_taylor: taylor,
        inner_radius: cfg.inner_radius,
    })
}

impl SectorSolution {
    /// Interpolate the sector field at `zeta`. Barycentric in (log r, phi)
    /// inside the collocation rectangle, origin Taylor polynomial below the
    /// inner radius.
    pub fn eval(&self, zeta: Complex64) -> Result<Complex64, PainleveError> {
        let r = zeta.norm();
        if r < self.inner_radius {
            return Ok(taylor_eval(&self.origin_taylor, zeta));
        }
        let phi = zeta.arg();
        let rmax = *self.r_nodes.last().unwrap();
        let pmax = *self.phi_nodes.last().unwrap();
        if r > rmax * (1.0 + 1e-12) || phi.abs() > pmax + 1e-12 {
            return Err(PainleveError::RotationDomain);
        }
        let s_nodes: Vec<f64> = self.r_nodes.iter().map(|r| r.ln()).collect();
        let pw = poly_weights(&self.phi_nodes);
        let sw = poly_weights(&s_nodes);
        let mut radial_vals = Vec::with_capacity(s_nodes.len());
        for i in 0..s_nodes.len() {
            radial_vals.push(bary_c(&self.phi_nodes, &pw, &self.omega[i], phi));
        }
        Ok(bary_c(&s_nodes, &sw, &radial_vals, r.ln()))
    }
}

fn poly_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut w = vec![1.0; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                w[i] /= nodes[i] - nodes[j];
            }
        }
    }
    // rescale to avoid under/overflow in the quotient formula
    let m = w.iter().map(|x| x.abs()).fold(0.0, f64::max);
    w.iter_mut().for_each(|x| *x /= m);
    w
}

fn bary_c(nodes: &[f64], weights: &[f64], values: &[Complex64], x: f64) -> Complex64 {
    let mut num = Complex64::new(0.0, 0.0);
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sector_is_pole_free_and_matches_line() {
        let series = AsymptoticSeries::new(30);
        let cfg = SectorConfig::default();
        let sol = solve_sector(&series, &cfg).unwrap();
        assert!(sol.max_abs < 1e3, "max |Omega| = {}", sol.max_abs);
        assert!(sol.laplace_residual < 1e-5, "laplace residual {}", sol.laplace_residual);

        // cross-method agreement on the imaginary axis
        let line = ComplexLine::new(Complex64::i(), Complex64::new(0.0, 0.0), 22.0, 3001).unwrap();
        let lsol = solve_line(&line, &series, 1e-11).unwrap();
        let mut worst: f64 = 0.0;
        for y in [0.1, 1.0, 3.0, 7.5, 12.0, 18.0] {
            let field = sol.eval(Complex64::new(0.0, y)).unwrap();
            let exact = evaluate_omega(&lsol, y).unwrap();
            worst = worst.max((field - exact).norm());
        }
        assert!(worst < 1e-3, "sector vs line gap {worst}");

        // conjugation symmetry of the computed field
        let np = sol.phi_nodes.len();
        for i in [2, sol.r_nodes.len() / 2] {
            for k in 0..np / 2 {
                let gap = (sol.omega[i][k] - sol.omega[i][np - 1 - k].conj()).norm();
                assert!(gap < 1e-4, "conjugation gap {gap}");
            }
        }
    }
}
