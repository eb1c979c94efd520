//! Local description of the solution near the critical point: the scaled
//! profile functions R, P0, Q0, the quadratic-root representation, the far
//! field and the cusp.

use num_complex::Complex64;

use super::critical::CriticalPoint;
use super::HodographError;

/// Rescaled local coordinates. `X` and `S` are the parabolic-scaling
/// variables, `T` the time offset from the critical time.
#[derive(Debug, Clone, Copy)]
pub struct LocalCoords {
    pub x_scaled: f64,
    pub s_scaled: f64,
    pub t_offset: f64,
}

impl LocalCoords {
    /// The profile formulas degenerate where `(S + cos psi)^2 + (X + sin psi)^2 = 0`.
    pub fn restriction_ok(&self, psi: f64) -> bool {
        let a = self.s_scaled + psi.cos();
        let b = self.x_scaled + psi.sin();
        a * a + b * b > 1e-28
    }
}

/// Build local coordinates from global ones:
/// `X = 2 sqrt(u0) (x - x0 - v0 tbar) / (r tbar^2)`,
/// `S = 2 (s - s0 - u0 tbar) / (r tbar^2)`, `T = tbar`.
pub fn local_coords(cp: &CriticalPoint, x: f64, s: f64, t: f64) -> LocalCoords {
    let tbar = t - cp.t0;
    let denom = cp.r * tbar * tbar;
    LocalCoords {
        x_scaled: 2.0 * cp.u0.sqrt() * (x - cp.x0 - cp.v0 * tbar) / denom,
        s_scaled: 2.0 * (s - cp.s0 - cp.u0 * tbar) / denom,
        t_offset: tbar,
    }
}

/// The profile triple (R, P0, Q0) of the local solution.
pub fn local_r_p0_q0(coords: &LocalCoords, psi: f64) -> Result<(f64, f64, f64), HodographError> {
    let (x, s) = (coords.x_scaled, coords.s_scaled);
    let (sp, cp_) = psi.sin_cos();
    if cp_.abs() < 1e-12 {
        return Err(HodographError::DegeneratePsi { psi });
    }
    if !coords.restriction_ok(psi) {
        return Err(HodographError::SingularLocalInput { x, s });
    }
    let lin = x * sp + s * cp_;
    let inner = 1.0 + 2.0 * lin + x * x + s * s;
    if inner < 0.0 {
        return Err(HodographError::SingularLocalInput { x, s });
    }
    let root = (1.0 + lin + inner.sqrt()).max(0.0).sqrt();
    let r = cp_.signum() * root;
    let cross = x * cp_ - s * sp;
    let inv2 = 0.5f64.sqrt();
    let p0 = inv2 * (r * cp_ - cross * sp / r) - cp_;
    let q0 = inv2 * (cross * cp_ / r + r * sp) - sp;
    Ok((r, p0, q0))
}

/// Local approximation of the solution:
/// `u = u0 + r T P0(X, S, psi)`, `v = v0 + (r / sqrt u0) T Q0(X, S, psi)`.
pub fn local_solution(
    cp: &CriticalPoint,
    x: f64,
    s: f64,
    t: f64,
) -> Result<(f64, f64), HodographError> {
    let coords = local_coords(cp, x, s, t);
    let (_, p0, q0) = local_r_p0_q0(&coords, cp.psi)?;
    let u = cp.u0 + cp.r * coords.t_offset * p0;
    let v = cp.v0 + cp.r / cp.u0.sqrt() * coords.t_offset * q0;
    Ok((u, v))
}

/// The selected root of the limiting quadratic equation,
/// `w = r tbar e^{i psi} [sqrt(1 + e^{-i psi}(S + i X)) - 1]`, principal
/// branch continued from positive reals.
pub fn quadratic_root_w(
    x_scaled: f64,
    s_scaled: f64,
    psi: f64,
    tbar: f64,
    r: f64,
) -> Result<Complex64, HodographError> {
    if tbar >= 0.0 {
        return Err(HodographError::Parameter("quadratic root requires tbar < 0".into()));
    }
    let coords = LocalCoords { x_scaled, s_scaled, t_offset: tbar };
    if !coords.restriction_ok(psi) {
        return Err(HodographError::SingularLocalInput { x: x_scaled, s: s_scaled });
    }
    let eip = Complex64::from_polar(1.0, psi);
    let arg = 1.0 + eip.conj() * Complex64::new(s_scaled, x_scaled);
    Ok(r * tbar * eip * (arg.sqrt() - 1.0))
}

/// Side of the local chart for the far-field expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Leading far-field behaviour of the local solution in the chart variable
/// `x = xbar - v0 tbar` (constant terms included, O(1/sqrt|x|) dropped):
/// `u = -sqrt(r|x|) u0^{1/4} sqrt(1 -+ sin psi) + u0 - r tbar cos psi`,
/// `v = -+ sqrt(r|x|)/u0^{1/4} sign(cos psi) sqrt(1 +- sin psi) + v0 - (r/sqrt u0) tbar sin psi`.
pub fn far_field(cp: &CriticalPoint, x: f64, tbar: f64, side: Side) -> (f64, f64) {
    let (sp, cpsi) = cp.psi.sin_cos();
    let root = (cp.r * x.abs()).sqrt();
    let q = cp.u0.powf(0.25);
    let (su, sv, sign) = match side {
        Side::Plus => ((1.0 - sp).sqrt(), (1.0 + sp).sqrt(), -1.0),
        Side::Minus => ((1.0 + sp).sqrt(), (1.0 - sp).sqrt(), 1.0),
    };
    let u = -root * q * su + cp.u0 - cp.r * tbar * cpsi;
    let v = sign * root / q * cpsi.signum() * sv + cp.v0 - cp.r / cp.u0.sqrt() * tbar * sp;
    (u, v)
}

/// Cusp profile at the critical time in the chart `xhat = sqrt(u0)(xbar - v0 tbar)`:
/// `u = u0 - sqrt(r |xhat|) sqrt(1 -+ sin psi)` with the upper sign for `xhat > 0`.
pub fn cusp_profile(cp: &CriticalPoint, xhat: f64) -> f64 {
    let s = if xhat > 0.0 { 1.0 - cp.psi.sin() } else { 1.0 + cp.psi.sin() };
    cp.u0 - (cp.r * xhat.abs()).sqrt() * s.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp_sy() -> CriticalPoint {
        CriticalPoint { x0: 0.0, s0: 0.0, t0: 0.5, u0: 2.0, v0: 0.0, r: 4.0, psi: 0.0 }
    }

    #[test]
    fn profile_vanishes_at_origin() {
        for psi in [0.0, 0.4, -1.1] {
            let c = LocalCoords { x_scaled: 0.0, s_scaled: 0.0, t_offset: -0.1 };
            let (r, p0, q0) = local_r_p0_q0(&c, psi).unwrap();
            assert!((r - 2.0f64.sqrt()).abs() < 1e-14);
            assert!(p0.abs() < 1e-14);
            assert!(q0.abs() < 1e-14);
        }
    }

    #[test]
    fn profile_hand_value_psi_zero() {
        let c = LocalCoords { x_scaled: 1.0, s_scaled: 0.0, t_offset: -0.1 };
        let (r, _, _) = local_r_p0_q0(&c, 0.0).unwrap();
        assert!((r - (1.0 + 2.0f64.sqrt()).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn symmetry_x_flip_at_psi_zero() {
        let a = LocalCoords { x_scaled: 0.7, s_scaled: 0.3, t_offset: -0.1 };
        let b = LocalCoords { x_scaled: -0.7, s_scaled: 0.3, t_offset: -0.1 };
        let (ra, pa, qa) = local_r_p0_q0(&a, 0.0).unwrap();
        let (rb, pb, qb) = local_r_p0_q0(&b, 0.0).unwrap();
        assert!((ra - rb).abs() < 1e-14);
        assert!((pa - pb).abs() < 1e-14);
        assert!((qa + qb).abs() < 1e-14);
    }

    #[test]
    fn degenerate_psi_rejected() {
        let c = LocalCoords { x_scaled: 0.1, s_scaled: 0.1, t_offset: -0.1 };
        assert!(matches!(
            local_r_p0_q0(&c, std::f64::consts::FRAC_PI_2),
            Err(HodographError::DegeneratePsi { .. })
        ));
    }

    #[test]
    fn quadratic_root_solves_the_quadratic() {
        // z = tbar w + a w^2 / 2 with z = r tbar^2 (S + i X)/2, a = e^{-i psi}/r
        for (x, s, psi, tbar, r) in [
            (0.3, -0.2, 0.5, -0.05, 4.0),
            (1.5, 0.8, -0.9, -0.3, 32.0),
            (0.0, 0.0, 0.2, -0.1, 4.0),
        ] {
            let w = quadratic_root_w(x, s, psi, tbar, r).unwrap();
            let a = Complex64::from_polar(1.0 / r, -psi);
            let z = 0.5 * r * tbar * tbar * Complex64::new(s, x);
            let resid = (tbar * w + 0.5 * a * w * w - z).norm();
            assert!(resid < 1e-12, "residual {resid}");
        }
    }

    #[test]
    fn quadratic_root_matches_profile_decomposition() {
        // w = r tbar (P0 + i Q0)
        let (x, s, psi, tbar, r) = (0.6, -0.4, 0.35, -0.12, 4.0);
        let w = quadratic_root_w(x, s, psi, tbar, r).unwrap();
        let c = LocalCoords { x_scaled: x, s_scaled: s, t_offset: tbar };
        let (_, p0, q0) = local_r_p0_q0(&c, psi).unwrap();
        assert!((w.re - r * tbar * p0).abs() < 1e-12);
        assert!((w.im - r * tbar * q0).abs() < 1e-12);
    }

    #[test]
    fn local_solution_at_center_returns_critical_values() {
        let cp = cp_sy();
        let tbar = -0.02;
        let (u, v) = local_solution(&cp, cp.x0 + cp.v0 * tbar, cp.s0 + cp.u0 * tbar, cp.t0 + tbar)
            .unwrap();
        assert!((u - cp.u0).abs() < 1e-12);
        assert!((v - cp.v0).abs() < 1e-12);
    }

    #[test]
    fn local_maximum_bound_holds() {
        // physical NLS slice s = 0: the unscaled S variable equals -u0 tbar > 0
        let cp = cp_sy();
        let psi = cp.psi;
        let tbar = -0.05;
        let s_unscaled = -cp.u0 * tbar;
        let s_scaled = 2.0 * s_unscaled / (cp.r * tbar * tbar);
        let mut best = f64::NEG_INFINITY;
        let mut best_x = f64::NAN;
        for k in -4000..=4000 {
            let x_scaled = k as f64 * 0.01;
            let c = LocalCoords { x_scaled, s_scaled, t_offset: tbar };
            let (_, p0, _) = local_r_p0_q0(&c, psi).unwrap();
            let u = cp.u0 + cp.r * tbar * p0;
            if u > best {
                best = u;
                best_x = x_scaled;
            }
        }
        // maximum at X = S tan psi, strictly below u0
        assert!((best_x - s_scaled * psi.tan()).abs() < 0.011, "argmax {best_x}");
        assert!(best < cp.u0);
        // tight form of the bound (middle-term sign and the unscaled S
        // resolve the printed inequality into an equality at the maximum)
        let bound = cp.u0 - cp.r * tbar * psi.cos()
            - cp.r.sqrt()
                * psi.cos().abs()
                * (2.0 * s_unscaled / psi.cos() + cp.r * tbar * tbar).sqrt();
        assert!(best <= bound + 1e-10, "best {best} bound {bound}");
        assert!((best - bound).abs() < 1e-4, "bound not tight: {best} vs {bound}");
        assert!(bound < cp.u0);
    }

    #[test]
    fn far_field_matches_profile_at_large_x() {
        let cp = cp_sy();
        let tbar = -0.01;
        // chart variable x = xbar - v0 tbar; X = 2 sqrt(u0) x / (r tbar^2)
        let xloc = 0.05; // |X| = 2 sqrt2 * 0.05 / 4e-4 ~ 350
        let (u_ff, v_ff) = far_field(&cp, xloc, tbar, Side::Plus);
        let (u_loc, v_loc) =
            local_solution(&cp, cp.x0 + cp.v0 * tbar + xloc, cp.s0 + cp.u0 * tbar, cp.t0 + tbar)
                .unwrap();
        assert!(
            (u_ff - u_loc).abs() < 0.02 * u_loc.abs().max(1.0),
            "far field {u_ff} vs local {u_loc}"
        );
        assert!((v_ff - v_loc).abs() < 0.02 * v_loc.abs().max(1.0));
        // u turns negative far out
        let (u_far, _) = far_field(&cp, 50.0, tbar, Side::Plus);
        assert!(u_far < 0.0);
    }

    #[test]
    fn cusp_values() {
        let cp = cp_sy();
        assert_eq!(cusp_profile(&cp, 0.0), cp.u0);
        // r = 4: u0 - sqrt(4 * 0.01) = 2 - 0.2
        assert!((cusp_profile(&cp, 0.01) - 1.8).abs() < 1e-14);
        assert!((cusp_profile(&cp, -0.01) - 1.8).abs() < 1e-14);
    }
}
