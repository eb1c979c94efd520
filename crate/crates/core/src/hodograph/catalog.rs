//! Catalog of hodograph potentials f(u, v) solving `f_vv + u f_uu = 0`,
//! with all partial derivatives to total order 6 via jet propagation.

use num_complex::Complex64;

use super::jet::{Jet, PartialTable};
use super::HodographError;

/// Potential families with closed-form f(u, v).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum CatalogId {
    /// Secant-hump data `u = A0^2 sech^2 x`, `v = 0`.
    SatsumaYajima { a0: f64 },
    /// Symmetric family `u = A0^2 sech^2 x`, `v = -mu tanh x`.
    SymmetricMu { a0: f64, mu: f64 },
    /// The mu = 2, A0 = 1 member, where f degenerates to elementary form.
    TvzMu2,
    /// Linear combination `f_1 + alpha f_2` built on TvzMu2; breaks the
    /// x-symmetry of the data.
    Nonsymmetric { alpha: f64 },
}

/// Anything exposing the order-6 partial table of a solution of the
/// hodograph PDE at a point.
pub trait Potential {
    fn table(&self, u: f64, v: f64) -> PartialTable;
}

/// A catalog potential: evaluator plus domain metadata.
#[derive(Debug, Clone, Copy)]
pub struct FOracle {
    pub id: CatalogId,
    /// Recommended sampling box (u range, v range) for property checks.
    pub sample_box: ((f64, f64), (f64, f64)),
}

impl Potential for FOracle {
    fn table(&self, u: f64, v: f64) -> PartialTable {
        assert!(u > 0.0, "hodograph potentials require u > 0");
        match self.id {
            CatalogId::SatsumaYajima { a0 } => symmetric_table(u, v, a0, 0.0),
            CatalogId::SymmetricMu { a0, mu } => symmetric_table(u, v, a0, mu),
            CatalogId::TvzMu2 => symmetric_table(u, v, 1.0, 2.0),
            CatalogId::Nonsymmetric { alpha } => nonsymmetric_table(u, v, alpha),
        }
    }
}

impl FOracle {
    /// The potential value itself.
    pub fn f(&self, u: f64, v: f64) -> f64 {
        self.table(u, v).f()
    }

    /// Initial data of the induced NLS Cauchy problem in closed form, when
    /// the family provides it (the symmetric members).
    pub fn closed_form_data(&self) -> Option<ClosedFormData> {
        match self.id {
            CatalogId::SatsumaYajima { a0 } => Some(ClosedFormData { a0, mu: 0.0 }),
            CatalogId::SymmetricMu { a0, mu } => Some(ClosedFormData { a0, mu }),
            CatalogId::TvzMu2 => Some(ClosedFormData { a0: 1.0, mu: 2.0 }),
            CatalogId::Nonsymmetric { .. } => None,
        }
    }

    /// Closed-form guess for the initial-data root at position x (the
    /// nonsymmetric family is seeded from its alpha = 0 base).
    pub fn initial_guess(&self, x: f64) -> (f64, f64) {
        match self.id {
            CatalogId::SatsumaYajima { a0 } => {
                let u = (a0 / x.cosh()).powi(2);
                // the t = 0 curve sits on the branch cut; bias v to the
                // analytic side matching the sign of x
                (u, -1e-3 * x.signum())
            }
            CatalogId::SymmetricMu { a0, mu } => {
                ((a0 / x.cosh()).powi(2), -mu * x.tanh() - 1e-3 * x.signum())
            }
            CatalogId::TvzMu2 | CatalogId::Nonsymmetric { .. } => {
                (x.cosh().powi(-2), -2.0 * x.tanh())
            }
        }
    }
}

/// Exact symmetric-family initial data.
#[derive(Debug, Clone, Copy)]
pub struct ClosedFormData {
    pub a0: f64,
    pub mu: f64,
}

impl ClosedFormData {
    pub fn u(&self, x: f64) -> f64 {
        (self.a0 / x.cosh()).powi(2)
    }
    pub fn v(&self, x: f64) -> f64 {
        -self.mu * x.tanh()
    }
    pub fn phase(&self, x: f64) -> f64 {
        -self.mu * x.cosh().ln()
    }
}

/// Build a catalog oracle, validating parameters.
pub fn catalog_f(id: CatalogId) -> Result<FOracle, HodographError> {
    match id {
        CatalogId::SatsumaYajima { a0 } | CatalogId::SymmetricMu { a0, .. } if a0 <= 0.0 => {
            return Err(HodographError::Parameter("A0 must be positive".into()));
        }
        CatalogId::SymmetricMu { mu, .. } if mu < 0.0 => {
            return Err(HodographError::Parameter("mu must be nonnegative".into()));
        }
        CatalogId::Nonsymmetric { alpha } if alpha.abs() >= 0.25 => {
            return Err(HodographError::Parameter("|alpha| must stay below 1/4".into()));
        }
        _ => {}
    }
    let sample_box = match id {
        CatalogId::SatsumaYajima { a0 } => {
            ((0.3 * a0 * a0, 3.0 * a0 * a0), (0.1 * a0, 1.5 * a0))
        }
        CatalogId::SymmetricMu { a0, mu } => {
            ((0.3 * a0 * a0, 3.0 * a0 * a0), (0.1, 0.8 * mu.max(1.0)))
        }
        CatalogId::TvzMu2 => ((0.3, 5.0), (0.1, 2.0)),
        CatalogId::Nonsymmetric { .. } => ((0.3, 5.0), (-2.0, 2.0)),
    };
    Ok(FOracle { id, sample_box })
}

/// Symmetric family potential. For mu < 2 A0 write `w = -v/2 + i m`,
/// `m = sqrt(A0^2 - mu^2/4)`, and
/// `f = (mu/2) v + Re[ w sqrt(w^2+u) + u log((w + sqrt(w^2+u)) / sqrt u) ]`,
/// which is the printed two-Delta form collapsed over the conjugate pair.
/// For mu >= 2 A0 both square roots are real and the printed form is used
/// directly. Cut structure: the complex path is analytic except on
/// {v = 0, u < m^2}, which carries the fold of the t = 0 data curve; the
/// evaluation at v = +-0 resolves the side through the sign of zero.
fn symmetric_table(u: f64, v: f64, a0: f64, mu: f64) -> PartialTable {
    let m2 = a0 * a0 - 0.25 * mu * mu;
    let uj = Jet::var_u(u);
    let vj = Jet::var_v(v);
    let f = if m2 > 1e-12 {
        let m = m2.sqrt();
        // w = -v/2 + i m
        let w = vj.scale_re(-0.5).add_const(Complex64::new(0.0, m));
        let delta = w.mul(&w).add(&uj).sqrt();
        let log_term = w.add(&delta).ln().sub(&uj.ln().scale_re(0.5));
        w.mul(&delta)
            .add(&uj.mul(&log_term))
            .add(&vj.scale_re(0.5 * mu))
    } else {
        let m = (-m2).max(0.0).sqrt();
        let xi_p = vj.scale_re(-0.5).add_const(Complex64::new(m, 0.0));
        let xi_m = vj.scale_re(-0.5).add_const(Complex64::new(-m, 0.0));
        let dp = xi_p.mul(&xi_p).add(&uj).sqrt();
        let dm = xi_m.mul(&xi_m).add(&uj).sqrt();
        let log_arg = xi_p.add(&dp).mul(&xi_m.add(&dm));
        vj.scale_re(0.5 * mu)
            .sub(&vj.add_const(Complex64::new(-2.0 * m, 0.0)).mul(&dp).scale_re(0.25))
            .sub(&vj.add_const(Complex64::new(2.0 * m, 0.0)).mul(&dm).scale_re(0.25))
            .sub(&uj.mul(&uj.ln()).scale_re(0.5))
            .add(&uj.mul(&log_arg.ln()).scale_re(0.5))
    };
    PartialTable::from_jet(&f)
}

/// Nonsymmetric family `f = f1 + alpha f2` with
/// `f1 = v - (v/2) Delta + u L`, `f2 = 2 u Delta - (2/3) Delta^3 + u v L`,
/// `Delta = sqrt(v^2/4 + u)`, `L = log((-v/2 + Delta)/sqrt u)`.
fn nonsymmetric_table(u: f64, v: f64, alpha: f64) -> PartialTable {
    let uj = Jet::var_u(u);
    let vj = Jet::var_v(v);
    let delta = vj.mul(&vj).scale_re(0.25).add(&uj).sqrt();
    let l = vj
        .scale_re(-0.5)
        .add(&delta)
        .ln()
        .sub(&uj.ln().scale_re(0.5));
    let f1 = vj.sub(&vj.mul(&delta).scale_re(0.5)).add(&uj.mul(&l));
    let d3 = delta.mul(&delta).mul(&delta);
    let f2 = uj
        .mul(&delta)
        .scale_re(2.0)
        .sub(&d3.scale_re(2.0 / 3.0))
        .add(&uj.mul(&vj).mul(&l));
    let f = f1.add(&f2.scale_re(alpha));
    PartialTable::from_jet(&f)
}
