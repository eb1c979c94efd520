//! Dispersionless focusing NLS by hodograph transform: catalog potentials,
//! the implicit solve, the elliptic-umbilic critical point and the local
//! catastrophe formulas.

pub mod catalog;
pub mod critical;
pub mod initdata;
pub mod jet;
pub mod local;
pub mod umbilic;

pub use catalog::{catalog_f, CatalogId, ClosedFormData, FOracle, Potential};
pub use critical::{find_critical_point, solve_hodograph, CriticalPoint};
pub use initdata::{initial_data_for_evolution, reconstruct_initial_data, InitialDataCurve};
pub use jet::{Jet, PartialTable};
pub use local::{
    cusp_profile, far_field, local_coords, local_r_p0_q0, local_solution, quadratic_root_w,
    LocalCoords, Side,
};
pub use umbilic::umbilic_stationary_points;

#[derive(Debug, thiserror::Error)]
pub enum HodographError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("bad guess: {0}")]
    BadGuess(String),
    #[error("implicit system singular at (x = {x}, t = {t}): at or past the catastrophe")]
    AtCatastrophe { x: f64, t: f64 },
    #[error("Newton failed to converge (residual {residual:.3e})")]
    NoConvergence { residual: f64 },
    #[error("critical point is non-generic: f_uuv = {fuuv:.3e}")]
    NonGeneric { fuuv: f64 },
    #[error("profile formulas degenerate at psi = {psi} (cos psi = 0)")]
    DegeneratePsi { psi: f64 },
    #[error("local coordinates (X = {x}, S = {s}) violate the restriction")]
    SingularLocalInput { x: f64, s: f64 },
    #[error("no initial-data root at x = {x} (residual {residual:.3e})")]
    NoRoot { x: f64, residual: f64 },
}
