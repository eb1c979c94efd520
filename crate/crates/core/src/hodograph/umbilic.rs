//! Stationary points of the elliptic umbilic potential
//! `F = (U^3 - 3 U V^2)/6 + a_+ U + a_- V`.

use num_complex::Complex64;

use super::HodographError;

/// Solve `grad F = 0` in closed form: the equations `(U^2 - V^2)/2 = -a_+`,
/// `U V = a_-` combine into `(U - iV)^2 = -2 (a_+ + i a_-)`; the two square
/// roots give the two stationary points.
pub fn umbilic_stationary_points(
    a_plus: f64,
    a_minus: f64,
) -> Result<[(f64, f64); 2], HodographError> {
    if a_plus == 0.0 && a_minus == 0.0 {
        return Err(HodographError::Parameter(
            "(a_+, a_-) = 0 is the umbilic point itself".into(),
        ));
    }
    let root = Complex64::new(-2.0 * a_plus, -2.0 * a_minus).sqrt();
    Ok([(root.re, -root.im), (-root.re, root.im)])
}
