//! Construction and probing of the tritronquee solution of Painleve-I,
//! `Omega'' = 6 Omega^2 - zeta`, on lines and sectors of the complex plane.

pub mod line;
pub mod pole;
pub mod sector;
pub mod series;

use num_complex::Complex64;

pub use line::{evaluate_omega, evaluate_omega_prime, solve_line, ComplexLine, TritronqueeLine};
pub use pole::{locate_first_real_pole, max_abs_rightward, PoleReport};
pub use sector::{solve_sector, SectorConfig, SectorSolution};
pub use series::{AsymptoticSeries, SeriesEval};

#[derive(Debug, thiserror::Error)]
pub enum PainleveError {
    #[error("zeta = {zeta} invalid for the asymptotic series: {reason}")]
    SeriesDomain { zeta: Complex64, reason: &'static str },
    #[error("invalid line: {0}")]
    LineDomain(String),
    #[error("Newton iteration failed (residual {residual:.3e} after {iterations} iterations); the line may pass too close to a pole")]
    NewtonFailed { residual: f64, iterations: usize },
    #[error("y = {y} outside the solved interval [-{y0}, {y0}]")]
    OutOfRange { y: f64, y0: f64 },
    #[error("no blow-up detected before zeta = {left_bound}")]
    NoPoleFound { left_bound: f64 },
    #[error("inconsistent boundary data: {0}")]
    BadBoundaryData(String),
    #[error("rotated point outside the evaluator domain")]
    RotationDomain,
}

/// Map through the discrete symmetry of Painleve-I:
/// `Omega_n(zeta) = e^{4 pi i n / 5} Omega_0(e^{2 pi i n / 5} zeta)`.
/// `n = 0` passes through unchanged.
pub fn rotate_tritronquee<F>(
    n: i32,
    zeta: Complex64,
    omega0_at: F,
) -> Result<Complex64, PainleveError>
where
    F: Fn(Complex64) -> Result<Complex64, PainleveError>,
{
    assert!((-2..=2).contains(&n), "rotation index must lie in -2..=2");
    if n == 0 {
        return omega0_at(zeta);
    }
    let fifth = 2.0 * std::f64::consts::PI * n as f64 / 5.0;
    let inner = Complex64::from_polar(1.0, fifth);
    let outer = Complex64::from_polar(1.0, 2.0 * fifth);
    Ok(outer * omega0_at(inner * zeta)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_matches_series_prefactor() {
        let s = AsymptoticSeries::new(30);
        let eval = |z: Complex64| s.evaluate(z).map(|e| e.value);
        // at large positive zeta the rotated solution matches the rotated
        // square-root asymptotics
        let zeta = Complex64::new(400.0, 0.0);
        let n = 1;
        let got = rotate_tritronquee(n, zeta, eval).unwrap();
        let fifth = 2.0 * std::f64::consts::PI / 5.0;
        let zr = Complex64::from_polar(1.0, fifth) * zeta;
        let expect = Complex64::from_polar(1.0, 2.0 * fifth) * (-(zr / 6.0).sqrt());
        assert!((got - expect).norm() / expect.norm() < 1e-4);
    }

    #[test]
    fn rotation_identity_for_n_zero() {
        let s = AsymptoticSeries::new(30);
        let eval = |z: Complex64| s.evaluate(z).map(|e| e.value);
        let z = Complex64::new(15.0, 5.0);
        assert_eq!(rotate_tritronquee(0, z, eval).unwrap(), eval(z).unwrap());
    }

    #[test]
    fn rotation_composes_with_inverse() {
        let s = AsymptoticSeries::new(30);
        let eval = |z: Complex64| s.evaluate(z).map(|e| e.value);
        let z = Complex64::new(12.0, 3.0);
        // Omega_0(z) recovered by inverting the n = 1 symmetry:
        // Omega_0(z) = e^{-4 pi i/5} Omega_1(e^{-2 pi i/5} z)
        let fifth = 2.0 * std::f64::consts::PI / 5.0;
        let z_back = Complex64::from_polar(1.0, -fifth) * z;
        let recovered = Complex64::from_polar(1.0, -2.0 * fifth)
            * rotate_tritronquee(1, z_back, eval).unwrap();
        assert!((recovered - eval(z).unwrap()).norm() < 1e-14);
    }
}
