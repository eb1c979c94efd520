//! Divergent asymptotic series of the tritronquee solution at large |zeta|
//! and its optimally truncated evaluation.

use num_complex::Complex64;

use super::PainleveError;

/// Sector half-angle in which the asymptotic square-root behaviour is valid.
pub const SECTOR_HALF_ANGLE: f64 = 4.0 * std::f64::consts::PI / 5.0;

/// Default minimum |zeta| for series evaluation.
pub const DEFAULT_MIN_RADIUS: f64 = 10.0;

/// Coefficients a_0..a_K of the formal expansion
/// `Omega ~ -sqrt(zeta/6) * sum_k a_k zeta^{-5k/2}`.
///
/// The stored sequence follows the printed recurrence with
/// `a_1 = -1/(8 sqrt 6)`. Substituting the expansion into the equation with
/// principal branches for both the prefactor and the powers shows the sheet
/// convention implied by that recurrence differs from the principal one by
/// `(-1)^k`; evaluation therefore pairs `a_k` with `(-zeta^{-5/2})^k`.
/// Numerically this is decisive: with the principal pairing of the printed
/// coefficients the first real pole lands at -2.38495, with the consistent
/// pairing at the known -2.3841687.
#[derive(Debug, Clone)]
pub struct AsymptoticSeries {
    coefficients: Vec<f64>,
}

impl AsymptoticSeries {
    /// Build the coefficients from the recurrence
    /// `a_{k+1} = (25k^2 - 1)/(8 sqrt 6) a_k - 1/2 sum_{m=1}^{k} a_m a_{k+1-m}`,
    /// `a_0 = 1`.
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "series capacity must be at least 1");
        let mut a = Vec::with_capacity(capacity + 1);
        a.push(1.0);
        let s6 = 6.0_f64.sqrt();
        for k in 0..capacity {
            let kf = k as f64;
            let mut conv = 0.0;
            for m in 1..=k {
                conv += a[m] * a[k + 1 - m];
            }
            let next = (25.0 * kf * kf - 1.0) / (8.0 * s6) * a[k] - 0.5 * conv;
            a.push(next);
        }
        AsymptoticSeries { coefficients: a }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn capacity(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Check `zeta` against the validity region of the expansion.
    pub fn check_domain(zeta: Complex64, min_radius: f64) -> Result<(), PainleveError> {
        if zeta.norm() < min_radius {
            return Err(PainleveError::SeriesDomain {
                zeta,
                reason: "inside minimum radius",
            });
        }
        if zeta.arg().abs() >= SECTOR_HALF_ANGLE {
            return Err(PainleveError::SeriesDomain {
                zeta,
                reason: "outside sector |arg zeta| < 4 pi / 5",
            });
        }
        Ok(())
    }

    /// Optimally truncated evaluation with the default minimum radius.
    pub fn evaluate(&self, zeta: Complex64) -> Result<SeriesEval, PainleveError> {
        self.evaluate_with_radius(zeta, DEFAULT_MIN_RADIUS)
    }

    /// Optimally truncated evaluation: sum until the terms stop decreasing in
    /// modulus, never past the stored capacity. The magnitude of the first
    /// omitted term serves as the error estimate.
    pub fn evaluate_with_radius(
        &self,
        zeta: Complex64,
        min_radius: f64,
    ) -> Result<SeriesEval, PainleveError> {
        Self::check_domain(zeta, min_radius)?;
        let prefactor = -(zeta / 6.0).sqrt();
        // -zeta^{-5/2}, principal branch: the sheet consistent with the
        // stored coefficient convention (see the type-level comment)
        let zm52 = -(-2.5 * zeta.ln()).exp();
        let dlog = -(2.5) / zeta; // d/dzeta log of each successive factor

        let k_max = self.capacity();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut dsum = Complex64::new(0.0, 0.0); // derivative of sum over zeta
        let mut zpow = Complex64::new(1.0, 0.0);
        let mut k_star = k_max;
        let mut omitted = f64::NAN;
        let mut prev_mag = f64::INFINITY;
        for k in 0..=k_max {
            let term = self.coefficients[k] * zpow;
            let mag = term.norm();
            if mag > prev_mag {
                // first growing term: truncate before it
                k_star = k - 1;
                omitted = (prefactor * term).norm();
                break;
            }
            sum += term;
            dsum += term * (k as f64) * dlog;
            prev_mag = mag;
            zpow *= zm52;
            if k == k_max {
                // capacity reached; estimate with the next (uncomputed) term size
                omitted = (prefactor * self.coefficients[k_max] * zpow).norm();
            }
        }

        let value = prefactor * sum;
        // d/dzeta [prefactor * sum]; prefactor' = prefactor / (2 zeta)
        let derivative = prefactor * (sum / (2.0 * zeta) + dsum);
        Ok(SeriesEval { value, derivative, truncation_index: k_star, omitted_term: omitted })
    }
}

/// Result of an optimally truncated series evaluation.
#[derive(Debug, Clone, Copy)]
pub struct SeriesEval {
    pub value: Complex64,
    pub derivative: Complex64,
    /// Index of the last term kept.
    pub truncation_index: usize,
    /// Magnitude of the first omitted term (error estimate).
    pub omitted_term: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficients_match_hand_values() {
        let s = AsymptoticSeries::new(2);
        let a = s.coefficients();
        assert_eq!(a[0], 1.0);
        // a_1 = -1/(8 sqrt 6), a_2 = -49/768; recurrence applied by hand
        assert!((a[1] + 1.0 / (8.0 * 6.0_f64.sqrt())).abs() < 1e-16);
        assert!((a[2] + 49.0 / 768.0).abs() < 1e-16);
    }

    #[test]
    fn ratio_grows_quadratically() {
        let s = AsymptoticSeries::new(27);
        let a = s.coefficients();
        let mut prev_ratio = 0.0;
        for k in 5..=25 {
            let ratio = (a[k + 1] / a[k]).abs();
            assert!(ratio > prev_ratio, "ratio not increasing at k={k}");
            assert!(ratio > 0.5 * (k as f64).powi(2), "ratio too small at k={k}");
            prev_ratio = ratio;
        }
    }

    #[test]
    fn two_term_value_at_real_100() {
        let s = AsymptoticSeries::new(30);
        let e = s.evaluate(Complex64::new(100.0, 0.0)).unwrap();
        // two-term hand evaluation on the consistent sheet; higher terms are
        // below 1e-6 relative
        let a1_effective = 1.0 / (8.0 * 6.0_f64.sqrt());
        let two_term = -(100.0f64 / 6.0).sqrt() * (1.0 + a1_effective * 100.0f64.powf(-2.5));
        assert!((e.value.re - two_term).abs() <= 1e-6 * e.value.norm());
        assert!(e.value.im.abs() < 1e-15);
    }

    #[test]
    fn conjugate_symmetry() {
        let s = AsymptoticSeries::new(30);
        let up = s.evaluate(Complex64::new(0.0, 10.0)).unwrap();
        let dn = s.evaluate(Complex64::new(0.0, -10.0)).unwrap();
        assert!((up.value - dn.value.conj()).norm() < 1e-14);
    }

    #[test]
    fn truncation_near_machine_precision_at_10() {
        let s = AsymptoticSeries::new(30);
        let e = s.evaluate(Complex64::new(10.0, 0.0)).unwrap();
        // the strict smallest-term rule keeps a few terms past the marginal
        // k = 10 of the ten-term practical cap; all of them sit at the
        // machine-precision floor
        assert!(
            (8..=20).contains(&e.truncation_index),
            "truncation index {} outside expected range",
            e.truncation_index
        );
        let term10 = s.coefficients()[10].abs() * 10.0_f64.powf(-25.0) * (10.0f64 / 6.0).sqrt();
        assert!(term10 < 1e-13, "tenth term {term10} not at machine precision");
        assert!(e.omitted_term < 1e-13, "omitted term {}", e.omitted_term);
    }

    #[test]
    fn rejects_invalid_domain() {
        let s = AsymptoticSeries::new(10);
        assert!(s.evaluate(Complex64::new(5.0, 0.0)).is_err());
        assert!(s.evaluate(Complex64::new(-20.0, 1e-9)).is_err());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let s = AsymptoticSeries::new(30);
        let z = Complex64::new(14.0, 6.0);
        let h = 1e-6;
        let e = s.evaluate(z).unwrap();
        let ep = s.evaluate(z + Complex64::new(h, 0.0)).unwrap();
        let em = s.evaluate(z - Complex64::new(h, 0.0)).unwrap();
        let fd = (ep.value - em.value) / (2.0 * h);
        assert!((fd - e.derivative).norm() < 1e-8);
    }
}
