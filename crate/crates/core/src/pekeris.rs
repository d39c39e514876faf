//! Pekeris replacement of the centrifugal barrier.
//!
//! Around `r = R0` (`x = (r - R0)/R0 = 0`) the barrier `l(l+1)/r^2` is
//! `l(l+1)/R0^2 * (1 - 2x + 3x^2 - ...)`. It is replaced by
//! `l(l+1)/R0^2 * [C0 + C1/(1 + e^(alpha x)) + C2/(1 + e^(alpha x))^2]`, with
//! the constants chosen so that both expansions agree through `x^2`.
//! Profiles here are dimensionless; callers apply their own prefactors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::logistic_tail;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PekerisCoefficients {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub alpha: f64,
}

impl PekerisCoefficients {
    /// `C1 + C2 = 8/alpha`.
    pub fn c1_plus_c2(&self) -> f64 {
        self.c1 + self.c2
    }

    /// Energy scale `delta = hbar^2 l(l+1) / (2 m0 R0^2)` of the
    /// nonrelativistic barrier, in MeV.
    pub fn expansion_scale(l: u32, hbar_c: f64, rest_energy: f64, radius: f64) -> f64 {
        angular_factor(l) * hbar_c * hbar_c / (2.0 * rest_energy * radius * radius)
    }
}

/// `l(l+1)` as a float.
pub fn angular_factor(l: u32) -> f64 {
    let l = f64::from(l);
    l * (l + 1.0)
}

pub fn pekeris_coefficients(alpha: f64) -> Result<PekerisCoefficients> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha = R0/a must be positive, got {alpha}"
        )));
    }
    if alpha < 3.0 {
        log::debug!("alpha = {alpha:.4} < 3: Pekeris approximation is unreliable");
    }
    let inv = 1.0 / alpha;
    let inv2 = inv * inv;
    Ok(PekerisCoefficients {
        c0: 1.0 - 4.0 * inv + 12.0 * inv2,
        c1: 8.0 * inv - 48.0 * inv2,
        c2: 48.0 * inv2,
        alpha,
    })
}

/// `l(l+1) R0^2 / r^2`. The origin is a pole.
pub fn centrifugal_exact(l: u32, r: f64, radius: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!(
            "centrifugal barrier is singular at r = {r}"
        )));
    }
    let ratio = radius / r;
    Ok(angular_factor(l) * ratio * ratio)
}

/// `l(l+1) [C0 + C1 g + C2 g^2]` with `g = 1/(1 + e^(alpha x))`.
pub fn centrifugal_pekeris(coeffs: &PekerisCoefficients, l: u32, x: f64) -> f64 {
    let g = logistic_tail(coeffs.alpha * x);
    angular_factor(l) * (coeffs.c0 + g * (coeffs.c1 + coeffs.c2 * g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const CALCIUM_ALPHA: f64 = 1.285 * 3.419_951_893_353_394 / 0.65;

    #[test]
    fn calcium_coefficients() {
        let c = pekeris_coefficients(6.76092).unwrap();
        assert!((c.c0 - 0.67089).abs() < 5e-6);
        assert!((c.c1 - 0.13318).abs() < 1e-5);
        assert!((c.c2 - 1.05010).abs() < 5e-6);
    }

    #[test]
    fn large_alpha_limit() {
        let c = pekeris_coefficients(1e9).unwrap();
        assert_relative_eq!(c.c0, 1.0, epsilon = 1e-8);
        assert!(c.c1.abs() < 1e-8 && c.c2.abs() < 1e-8);
    }

    #[test]
    fn non_positive_alpha_rejected() {
        assert!(pekeris_coefficients(0.0).is_err());
        assert!(pekeris_coefficients(-2.0).is_err());
    }

    #[test]
    fn exact_barrier() {
        assert_eq!(centrifugal_exact(3, 2.0, 2.0).unwrap(), 12.0);
        assert_eq!(centrifugal_exact(0, 0.7, 2.0).unwrap(), 0.0);
        assert_relative_eq!(centrifugal_exact(1, 4.0, 2.0).unwrap(), 0.5);
        assert!(centrifugal_exact(1, 0.0, 2.0).is_err());
    }

    #[test]
    fn pekeris_barrier_landmarks() {
        let c = pekeris_coefficients(CALCIUM_ALPHA).unwrap();
        assert_relative_eq!(centrifugal_pekeris(&c, 2, 0.0), 6.0, epsilon = 1e-13);
        assert_relative_eq!(centrifugal_pekeris(&c, 2, 50.0), 6.0 * c.c0, epsilon = 1e-13);
        // x = 0.1: agreement with 1 - 2x + 3x^2 up to the cubic term.
        let x: f64 = 0.1;
        let series = 2.0 * (1.0 - 2.0 * x + 3.0 * x * x);
        let bound = 2.0 * 2.0 * CALCIUM_ALPHA.powi(2) / 6.0 * x.powi(3);
        assert!((centrifugal_pekeris(&c, 1, x) - series).abs() <= bound);
    }

    #[test]
    fn expansion_scale_value() {
        let d = PekerisCoefficients::expansion_scale(1, 197.0, 140.0, 4.0);
        assert_relative_eq!(d, 2.0 * 197.0 * 197.0 / (2.0 * 140.0 * 16.0));
    }

    #[test]
    fn sum_rules_over_wide_alpha_range() {
        for i in 0..=600 {
            let alpha = 10f64.powf(6.0 * i as f64 / 600.0);
            let c = pekeris_coefficients(alpha).unwrap();
            assert!((c.c0 + c.c1 / 2.0 + c.c2 / 4.0 - 1.0).abs() <= 1e-12);
            assert!((c.c1 + c.c2 - 8.0 / alpha).abs() <= 1e-12);
            assert!((c.c2 - 48.0 / (alpha * alpha)).abs() <= 1e-12);
        }
    }

    proptest! {
        #[test]
        fn taylor_match_through_second_order(alpha in 3.0f64..200.0, x in -0.05f64..0.05) {
            let c = pekeris_coefficients(alpha).unwrap();
            let profile = centrifugal_pekeris(&c, 1, x) / 2.0;
            let series = 1.0 - 2.0 * x + 3.0 * x * x;
            let k = 2.0 * alpha * alpha / 6.0;
            prop_assert!((profile - series).abs() <= k * x.abs().powi(3) + 1e-15);
        }
    }
}
