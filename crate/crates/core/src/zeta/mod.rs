//! `|ζ(½+it)|²` on the critical line, the mean-square main term, the error
//! term `E(T)` by cumulative quadrature, and `E*(t) = E(t) − 2πΔ*(t/2π)`.
//!
//! Evaluation strategy: Euler–Maclaurin summation of `ζ(½+it)` below a
//! configurable cutoff (exact to ~1e-12 there), the Riemann–Siegel formula
//! with up to two correction terms above it (~1e-8 absolute for t ≥ 50).

mod curve;
mod em;
mod rs;

pub use curve::{build_e_curve, e_star, ECurve, MAX_CURVE_T};
pub use em::zeta_half_complex;
pub use rs::{rs_theta, ZetaEvaluator};

use crate::error_terms::EULER_GAMMA;
use std::f64::consts::PI;

/// Controls for critical-line quadrature and evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Base panel width in `t`; the effective width is `min(step, 0.25)`.
    pub step: f64,
    /// Absolute error target per unit integration length.
    pub tolerance: f64,
    /// Number of Riemann–Siegel correction terms (0, 1 or 2).
    pub rs_correction_order: u8,
    /// Below this `t`, `ζ(½+it)` is evaluated by Euler–Maclaurin summation.
    pub small_t_cutoff: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        // Cutoff 200 keeps the whole low range on the (≈1e-12 exact)
        // Euler–Maclaurin path; above it the order-2 Riemann–Siegel residual
        // is ≤ 7e-5 and falls off like t^{-5/4}.
        Self {
            step: 0.25,
            tolerance: 1e-9,
            rs_correction_order: 2,
            small_t_cutoff: 200.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.step > 0.0) {
            return Err(crate::Error::invalid("quadrature step must be positive"));
        }
        if !(self.tolerance > 0.0) {
            return Err(crate::Error::invalid(
                "quadrature tolerance must be positive",
            ));
        }
        if self.rs_correction_order > 2 {
            return Err(crate::Error::invalid(
                "rs_correction_order must be 0, 1 or 2",
            ));
        }
        if !(self.small_t_cutoff >= 2.0) {
            return Err(crate::Error::invalid("small_t_cutoff must be at least 2"));
        }
        Ok(())
    }

    /// Canonical text form used for cache keys.
    pub fn canonical_string(&self) -> String {
        format!(
            "step={:e};tol={:e};order={};cutoff={:e}",
            self.step, self.tolerance, self.rs_correction_order, self.small_t_cutoff
        )
    }
}

/// Main term of the mean square: `T (log(T/2π) + 2γ − 1)`, continuous at 0.
pub fn mean_square_main(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * ((t / (2.0 * PI)).ln() + 2.0 * EULER_GAMMA - 1.0)
    }
}

/// `|ζ(½+it)|²` with the default configuration. Negative `t` is folded by
/// the symmetry `|ζ(½+it)| = |ζ(½−it)|`.
pub fn zeta_half_sq(t: f64) -> f64 {
    let cfg = QuadratureConfig::default();
    let t = t.abs();
    if t < cfg.small_t_cutoff {
        let z = em::zeta_half_complex(t);
        z.norm_sq()
    } else {
        let eval = ZetaEvaluator::new(t, &cfg);
        eval.zeta_half_sq(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_square_main_values() {
        // 2π(2γ−1), frozen via 30-digit arithmetic
        let got = mean_square_main(2.0 * PI);
        assert!((got - 0.970320662386828).abs() < 1e-12, "{got}");
        assert_eq!(mean_square_main(0.0), 0.0);
        // root of log(T/2π) = 1 − 2γ
        let root = 2.0 * PI * (1.0 - 2.0 * EULER_GAMMA).exp();
        assert!(mean_square_main(root).abs() < 1e-12);
    }

    #[test]
    fn zeta_sq_nonnegative_and_symmetric() {
        for t in [0.0, 3.7, 18.2, 60.0, 333.3] {
            let v = zeta_half_sq(t);
            assert!(v >= 0.0);
            assert_eq!(v, zeta_half_sq(-t));
            // re-evaluation consistency
            assert_eq!(v, zeta_half_sq(t));
        }
    }

    #[test]
    fn first_zero_is_tiny() {
        // first critical-line zero, located by an arbitrary-precision oracle
        let v = zeta_half_sq(14.134725141734693);
        assert!(v < 1e-6, "{v}");
    }

    #[test]
    fn value_at_zero_matches_zeta_half() {
        // ζ(½) = −1.4603545088095868…, squared
        let got = zeta_half_sq(0.0);
        assert!((got - 2.1326352914004896).abs() < 1e-10, "{got}");
    }
}
