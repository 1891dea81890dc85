//! Cumulative quadrature of `|ζ(½+it)|²` and the error curve `E(T)`.

use super::{mean_square_main, QuadratureConfig, ZetaEvaluator};
use crate::error::{Error, Result};
use crate::error_terms::DeltaEvaluator;
use crate::numeric::{CompensatedSum, MonotoneCubic};
use crate::quadrature::GaussLegendre;

use rayon::prelude::*;
use std::f64::consts::PI;

/// Supported upper end of the integration range.
pub const MAX_CURVE_T: f64 = 1.0e6;

/// `E(T) = ∫₀^T |ζ(½+it)|² dt − T(log(T/2π) + 2γ − 1)` sampled on an
/// equispaced grid, with monotone-cubic interpolation between nodes.
#[derive(Debug, Clone)]
pub struct ECurve {
    t_grid: Vec<f64>,
    e_values: Vec<f64>,
    config: QuadratureConfig,
    half_step_discrepancy: f64,
    interp: MonotoneCubic,
}

impl ECurve {
    pub fn t_min(&self) -> f64 {
        self.t_grid[0]
    }

    pub fn t_max(&self) -> f64 {
        *self.t_grid.last().unwrap()
    }

    pub fn grid(&self) -> &[f64] {
        &self.t_grid
    }

    pub fn values(&self) -> &[f64] {
        &self.e_values
    }

    pub fn config(&self) -> &QuadratureConfig {
        &self.config
    }

    /// Largest difference between the full-step and half-step runs, observed
    /// on the stored grid at build time.
    pub fn half_step_discrepancy(&self) -> f64 {
        self.half_step_discrepancy
    }

    /// `E(t)` by monotone cubic interpolation of the stored grid.
    pub fn e_at(&self, t: f64) -> Result<f64> {
        if !(t >= self.t_min() && t <= self.t_max()) {
            return Err(Error::out_of_range(format!(
                "E(t): t={t} outside curve range [{}, {}]",
                self.t_min(),
                self.t_max()
            )));
        }
        Ok(self.interp.eval(t))
    }

    /// Rebuild from previously stored grid data (cache path).
    pub fn from_grid(
        t_grid: Vec<f64>,
        e_values: Vec<f64>,
        config: QuadratureConfig,
        half_step_discrepancy: f64,
    ) -> Result<Self> {
        if t_grid.len() != e_values.len() || t_grid.len() < 2 {
            return Err(Error::CacheInvalid("curve grid too short".into()));
        }
        if !t_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::CacheInvalid("curve grid not ascending".into()));
        }
        let interp = MonotoneCubic::new(t_grid.clone(), e_values.clone());
        Ok(Self {
            t_grid,
            e_values,
            config,
            half_step_discrepancy,
            interp,
        })
    }
}

/// Cumulative panel integrals of `|ζ(½+it)|²` from 0 to `t_max` with panel
/// width `w`; returns values at the panel edges `0, w, 2w, …`.
/// Panels are integrated in parallel and prefix-summed in fixed order, so the
/// result does not depend on the thread count.
fn cumulative_integral(eval: &ZetaEvaluator, rule: &GaussLegendre, t_max: f64, w: f64) -> Vec<f64> {
    let panels = (t_max / w).ceil() as usize;
    let integrals: Vec<f64> = (0..panels)
        .into_par_iter()
        .map(|i| {
            let lo = i as f64 * w;
            let hi = ((i + 1) as f64 * w).min(t_max);
            rule.integrate(lo, hi, |t| eval.zeta_half_sq(t))
        })
        .collect();
    let mut out = Vec::with_capacity(panels + 1);
    let mut acc = CompensatedSum::new();
    out.push(0.0);
    for v in integrals {
        acc.add(v);
        out.push(acc.value());
    }
    out
}

/// Build the `E` curve over `[t_min, t_max]`.
///
/// The integral is accumulated from 0 with Gauss–Legendre order-8 panels of
/// width `min(step, 0.25)`. The construction runs at the panel width and at
/// half that width; if the two runs differ on the stored grid by more than
/// `max(1e-3, tolerance · (t_max − t_min))` the build fails with a
/// quadrature error carrying the observed discrepancy. The half-step values
/// are the ones kept.
pub fn build_e_curve(t_min: f64, t_max: f64, config: &QuadratureConfig) -> Result<ECurve> {
    config.validate()?;
    if !(t_min >= 0.0 && t_min < t_max && t_max <= MAX_CURVE_T) {
        return Err(Error::invalid(format!(
            "curve range [{t_min}, {t_max}] must satisfy 0 ≤ t_min < t_max ≤ {MAX_CURVE_T}"
        )));
    }
    let w = config.step.min(0.25);
    let eval = ZetaEvaluator::new(t_max + w, config);
    let rule = GaussLegendre::new(8);

    let coarse = cumulative_integral(&eval, &rule, t_max, w);
    let fine = cumulative_integral(&eval, &rule, t_max, 0.5 * w);

    // stored grid: coarse panel edges clipped to [t_min, t_max]
    let first_idx = (t_min / w).floor() as usize;
    let mut t_grid = Vec::new();
    let mut e_values = Vec::new();
    let mut discrepancy: f64 = 0.0;
    for i in first_idx..coarse.len() {
        let t = (i as f64 * w).min(t_max);
        if t + 1e-12 < t_min {
            continue;
        }
        let main = mean_square_main(t);
        let e_coarse = coarse[i] - main;
        let e_fine = fine[(2 * i).min(fine.len() - 1)] - main;
        discrepancy = discrepancy.max((e_coarse - e_fine).abs());
        if t_grid.last().map_or(true, |&last| t > last) {
            t_grid.push(t);
            e_values.push(e_fine);
        }
    }
    let allowed = (config.tolerance * (t_max - t_min)).max(1e-3);
    if discrepancy > allowed {
        return Err(Error::QuadratureFailure {
            observed: discrepancy,
            allowed,
        });
    }
    let interp = MonotoneCubic::new(t_grid.clone(), e_values.clone());
    Ok(ECurve {
        t_grid,
        e_values,
        config: *config,
        half_step_discrepancy: discrepancy,
        interp,
    })
}

/// `E*(t) = E(t) − 2πΔ*(t/2π)`: the zeta/divisor discrepancy.
pub fn e_star(t: f64, curve: &ECurve, delta: &DeltaEvaluator) -> Result<f64> {
    let x = t / (2.0 * PI);
    let ds = delta.delta_star(x)?;
    Ok(curve.e_at(t)? - 2.0 * PI * ds.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::{ArithTable, TableKind};

    fn small_curve(t_min: f64, t_max: f64) -> ECurve {
        build_e_curve(t_min, t_max, &QuadratureConfig::default()).unwrap()
    }

    #[test]
    fn e_at_zero_is_zero() {
        let c = small_curve(0.0, 5.0);
        assert_eq!(c.e_at(0.0).unwrap(), 0.0);
    }

    #[test]
    fn matches_reference_values() {
        // E(T) anchors from an arbitrary-precision oracle
        let c = small_curve(0.0, 100.0);
        for (t, want) in [
            (10.0, 3.791341074041333),
            (30.0, 7.551879848666117),
            (100.0, 3.462654116537970),
        ] {
            let got = c.e_at(t).unwrap();
            assert!((got - want).abs() < 1e-4, "E({t}) = {got} vs {want}");
        }
    }

    #[test]
    fn half_step_discrepancy_is_small() {
        let c = small_curve(0.0, 200.0);
        assert!(
            c.half_step_discrepancy() < 1e-6,
            "{}",
            c.half_step_discrepancy()
        );
    }

    #[test]
    fn out_of_range_rejected() {
        let c = small_curve(10.0, 20.0);
        assert!(c.e_at(9.9).is_err());
        assert!(c.e_at(20.1).is_err());
        assert!(c.e_at(15.0).is_ok());
    }

    #[test]
    fn bad_ranges_rejected() {
        let cfg = QuadratureConfig::default();
        assert!(build_e_curve(-1.0, 5.0, &cfg).is_err());
        assert!(build_e_curve(5.0, 5.0, &cfg).is_err());
        assert!(build_e_curve(0.0, MAX_CURVE_T + 1.0, &cfg).is_err());
        let bad = QuadratureConfig {
            small_t_cutoff: 1.0,
            ..cfg
        };
        assert!(build_e_curve(0.0, 5.0, &bad).is_err());
    }

    #[test]
    fn continuity_bound_on_grid_cells() {
        let c = small_curve(50.0, 80.0);
        let max_sq = c
            .grid()
            .iter()
            .map(|&t| crate::zeta::zeta_half_sq(t))
            .fold(0.0f64, f64::max);
        let slope = ((80.0f64 / (2.0 * PI)).ln() + 2.0 * crate::error_terms::EULER_GAMMA).abs();
        for w in c.grid().windows(2).zip(c.values().windows(2)) {
            let (ts, es) = w;
            let h = ts[1] - ts[0];
            let bound = (max_sq + slope) * h + 2e-3;
            assert!(
                (es[1] - es[0]).abs() <= bound,
                "cell [{}, {}]: ΔE = {} > {bound}",
                ts[0],
                ts[1],
                es[1] - es[0]
            );
        }
    }

    #[test]
    fn e_star_identity_is_algebraic() {
        let c = small_curve(40.0, 90.0);
        let table = ArithTable::build(TableKind::Divisor, 100).unwrap();
        let delta = DeltaEvaluator::new(&table).unwrap();
        for t in [44.0, 60.5, 88.25] {
            let es = e_star(t, &c, &delta).unwrap();
            let ds = delta.delta_star(t / (2.0 * PI)).unwrap().value();
            let rebuilt = es + 2.0 * PI * ds;
            let e = c.e_at(t).unwrap();
            // the identity is algebraic; the roundtrip rounds once
            assert!((rebuilt - e).abs() <= 4.0 * f64::EPSILON * e.abs().max(1.0));
        }
    }

    #[test]
    fn e_star_requires_table_coverage() {
        let c = small_curve(40.0, 90.0);
        let table = ArithTable::build(TableKind::Divisor, 10).unwrap();
        let delta = DeltaEvaluator::new(&table).unwrap();
        // 4 · 88/(2π) ≈ 56 > 10
        assert!(e_star(88.0, &c, &delta).is_err());
    }

    #[test]
    fn e_star_below_grid_is_error() {
        let c = small_curve(40.0, 90.0);
        let table = ArithTable::build(TableKind::Divisor, 1000).unwrap();
        let delta = DeltaEvaluator::new(&table).unwrap();
        assert!(e_star(30.0, &c, &delta).is_err());
    }
}
