//! Riemann–Siegel evaluation of `Z(t)` (so that `Z(t)² = |ζ(½+it)|²`).
//!
//! `Z(t) = 2 Σ_{n≤m} n^{-1/2} cos(θ(t) − t log n) + (−1)^{m−1} a^{-1/2}
//! [C₀(p) + C₁(p) a^{-1} + …]` with `a = √(t/2π)`, `m = ⌊a⌋`, `p = a − m`.
//! `θ(t)` uses the standard asymptotic expansion through `t^{-5}`. `C₀` is the
//! cosine-ratio closed form `cos(2π(p² − p − 1/16))/cos(2πp)` with a series
//! fallback near its removable singularities; `C₁ = −C₀'''(p)/(96π²)` is
//! obtained from a high-order finite-difference stencil on `C₀`, which keeps
//! the whole evaluator free of transcribed coefficient tables.

use super::em;
use super::QuadratureConfig;
use crate::numeric::CompensatedSum;

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Riemann–Siegel theta: asymptotic expansion through `t^{-5}`.
/// Next omitted term is `127/(430080 t^7)`, below 1e-15 for `t ≥ 30`.
pub fn rs_theta(t: f64) -> f64 {
    let half = 0.5 * t;
    half * (t / (2.0 * PI)).ln() - half - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
}

/// First correction term `C₀(p) = cos(2π(p² − p − 1/16)) / cos(2πp)`.
///
/// Numerator and denominator share simple zeros at `p ≡ ±1/4 (mod 1)`; inside
/// a small window around those points the ratio is evaluated from the local
/// series of both factors (the quotient of the `sin` expansions), which keeps
/// full accuracy through the removable singularity.
pub fn rs_c0(p: f64) -> f64 {
    let denom = (2.0 * PI * p).cos();
    if denom.abs() >= 0.01 {
        let phase = 2.0 * PI * (p * p - p - 0.0625);
        return phase.cos() / denom;
    }
    // nearest singular point p* with cos(2πp*) = 0
    let p_star = ((p - 0.25) / 0.5).round() * 0.5 + 0.25;
    let q = p - p_star;
    // numerator: cos(φ(p*+q)) = −sin(φ(p*))·sin(c₁q + 2πq²), φ quadratic
    let sigma = (2.0 * PI * (p_star * p_star - p_star - 0.0625)).sin();
    let c1 = 2.0 * PI * (2.0 * p_star - 1.0);
    // denominator: cos(2π(p*+q)) = −sin(2πp*)·sin(2πq)
    let tau = (2.0 * PI * p_star).sin();
    // expansions of sin(c₁q + 2πq²)/q and sin(2πq)/q through q³
    let num_series =
        c1 + 2.0 * PI * q - c1 * c1 * c1 * q * q / 6.0 - 0.5 * c1 * c1 * 2.0 * PI * q * q * q;
    let den_series = 2.0 * PI - (2.0 * PI).powi(3) * q * q / 6.0;
    (sigma / tau) * (num_series / den_series)
}

/// Finite-difference weights by Fornberg's recurrence: weights of
/// `f(x_j)` approximating the `m`-th derivative at `z`.
fn fd_weights(z: f64, xs: &[f64], m: usize) -> Vec<f64> {
    let n = xs.len();
    let mut c = vec![vec![0.0f64; m + 1]; n];
    let mut c1 = 1.0f64;
    let mut c4 = xs[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0f64;
        let c5 = c4;
        c4 = xs[i] - z;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

const C1_STENCIL_HALF: i32 = 4;
const C1_STEP: f64 = 0.005;

fn c1_stencil() -> &'static Vec<f64> {
    static W: OnceLock<Vec<f64>> = OnceLock::new();
    W.get_or_init(|| {
        let xs: Vec<f64> = (-C1_STENCIL_HALF..=C1_STENCIL_HALF)
            .map(|i| i as f64 * C1_STEP)
            .collect();
        fd_weights(0.0, &xs, 3)
    })
}

/// Second correction term `C₁(p) = −C₀'''(p)/(96π²)`.
pub fn rs_c1(p: f64) -> f64 {
    let w = c1_stencil();
    let mut acc = 0.0;
    for (i, off) in (-C1_STENCIL_HALF..=C1_STENCIL_HALF).enumerate() {
        acc += w[i] * rs_c0(p + off as f64 * C1_STEP);
    }
    -acc / (96.0 * PI * PI)
}

/// Reusable evaluator with `log n` and `n^{-1/2}` tables sized for a maximum
/// `t`; pure and shareable across threads.
#[derive(Debug, Clone)]
pub struct ZetaEvaluator {
    ln_n: Vec<f64>,
    rsqrt_n: Vec<f64>,
    correction_order: u8,
    cutoff: f64,
}

impl ZetaEvaluator {
    pub fn new(t_max: f64, config: &QuadratureConfig) -> Self {
        let m_max = (t_max.max(0.0) / (2.0 * PI)).sqrt().floor() as usize + 2;
        let mut ln_n = Vec::with_capacity(m_max + 1);
        let mut rsqrt_n = Vec::with_capacity(m_max + 1);
        ln_n.push(0.0);
        rsqrt_n.push(0.0);
        for n in 1..=m_max {
            ln_n.push((n as f64).ln());
            rsqrt_n.push(1.0 / (n as f64).sqrt());
        }
        Self {
            ln_n,
            rsqrt_n,
            correction_order: config.rs_correction_order,
            cutoff: config.small_t_cutoff,
        }
    }

    /// `Z(t)` by the Riemann–Siegel formula; meaningful for `t ≥ ~2π`.
    pub fn z(&self, t: f64) -> f64 {
        let a = (t / (2.0 * PI)).sqrt();
        let m = a.floor() as usize;
        debug_assert!(
            m + 1 < self.ln_n.len(),
            "evaluator built for smaller t_max than {t}"
        );
        let p = a - m as f64;
        let theta = rs_theta(t);
        let mut acc = CompensatedSum::new();
        for n in 1..=m {
            acc.add(self.rsqrt_n[n] * (theta - t * self.ln_n[n]).cos());
        }
        let mut z = 2.0 * acc.value();
        if self.correction_order >= 1 {
            let mut corr = rs_c0(p);
            if self.correction_order >= 2 {
                corr += rs_c1(p) / a;
            }
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            z += sign * corr / a.sqrt();
        }
        z
    }

    /// `|ζ(½+it)|²`: Euler–Maclaurin below the cutoff, `Z(t)²` above.
    pub fn zeta_half_sq(&self, t: f64) -> f64 {
        let t = t.abs();
        if t < self.cutoff {
            em::zeta_half_complex(t).norm_sq()
        } else {
            let z = self.z(t);
            z * z
        }
    }
}
