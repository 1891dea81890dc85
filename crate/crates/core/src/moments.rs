//! Short-interval moment experiments.
//!
//! The central objects are discrete second moments like
//! `Σ_{T≤n≤2T} (Δ(n+U) − Δ(n))²`, whose leading behaviour is
//! `TU·(8/π²)·log³(√T/U)`, their continuous analogues for `E`, `P`, `A`,
//! the two-sided numerical check of Jutila's identity
//!
//! `∫_T^{T+H} (Δ(x+U) − Δ(x))² dx ≈ (1/4π²) Σ_{n≤T/2U} d²(n) n^{-3/2}
//!  ∫_T^{T+H} x^{1/2} |exp(2πiU√(n/x)) − 1|² dx`,
//!
//! fourth-moment probes `∫ (f(t+G) − f(t−G))⁴ dt` against the `T^{1+ε}G²`
//! scale, omega probes for the `√U log^{3/2}(√x/U)` lower-bound shape, and
//! the analytic helper `∫ sin²y/y² dy → π/2`.
//!
//! All discrete moments run over prefix-sum evaluators (O(1) per sample,
//! O(T) per experiment); continuous `E` moments reuse a prebuilt [`ECurve`].
//! Half-integer sampling is the canonical discretization for integrals of
//! step-discontinuous integrands.

use crate::error::{Error, Result};
use crate::error_terms::{CircleEvaluator, CuspEvaluator, DeltaEvaluator};
use crate::fitting::polyfit;
use crate::numeric::{CompensatedSum, SplitMix64};
use crate::quadrature::{adaptive_simpson, GaussLegendre};
use crate::zeta::ECurve;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::time::Instant;

/// Leading constant `8/π²` of the cubic log term in the divisor moment.
pub const C3_REFERENCE: f64 = 8.0 / (PI * PI);

/// Sampling discipline of a moment experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    IntegerSum,
    HalfIntegerSum,
    Quadrature,
}

/// One experiment's inputs and outputs. Serialized as one JSON object per
/// line and as a CSV ledger row with the same columns; `runtime_s` is the
/// only field excluded from determinism comparisons.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentReport {
    pub kind: String,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "U")]
    pub u: f64,
    pub k: u32,
    pub moment: f64,
    pub main_term: f64,
    pub ratio: f64,
    pub coeffs: Option<Vec<f64>>,
    pub seed: u64,
    pub runtime_s: f64,
}

impl MomentReport {
    pub const CSV_HEADER: &'static str = "kind,T,U,k,moment,main_term,ratio,coeffs,seed,runtime_s";

    pub fn csv_row(&self) -> String {
        let coeffs = self
            .coeffs
            .as_ref()
            .map(|cs| {
                cs.iter()
                    .map(|c| format!("{c}"))
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.kind,
            self.t,
            self.u,
            self.k,
            self.moment,
            self.main_term,
            self.ratio,
            coeffs,
            self.seed,
            self.runtime_s
        )
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    fn new(kind: &str, t: f64, u: f64, k: u32, moment: f64, main_term: f64) -> Self {
        let ratio = if main_term != 0.0 {
            moment / main_term
        } else {
            0.0
        };
        Self {
            kind: kind.into(),
            t,
            u,
            k,
            moment,
            main_term,
            ratio,
            coeffs: None,
            seed: 0,
            runtime_s: 0.0,
        }
    }
}

/// `log(√T/U)`, the fitting variable; clamped at 0 when `U ≥ √T`.
fn lambda(t: f64, u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    (t.sqrt() / u).ln().max(0.0)
}

/// `Σ_{T≤n≤2T} (Δ(n+U) − Δ(n))²` via prefix sums, with the leading term
/// `TU·(8/π²)·log³(√T/U)` and their ratio.
pub fn delta_diff_sq_sum(t: u64, u: u64, eval: &DeltaEvaluator) -> Result<MomentReport> {
    if t < 1 {
        return Err(Error::invalid("delta_diff_sq_sum: T must be ≥ 1"));
    }
    if 2 * t + u > eval.limit() {
        return Err(Error::out_of_range(format!(
            "delta_diff_sq_sum: needs table to {} but limit is {}",
            2 * t + u,
            eval.limit()
        )));
    }
    let start = Instant::now();
    let tf = t as f64;
    let uf = u as f64;
    let mut moment = 0.0;
    if u > 0 {
        let mut acc = CompensatedSum::new();
        for n in t..=2 * t {
            let x = n as f64;
            let d = eval.delta_unchecked(x + uf) - eval.delta_unchecked(x);
            acc.add(d * d);
        }
        moment = acc.value();
    }
    let lam = lambda(tf, uf);
    let main = tf * uf * C3_REFERENCE * lam.powi(3);
    let mut rep = MomentReport::new("delta", tf, uf, 2, moment, main);
    rep.runtime_s = start.elapsed().as_secs_f64();
    Ok(rep)
}

/// Result of fitting a moment family over a `U` grid.
#[derive(Debug, Clone)]
pub struct MomentFit {
    pub reports: Vec<MomentReport>,
    /// The fitting variable per report: `log(√T/U)`.
    pub lambda: Vec<f64>,
    /// Fitted polynomial in that variable, ascending powers.
    pub coeffs: Vec<f64>,
    pub leading: f64,
    pub reference: Option<f64>,
    pub relative_error: Option<f64>,
}

/// Cubic fit of `Σ(Δ(n+U)−Δ(n))²/(TU)` in `log(√T/U)` over a `U` grid;
/// the leading coefficient estimates `8/π²`.
pub fn delta_diff_sq_fit(t: u64, us: &[u64], eval: &DeltaEvaluator) -> Result<MomentFit> {
    if us.len() < 6 {
        return Err(Error::invalid(
            "delta_diff_sq_fit: need at least 6 U values",
        ));
    }
    let mut reports = Vec::with_capacity(us.len());
    for &u in us {
        if u == 0 {
            return Err(Error::invalid(
                "delta_diff_sq_fit: U values must be positive",
            ));
        }
        reports.push(delta_diff_sq_sum(t, u, eval)?);
    }
    fit_family(reports, 3, Some(C3_REFERENCE))
}

fn fit_family(
    reports: Vec<MomentReport>,
    degree: usize,
    reference: Option<f64>,
) -> Result<MomentFit> {
    let lam: Vec<f64> = reports.iter().map(|r| lambda(r.t, r.u)).collect();
    let ys: Vec<f64> = reports.iter().map(|r| r.moment / (r.t * r.u)).collect();
    let fit = polyfit(&lam, &ys, degree)?;
    let leading = fit.leading();
    let relative_error = reference.map(|r| (leading - r).abs() / r);
    Ok(MomentFit {
        reports,
        lambda: lam,
        coeffs: fit.coeffs,
        leading,
        reference,
        relative_error,
    })
}

/// `∫_T^{2T} (E(t+U) − E(t))² dt` by trapezoid over the curve's grid spacing.
/// The curve must cover `[T, 2T+U]`.
pub fn e_diff_sq_integral(t: f64, u: f64, curve: &ECurve) -> Result<MomentReport> {
    let start = Instant::now();
    let moment = e_diff_sq_integral_stride(t, u, curve, 1)?;
    let lam = lambda(t, u);
    let main = t * u * lam.powi(3); // unit leading coefficient: fit-only scale
    let mut rep = MomentReport::new("e", t, u, 2, moment, main);
    rep.runtime_s = start.elapsed().as_secs_f64();
    Ok(rep)
}

/// Same integral sampled on every `stride`-th grid interval (used for the
/// grid-halving self-consistency check).
pub fn e_diff_sq_integral_stride(t: f64, u: f64, curve: &ECurve, stride: usize) -> Result<f64> {
    if u < 0.0 {
        return Err(Error::invalid("e_diff_sq_integral: U must be ≥ 0"));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    let grid = curve.grid();
    let h = (grid[1] - grid[0]) * stride as f64;
    if t < curve.t_min() || 2.0 * t + u > curve.t_max() {
        return Err(Error::out_of_range(format!(
            "e_diff_sq_integral: needs curve over [{t}, {}], have [{}, {}]",
            2.0 * t + u,
            curve.t_min(),
            curve.t_max()
        )));
    }
    let steps = (t / h).round() as usize; // integrate over [T, 2T]
    if steps < 2 {
        return Err(Error::invalid("e_diff_sq_integral: grid too coarse"));
    }
    let mut acc = CompensatedSum::new();
    for j in 0..=steps {
        let x = t + j as f64 * h;
        let d = curve.e_at(x + u)? - curve.e_at(x)?;
        let w = if j == 0 || j == steps { 0.5 } else { 1.0 };
        acc.add(w * d * d);
    }
    Ok(acc.value() * h)
}

/// Both sides of Jutila's identity over `[T, T+H]`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct JutilaCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl JutilaCheck {
    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs
    }
}

/// Numerical two-sided check of the identity: the left side is the
/// half-integer trapezoid discretization of `∫_T^{T+H}(Δ(x+U)−Δ(x))² dx`,
/// the right side the truncated spectral sum over `n ≤ T/(2U)` with each
/// inner integral `∫ x^{1/2}|exp(2πiU√(n/x))−1|² dx = 4∫ x^{1/2}
/// sin²(πU√(n/x)) dx` done by Gauss–Legendre panels sized against the phase
/// derivative.
pub fn jutila_identity_check(t: u64, h: u64, u: u64, eval: &DeltaEvaluator) -> Result<JutilaCheck> {
    if t < 1 || h < 1 {
        return Err(Error::invalid("jutila_identity_check: need T, H ≥ 1"));
    }
    if t + h + u > eval.limit() {
        return Err(Error::out_of_range(format!(
            "jutila_identity_check: needs table to {} but limit is {}",
            t + h + u,
            eval.limit()
        )));
    }
    if u == 0 {
        return Ok(JutilaCheck { lhs: 0.0, rhs: 0.0 });
    }
    let tf = t as f64;
    let hf = h as f64;
    let uf = u as f64;

    // lhs: trapezoid over x = T+1/2, …, T+H−1/2
    let mut acc = CompensatedSum::new();
    for j in 0..h {
        let x = tf + 0.5 + j as f64;
        let d = eval.delta_unchecked(x + uf) - eval.delta_unchecked(x);
        let w = if j == 0 || j == h - 1 { 0.5 } else { 1.0 };
        acc.add(w * d * d);
    }
    let lhs = acc.value();

    // rhs: (1/4π²) Σ_{n≤T/2U} d²(n) n^{−3/2} I_n
    let m = (tf / (2.0 * uf)).floor() as u64;
    let rule = GaussLegendre::new(8);
    let terms: Vec<f64> = (1..=m)
        .into_par_iter()
        .map(|n| {
            let nf = n as f64;
            let dn = eval.d(n) as f64;
            let integral = sin_sq_inner_integral(&rule, tf, hf, uf, nf);
            dn * dn * nf.powf(-1.5) * integral
        })
        .collect();
    let mut racc = CompensatedSum::new();
    for v in terms {
        racc.add(v);
    }
    let rhs = racc.value() / (4.0 * PI * PI);
    Ok(JutilaCheck { lhs, rhs })
}

/// `4 ∫_T^{T+H} x^{1/2} sin²(πU√(n/x)) dx`, panels sized so the phase moves
/// at most ~π/8 per panel at the left endpoint (where it moves fastest).
fn sin_sq_inner_integral(rule: &GaussLegendre, t: f64, h: f64, u: f64, n: f64) -> f64 {
    let width = t.powf(1.5) / (4.0 * u * n.sqrt());
    let panels = (h / width).ceil().max(1.0) as usize;
    rule.integrate_panels(t, t + h, panels, |x| {
        let s = (PI * u * (n / x).sqrt()).sin();
        4.0 * x.sqrt() * s * s
    })
}

/// The same inner integral through the literal `|exp(iφ) − 1|²` form.
#[cfg(test)]
fn complex_form_inner_integral(rule: &GaussLegendre, t: f64, h: f64, u: f64, n: f64) -> f64 {
    let width = t.powf(1.5) / (4.0 * u * n.sqrt());
    let panels = (h / width).ceil().max(1.0) as usize;
    rule.integrate_panels(t, t + h, panels, |x| {
        let phi = 2.0 * PI * u * (n / x).sqrt();
        let re = phi.cos() - 1.0;
        let im = phi.sin();
        x.sqrt() * (re * re + im * im)
    })
}

/// `Σ (P(t+U) − P(t))²` over half-integers `t ∈ [T, 2T)`.
pub fn circle_diff_sq_integral(t: u64, u: u64, eval: &CircleEvaluator) -> Result<MomentReport> {
    if t < 1 {
        return Err(Error::invalid("circle_diff_sq_integral: T must be ≥ 1"));
    }
    if 2 * t + u > eval.limit() {
        return Err(Error::out_of_range(format!(
            "circle_diff_sq_integral: needs table to {} but limit is {}",
            2 * t + u,
            eval.limit()
        )));
    }
    let start = Instant::now();
    let tf = t as f64;
    let uf = u as f64;
    let mut moment = 0.0;
    if u > 0 {
        let mut acc = CompensatedSum::new();
        for j in 0..t {
            let x = tf + j as f64 + 0.5;
            let d = eval.circle_p_unchecked(x + uf) - eval.circle_p_unchecked(x);
            acc.add(d * d);
        }
        moment = acc.value();
    }
    let main = tf * uf * lambda(tf, uf); // unit A₁ scale; constants are fit-only
    let mut rep = MomentReport::new("circle", tf, uf, 2, moment, main);
    rep.runtime_s = start.elapsed().as_secs_f64();
    Ok(rep)
}

/// Linear fit `moment/(TU) = A₁ log(√T/U) + A₂`; `A₁` must come out positive.
pub fn circle_diff_sq_fit(t: u64, us: &[u64], eval: &CircleEvaluator) -> Result<MomentFit> {
    if us.len() < 3 {
        return Err(Error::invalid(
            "circle_diff_sq_fit: need at least 3 U values",
        ));
    }
    let mut reports = Vec::with_capacity(us.len());
    for &u in us {
        if u == 0 {
            return Err(Error::invalid(
                "circle_diff_sq_fit: U values must be positive",
            ));
        }
        reports.push(circle_diff_sq_integral(t, u, eval)?);
    }
    let fit = fit_family(reports, 1, None)?;
    if fit.leading <= 0.0 {
        return Err(Error::FitFailure(format!(
            "circle moment log-coefficient must be positive, got {}",
            fit.leading
        )));
    }
    Ok(fit)
}

/// `Σ (A(t+U) − A(t))²` over half-integers `t ∈ [T, 2T)`, reported against
/// the `T^{12}·U` scale (the literature's constant is not printed, so the
/// ratio field is the normalized constant itself).
pub fn cusp_diff_sq_integral(t: u64, u: u64, eval: &CuspEvaluator) -> Result<MomentReport> {
    if t < 1 {
        return Err(Error::invalid("cusp_diff_sq_integral: T must be ≥ 1"));
    }
    if 2 * t + u > eval.limit() {
        return Err(Error::out_of_range(format!(
            "cusp_diff_sq_integral: needs table to {} but limit is {}",
            2 * t + u,
            eval.limit()
        )));
    }
    let start = Instant::now();
    let tf = t as f64;
    let uf = u as f64;
    let mut moment = 0.0;
    if u > 0 {
        let mut acc = CompensatedSum::new();
        for j in 0..t {
            let x = tf + j as f64 + 0.5;
            let d = eval.cusp_a_unchecked(x + uf) - eval.cusp_a_unchecked(x);
            acc.add(d * d);
        }
        moment = acc.value();
    }
    let main = tf.powi(12) * uf;
    let mut rep = MomentReport::new("cusp", tf, uf, 2, moment, main);
    rep.runtime_s = start.elapsed().as_secs_f64();
    Ok(rep)
}

/// Which function a fourth-moment or omega probe targets.
#[derive(Debug, Clone, Copy)]
pub enum ProbeTarget<'a> {
    Delta(&'a DeltaEvaluator),
    E(&'a ECurve),
}

/// `∫_T^{2T} (f(t+G) − f(t−G))⁴ dt`, half-integer sampling for `Δ`, grid
/// quadrature for `E`; reported against the `T·G²` scale.
pub fn fourth_moment_probe(target: ProbeTarget<'_>, t: f64, g: f64) -> Result<MomentReport> {
    if !(t >= 1.0 && g >= 0.0) {
        return Err(Error::invalid("fourth_moment_probe: need T ≥ 1, G ≥ 0"));
    }
    let start = Instant::now();
    let moment = match target {
        ProbeTarget::Delta(eval) => {
            if t - g < 1.0 || 2.0 * t + g > eval.limit() as f64 {
                return Err(Error::out_of_range(format!(
                    "fourth_moment_probe: needs table coverage [{}, {}]",
                    t - g,
                    2.0 * t + g
                )));
            }
            if g == 0.0 {
                0.0
            } else {
                let steps = t as u64;
                let mut acc = CompensatedSum::new();
                for j in 0..steps {
                    let x = t + j as f64 + 0.5;
                    let d = eval.delta_unchecked(x + g) - eval.delta_unchecked(x - g);
                    let d2 = d * d;
                    acc.add(d2 * d2);
                }
                acc.value()
            }
        }
        ProbeTarget::E(curve) => {
            if g == 0.0 {
                0.0
            } else {
                if t - g < curve.t_min() || 2.0 * t + g > curve.t_max() {
                    return Err(Error::out_of_range(format!(
                        "fourth_moment_probe: needs curve coverage [{}, {}]",
                        t - g,
                        2.0 * t + g
                    )));
                }
                let grid = curve.grid();
                let h = grid[1] - grid[0];
                let steps = (t / h).round() as usize;
                let mut acc = CompensatedSum::new();
                for j in 0..=steps {
                    let x = t + j as f64 * h;
                    let d = curve.e_at(x + g)? - curve.e_at(x - g)?;
                    let w = if j == 0 || j == steps { 0.5 } else { 1.0 };
                    let d2 = d * d;
                    acc.add(w * d2 * d2);
                }
                acc.value() * h
            }
        }
    };
    let kind = match target {
        ProbeTarget::Delta(_) => "delta",
        ProbeTarget::E(_) => "e",
    };
    let main = t * g * g;
    let mut rep = MomentReport::new(kind, t, g, 4, moment, main);
    rep.runtime_s = start.elapsed().as_secs_f64();
    Ok(rep)
}

/// Soft range advice for fourth-moment probes: the bound is stated for
/// `G` between `T^{3/8}` and `T^{1/2}`.
pub fn fourth_moment_range_warning(t: f64, g: f64) -> Option<String> {
    let lo = t.powf(0.375);
    let hi = t.sqrt();
    if g < lo || g > hi {
        Some(format!(
            "G={g} outside the stated range [T^(3/8), T^(1/2)] = [{lo:.1}, {hi:.1}]"
        ))
    } else {
        None
    }
}

/// Result of an omega probe: the empirical maximum of
/// `|f(x+U) − f(x)| / (√U log^{3/2}(√x/U))` over sampled `x ∈ [T, 2T]`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OmegaProbe {
    pub max_ratio: f64,
    pub argmax_x: f64,
    pub samples: usize,
    pub seed: u64,
}

pub fn omega_probe(
    target: ProbeTarget<'_>,
    t: f64,
    u: f64,
    samples: usize,
    seed: u64,
) -> Result<OmegaProbe> {
    if samples == 0 {
        return Err(Error::invalid("omega_probe: need at least one sample"));
    }
    if !(u > 0.0) {
        return Err(Error::invalid("omega_probe: U must be positive"));
    }
    if t.sqrt() / u <= 1.0 {
        return Err(Error::invalid(
            "omega_probe: √T/U must exceed 1 for the log^{3/2} scale",
        ));
    }
    match &target {
        ProbeTarget::Delta(eval) => {
            if 2.0 * t + u > eval.limit() as f64 {
                return Err(Error::out_of_range("omega_probe: table too small"));
            }
        }
        ProbeTarget::E(curve) => {
            if t < curve.t_min() || 2.0 * t + u > curve.t_max() {
                return Err(Error::out_of_range("omega_probe: curve too small"));
            }
        }
    }
    let mut rng = SplitMix64::new(seed);
    let mut best = -1.0f64;
    let mut best_x = t;
    for _ in 0..samples {
        let x = t + rng.next_f64() * t;
        let diff = match &target {
            ProbeTarget::Delta(eval) => eval.delta_unchecked(x + u) - eval.delta_unchecked(x),
            ProbeTarget::E(curve) => curve.e_at(x + u)? - curve.e_at(x)?,
        };
        let scale = u.sqrt() * (x.sqrt() / u).ln().powf(1.5);
        let ratio = diff.abs() / scale;
        if ratio > best {
            best = ratio;
            best_x = x;
        }
    }
    Ok(OmegaProbe {
        max_ratio: best,
        argmax_x: best_x,
        samples,
        seed,
    })
}

/// `∫_α^β sin²y/y² dy` to ~1e-8 absolute.
///
/// Adaptive Simpson handles `[α, min(β, 64)]`; beyond 64 the identity
/// `sin²y = (1 − cos 2y)/2` splits off an exact `1/(2y²)` part, and the
/// oscillatory remainder is integrated by parts five times, leaving boundary
/// terms plus a remainder below 1e-10.
pub fn sinc_sq_integral(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0 && beta >= 1.0) {
        return Err(Error::invalid(
            "sinc_sq_integral: need 0 < alpha ≤ 1 ≤ beta",
        ));
    }
    if alpha == beta {
        return Ok(0.0);
    }
    const SPLIT: f64 = 64.0;
    let f = |y: f64| {
        let s = y.sin();
        s * s / (y * y)
    };
    if beta <= SPLIT {
        return adaptive_simpson(&f, alpha, beta, 2e-9);
    }
    let head = adaptive_simpson(&f, alpha, SPLIT, 2e-9)?;
    Ok(head + oscillatory_tail(SPLIT, beta))
}

/// `∫_b0^b1 sin²y/y² dy` for `b0` large: `½(1/b0 − 1/b1) − ½ T₂` where
/// `T_k = ∫ cos(2y)/y^k` and `S_k = ∫ sin(2y)/y^k` satisfy
/// `T_k = [sin(2y)/(2y^k)] + (k/2) S_{k+1}`,
/// `S_k = [−cos(2y)/(2y^k)] − (k/2) T_{k+1}`.
/// Five levels leave a remainder below `22.5·b0^{-6}/6`.
fn oscillatory_tail(b0: f64, b1: f64) -> f64 {
    let sin_term =
        |k: i32| ((2.0 * b1).sin() / (2.0 * b1.powi(k))) - ((2.0 * b0).sin() / (2.0 * b0.powi(k)));
    let cos_term = |k: i32| {
        (-(2.0 * b1).cos() / (2.0 * b1.powi(k))) - (-(2.0 * b0).cos() / (2.0 * b0.powi(k)))
    };
    // T2 = sin_term(2) + 1·S3
    // S3 = cos_term(3) − (3/2)·T4
    // T4 = sin_term(4) + 2·S5
    // S5 = cos_term(5) − (5/2)·T6
    // T6 = sin_term(6) + 3·S7, S7 dropped (≤ 2.4e-12 before weights)
    let t6 = sin_term(6);
    let s5 = cos_term(5) - 2.5 * t6;
    let t4 = sin_term(4) + 2.0 * s5;
    let s3 = cos_term(3) - 1.5 * t4;
    let t2 = sin_term(2) + s3;
    0.5 * (1.0 / b0 - 1.0 / b1) - 0.5 * t2
}
