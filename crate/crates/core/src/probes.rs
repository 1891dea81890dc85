//! Large-value experiments on `|ζ(½+it)|` and the close-quadruple counter for
//! sums of two k-th roots.
//!
//! The peak scan collects 1-separated points `t_r ∈ [T, 2T]` with
//! `|ζ(½+it_r)| ≥ V`; the companion report compares the peak count `R`
//! against `V^{-2-2k} L^{2+2k} ∫_{T/3}^{3T} {|E(t+2G)−E(t−2G)|^k +
//! |E(t+G/2)−E(t−G/2)|^k} dt` with `G = A(V/L)²`, `L = log T`. The constants
//! involved are not pinned numerically anywhere, so the report records the
//! implied constant instead of asserting a bound.
//!
//! The quadruple counter reports `#{N < n₁..n₄ ≤ 2N : |n₁^{1/k} + n₂^{1/k} −
//! n₃^{1/k} − n₄^{1/k}| < δN^{1/k}}` against the `N⁴δ + N²` scale.

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::zeta::{ECurve, QuadratureConfig, ZetaEvaluator};

use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

/// 1-separated large-value points of `|ζ(½+it)|` in `[T, 2T]`.
#[derive(Debug, Clone)]
pub struct PeakSet {
    pub t_lo: f64,
    pub threshold: f64,
    pub points: Vec<f64>,
    pub values: Vec<f64>,
}

impl PeakSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Scan `|ζ(½+it)|` over `[T, 2T]` on a grid of spacing `grid_step`, keep
/// local maxima at or above `V`, then enforce 1-separation greedily from the
/// largest value down (ties broken toward smaller `t`). Deterministic for a
/// fixed configuration.
pub fn scan_peaks(
    t_lo: f64,
    threshold: f64,
    grid_step: f64,
    config: &QuadratureConfig,
) -> Result<PeakSet> {
    if !(grid_step > 0.0 && grid_step <= 0.1) {
        return Err(Error::invalid("scan_peaks: grid_step must be in (0, 0.1]"));
    }
    if !(t_lo > 0.0) {
        return Err(Error::invalid("scan_peaks: T must be positive"));
    }
    config.validate()?;
    let t_hi = 2.0 * t_lo;
    let n = ((t_hi - t_lo) / grid_step).floor() as usize + 1;
    let eval = ZetaEvaluator::new(t_hi + 1.0, config);
    // grid values in parallel blocks, order fixed by index
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| eval.zeta_half_sq(t_lo + i as f64 * grid_step).sqrt())
        .collect();

    // interior local maxima at or above the threshold
    let mut candidates: Vec<(f64, f64)> = Vec::new(); // (value, t)
    for i in 1..n.saturating_sub(1) {
        if values[i] >= threshold && values[i] >= values[i - 1] && values[i] >= values[i + 1] {
            candidates.push((values[i], t_lo + i as f64 * grid_step));
        }
    }
    // keep the larger of any conflicting pair: greedy from the top
    candidates.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .unwrap()
            .then(a.1.partial_cmp(&b.1).unwrap())
    });
    let mut kept: Vec<(f64, f64)> = Vec::new(); // (t, value)
    for (v, t) in candidates {
        if kept.iter().all(|&(kt, _)| (kt - t).abs() >= 1.0) {
            kept.push((t, v));
        }
    }
    kept.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(PeakSet {
        t_lo,
        threshold,
        points: kept.iter().map(|&(t, _)| t).collect(),
        values: kept.iter().map(|&(_, v)| v).collect(),
    })
}

/// Peak count against the E-difference moment bound; all quantities recorded,
/// nothing asserted (the constants are not numerically specified).
#[derive(Debug, Clone, Serialize)]
pub struct LargeValueReport {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "V")]
    pub v: f64,
    pub k: u32,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "G")]
    pub g: f64,
    #[serde(rename = "R")]
    pub r: usize,
    pub rhs: f64,
    pub implied_constant: f64,
}

/// Evaluate the moment side for a peak set: `G = A(V/L)²` with `L = log T`,
/// and the integral of `|E(t+2G)−E(t−2G)|^k + |E(t+G/2)−E(t−G/2)|^k` over
/// `[T/3, 3T]` by trapezoid on the curve grid. The curve must cover
/// `[T/3 − 2G, 3T + 2G]`.
pub fn large_value_report(
    peaks: &PeakSet,
    k: u32,
    a_const: f64,
    curve: &ECurve,
) -> Result<LargeValueReport> {
    if !(1..=4).contains(&k) {
        return Err(Error::invalid("large_value_report: k must be in 1..=4"));
    }
    if !(a_const > 0.0) {
        return Err(Error::invalid("large_value_report: A must be positive"));
    }
    let t = peaks.t_lo;
    let v = peaks.threshold;
    let l = t.ln();
    let g = a_const * (v / l) * (v / l);
    let lo = t / 3.0;
    let hi = 3.0 * t;
    if lo - 2.0 * g < curve.t_min() || hi + 2.0 * g > curve.t_max() {
        return Err(Error::out_of_range(format!(
            "large_value_report: needs curve over [{}, {}]",
            lo - 2.0 * g,
            hi + 2.0 * g
        )));
    }
    let grid = curve.grid();
    let h = grid[1] - grid[0];
    let steps = ((hi - lo) / h).round() as usize;
    let mut acc = CompensatedSum::new();
    for j in 0..=steps {
        let x = lo + j as f64 * h;
        let wide = (curve.e_at(x + 2.0 * g)? - curve.e_at(x - 2.0 * g)?).abs();
        let narrow = (curve.e_at(x + 0.5 * g)? - curve.e_at(x - 0.5 * g)?).abs();
        let w = if j == 0 || j == steps { 0.5 } else { 1.0 };
        acc.add(w * (wide.powi(k as i32) + narrow.powi(k as i32)));
    }
    let integral = acc.value() * h;
    let rhs = v.powi(-2 - 2 * k as i32) * l.powi(2 + 2 * k as i32) * integral;
    let r = peaks.len();
    let implied_constant = if rhs > 0.0 { r as f64 / rhs } else { 0.0 };
    Ok(LargeValueReport {
        t,
        v,
        k,
        a: a_const,
        g,
        r,
        rhs,
        implied_constant,
    })
}

/// Exact close-quadruple count and its `N⁴δ + N²` scale.
#[derive(Debug, Clone, Serialize)]
pub struct QuadrupleCountResult {
    #[serde(rename = "N")]
    pub n: u64,
    pub k: u32,
    pub delta: f64,
    pub count: u64,
    pub bound_scale: f64,
}

impl QuadrupleCountResult {
    pub fn csv_header() -> &'static str {
        "N,k,delta,count,bound_scale"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n, self.k, self.delta, self.count, self.bound_scale
        )
    }
}

/// Brute-force budget: the reference loop is O(N⁴).
pub const MAX_QUADRUPLE_N: u64 = 120;

/// Absolute guard band added to the threshold so that exact solutions
/// (true sum 0, floating residue ≲ 1e-14) are counted for every δ ≥ 0;
/// genuinely nonzero sums at these ranges sit far above it.
pub const QUADRUPLE_GUARD: f64 = 1e-12;

/// Count ordered quadruples `N < n₁,n₂,n₃,n₄ ≤ 2N` with
/// `|n₁^{1/k} + n₂^{1/k} − n₃^{1/k} − n₄^{1/k}| < δ·N^{1/k}`.
///
/// For `δ = 0` the count is decided algebraically: `n = m^k·r` with `r`
/// k-th-power-free, and a pair sum is the formal combination `Σ m·r^{1/k}`;
/// two pair sums are equal exactly when those combinations coincide (k-th
/// roots of distinct power-free integers are linearly independent over the
/// rationals). For `δ > 0` pair sums are compared in double precision with
/// the documented guard band.
pub fn count_close_quadruples(n: u64, k: u32, delta: f64) -> Result<QuadrupleCountResult> {
    if n == 0 {
        return Err(Error::invalid("count_close_quadruples: N must be ≥ 1"));
    }
    if n > MAX_QUADRUPLE_N {
        return Err(Error::ResourceLimit(format!(
            "count_close_quadruples: N={n} exceeds the O(N⁴) budget (max {MAX_QUADRUPLE_N})"
        )));
    }
    if k < 2 {
        return Err(Error::invalid("count_close_quadruples: k must be ≥ 2"));
    }
    if !(delta >= 0.0) {
        return Err(Error::invalid("count_close_quadruples: delta must be ≥ 0"));
    }
    let count = if delta == 0.0 {
        count_exact_equal(n, k)
    } else {
        count_with_threshold(n, k, delta * (n as f64).powf(1.0 / k as f64))
    };
    let nf = n as f64;
    Ok(QuadrupleCountResult {
        n,
        k,
        delta,
        count,
        bound_scale: nf.powi(4) * delta + nf * nf,
    })
}

/// δ = 0: group each `n` as `Σ` over its power-free kernel, merge pairs into
/// canonical multiplier maps, and count identical pair combinations.
fn count_exact_equal(n: u64, k: u32) -> u64 {
    let lo = n + 1;
    let hi = 2 * n;
    // kernel decomposition n = m^k · r, r k-th-power-free
    let kernel: Vec<(u64, u64)> = (lo..=hi).map(|v| power_free_kernel(v, k)).collect();
    // canonical key of an ordered pair: sorted (r, total multiplier) entries
    let mut classes: HashMap<Vec<(u64, u64)>, u64> = HashMap::new();
    for a in &kernel {
        for b in &kernel {
            let key = if a.0 == b.0 {
                vec![(a.0, a.1 + b.1)]
            } else if a.0 < b.0 {
                vec![(a.0, a.1), (b.0, b.1)]
            } else {
                vec![(b.0, b.1), (a.0, a.1)]
            };
            *classes.entry(key).or_insert(0) += 1;
        }
    }
    classes.values().map(|c| c * c).sum()
}

/// `n = m^k · r` with `r` free of k-th powers; returns `(r, m)`.
fn power_free_kernel(n: u64, k: u32) -> (u64, u64) {
    let mut r = n;
    let mut m = 1u64;
    let mut p = 2u64;
    while p * p <= r {
        if r % p == 0 {
            let mut e = 0u32;
            let mut v = r;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            let keep = e % k;
            let pull = (e - keep) / k;
            for _ in 0..pull {
                m *= p;
            }
            // r keeps p^keep plus the p-free part; any prime left at loop
            // exit has p'^2 > r, hence exponent 1, hence is k-free
            r = v * p.pow(keep);
        }
        p += 1;
    }
    (r, m)
}

/// δ > 0: sorted pair sums and a two-pointer window count. Counts exactly the
/// ordered quadruples with `|sum₁₂ − sum₃₄| < threshold + guard`.
fn count_with_threshold(n: u64, k: u32, threshold: f64) -> u64 {
    let eps = threshold + QUADRUPLE_GUARD;
    let roots: Vec<f64> = (n + 1..=2 * n)
        .map(|v| (v as f64).powf(1.0 / k as f64))
        .collect();
    let mut sums: Vec<f64> = Vec::with_capacity(roots.len() * roots.len());
    for a in &roots {
        for b in &roots {
            sums.push(a + b);
        }
    }
    sums.sort_by(|x, y| x.partial_cmp(y).unwrap());
    // for each pair sum, count pair sums within (s−eps, s+eps)
    let mut count = 0u64;
    let mut lo = 0usize;
    let mut hi = 0usize;
    for i in 0..sums.len() {
        let s = sums[i];
        while sums[lo] <= s - eps {
            lo += 1;
        }
        if hi < i {
            hi = i;
        }
        while hi < sums.len() && sums[hi] < s + eps {
            hi += 1;
        }
        count += (hi - lo) as u64;
    }
    count
}

/// Reference counter: the literal O(N⁴) loop (used to validate the fast
/// counting paths; `swap_roles` recounts with the pair roles exchanged).
pub fn count_bruteforce(n: u64, k: u32, delta: f64, swap_roles: bool) -> Result<u64> {
    if n > 40 {
        return Err(Error::ResourceLimit(
            "count_bruteforce: validation loop capped at N = 40".into(),
        ));
    }
    let eps = delta * (n as f64).powf(1.0 / k as f64) + QUADRUPLE_GUARD;
    let roots: Vec<f64> = (n + 1..=2 * n)
        .map(|v| (v as f64).powf(1.0 / k as f64))
        .collect();
    let r = &roots;
    let mut count = 0u64;
    for a in r {
        for b in r {
            for c in r {
                for d in r {
                    let s = if swap_roles {
                        c + d - a - b
                    } else {
                        a + b - c - d
                    };
                    if s.abs() < eps {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_decomposition() {
        assert_eq!(power_free_kernel(8, 2), (2, 2)); // 8 = 2²·2
        assert_eq!(power_free_kernel(12, 2), (3, 2)); // 12 = 2²·3
        assert_eq!(power_free_kernel(50, 2), (2, 5)); // 50 = 5²·2
        assert_eq!(power_free_kernel(7, 2), (7, 1));
        assert_eq!(power_free_kernel(27, 3), (1, 3));
        assert_eq!(power_free_kernel(54, 3), (2, 3)); // 54 = 27·2
        assert_eq!(power_free_kernel(1, 2), (1, 1));
    }

    #[test]
    fn single_value_range() {
        // N = 1: only (2,2,2,2)
        let r = count_close_quadruples(1, 2, 0.0).unwrap();
        assert_eq!(r.count, 1);
        let r = count_close_quadruples(1, 5, 0.0).unwrap();
        assert_eq!(r.count, 1);
    }

    #[test]
    fn diagonal_count_at_twenty() {
        // multiset argument: {n₁,n₂} = {n₃,n₄} gives 2N² − N = 780
        let r = count_close_quadruples(20, 2, 0.0).unwrap();
        assert_eq!(r.count, 780);
        assert_eq!(r.count, 2 * 20 * 20 - 20);
    }

    #[test]
    fn exact_count_sees_nondiagonal_solutions() {
        // √50 + √98 = 5√2 + 7√2 = 12√2 = √72 + √72 inside (49, 98]
        let r = count_close_quadruples(49, 2, 0.0).unwrap();
        let diagonal = 2 * 49 * 49 - 49;
        assert!(
            r.count > diagonal,
            "count {} should exceed diagonal {diagonal}",
            r.count
        );
    }

    #[test]
    fn zero_delta_matches_bruteforce() {
        for n in [5u64, 12, 20, 30] {
            for k in [2u32, 3] {
                let fast = count_close_quadruples(n, k, 0.0).unwrap().count;
                let brute = count_bruteforce(n, k, 0.0, false).unwrap();
                assert_eq!(fast, brute, "N={n} k={k}");
            }
        }
    }

    #[test]
    fn positive_delta_matches_bruteforce_and_is_symmetric() {
        for n in [8u64, 16, 24] {
            for delta in [1e-6, 1e-3, 0.5 / (n as f64).powi(2)] {
                let fast = count_close_quadruples(n, 2, delta).unwrap().count;
                let brute = count_bruteforce(n, 2, delta, false).unwrap();
                let swapped = count_bruteforce(n, 2, delta, true).unwrap();
                assert_eq!(fast, brute, "N={n} δ={delta}");
                assert_eq!(brute, swapped, "swap symmetry at N={n} δ={delta}");
            }
        }
    }

    #[test]
    fn count_monotone_in_delta() {
        let mut prev = 0u64;
        for delta in [0.0, 1e-9, 1e-4, 1e-2, 0.1, 0.5] {
            let c = count_close_quadruples(32, 2, delta).unwrap().count;
            assert!(c >= prev, "δ={delta}: {c} < {prev}");
            prev = c;
        }
    }

    #[test]
    fn count_bounds() {
        for n in [4u64, 16] {
            let r = count_close_quadruples(n, 2, 0.3).unwrap();
            assert!(r.count <= n.pow(4));
            assert!(r.count >= 2 * n * n - n);
        }
    }

    #[test]
    fn argument_validation() {
        assert!(count_close_quadruples(0, 2, 0.0).is_err());
        assert!(count_close_quadruples(10, 1, 0.0).is_err());
        assert!(count_close_quadruples(10, 2, -0.5).is_err());
        assert!(count_close_quadruples(MAX_QUADRUPLE_N + 1, 2, 0.0).is_err());
    }
}
