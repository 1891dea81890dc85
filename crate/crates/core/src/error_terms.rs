//! Exact evaluation of the error terms `Δ(x)`, `Δ*(x)`, `P(x)`, `A(x)` from
//! sieved tables and their analytic main terms.
//!
//! Partial sums give full weight to the term at integer `x`. Evaluators hold
//! precomputed prefix sums, so a single evaluation is O(1) and sweeps over
//! large grids are cheap; all evaluators are immutable and shareable across
//! threads.

use crate::error::{Error, Result};
use crate::tables::{ArithTable, TableKind};

use std::f64::consts::PI;

/// Euler's constant `γ = −Γ′(1)`, sixteen significant digits.
pub const EULER_GAMMA: f64 = 0.5772156649015329;

/// The four error-term kinds and their main terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorTermKind {
    /// `Δ(x) = Σ_{n≤x} d(n) − x(log x + 2γ − 1)`
    DirichletDelta,
    /// `Δ*(x) = −Δ(x) + 2Δ(2x) − ½Δ(4x)`
    AlternatingDeltaStar,
    /// `P(x) = Σ_{n≤x} r(n) − πx`
    CircleP,
    /// `A(x) = Σ_{n≤x} τ(n)` (no main term)
    CuspA,
}

impl ErrorTermKind {
    /// The analytic main term subtracted from the partial sum.
    pub fn main_term(&self, x: f64) -> f64 {
        match self {
            ErrorTermKind::DirichletDelta | ErrorTermKind::AlternatingDeltaStar => {
                divisor_main_term(x)
            }
            ErrorTermKind::CircleP => PI * x,
            ErrorTermKind::CuspA => 0.0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ErrorTermKind::DirichletDelta => "delta",
            ErrorTermKind::AlternatingDeltaStar => "delta_star",
            ErrorTermKind::CircleP => "circle_p",
            ErrorTermKind::CuspA => "cusp_a",
        }
    }
}

/// `x (log x + 2γ − 1)`, extended by continuity to 0 at `x = 0`.
#[inline]
pub fn divisor_main_term(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (x.ln() + 2.0 * EULER_GAMMA - 1.0)
    }
}

/// Both forms of `Δ*(x)`: the defining combination of `Δ` values and the
/// direct alternating sum `½ Σ_{n≤4x} (−1)ⁿ d(n) − x(log x + 2γ − 1)`.
#[derive(Debug, Clone, Copy)]
pub struct DeltaStar {
    pub combination: f64,
    pub direct: f64,
}

impl DeltaStar {
    /// Canonical value (the direct form; the two agree to 1e-9 relative by
    /// construction, enforced at evaluation time).
    pub fn value(&self) -> f64 {
        self.direct
    }
}

/// Relative agreement required between the two `Δ*` forms.
const DELTA_STAR_AGREEMENT: f64 = 1e-9;

/// O(1) evaluator for `Δ(x)` and `Δ*(x)` over a divisor table.
#[derive(Debug, Clone)]
pub struct DeltaEvaluator {
    prefix: Vec<i64>,
    alt_prefix: Vec<i64>,
    limit: u64,
}

impl DeltaEvaluator {
    pub fn new(table: &ArithTable) -> Result<Self> {
        if table.kind() != TableKind::Divisor {
            return Err(Error::invalid("DeltaEvaluator requires a divisor table"));
        }
        let values = table
            .small_values()
            .expect("divisor tables store 64-bit values");
        let n = values.len();
        let mut prefix = vec![0i64; n + 1];
        let mut alt_prefix = vec![0i64; n + 1];
        for (i, &v) in values.iter().enumerate() {
            prefix[i + 1] = prefix[i] + v;
            let signed = if (i + 1) % 2 == 0 { v } else { -v };
            alt_prefix[i + 1] = alt_prefix[i] + signed;
        }
        Ok(Self {
            prefix,
            alt_prefix,
            limit: table.limit(),
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `Σ_{n≤⌊x⌋} d(n)` as f64 (exact below 2^53).
    #[inline]
    pub fn divisor_sum(&self, x: f64) -> f64 {
        self.prefix[x.floor() as usize] as f64
    }

    /// `d(n)` recovered from the prefix sums.
    #[inline]
    pub fn d(&self, n: u64) -> i64 {
        self.prefix[n as usize] - self.prefix[n as usize - 1]
    }

    #[inline]
    fn check_range(&self, x: f64, what: &str) -> Result<()> {
        if !(x > 0.0 && x <= self.limit as f64) {
            return Err(Error::out_of_range(format!(
                "{what}: x={x} outside (0, {}]",
                self.limit
            )));
        }
        Ok(())
    }

    /// `Δ(x)`, exact partial sum minus main term, full weight at integers.
    pub fn delta(&self, x: f64) -> Result<f64> {
        self.check_range(x, "delta")?;
        Ok(self.delta_unchecked(x))
    }

    #[inline]
    pub(crate) fn delta_unchecked(&self, x: f64) -> f64 {
        self.prefix[x.floor() as usize] as f64 - divisor_main_term(x)
    }

    /// `Δ*(x)` in both forms; requires `4x ≤ limit`. The combination and the
    /// direct alternating sum must agree to 1e-9 relative.
    pub fn delta_star(&self, x: f64) -> Result<DeltaStar> {
        if !(x > 0.0 && 4.0 * x <= self.limit as f64) {
            return Err(Error::out_of_range(format!(
                "delta_star: 4x={} outside (0, {}]",
                4.0 * x,
                self.limit
            )));
        }
        let combination = -self.delta_unchecked(x) + 2.0 * self.delta_unchecked(2.0 * x)
            - 0.5 * self.delta_unchecked(4.0 * x);
        let direct = self.delta_star_direct(x);
        let scale = combination.abs().max(direct.abs()).max(1.0);
        if (combination - direct).abs() > DELTA_STAR_AGREEMENT * scale {
            return Err(Error::Consistency(format!(
                "delta_star forms disagree at x={x}: {combination} vs {direct}"
            )));
        }
        Ok(DeltaStar {
            combination,
            direct,
        })
    }

    /// Direct form `½ Σ_{n≤4x} (−1)ⁿ d(n) − x(log x + 2γ − 1)` without the
    /// cross-check; used on hot paths once the identity is established.
    #[inline]
    pub(crate) fn delta_star_direct(&self, x: f64) -> f64 {
        let m = (4.0 * x).floor() as usize;
        0.5 * self.alt_prefix[m] as f64 - divisor_main_term(x)
    }
}

/// O(1) evaluator for the circle-problem error `P(x)`.
#[derive(Debug, Clone)]
pub struct CircleEvaluator {
    prefix: Vec<i64>,
    limit: u64,
}

impl CircleEvaluator {
    pub fn new(table: &ArithTable) -> Result<Self> {
        if table.kind() != TableKind::TwoSquares {
            return Err(Error::invalid(
                "CircleEvaluator requires a two-squares table",
            ));
        }
        let values = table
            .small_values()
            .expect("two-squares tables store 64-bit values");
        let mut prefix = vec![0i64; values.len() + 1];
        for (i, &v) in values.iter().enumerate() {
            prefix[i + 1] = prefix[i] + v;
        }
        Ok(Self {
            prefix,
            limit: table.limit(),
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `P(x) = Σ_{n≤x} r(n) − πx` for `0 ≤ x ≤ limit` (empty sum below 1).
    pub fn circle_p(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0 && x <= self.limit as f64) {
            return Err(Error::out_of_range(format!(
                "circle_p: x={x} outside [0, {}]",
                self.limit
            )));
        }
        Ok(self.circle_p_unchecked(x))
    }

    #[inline]
    pub(crate) fn circle_p_unchecked(&self, x: f64) -> f64 {
        self.prefix[x.floor() as usize] as f64 - PI * x
    }
}

/// O(1) evaluator for the cusp-form coefficient sum `A(x)`.
#[derive(Debug, Clone)]
pub struct CuspEvaluator {
    prefix: Vec<i128>,
    limit: u64,
}

impl CuspEvaluator {
    pub fn new(table: &ArithTable) -> Result<Self> {
        if table.kind() != TableKind::RamanujanTau {
            return Err(Error::invalid("CuspEvaluator requires a tau table"));
        }
        let mut prefix = vec![0i128; table.limit() as usize + 1];
        for n in 1..=table.limit() {
            prefix[n as usize] = prefix[n as usize - 1] + table.value(n);
        }
        Ok(Self {
            prefix,
            limit: table.limit(),
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `A(x) = Σ_{n≤x} τ(n)` exactly (128-bit integer).
    pub fn cusp_a_exact(&self, x: f64) -> Result<i128> {
        if !(x >= 0.0 && x <= self.limit as f64) {
            return Err(Error::out_of_range(format!(
                "cusp_a: x={x} outside [0, {}]",
                self.limit
            )));
        }
        Ok(self.prefix[x.floor() as usize])
    }

    /// `A(x)` rounded to f64.
    pub fn cusp_a(&self, x: f64) -> Result<f64> {
        Ok(self.cusp_a_exact(x)? as f64)
    }

    #[inline]
    pub(crate) fn cusp_a_unchecked(&self, x: f64) -> f64 {
        self.prefix[x.floor() as usize] as f64
    }
}
