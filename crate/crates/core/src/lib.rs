//! Exact and approximate evaluation of the classical number-theoretic error
//! terms, together with desk-scale experiments on their short-interval moments.
//!
//! The crate covers four error terms and the mean square of the zeta function
//! on the critical line:
//!
//! - `Δ(x)`  — Dirichlet divisor problem: `Σ_{n≤x} d(n) − x(log x + 2γ − 1)`,
//! - `Δ*(x)` — alternating variant `−Δ(x) + 2Δ(2x) − ½Δ(4x)`,
//! - `P(x)`  — Gauss circle problem: `Σ_{n≤x} r(n) − πx`,
//! - `A(x)`  — cusp-form coefficient sums `Σ_{n≤x} τ(n)` (weight 12),
//! - `E(T)`  — `∫₀^T |ζ(½+it)|² dt − T(log(T/2π) + 2γ − 1)`.
//!
//! Modules:
//!
//! - [`tables`]: sieved tables of `d(n)`, `r(n)`, `τ(n)`, their square-summatory
//!   functions and leading-coefficient fits.
//! - [`error_terms`]: exact evaluators for `Δ`, `Δ*`, `P`, `A` over the tables.
//! - [`voronoi`]: truncated Voronoi-type oscillatory expansions of all four.
//! - [`zeta`]: Riemann–Siegel / Euler–Maclaurin evaluation of `|ζ(½+it)|²`,
//!   cumulative quadrature of `E(T)`, and `E*(t) = E(t) − 2πΔ*(t/2π)`.
//! - [`moments`]: short-interval moment experiments, the Jutila-identity
//!   two-sided check, fourth-moment and omega probes.
//! - [`probes`]: large-value peak scans of `|ζ(½+it)|` and the close-quadruple
//!   counter for sums of two k-th roots.
//! - [`cache`]: binary table cache and CSV curve cache.

pub mod cache;
pub mod error;
pub mod error_terms;
pub mod fitting;
pub mod moments;
pub mod numeric;
pub mod probes;
pub mod quadrature;
pub mod tables;
pub mod voronoi;
pub mod zeta;

pub use error::{Error, Result};
pub use error_terms::{
    CircleEvaluator, CuspEvaluator, DeltaEvaluator, DeltaStar, ErrorTermKind, EULER_GAMMA,
};
pub use moments::{JutilaCheck, MomentFit, MomentReport, OmegaProbe, SampleKind};
pub use probes::{LargeValueReport, PeakSet, QuadrupleCountResult};
pub use tables::{ArithTable, SummatoryFit, TableKind};
pub use zeta::{ECurve, QuadratureConfig, ZetaEvaluator};
