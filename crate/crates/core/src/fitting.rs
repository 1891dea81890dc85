//! Ordinary least squares for low-degree polynomial models.
//!
//! Fits are carried out in the centered variable `u = x − mean(x)` to keep the
//! normal equations well conditioned on log-scale grids, then mapped back to
//! the original variable. Coefficients are linear in the observations, so
//! scaling every `y` by `s` scales every coefficient by `s`.

use crate::error::{Error, Result};

/// Result of a polynomial least-squares fit.
#[derive(Debug, Clone)]
pub struct PolyFit {
    /// Coefficients in the original variable, ascending powers.
    pub coeffs: Vec<f64>,
    /// Coefficients in the centered variable, ascending powers.
    pub centered_coeffs: Vec<f64>,
    /// The centering shift (mean of the abscissas).
    pub center: f64,
    /// Crude conditioning estimate: |max pivot| / |min pivot| of the
    /// normal-equation elimination.
    pub condition: f64,
    /// Root-mean-square residual of the fit.
    pub residual_rms: f64,
}

impl PolyFit {
    /// Leading coefficient (degree = `coeffs.len() - 1`); identical in the
    /// centered and mapped-back bases.
    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = x - self.center;
        self.centered_coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * u + c)
    }
}

/// Condition threshold above which the normal equations are rejected.
const CONDITION_LIMIT: f64 = 1e12;

/// Least-squares fit of `y ≈ Σ_j a_j x^j`, `j = 0..=degree`.
pub fn polyfit(xs: &[f64], ys: &[f64], degree: usize) -> Result<PolyFit> {
    if xs.len() != ys.len() {
        return Err(Error::invalid("polyfit: mismatched input lengths"));
    }
    if xs.len() < degree + 1 {
        return Err(Error::invalid(format!(
            "polyfit: degree {} needs at least {} points, got {}",
            degree,
            degree + 1,
            xs.len()
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::invalid("polyfit: non-finite input"));
    }
    let n = xs.len();
    let m = degree + 1;
    let center = xs.iter().sum::<f64>() / n as f64;

    // normal equations G b = r over the centered powers
    let mut g = vec![vec![0.0f64; m]; m];
    let mut r = vec![0.0f64; m];
    for (&x, &y) in xs.iter().zip(ys) {
        let u = x - center;
        let mut pow = vec![0.0; m];
        let mut p = 1.0;
        for q in pow.iter_mut() {
            *q = p;
            p *= u;
        }
        for j in 0..m {
            r[j] += pow[j] * y;
            for k in 0..m {
                g[j][k] += pow[j] * pow[k];
            }
        }
    }

    let (beta, condition) = solve_with_condition(&mut g, &mut r)?;
    let centered_coeffs = beta;

    // map p(u) = Σ β_j u^j, u = x − c, back to powers of x via binomials
    let mut coeffs = vec![0.0f64; m];
    for (j, &b) in centered_coeffs.iter().enumerate() {
        // (x − c)^j = Σ_k C(j,k) x^k (−c)^{j−k}
        let mut binom = 1.0f64;
        for k in 0..=j {
            if k > 0 {
                binom = binom * (j - k + 1) as f64 / k as f64;
            }
            coeffs[k] += b * binom * (-center).powi((j - k) as i32);
        }
    }

    let mut ss = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let u = x - center;
        let fit = centered_coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * u + c);
        ss += (y - fit) * (y - fit);
    }
    let residual_rms = (ss / n as f64).sqrt();

    Ok(PolyFit {
        coeffs,
        centered_coeffs,
        center,
        condition,
        residual_rms,
    })
}

/// Gaussian elimination with partial pivoting; returns the solution and the
/// pivot-ratio condition estimate.
fn solve_with_condition(g: &mut [Vec<f64>], r: &mut [f64]) -> Result<(Vec<f64>, f64)> {
    let m = r.len();
    let mut max_piv: f64 = 0.0;
    let mut min_piv = f64::INFINITY;
    for col in 0..m {
        let mut best = col;
        for row in col + 1..m {
            if g[row][col].abs() > g[best][col].abs() {
                best = row;
            }
        }
        g.swap(col, best);
        r.swap(col, best);
        let piv = g[col][col];
        if piv == 0.0 {
            return Err(Error::FitFailure("singular normal equations".into()));
        }
        max_piv = max_piv.max(piv.abs());
        min_piv = min_piv.min(piv.abs());
        for row in col + 1..m {
            let factor = g[row][col] / piv;
            if factor == 0.0 {
                continue;
            }
            for k in col..m {
                g[row][k] -= factor * g[col][k];
            }
            r[row] -= factor * r[col];
        }
    }
    let condition = max_piv / min_piv;
    if condition > CONDITION_LIMIT {
        return Err(Error::FitFailure(format!(
            "ill-conditioned normal equations: pivot ratio {condition:.3e} exceeds {CONDITION_LIMIT:.1e}"
        )));
    }
    let mut x = vec![0.0; m];
    for col in (0..m).rev() {
        let mut acc = r[col];
        for k in col + 1..m {
            acc -= g[col][k] * x[k];
        }
        x[col] = acc / g[col][col];
    }
    Ok((x, condition))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn recovers_exact_cubic() {
        let xs: Vec<f64> = (0..12).map(|i| 6.9 + 0.35 * i as f64).collect();
        let truth = [2.5, -1.0, 0.25, 0.8];
        let ys: Vec<f64> = xs
            .iter()
            .map(|&x| truth.iter().rev().fold(0.0, |a, &c| a * x + c))
            .collect();
        let fit = polyfit(&xs, &ys, 3).unwrap();
        for (got, want) in fit.coeffs.iter().zip(&truth) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
        assert!((fit.leading() - 0.8).abs() < 1e-10);
        assert!(fit.residual_rms < 1e-9);
    }

    #[test]
    fn rejects_degenerate_grid() {
        let xs = vec![1.0; 8];
        let ys = vec![2.0; 8];
        assert!(matches!(polyfit(&xs, &ys, 2), Err(Error::FitFailure(_))));
    }

    #[test]
    fn too_few_points_is_invalid() {
        assert!(polyfit(&[1.0, 2.0], &[1.0, 2.0], 3).is_err());
    }

    proptest! {
        // Linear least squares: scaling observations by a power of two scales
        // every coefficient bit-exactly.
        #[test]
        fn scale_equivariance_power_of_two(k in -8i32..=8, seed in 0u64..1000) {
            let mut rng = crate::numeric::SplitMix64::new(seed);
            let xs: Vec<f64> = (0..10).map(|i| 1.0 + i as f64 * 0.5).collect();
            let ys: Vec<f64> = xs.iter().map(|_| rng.next_f64() * 10.0 - 5.0).collect();
            let s = (2.0f64).powi(k);
            let scaled: Vec<f64> = ys.iter().map(|y| y * s).collect();
            let f1 = polyfit(&xs, &ys, 3).unwrap();
            let f2 = polyfit(&xs, &scaled, 3).unwrap();
            for (a, b) in f1.centered_coeffs.iter().zip(&f2.centered_coeffs) {
                prop_assert_eq!(a * s, *b);
            }
        }

        #[test]
        fn scale_equivariance_general(s in 0.01f64..100.0, seed in 0u64..1000) {
            let mut rng = crate::numeric::SplitMix64::new(seed);
            let xs: Vec<f64> = (0..9).map(|i| 2.0 + i as f64).collect();
            let ys: Vec<f64> = xs.iter().map(|_| rng.next_f64() * 4.0 + 1.0).collect();
            let scaled: Vec<f64> = ys.iter().map(|y| y * s).collect();
            let f1 = polyfit(&xs, &ys, 2).unwrap();
            let f2 = polyfit(&xs, &scaled, 2).unwrap();
            for (a, b) in f1.coeffs.iter().zip(&f2.coeffs) {
                prop_assert!((a * s - b).abs() <= 1e-9 * (a * s).abs().max(1e-12));
            }
        }
    }
}
