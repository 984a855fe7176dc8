//! General heat diffusion weights.
//!
//! The per-hop weight family `U(omega, rho, ell) = omega^ell / ((ell!)^rho * C)`
//! interpolates between personalized PageRank (`rho = 0`, geometric decay)
//! and heat-kernel PageRank (`rho = 1`, Poisson). Terms are evaluated in log
//! space; `(ell!)^rho` overflows direct evaluation near `ell = 170` long
//! before the long tails of the `rho < 1` regimes are exhausted.

use crate::error::{Error, Result};

pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
pub const DEFAULT_HARD_CAP: usize = 512;

/// Truncated, normalized table of per-hop diffusion weights.
#[derive(Debug, Clone)]
pub struct GhdTable {
    omega: f64,
    rho: f64,
    weights: Vec<f64>,
    normalization: f64,
    tail_tol: f64,
    truncated_at_cap: bool,
}

impl GhdTable {
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Weight at hop `ell`; zero beyond the truncation point.
    pub fn weight(&self, ell: usize) -> f64 {
        self.weights.get(ell).copied().unwrap_or(0.0)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Largest stored hop index.
    pub fn max_hop(&self) -> usize {
        self.weights.len() - 1
    }

    /// Normalization constant `C` (the series sum the weights were divided by).
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }

    /// True when the hard cap cut the series before the tail criterion fired.
    pub fn truncated_at_cap(&self) -> bool {
        self.truncated_at_cap
    }

    /// Sum of stored weights up to and including `ell`.
    pub fn partial_sum(&self, ell: usize) -> f64 {
        self.weights.iter().take(ell + 1).sum()
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Exact Poisson mass `e^-omega * omega^ell / ell!`, the `rho = 1` oracle.
pub fn hkpr_weight(omega: f64, ell: usize) -> f64 {
    assert!(omega > 0.0, "omega must be positive");
    (-omega + ell as f64 * omega.ln() - libm::lgamma(ell as f64 + 1.0)).exp()
}

/// Build the weight table for `(omega, rho)`, truncating once the current
/// term drops below `tail_tol` times the running sum (never before the term
/// peak at `ell ~ omega^(1/rho)`), or at `hard_cap` hops with a warning flag.
pub fn build_ghd_table(
    omega: f64,
    rho: f64,
    tail_tol: f64,
    hard_cap: usize,
) -> Result<GhdTable> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "omega must be a positive real, got {omega}"
        )));
    }
    if !(rho >= 0.0) || !rho.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "rho must be a non-negative real, got {rho}"
        )));
    }
    if rho == 0.0 && omega >= 1.0 {
        return Err(Error::DivergentSeries { omega });
    }
    if !(tail_tol > 0.0 && tail_tol < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tail_tol must lie in (0, 1), got {tail_tol}"
        )));
    }
    if hard_cap < 1 {
        return Err(Error::InvalidParameter("hard_cap must be >= 1".into()));
    }

    if rho == 0.0 {
        // Geometric series: closed-form C = 1/(1 - omega) and exact weights.
        let norm = 1.0 / (1.0 - omega);
        let mut weights = Vec::new();
        let mut sum = 0.0;
        let mut truncated_at_cap = true;
        for ell in 0..=hard_cap {
            let w = (1.0 - omega) * omega.powi(ell as i32);
            weights.push(w);
            sum += w;
            if w < tail_tol * sum {
                truncated_at_cap = false;
                break;
            }
        }
        return Ok(GhdTable {
            omega,
            rho,
            weights,
            normalization: norm,
            tail_tol,
            truncated_at_cap,
        });
    }

    // rho > 0: unnormalized terms ascend up to ell ~ omega^(1/rho) and decay
    // super-geometrically after. Accumulate in log space.
    let peak = (omega.ln() / rho).exp().ceil();
    let log_omega = omega.ln();
    let mut log_terms = Vec::new();
    let mut log_sum = f64::NEG_INFINITY;
    let mut truncated_at_cap = true;
    for ell in 0..=hard_cap {
        let log_term = ell as f64 * log_omega - rho * libm::lgamma(ell as f64 + 1.0);
        log_terms.push(log_term);
        log_sum = log_add_exp(log_sum, log_term);
        if (ell as f64) > peak && log_term < tail_tol.ln() + log_sum {
            truncated_at_cap = false;
            break;
        }
    }

    let weights: Vec<f64> = log_terms.iter().map(|lt| (lt - log_sum).exp()).collect();
    Ok(GhdTable {
        omega,
        rho,
        weights,
        normalization: log_sum.exp(),
        tail_tol,
        truncated_at_cap,
    })
}

impl GhdTable {
    /// Build with the default tail tolerance and hop cap.
    pub fn with_defaults(omega: f64, rho: f64) -> Result<Self> {
        build_ghd_table(omega, rho, DEFAULT_TAIL_TOL, DEFAULT_HARD_CAP)
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn geometric_case_is_exact() {
        let t = GhdTable::with_defaults(0.5, 0.0).unwrap();
        assert_eq!(t.weight(0), 0.5);
        assert_eq!(t.weight(1), 0.25);
        assert_eq!(t.weight(2), 0.125);
        assert_eq!(t.normalization(), 2.0);
    }

    #[test]
    fn hkpr_values() {
        assert!((hkpr_weight(1.0, 0) - (-1.0f64).exp()).abs() < 1e-12);
        assert!((hkpr_weight(5.0, 5) - 0.175467369767851).abs() < 1e-12);
        assert!((hkpr_weight(2.0, 1) - 2.0 * (-2.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn rho_one_matches_poisson() {
        let t = GhdTable::with_defaults(5.0, 1.0).unwrap();
        assert!((t.weight(5) - 0.175467369767851).abs() < 1e-10);
        for ell in 0..=40 {
            assert!((t.weight(ell) - hkpr_weight(5.0, ell)).abs() <= 1e-10);
        }
    }

    #[test]
    fn smooth_regime_has_a_long_tail() {
        let t = GhdTable::with_defaults(1.15, 0.06).unwrap();
        let non_negligible = t.weights().iter().filter(|&&w| w > 1e-4).count();
        assert!(non_negligible >= 20, "only {non_negligible} heavy terms");
        assert!(!t.truncated_at_cap());
    }

    #[test]
    fn divergent_geometric_is_rejected() {
        assert!(matches!(
            build_ghd_table(1.0, 0.0, 1e-12, 512),
            Err(Error::DivergentSeries { .. })
        ));
        assert!(build_ghd_table(0.999, 0.0, 1e-12, 4096).is_ok());
    }

    #[test]
    fn hard_cap_sets_warning_flag() {
        // omega = 2, rho = 0.05: term peak near 2^20, far past a cap of 64.
        let t = build_ghd_table(2.0, 0.05, 1e-12, 64).unwrap();
        assert!(t.truncated_at_cap());
        assert_eq!(t.max_hop(), 64);
        // Weights still normalize to 1 over what was kept.
        assert!((t.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(build_ghd_table(-1.0, 1.0, 1e-12, 512).is_err());
        assert!(build_ghd_table(1.0, -0.5, 1e-12, 512).is_err());
        assert!(build_ghd_table(1.0, 1.0, 0.0, 512).is_err());
        assert!(build_ghd_table(1.0, 1.0, 1e-12, 0).is_err());
    }

    proptest! {
        /// Within the span of hyperparameters seen in practice the table is
        /// normalized, non-negative, and unimodal.
        #[test]
        fn tables_are_normalized_and_unimodal(
            omega in 0.1f64..10.0,
            rho in 0.01f64..1.5,
        ) {
            let t = GhdTable::with_defaults(omega, rho).unwrap();
            prop_assert!(t.weights().iter().all(|&w| w >= 0.0));
            let total = t.total();
            prop_assert!(total <= 1.0 + 1e-12 && total >= 1.0 - 10.0 * t.tail_tol());

            // Single peak: once the sequence starts falling it never rises.
            let w = t.weights();
            let mut falling = false;
            for i in 1..w.len() {
                if w[i] < w[i - 1] - 1e-15 {
                    falling = true;
                } else if falling {
                    prop_assert!(w[i] <= w[i - 1] + 1e-15, "second rise at hop {i}");
                }
            }
        }

        #[test]
        fn rho_zero_degenerates_to_ppr(omega in 0.05f64..0.95) {
            let t = GhdTable::with_defaults(omega, 0.0).unwrap();
            for (ell, &w) in t.weights().iter().enumerate() {
                let expect = (1.0 - omega) * omega.powi(ell as i32);
                prop_assert!((w - expect).abs() <= 1e-12);
            }
        }
    }
}
